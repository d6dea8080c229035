// Command-line front end: batch de-identification over document
// directories, span-match scoring against gold standoff annotations, and
// coreference scoring over partition files.
//
// Exit codes: 0 clean, 1 completed with per-document or per-metric errors,
// 2 unusable configuration.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deid/deid.hpp"

namespace fs = std::filesystem;
using namespace deid;

namespace {

struct Paths {
    std::string lexicon = "data/lexicon/abbreviations.txt";
    std::string gazetteer = "data/gazetteer";
    std::string stoplist = "data/stoplist/stopforms.txt";
};

void add_resource_options(CLI::App* cmd, Paths& paths) {
    cmd->add_option("--lexicon", paths.lexicon, "abbreviation lexicon file")
        ->capture_default_str();
    cmd->add_option("--gazetteer", paths.gazetteer,
                    "directory with given_names.txt, particles.txt, honorifics.txt")
        ->capture_default_str();
    cmd->add_option("--stoplist", paths.stoplist, "stoplist file")->capture_default_str();
}

Resources load_resources(const Paths& paths) {
    return Resources::load(paths.lexicon, paths.gazetteer + "/given_names.txt",
                           paths.gazetteer + "/particles.txt",
                           paths.gazetteer + "/honorifics.txt", paths.stoplist);
}

std::vector<fs::path> sorted_files(const std::string& dir, const std::string& extension) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == extension) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw integrity_error("cannot write " + path.string());
    out << content;
}

int run_deidentify(const Paths& paths, const std::string& input, const std::string& output,
                   std::size_t jobs) {
    Resources res;
    try {
        res = load_resources(paths);
        if (!fs::is_directory(input)) throw integrity_error(input + " is not a directory");
        fs::create_directories(output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const auto files = sorted_files(input, ".txt");
    struct DocOutcome {
        std::string stem;
        bool ok = false;
        std::string message;
        std::string redacted;
        std::string mapping;
        std::size_t chains = 0;
    };
    const std::function<DocOutcome(std::size_t)> work = [&](std::size_t i) {
        DocOutcome outcome;
        outcome.stem = files[i].stem().string();
        try {
            const Document doc(outcome.stem, detail::read_file(files[i].string(), "document"));
            const DeidResult result = deidentify(doc, res);
            outcome.redacted = result.redacted.text;
            outcome.mapping = serialize_mapping(result.redacted.mapping);
            outcome.chains = result.chains.chains.size();
            outcome.ok = true;
        } catch (const std::exception& e) {
            outcome.message = e.what();
        }
        return outcome;
    };
    const auto outcomes = parallel_map<DocOutcome>(files.size(), jobs, work);

    std::size_t failures = 0, total_chains = 0;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            ++failures;
            std::cerr << o.stem << ": " << o.message << "\n";
            continue;
        }
        write_file(fs::path(output) / (o.stem + ".txt"), o.redacted);
        write_file(fs::path(output) / (o.stem + ".map"), o.mapping);
        total_chains += o.chains;
    }
    std::cout << outcomes.size() << " documents, " << total_chains << " chains, " << failures
              << " failures\n";
    return failures ? 1 : 0;
}

std::optional<std::vector<Span>> load_system_spans(const fs::path& system_dir,
                                                   const std::string& stem,
                                                   const Document& doc) {
    const fs::path ann = system_dir / (stem + ".ann");
    if (fs::exists(ann)) {
        const auto parsed = parse_standoff(detail::read_file(ann.string(), "system"), doc);
        std::vector<Span> spans;
        for (const auto& m : parsed.mentions) spans.push_back(m.span);
        return spans;
    }
    const fs::path map = system_dir / (stem + ".map");
    if (fs::exists(map)) {
        std::vector<Span> spans;
        for (const auto& rec : parse_mapping(detail::read_file(map.string(), "system"))) {
            spans.push_back(rec.original);
        }
        return spans;
    }
    return std::nullopt;
}

int run_score_spans(const Paths& paths, const std::string& input, const std::string& system_dir,
                    const std::string& mode, const std::string& output) {
    AbbreviationLexicon lex;
    try {
        lex = AbbreviationLexicon::load(paths.lexicon);
        if (!fs::is_directory(input)) throw integrity_error(input + " is not a directory");
        if (!fs::is_directory(system_dir)) {
            throw integrity_error(system_dir + " is not a directory");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::vector<MatchResult> results;
    std::vector<ScoreTriple> per_doc_perfect, per_doc_covered;
    std::size_t skipped = 0;
    for (const auto& txt : sorted_files(input, ".txt")) {
        const std::string stem = txt.stem().string();
        const fs::path gold_ann = txt.parent_path() / (stem + ".ann");
        try {
            if (!fs::exists(gold_ann)) throw integrity_error("no gold .ann");
            const auto ad = load_document_pair(detail::read_file(txt.string(), "document"),
                                               detail::read_file(gold_ann.string(), "gold"),
                                               stem);
            const auto sys_spans = load_system_spans(system_dir, stem, ad.doc);
            if (!sys_spans) throw integrity_error("no system .ann or .map");

            const auto tokens = tokenize(ad.doc, lex);
            std::vector<Span> gold_spans;
            for (const auto& m : ad.mentions) gold_spans.push_back(m.span);
            const auto result = match_spans(snap_to_tokens(gold_spans, tokens),
                                            snap_to_tokens(*sys_spans, tokens));
            if (result.gold_total() > 0) {
                per_doc_perfect.push_back(doc_prf(result, MatchMode::perfect));
                per_doc_covered.push_back(doc_prf(result, MatchMode::covered));
            }
            results.push_back(result);
        } catch (const std::exception& e) {
            std::cerr << "warning: skipping " << stem << ": " << e.what() << "\n";
            ++skipped;
        }
    }
    if (results.empty()) {
        std::cerr << "error: no scorable document pairs\n";
        return 2;
    }

    SpanEvalReport report;
    report.coverage = corpus_coverage(results);
    report.micro_perfect = micro_prf(results, MatchMode::perfect);
    report.micro_covered = micro_prf(results, MatchMode::covered);
    report.macro_perfect = macro_prf(per_doc_perfect);
    report.macro_covered = macro_prf(per_doc_covered);

    const auto print_mode = [&](const char* name, const ScoreTriple& micro,
                                const ScoreTriple& macro) {
        std::printf("%-8s micro P %.2f R %.2f F %.2f | macro P %.2f R %.2f F %.2f\n", name,
                    micro.precision, micro.recall, micro.f1, macro.precision, macro.recall,
                    macro.f1);
    };
    if (mode != "covered") print_mode("perfect", report.micro_perfect, report.macro_perfect);
    if (mode != "perfect") print_mode("covered", report.micro_covered, report.macro_covered);
    std::printf("coverage: %zu/%zu docs covered, exposure_rate %.4f\n", report.coverage.covered_docs,
                report.coverage.total_docs, report.coverage.exposure_rate);

    if (!output.empty()) write_file(output, write_report(report));
    return skipped ? 1 : 0;
}

int run_score_coref(const std::string& key_path, const std::string& response_path,
                    std::vector<std::string> metrics) {
    Partition key, response;
    try {
        key = load_partition(key_path);
        response = load_partition(response_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (metrics.empty()) metrics = {"muc", "b3", "ceaf-m", "ceaf-e", "blanc", "lea"};

    const std::map<std::string, std::function<ScoreTriple()>> runners = {
        {"muc", [&] { return muc(key, response); }},
        {"b3", [&] { return b_cubed(key, response); }},
        {"ceaf-m", [&] { return ceaf(key, response, SimilarityKind::mention_overlap); }},
        {"ceaf-e", [&] { return ceaf(key, response, SimilarityKind::normalized_overlap); }},
        {"blanc", [&] { return blanc(key, response); }},
        {"lea", [&] { return lea(key, response); }},
    };

    bool failed = false;
    std::printf("%-8s %6s %6s %6s\n", "metric", "P", "R", "F");
    for (const auto& name : metrics) {
        const auto it = runners.find(name);
        if (it == runners.end()) {
            std::cerr << "error: unknown metric '" << name << "'\n";
            return 2;
        }
        try {
            const ScoreTriple t = it->second();
            std::printf("%-8s %6.2f %6.2f %6.2f\n", name.c_str(), t.precision, t.recall, t.f1);
        } catch (const undefined_metric& e) {
            std::printf("%-8s error: %s\n", name.c_str(), e.what());
            failed = true;
        }
    }
    return failed ? 1 : 0;
}

int run_tokenize(const Paths& paths, const std::string& input) {
    try {
        const AbbreviationLexicon lex = AbbreviationLexicon::load(paths.lexicon);
        const Document doc(fs::path(input).stem().string(),
                           detail::read_file(input, "document"));
        for (const auto& tok : tokenize(doc, lex)) {
            std::printf("%zu\t%zu\t%s\n", tok.span.start, tok.span.end, tok.surface.c_str());
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_segment(const Paths& paths, const std::string& input) {
    try {
        const AbbreviationLexicon lex = AbbreviationLexicon::load(paths.lexicon);
        const Document doc(fs::path(input).stem().string(),
                           detail::read_file(input, "document"));
        const auto seg = segment_document(doc, lex);
        for (std::size_t i = 0; i < seg.sentences.size(); ++i) {
            const Sentence& s = seg.sentences[i];
            const Span span(seg.tokens[s.first_token].span.start,
                            seg.tokens[s.last_token - 1].span.end);
            std::printf("Sentence %zu: %s\n", i + 1, doc.slice(span).c_str());
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"de-identification of person names in legal documents"};
    app.require_subcommand(1);

    Paths paths;
    std::string input, output, system_dir, key_path, response_path;
    std::string mode = "both";
    std::size_t jobs = 1;
    std::vector<std::string> metrics;

    auto* cmd_deid = app.add_subcommand("deidentify", "redact person names in *.txt documents");
    cmd_deid->add_option("--input", input, "directory of .txt documents")->required();
    cmd_deid->add_option("--output", output, "directory for redacted .txt + .map sidecars")
        ->required();
    cmd_deid->add_option("--jobs", jobs, "parallel document workers")->capture_default_str();
    add_resource_options(cmd_deid, paths);

    auto* cmd_spans = app.add_subcommand("score-spans",
                                         "span matching of system output against gold .ann");
    cmd_spans->add_option("--input", input, "directory of gold .txt + .ann pairs")->required();
    cmd_spans->add_option("--system", system_dir, "directory of system .ann or .map files")
        ->required();
    cmd_spans->add_option("--mode", mode, "perfect|covered|both")
        ->check(CLI::IsMember({"perfect", "covered", "both"}))
        ->capture_default_str();
    cmd_spans->add_option("--output", output, "write the full JSON report here");
    add_resource_options(cmd_spans, paths);

    auto* cmd_coref = app.add_subcommand("score-coref",
                                         "coreference measures over partition files");
    cmd_coref->add_option("key", key_path, "key (gold) partition file")->required();
    cmd_coref->add_option("response", response_path, "response (system) partition file")
        ->required();
    cmd_coref->add_option("--metric", metrics,
                          "subset of muc,b3,ceaf-m,ceaf-e,blanc,lea (default: all)")
        ->delimiter(',');

    auto* cmd_tok = app.add_subcommand("tokenize", "dump tokens of one document");
    cmd_tok->add_option("--input", input, "document file")->required();
    add_resource_options(cmd_tok, paths);

    auto* cmd_seg = app.add_subcommand("segment", "dump sentences of one document");
    cmd_seg->add_option("--input", input, "document file")->required();
    add_resource_options(cmd_seg, paths);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (cmd_deid->parsed()) return run_deidentify(paths, input, output, jobs);
    if (cmd_spans->parsed()) return run_score_spans(paths, input, system_dir, mode, output);
    if (cmd_coref->parsed()) return run_score_coref(key_path, response_path, metrics);
    if (cmd_tok->parsed()) return run_tokenize(paths, input);
    if (cmd_seg->parsed()) return run_segment(paths, input);
    return 2;
}
