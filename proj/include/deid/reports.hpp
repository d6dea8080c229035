#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "deid/coref_eval.hpp"
#include "deid/errors.hpp"
#include "deid/span_eval.hpp"

// Report serialization.  Reports are JSON with a fixed key order so output
// is diffable, and parse(write(r)) == r exactly (doubles round-trip).

namespace deid {

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json triple_json(const ScoreTriple& t) {
    return ordered_json{{"precision", t.precision}, {"recall", t.recall}, {"f1", t.f1}};
}

inline ScoreTriple triple_from(const ordered_json& j) {
    return ScoreTriple{j.at("precision").get<double>(), j.at("recall").get<double>(),
                       j.at("f1").get<double>()};
}

inline ordered_json parse_json(std::string_view text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad report: ") + e.what());
    }
}

// Runs a block of field reads, converting missing/ill-typed fields into
// parse errors.
template <typename Fn>
auto read_fields(Fn&& fn) {
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad report: ") + e.what());
    }
}

} // namespace detail

inline std::string write_report(const CoverageReport& r) {
    detail::ordered_json j{
        {"kind", "coverage"},
        {"marked_entities", r.marked_entities},
        {"perfect_entities", r.perfect_entities},
        {"covered_entities", r.covered_entities},
        {"perfect_docs", r.perfect_docs},
        {"covered_docs", r.covered_docs},
        {"total_gold_entities", r.total_gold_entities},
        {"total_docs", r.total_docs},
        {"exposure_rate", r.exposure_rate},
    };
    return j.dump(2) + "\n";
}

inline CoverageReport parse_coverage_report(std::string_view text) {
    const auto j = detail::parse_json(text);
    return detail::read_fields([&] {
        CoverageReport r;
        r.marked_entities = j.at("marked_entities").get<std::size_t>();
        r.perfect_entities = j.at("perfect_entities").get<std::size_t>();
        r.covered_entities = j.at("covered_entities").get<std::size_t>();
        r.perfect_docs = j.at("perfect_docs").get<std::size_t>();
        r.covered_docs = j.at("covered_docs").get<std::size_t>();
        r.total_gold_entities = j.at("total_gold_entities").get<std::size_t>();
        r.total_docs = j.at("total_docs").get<std::size_t>();
        r.exposure_rate = j.at("exposure_rate").get<double>();
        return r;
    });
}

inline std::string write_report(const CorefReport& r) {
    detail::ordered_json j{
        {"kind", "coref"},
        {"muc", detail::triple_json(r.muc)},
        {"b_cubed", detail::triple_json(r.b_cubed)},
        {"ceaf_m", detail::triple_json(r.ceaf_m)},
        {"ceaf_e", detail::triple_json(r.ceaf_e)},
        {"blanc", detail::triple_json(r.blanc)},
        {"lea", detail::triple_json(r.lea)},
    };
    return j.dump(2) + "\n";
}

inline CorefReport parse_coref_report(std::string_view text) {
    const auto j = detail::parse_json(text);
    return detail::read_fields([&] {
        CorefReport r;
        r.muc = detail::triple_from(j.at("muc"));
        r.b_cubed = detail::triple_from(j.at("b_cubed"));
        r.ceaf_m = detail::triple_from(j.at("ceaf_m"));
        r.ceaf_e = detail::triple_from(j.at("ceaf_e"));
        r.blanc = detail::triple_from(j.at("blanc"));
        r.lea = detail::triple_from(j.at("lea"));
        return r;
    });
}

/// Full span-evaluation report: coverage plus micro/macro averages in both
/// match modes.
struct SpanEvalReport {
    CoverageReport coverage;
    ScoreTriple micro_perfect;
    ScoreTriple micro_covered;
    ScoreTriple macro_perfect;
    ScoreTriple macro_covered;

    bool operator==(const SpanEvalReport&) const = default;
};

inline std::string write_report(const SpanEvalReport& r) {
    detail::ordered_json j{
        {"kind", "span_eval"},
        {"coverage",
         {
             {"marked_entities", r.coverage.marked_entities},
             {"perfect_entities", r.coverage.perfect_entities},
             {"covered_entities", r.coverage.covered_entities},
             {"perfect_docs", r.coverage.perfect_docs},
             {"covered_docs", r.coverage.covered_docs},
             {"total_gold_entities", r.coverage.total_gold_entities},
             {"total_docs", r.coverage.total_docs},
             {"exposure_rate", r.coverage.exposure_rate},
         }},
        {"micro",
         {{"perfect", detail::triple_json(r.micro_perfect)},
          {"covered", detail::triple_json(r.micro_covered)}}},
        {"macro",
         {{"perfect", detail::triple_json(r.macro_perfect)},
          {"covered", detail::triple_json(r.macro_covered)}}},
    };
    return j.dump(2) + "\n";
}

inline SpanEvalReport parse_span_eval_report(std::string_view text) {
    const auto j = detail::parse_json(text);
    return detail::read_fields([&] {
        SpanEvalReport r;
        const auto& c = j.at("coverage");
        r.coverage.marked_entities = c.at("marked_entities").get<std::size_t>();
        r.coverage.perfect_entities = c.at("perfect_entities").get<std::size_t>();
        r.coverage.covered_entities = c.at("covered_entities").get<std::size_t>();
        r.coverage.perfect_docs = c.at("perfect_docs").get<std::size_t>();
        r.coverage.covered_docs = c.at("covered_docs").get<std::size_t>();
        r.coverage.total_gold_entities = c.at("total_gold_entities").get<std::size_t>();
        r.coverage.total_docs = c.at("total_docs").get<std::size_t>();
        r.coverage.exposure_rate = c.at("exposure_rate").get<double>();
        r.micro_perfect = detail::triple_from(j.at("micro").at("perfect"));
        r.micro_covered = detail::triple_from(j.at("micro").at("covered"));
        r.macro_perfect = detail::triple_from(j.at("macro").at("perfect"));
        r.macro_covered = detail::triple_from(j.at("macro").at("covered"));
        return r;
    });
}

} // namespace deid
