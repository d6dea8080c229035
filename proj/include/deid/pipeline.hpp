#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "deid/chains.hpp"
#include "deid/coref_eval.hpp"
#include "deid/gazetteer.hpp"
#include "deid/lexicon.hpp"
#include "deid/ner.hpp"
#include "deid/redact.hpp"
#include "deid/segment.hpp"
#include "deid/standoff.hpp"

// End-to-end composition: segment, recognize, filter, chain, label, redact.
// Everything here is pure per document; a small deterministic work pool runs
// documents in parallel with results kept in input order.

namespace deid {

struct Resources {
    AbbreviationLexicon lexicon;
    Gazetteer gazetteer;
    Honorifics honorifics = Honorifics::defaults();
    std::set<std::string> stoplist;
    bool fold_accents = false;

    static Resources load(const std::string& lexicon_path, const std::string& given_path,
                          const std::string& particles_path, const std::string& honorifics_path,
                          const std::string& stoplist_path) {
        Resources res;
        res.lexicon = AbbreviationLexicon::load(lexicon_path);
        res.gazetteer = Gazetteer::load(given_path, particles_path);
        res.honorifics = Honorifics::load(honorifics_path);
        res.stoplist = load_stoplist(stoplist_path);
        return res;
    }
};

struct DeidResult {
    SegmentationResult seg;
    std::vector<Mention> mentions; // after stoplist filtering
    ChainSet chains;
    std::map<std::size_t, Label> labels;
    RedactedDocument redacted;
};

inline DeidResult deidentify(const Document& doc, const Resources& res) {
    DeidResult result;
    result.seg = segment_document(doc, res.lexicon);
    result.mentions = filter_stopforms(
        recognize(doc, result.seg, res.gazetteer, res.honorifics, res.lexicon), res.stoplist);
    result.chains = chain(result.mentions, res.fold_accents);
    result.labels = assign_labels(result.chains);
    result.redacted = redact(doc, result.chains, result.labels);
    return result;
}

/// Key partition of a document's gold annotation: Equiv chains become
/// entities, every unchained mention a singleton.  Keys are spans rendered
/// "start-end", matching to_partition on the system side.
inline Partition gold_partition(const AnnotatedDocument& ad) {
    const auto key_of = [](const GoldMention& m) {
        return std::to_string(m.span.start) + "-" + std::to_string(m.span.end);
    };
    std::map<std::string, const GoldMention*> by_id;
    for (const auto& m : ad.mentions) by_id.emplace(m.id, &m);

    std::set<std::string> chained;
    std::vector<std::set<MentionKey>> entities;
    for (const auto& c : ad.chains) {
        std::set<MentionKey> entity;
        for (const auto& mid : c.mention_ids) {
            const auto it = by_id.find(mid);
            if (it == by_id.end()) {
                throw integrity_error("chain references unknown mention " + mid);
            }
            entity.insert(key_of(*it->second));
            chained.insert(mid);
        }
        entities.push_back(std::move(entity));
    }
    for (const auto& m : ad.mentions) {
        if (!chained.count(m.id)) entities.push_back({key_of(m)});
    }
    return Partition(std::move(entities));
}

/// Runs `fn` over indices [0, n) on `jobs` threads; results land in index
/// order, so output does not depend on the parallelism degree.  Exceptions
/// are rethrown on the caller thread.
template <typename Result>
std::vector<Result> parallel_map(std::size_t n, std::size_t jobs,
                                 const std::function<Result(std::size_t)>& fn) {
    std::vector<Result> results(n);
    if (n == 0) return results;
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
        return results;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::min(jobs, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    results[i] = fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

} // namespace deid
