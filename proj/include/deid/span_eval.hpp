#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "deid/errors.hpp"
#include "deid/score.hpp"
#include "deid/text.hpp"

// Span-matching evaluation.  A gold mention is matched "perfect" when some
// system span equals it exactly, and "covered" when some system span
// contains it (equality included): a covered name is hidden even if extra
// text was blacked out with it, while a partially overlapped one leaks.
// Precision counts a system span at most once however many gold mentions it
// covers.  Corpus coverage aggregates the document-level view: a document
// only counts as safe when every gold mention in it is covered.

namespace deid {

enum class MatchMode { perfect, covered };

/// Per-document match classes.  A gold mention is perfect/covered/missed;
/// perfect implies covered.  A system span is "used" under a mode when it
/// matched at least one gold mention there, else spurious.
struct MatchResult {
    std::vector<bool> gold_exact;   // some system span equals it
    std::vector<bool> gold_covered; // some system span contains it
    std::vector<bool> sys_exact;    // equals some gold mention
    std::vector<bool> sys_covering; // contains some gold mention

    std::size_t gold_total() const { return gold_exact.size(); }
    std::size_t sys_total() const { return sys_exact.size(); }

    std::size_t gold_matched(MatchMode mode) const {
        return count(mode == MatchMode::perfect ? gold_exact : gold_covered);
    }
    std::size_t sys_used(MatchMode mode) const {
        return count(mode == MatchMode::perfect ? sys_exact : sys_covering);
    }

    bool all_gold_matched(MatchMode mode) const { return gold_matched(mode) == gold_total(); }

private:
    static std::size_t count(const std::vector<bool>& v) {
        std::size_t n = 0;
        for (bool b : v) n += b;
        return n;
    }
};

/// Matches every gold span against every system span of one document.
/// Gold spans must not overlap each other; a single system span may cover
/// several gold mentions.
inline MatchResult match_spans(const std::vector<Span>& gold, const std::vector<Span>& sys) {
    for (std::size_t i = 0; i < gold.size(); ++i) {
        for (std::size_t j = i + 1; j < gold.size(); ++j) {
            if (gold[i].start < gold[j].end && gold[j].start < gold[i].end) {
                throw integrity_error("gold spans overlap");
            }
        }
    }
    MatchResult r;
    r.gold_exact.assign(gold.size(), false);
    r.gold_covered.assign(gold.size(), false);
    r.sys_exact.assign(sys.size(), false);
    r.sys_covering.assign(sys.size(), false);
    for (std::size_t i = 0; i < gold.size(); ++i) {
        for (std::size_t j = 0; j < sys.size(); ++j) {
            if (gold[i] == sys[j]) {
                r.gold_exact[i] = true;
                r.sys_exact[j] = true;
            }
            if (contains(sys[j], gold[i])) {
                r.gold_covered[i] = true;
                r.sys_covering[j] = true;
            }
        }
    }
    return r;
}

/// Expands spans to the token boundaries they touch, so character-level
/// jitter inside a token does not decide a match.  A span overlapping no
/// token is returned unchanged.
inline std::vector<Span> snap_to_tokens(const std::vector<Span>& spans,
                                        const std::vector<Token>& tokens) {
    std::vector<Span> out;
    out.reserve(spans.size());
    for (const Span& s : spans) {
        std::size_t lo = s.start, hi = s.end;
        bool touched = false;
        for (const auto& tok : tokens) {
            if (tok.span.start < s.end && s.start < tok.span.end) {
                if (!touched) {
                    lo = tok.span.start;
                    hi = tok.span.end;
                    touched = true;
                } else {
                    lo = std::min(lo, tok.span.start);
                    hi = std::max(hi, tok.span.end);
                }
            }
        }
        out.push_back(touched ? Span(lo, hi) : s);
    }
    return out;
}

/// Single-document precision/recall/F under a mode.
inline ScoreTriple doc_prf(const MatchResult& result, MatchMode mode) {
    if (result.gold_total() == 0) {
        throw undefined_metric("recall undefined: document has no gold mentions");
    }
    const double r = static_cast<double>(result.gold_matched(mode)) /
                     static_cast<double>(result.gold_total());
    const double p = result.sys_total() == 0
                         ? 0.0
                         : static_cast<double>(result.sys_used(mode)) /
                               static_cast<double>(result.sys_total());
    return ScoreTriple::from_pr(p, r);
}

/// Micro average: every mention counts as one, pooled over all documents.
inline ScoreTriple micro_prf(const std::vector<MatchResult>& results, MatchMode mode) {
    std::size_t gold_total = 0, gold_matched = 0, sys_total = 0, sys_used = 0;
    for (const auto& r : results) {
        gold_total += r.gold_total();
        gold_matched += r.gold_matched(mode);
        sys_total += r.sys_total();
        sys_used += r.sys_used(mode);
    }
    if (gold_total == 0) {
        throw undefined_metric("micro recall undefined: no gold mentions in corpus");
    }
    const double r = static_cast<double>(gold_matched) / static_cast<double>(gold_total);
    const double p =
        sys_total == 0 ? 0.0 : static_cast<double>(sys_used) / static_cast<double>(sys_total);
    return ScoreTriple::from_pr(p, r);
}

/// Macro average: every document counts as one.  P and R are unweighted
/// means; F is recomputed from them.
inline ScoreTriple macro_prf(const std::vector<ScoreTriple>& per_doc) {
    if (per_doc.empty()) throw undefined_metric("macro average of zero documents");
    double p = 0.0, r = 0.0;
    for (const auto& t : per_doc) {
        p += t.precision;
        r += t.recall;
    }
    p /= static_cast<double>(per_doc.size());
    r /= static_cast<double>(per_doc.size());
    return ScoreTriple::from_pr(p, r);
}

/// Corpus coverage counts.  Documents without gold mentions are excluded
/// from the document tallies (they have nothing to expose).
struct CoverageReport {
    std::size_t marked_entities = 0;     // all system spans
    std::size_t perfect_entities = 0;    // gold mentions matched exactly
    std::size_t covered_entities = 0;    // gold mentions covered (incl. perfect)
    std::size_t perfect_docs = 0;        // documents with every gold mention perfect
    std::size_t covered_docs = 0;        // documents with every gold mention covered
    std::size_t total_gold_entities = 0;
    std::size_t total_docs = 0;          // documents with at least one gold mention
    double exposure_rate = 0.0;          // 1 - covered_docs / total_docs

    bool operator==(const CoverageReport&) const = default;
};

inline CoverageReport corpus_coverage(const std::vector<MatchResult>& per_doc) {
    CoverageReport report;
    for (const auto& r : per_doc) {
        report.marked_entities += r.sys_total();
        if (r.gold_total() == 0) continue;
        report.total_docs += 1;
        report.total_gold_entities += r.gold_total();
        report.perfect_entities += r.gold_matched(MatchMode::perfect);
        report.covered_entities += r.gold_matched(MatchMode::covered);
        if (r.all_gold_matched(MatchMode::perfect)) report.perfect_docs += 1;
        if (r.all_gold_matched(MatchMode::covered)) report.covered_docs += 1;
    }
    if (report.total_docs > 0) {
        report.exposure_rate = 1.0 - static_cast<double>(report.covered_docs) /
                                         static_cast<double>(report.total_docs);
    }
    return report;
}

} // namespace deid
