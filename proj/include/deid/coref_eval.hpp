#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "deid/assignment.hpp"
#include "deid/errors.hpp"
#include "deid/io.hpp"
#include "deid/score.hpp"

// Coreference partition scorers: MUC, B-cubed, CEAF (mention- and
// entity-based), BLANC and LEA.  Throughout, the first argument is the key
// (gold) partition and the second the response (system) partition.  The two
// partitions may cover different mention sets; a mention present in only one
// of them is "twinless".  Conventions for twinless mentions:
//
//   MUC     twinless members split off as singletons when partitioning an
//           entity by the other side.
//   B³      a twinless mention contributes 0 to its side's average; the
//           averages still run over all of that side's mentions.
//   CEAF    similarities only see shared mentions; denominators count all
//           mentions (phi3) or all entities (phi4) of the relevant side.
//   BLANC   links and non-links are formed within each partition's own
//           mention set and intersected, so only shared pairs match.
//   LEA     resolved links are intersections with the other side's
//           entities; twinless mentions simply never resolve.
//
// Ratios with a zero denominator are taken as 0 except where a module
// precondition already rejects the input.

namespace deid {

using MentionKey = std::string;

/// A partition of mentions into entities: disjoint, non-empty sets of keys.
struct Partition {
    std::vector<std::set<MentionKey>> entities;

    Partition() = default;

    explicit Partition(std::vector<std::set<MentionKey>> ents) : entities(std::move(ents)) {
        std::set<MentionKey> seen;
        for (const auto& e : entities) {
            if (e.empty()) throw integrity_error("partition contains an empty entity");
            for (const auto& m : e) {
                if (!seen.insert(m).second) {
                    throw integrity_error("mention key '" + m + "' appears in two entities");
                }
            }
        }
    }

    std::size_t entity_count() const { return entities.size(); }

    std::size_t mention_count() const {
        std::size_t n = 0;
        for (const auto& e : entities) n += e.size();
        return n;
    }

    /// entity index for each mention key.
    std::map<MentionKey, std::size_t> index() const {
        std::map<MentionKey, std::size_t> out;
        for (std::size_t i = 0; i < entities.size(); ++i) {
            for (const auto& m : entities[i]) out.emplace(m, i);
        }
        return out;
    }

    bool operator==(const Partition&) const = default;
};

enum class SimilarityKind {
    mention_overlap,    // phi3: |Si ∩ Tj|
    normalized_overlap, // phi4: 2|Si ∩ Tj| / (|Si| + |Tj|)
};

namespace detail {

inline double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

inline std::size_t overlap(const std::set<MentionKey>& a, const std::set<MentionKey>& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    std::size_t n = 0;
    for (const auto& m : small) n += large.count(m);
    return n;
}

// MUC recall numerator/denominator of `from` against `against`:
// sum over entities S of (|S| - |partition of S by against|) and (|S| - 1).
inline std::pair<double, double> muc_side(const Partition& from, const Partition& against) {
    const auto idx = against.index();
    double num = 0.0, den = 0.0;
    for (const auto& entity : from.entities) {
        std::set<std::size_t> touched;
        std::size_t twinless = 0;
        for (const auto& m : entity) {
            const auto it = idx.find(m);
            if (it == idx.end()) {
                ++twinless; // twinless members form singleton parts
            } else {
                touched.insert(it->second);
            }
        }
        const std::size_t parts = touched.size() + twinless;
        num += static_cast<double>(entity.size() - parts);
        den += static_cast<double>(entity.size() - 1);
    }
    return {num, den};
}

// B³ sum of per-mention overlap ratios of `from` against `against`.
inline double b_cubed_sum(const Partition& from, const Partition& against) {
    const auto idx = against.index();
    double sum = 0.0;
    for (const auto& entity : from.entities) {
        for (const auto& m : entity) {
            const auto it = idx.find(m);
            if (it == idx.end()) continue; // twinless: contributes 0
            sum += static_cast<double>(overlap(entity, against.entities[it->second])) /
                   static_cast<double>(entity.size());
        }
    }
    return sum;
}

inline double link_count(std::size_t n) {
    return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
}

// LEA weighted resolution sum of `from` against `against`, and the weight
// total.  Singleton entities resolve through a self-link.
inline std::pair<double, double> lea_side(const Partition& from, const Partition& against) {
    const auto idx = against.index();
    double weighted = 0.0, weight_total = 0.0;
    for (const auto& entity : from.entities) {
        const double size = static_cast<double>(entity.size());
        weight_total += size;
        double resolution = 0.0;
        if (entity.size() == 1) {
            // self-link: resolved iff the mention exists on the other side
            resolution = idx.count(*entity.begin()) ? 1.0 : 0.0;
        } else {
            std::map<std::size_t, std::size_t> per_entity;
            for (const auto& m : entity) {
                const auto it = idx.find(m);
                if (it != idx.end()) ++per_entity[it->second];
            }
            double resolved_links = 0.0;
            for (const auto& [_, n] : per_entity) resolved_links += link_count(n);
            resolution = resolved_links / link_count(entity.size());
        }
        weighted += size * resolution;
    }
    return {weighted, weight_total};
}

} // namespace detail

/// Link-based MUC score.  Undefined when the key has no non-singleton
/// entity (zero link denominator).
inline ScoreTriple muc(const Partition& key, const Partition& response) {
    const auto [rnum, rden] = detail::muc_side(key, response);
    if (rden <= 0.0) throw undefined_metric("MUC is undefined: key partition has only singletons");
    const auto [pnum, pden] = detail::muc_side(response, key);
    return ScoreTriple::from_pr(detail::ratio(pnum, pden), rnum / rden);
}

/// Mention-weighted B³ score.
inline ScoreTriple b_cubed(const Partition& key, const Partition& response) {
    const std::size_t key_mentions = key.mention_count();
    if (key_mentions == 0) throw undefined_metric("B³ is undefined: key partition is empty");
    const double r = detail::b_cubed_sum(key, response) / static_cast<double>(key_mentions);
    const double p =
        detail::ratio(detail::b_cubed_sum(response, key),
                      static_cast<double>(response.mention_count()));
    return ScoreTriple::from_pr(p, r);
}

/// Entity similarity used by CEAF.
inline double entity_similarity(const std::set<MentionKey>& a, const std::set<MentionKey>& b,
                                SimilarityKind kind) {
    const double inter = static_cast<double>(detail::overlap(a, b));
    if (kind == SimilarityKind::mention_overlap) return inter;
    return 2.0 * inter / static_cast<double>(a.size() + b.size());
}

/// Optimal one-to-one entity alignment maximizing total similarity.
/// Row i is a key entity, column j a response entity.
inline Assignment optimal_alignment(const std::vector<std::vector<double>>& similarity) {
    return max_assignment(similarity);
}

/// CEAF with the chosen similarity.  mention_overlap (phi3) normalizes by
/// mention counts, normalized_overlap (phi4) by entity counts.
inline ScoreTriple ceaf(const Partition& key, const Partition& response, SimilarityKind kind) {
    if (key.entity_count() == 0 || response.entity_count() == 0) {
        throw undefined_metric("CEAF is undefined: empty partition");
    }
    std::vector<std::vector<double>> sim(key.entity_count(),
                                         std::vector<double>(response.entity_count(), 0.0));
    for (std::size_t i = 0; i < key.entity_count(); ++i) {
        for (std::size_t j = 0; j < response.entity_count(); ++j) {
            sim[i][j] = entity_similarity(key.entities[i], response.entities[j], kind);
        }
    }
    const double total = optimal_alignment(sim).total;
    double rden, pden;
    if (kind == SimilarityKind::mention_overlap) {
        rden = static_cast<double>(key.mention_count());
        pden = static_cast<double>(response.mention_count());
    } else {
        rden = static_cast<double>(key.entity_count());
        pden = static_cast<double>(response.entity_count());
    }
    return ScoreTriple::from_pr(detail::ratio(total, pden), detail::ratio(total, rden));
}

/// BLANC: the mean of the F-scores over coreference links and non-links,
/// each partition contributing the pairs over its own mention set.  P and R
/// are averaged the same way.  When one pair class is empty on both sides,
/// the score reduces to the other class alone.
inline ScoreTriple blanc(const Partition& key, const Partition& response) {
    if (key.mention_count() < 2 || response.mention_count() < 2) {
        throw undefined_metric("BLANC is undefined: fewer than 2 mentions");
    }
    const auto key_idx = key.index();
    const auto resp_idx = response.index();

    double ck = 0.0, cr = 0.0; // link counts within each partition
    for (const auto& e : key.entities) ck += detail::link_count(e.size());
    for (const auto& e : response.entities) cr += detail::link_count(e.size());
    const double nk = detail::link_count(key.mention_count()) - ck;
    const double nr = detail::link_count(response.mention_count()) - cr;

    // Shared pairs: both mentions present on both sides.
    std::vector<MentionKey> shared;
    for (const auto& [m, _] : key_idx) {
        if (resp_idx.count(m)) shared.push_back(m);
    }
    double c_both = 0.0, n_both = 0.0;
    for (std::size_t i = 0; i < shared.size(); ++i) {
        for (std::size_t j = i + 1; j < shared.size(); ++j) {
            const bool lk = key_idx.at(shared[i]) == key_idx.at(shared[j]);
            const bool lr = resp_idx.at(shared[i]) == resp_idx.at(shared[j]);
            if (lk && lr) c_both += 1.0;
            if (!lk && !lr) n_both += 1.0;
        }
    }

    const double pc = detail::ratio(c_both, cr), rc = detail::ratio(c_both, ck);
    const double fc = (pc + rc) > 0.0 ? 2.0 * pc * rc / (pc + rc) : 0.0;
    const double pn = detail::ratio(n_both, nr), rn = detail::ratio(n_both, nk);
    const double fn = (pn + rn) > 0.0 ? 2.0 * pn * rn / (pn + rn) : 0.0;

    if (ck + cr == 0.0) return ScoreTriple{pn, rn, fn};
    if (nk + nr == 0.0) return ScoreTriple{pc, rc, fc};
    return ScoreTriple{(pc + pn) / 2.0, (rc + rn) / 2.0, (fc + fn) / 2.0};
}

/// LEA: link-based entity-aware score; each entity weighs by its size, its
/// resolution is the fraction of its links found on the other side.
inline ScoreTriple lea(const Partition& key, const Partition& response) {
    if (key.entity_count() == 0 || response.entity_count() == 0) {
        throw undefined_metric("LEA is undefined: empty partition");
    }
    const auto [rnum, rden] = detail::lea_side(key, response);
    const auto [pnum, pden] = detail::lea_side(response, key);
    return ScoreTriple::from_pr(detail::ratio(pnum, pden), detail::ratio(rnum, rden));
}

/// All six measures over the same key/response pair.
struct CorefReport {
    ScoreTriple muc;
    ScoreTriple b_cubed;
    ScoreTriple ceaf_m; // phi3
    ScoreTriple ceaf_e; // phi4
    ScoreTriple blanc;
    ScoreTriple lea;

    bool operator==(const CorefReport&) const = default;
};

inline CorefReport score_all(const Partition& key, const Partition& response) {
    CorefReport report;
    const auto run = [&](const char* name, ScoreTriple (*fn)(const Partition&, const Partition&),
                         ScoreTriple& slot) {
        try {
            slot = fn(key, response);
        } catch (const error& e) {
            throw undefined_metric(std::string(name) + ": " + e.what());
        }
    };
    run("muc", &muc, report.muc);
    run("b_cubed", &b_cubed, report.b_cubed);
    try {
        report.ceaf_m = ceaf(key, response, SimilarityKind::mention_overlap);
        report.ceaf_e = ceaf(key, response, SimilarityKind::normalized_overlap);
    } catch (const error& e) {
        throw undefined_metric(std::string("ceaf: ") + e.what());
    }
    run("blanc", &blanc, report.blanc);
    run("lea", &lea, report.lea);
    return report;
}

/// Partition file: one entity per line, mention keys whitespace separated,
/// '#' starts a comment.
inline Partition parse_partition(std::string_view text) {
    std::vector<std::set<MentionKey>> entities;
    std::size_t line_no = 0;
    for (std::string_view line : detail::split(text, '\n')) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        const auto words = detail::split_ws(line);
        if (words.empty()) continue;
        std::set<MentionKey> entity;
        for (const auto& w : words) {
            if (!entity.insert(w).second) {
                throw parse_error("mention key '" + w + "' repeated within an entity", line_no);
            }
        }
        entities.push_back(std::move(entity));
    }
    return Partition(std::move(entities));
}

inline Partition load_partition(const std::string& path) {
    return parse_partition(detail::read_file(path, "partition"));
}

} // namespace deid
