#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deid/coref_eval.hpp"
#include "deid/ner.hpp"
#include "deid/person_name.hpp"
#include "deid/text.hpp"

// Greedy left-to-right chaining of detected mentions into person chains.
// Each mention joins the unique existing chain whose canonical name it is
// compatible with; with several compatible chains it joins the strictly most
// specific one (largest shared part count) and otherwise founds a new chain.
// Ambiguity never merges: a wrong merge collapses two real people into one
// label, while a wrong split only spends an extra label.
//
// A single-part mention ("Pedro", "Pérez") is tried under both readings,
// given name and bare surname.  That is what lets "Pérez" join the chain of
// "Juan Pérez" when that chain is the only one carrying the surname, and
// what keeps it apart when two chains do.  Canonical names are enriched as
// more specific variants arrive, so a late "Pedro Pérez Rodríguez" governs
// an early bare "Pedro" through the chain canonical.

namespace deid {

struct Chain {
    std::size_t id = 0;
    std::vector<std::size_t> mention_indices; // strictly increasing, document order
    PersonName canonical;                     // union of all compatible member parts
};

struct ChainSet {
    std::vector<Chain> chains;
    std::vector<Span> mention_spans; // spans of all mentions, by mention index
};

namespace detail {

inline void union_into(std::vector<std::string>& parts, const std::vector<std::string>& more) {
    for (const auto& p : more) {
        bool present = false;
        for (const auto& q : parts) {
            if (q == p) {
                present = true;
                break;
            }
        }
        if (!present) parts.push_back(p);
    }
}

// Readings of a mention's name: the parse itself, plus the bare-surname
// reading for single-part names.
inline std::vector<PersonName> readings(const PersonName& parsed) {
    std::vector<PersonName> out{parsed};
    if (parsed.single_part()) {
        PersonName alt = parsed;
        std::swap(alt.given, alt.surnames);
        out.push_back(std::move(alt));
    }
    return out;
}

} // namespace detail

/// Groups mentions (sorted by document order) into chains.  Deterministic
/// for a fixed order; mentions with identical surface forms always share a
/// chain.
inline ChainSet chain(const std::vector<Mention>& mentions, bool fold_accents = false) {
    ChainSet cs;
    cs.mention_spans.reserve(mentions.size());
    for (const auto& m : mentions) cs.mention_spans.push_back(m.span);

    // surface -> (chain index, reading that joined it)
    std::map<std::string, std::pair<std::size_t, PersonName>> by_surface;

    const auto join = [&](std::size_t chain_idx, std::size_t mention_idx,
                          const PersonName& reading) {
        Chain& c = cs.chains[chain_idx];
        c.mention_indices.push_back(mention_idx);
        detail::union_into(c.canonical.given, reading.given);
        detail::union_into(c.canonical.surnames, reading.surnames);
    };

    for (std::size_t mi = 0; mi < mentions.size(); ++mi) {
        const Mention& m = mentions[mi];

        if (const auto it = by_surface.find(m.surface); it != by_surface.end()) {
            join(it->second.first, mi, it->second.second);
            continue;
        }

        struct Candidate {
            std::size_t chain_idx;
            PersonName reading;
            std::size_t shared;
        };
        std::vector<Candidate> candidates;
        for (std::size_t ci = 0; ci < cs.chains.size(); ++ci) {
            std::optional<Candidate> best;
            for (const auto& reading : detail::readings(m.parsed)) {
                if (!compatible(reading, cs.chains[ci].canonical, fold_accents)) continue;
                const std::size_t shared =
                    shared_parts(reading, cs.chains[ci].canonical, fold_accents);
                if (!best || shared > best->shared) best = Candidate{ci, reading, shared};
            }
            if (best) candidates.push_back(std::move(*best));
        }

        std::optional<Candidate> chosen;
        if (candidates.size() == 1) {
            chosen = candidates.front();
        } else if (candidates.size() > 1) {
            // Join only a strictly most specific chain; ties found a new one.
            std::size_t best_i = 0;
            bool tie = false;
            for (std::size_t i = 1; i < candidates.size(); ++i) {
                if (candidates[i].shared > candidates[best_i].shared) {
                    best_i = i;
                    tie = false;
                } else if (candidates[i].shared == candidates[best_i].shared) {
                    tie = true;
                }
            }
            if (!tie) chosen = candidates[best_i];
        }

        if (chosen) {
            join(chosen->chain_idx, mi, chosen->reading);
            by_surface.emplace(m.surface, std::make_pair(chosen->chain_idx, chosen->reading));
        } else {
            Chain c;
            c.id = cs.chains.size();
            c.mention_indices.push_back(mi);
            c.canonical = m.parsed;
            c.canonical.honorific.clear();
            c.canonical.caption_form = false;
            cs.chains.push_back(std::move(c));
            by_surface.emplace(m.surface, std::make_pair(cs.chains.size() - 1, m.parsed));
        }
    }
    return cs;
}

/// Bridges a chain set to the coreference scorers: each chain becomes one
/// entity whose mention keys are the spans, rendered "start-end".
inline Partition to_partition(const ChainSet& cs) {
    std::vector<std::set<MentionKey>> entities;
    for (const auto& c : cs.chains) {
        std::set<MentionKey> entity;
        for (std::size_t mi : c.mention_indices) {
            const Span& s = cs.mention_spans[mi];
            entity.insert(std::to_string(s.start) + "-" + std::to_string(s.end));
        }
        entities.push_back(std::move(entity));
    }
    return Partition(std::move(entities));
}

} // namespace deid
