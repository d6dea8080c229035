#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "deid/errors.hpp"
#include "deid/gazetteer.hpp"
#include "deid/io.hpp"
#include "deid/unicode.hpp"

// Structured person names and the variant-compatibility relation that drives
// chaining.  A name is an optional honorific plus ordered given names and
// surnames; caption form is the court-caption order "Surname(s), Given(s)".
// Two names are compatible when neither contradicts the other: their given
// name sets are nested either way, and so are their surname sets.  An empty
// list is compatible with anything, so the bare "Pedro" is compatible with
// "Pedro Pérez Rodríguez".  Compatibility is symmetric and reflexive but
// deliberately not transitive; resolving that is the chainer's job.

namespace deid {

struct PersonName {
    std::string honorific;             // empty when absent
    std::vector<std::string> given;
    std::vector<std::string> surnames; // particles glued: "de la Cruz"
    bool caption_form = false;         // parsed from "Surname(s), Given(s)"

    bool operator==(const PersonName&) const = default;

    bool single_part() const { return given.size() + surnames.size() == 1; }

    /// Canonical given-first rendering, honorific included.
    std::string render() const {
        std::string out = honorific;
        for (const auto& g : given) {
            if (!out.empty()) out += ' ';
            out += g;
        }
        for (const auto& s : surnames) {
            if (!out.empty()) out += ' ';
            out += s;
        }
        return out;
    }
};

namespace detail {

inline bool is_capitalized_word(std::string_view word) {
    const auto cps = uni::decode(word);
    return !cps.empty() && uni::is_upper(cps[0]);
}

inline std::set<std::string> part_set(const std::vector<std::string>& parts, bool fold) {
    std::set<std::string> out;
    for (const auto& p : parts) out.insert(fold ? uni::fold(p) : p);
    return out;
}

inline bool subset_either_way(const std::set<std::string>& a, const std::set<std::string>& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    return std::includes(large.begin(), large.end(), small.begin(), small.end());
}

// Builds name units from words: each unit is one capitalized word with any
// preceding particles glued on ("de la Cruz").  Other lowercase words are
// ignored.  Returns an empty vector when no capitalized word exists.
inline std::vector<std::string> name_units(const std::vector<std::string>& words,
                                           const Gazetteer& gaz) {
    std::vector<std::string> units;
    std::string pending;
    for (const auto& word : words) {
        if (is_capitalized_word(word)) {
            if (pending.empty()) {
                units.push_back(word);
            } else {
                units.push_back(pending + " " + word);
                pending.clear();
            }
        } else if (gaz.is_particle(word)) {
            if (!pending.empty()) pending += ' ';
            pending += word;
        } else {
            pending.clear();
        }
    }
    return units;
}

/// The bare capitalized core of a unit ("de la Cruz" -> "Cruz").
inline std::string unit_core(const std::string& unit) {
    const auto pos = unit.rfind(' ');
    return pos == std::string::npos ? unit : unit.substr(pos + 1);
}

} // namespace detail

/// Parses one person's surface form.  A comma switches to caption form:
/// everything left of it is surnames, everything right is given names.
/// Otherwise leading units found in the gazetteer are given names and the
/// rest are surnames; an unknown leading unit defaults to a given name.
inline PersonName parse_person_name(std::string_view surface, const Gazetteer& gaz,
                                    const Honorifics& honorifics = Honorifics::defaults()) {
    std::vector<std::string> words = detail::split_ws(surface);
    PersonName name;
    if (!words.empty() && honorifics.is_honorific(words.front())) {
        name.honorific = words.front();
        words.erase(words.begin());
    }

    // Caption split on the first comma, whether glued to a word or free.
    std::vector<std::string> left, right;
    bool seen_comma = false;
    for (auto& word : words) {
        if (word == ",") {
            seen_comma = true;
            continue;
        }
        if (!seen_comma && word.size() > 1 && word.back() == ',') {
            word.pop_back();
            left.push_back(word);
            seen_comma = true;
            continue;
        }
        (seen_comma ? right : left).push_back(word);
    }

    if (seen_comma && !right.empty()) {
        name.surnames = detail::name_units(left, gaz);
        name.given = detail::name_units(right, gaz);
        name.caption_form = true;
        if (name.given.empty() && name.surnames.empty()) {
            throw not_a_name("no capitalized name token in '" + std::string(surface) + "'");
        }
        return name;
    }

    const std::vector<std::string> units = detail::name_units(left, gaz);
    if (units.empty()) {
        throw not_a_name("no capitalized name token in '" + std::string(surface) + "'");
    }
    std::size_t split = 0;
    while (split < units.size() && gaz.is_given(units[split])) ++split;
    if (split == 0) split = 1; // unknown first unit: default to a given name
    name.given.assign(units.begin(), units.begin() + split);
    name.surnames.assign(units.begin() + split, units.end());
    return name;
}

/// Expands a plural-honorific conjunction ("Sres. Pedro y Juan Pérez") into
/// one name per conjunct, distributing the last conjunct's surnames over the
/// conjuncts that have none.  Surfaces that do not match the pattern fall
/// back to a single-name parse.
inline std::vector<PersonName> expand_conjunction(
    std::string_view surface, const Gazetteer& gaz,
    const Honorifics& honorifics = Honorifics::defaults()) {
    const std::vector<std::string> words = detail::split_ws(surface);
    const auto fallback = [&] {
        return std::vector<PersonName>{parse_person_name(surface, gaz, honorifics)};
    };
    if (words.empty()) return fallback();

    std::size_t i = 0;
    std::string honorific;
    if (honorifics.is_honorific(words[0])) {
        if (!honorifics.is_plural(words[0])) return fallback();
        honorific = words[0];
        i = 1;
    } else {
        return fallback();
    }

    std::vector<std::vector<std::string>> groups(1);
    for (; i < words.size(); ++i) {
        std::string word = words[i];
        bool breaks_after = false;
        if (word.size() > 1 && word.back() == ',') {
            word.pop_back();
            breaks_after = true;
        }
        if (word == "y" || word == "e" || word == ",") {
            if (!groups.back().empty()) groups.emplace_back();
            continue;
        }
        groups.back().push_back(word);
        if (breaks_after && !groups.back().empty()) groups.emplace_back();
    }
    if (!groups.empty() && groups.back().empty()) groups.pop_back();
    if (groups.size() < 2) return fallback();

    std::vector<PersonName> names;
    for (const auto& group : groups) {
        std::string joined;
        for (const auto& w : group) {
            if (!joined.empty()) joined += ' ';
            joined += w;
        }
        try {
            PersonName n = parse_person_name(joined, gaz, honorifics);
            n.honorific = honorific;
            names.push_back(std::move(n));
        } catch (const not_a_name&) {
            return fallback();
        }
    }
    const std::vector<std::string> shared = names.back().surnames;
    for (auto& n : names) {
        if (n.surnames.empty()) n.surnames = shared;
    }
    return names;
}

/// Number of name parts two names share (given plus surname intersections).
inline std::size_t shared_parts(const PersonName& a, const PersonName& b,
                                bool fold_accents = false) {
    const auto inter = [&](const std::vector<std::string>& x, const std::vector<std::string>& y) {
        const auto xs = detail::part_set(x, fold_accents);
        const auto ys = detail::part_set(y, fold_accents);
        std::size_t n = 0;
        for (const auto& e : xs) n += ys.count(e);
        return n;
    };
    return inter(a.given, b.given) + inter(a.surnames, b.surnames);
}

/// Variant compatibility: given-name sets nested either way AND surname sets
/// nested either way.  Empty lists are compatible with anything.  Accents
/// are significant unless fold_accents is set.
inline bool compatible(const PersonName& a, const PersonName& b, bool fold_accents = false) {
    const auto ga = detail::part_set(a.given, fold_accents);
    const auto gb = detail::part_set(b.given, fold_accents);
    const auto sa = detail::part_set(a.surnames, fold_accents);
    const auto sb = detail::part_set(b.surnames, fold_accents);
    return detail::subset_either_way(ga, gb) && detail::subset_either_way(sa, sb);
}

} // namespace deid
