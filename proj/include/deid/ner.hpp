#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "deid/gazetteer.hpp"
#include "deid/lexicon.hpp"
#include "deid/person_name.hpp"
#include "deid/segment.hpp"
#include "deid/text.hpp"

// Rule-based detection of person-name mentions.  The rules are recall
// biased: a missed name is an exposure, a spurious one only costs precision
// and can be removed by the stoplist.  Triggers:
//
//   honorific    "Sr. Juan Pérez"       : run of capitalized tokens after an
//                                          honorific; the honorific itself is
//                                          NOT part of the mention span, so
//                                          redaction yields "Sr. AA".
//   conjunction  "Sres. Pedro y Juan Pérez": a plural honorific distributes
//                                          the shared surname; one mention
//                                          per person.
//   caption      "Pérez Rodríguez, Pedro"  : court-caption order in the
//                                          head sentence.
//   capitalized-sequence                 : any other run of two or more
//                                          capitalized tokens, or a single
//                                          token found in the gazetteer.
//
// A caption head sentence is one containing a versus marker ("c/").  Inside
// it, comma-joined runs that cannot be confidently read as one person in
// caption order (the run right of the comma must be all known given names)
// are ambiguous between one caption name and a list of parties; such runs
// are excluded from the mention stream rather than guessed at.

namespace deid {

enum class Trigger { honorific, caption, capitalized_sequence, conjunction };

struct Mention {
    Span span;            // token-aligned; excludes any honorific trigger
    std::string surface;  // document text at span
    PersonName parsed;
    Trigger trigger;
};

namespace detail {

// Closed-class words that are never name parts even when capitalized at a
// sentence start ("El Tribunal", "En Montevideo").
inline bool is_function_word(std::string_view surface) {
    static const std::set<std::string> words = {
        "el",    "la",     "los",    "las",    "un",     "una",   "unos",    "unas",  "y",
        "e",     "o",      "u",      "ni",     "no",     "que",   "de",      "del",   "al",
        "a",     "en",     "con",    "por",    "para",   "sin",   "sobre",   "entre", "hacia",
        "desde", "hasta",  "según",  "tras",   "ante",   "bajo",  "contra",  "durante",
        "se",    "su",     "sus",    "lo",     "le",     "les",   "mi",      "si",    "sí",
        "es",    "son",    "fue",    "como",   "cuando", "donde", "mientras", "pero",  "pues",
        "ya"};
    return words.count(uni::lower(surface)) != 0;
}

// A token usable inside a name run: capitalized, letters only (hyphens and
// apostrophes allowed), no trailing period.  Excludes honorifics ("Sr."),
// initials ("J."), ordinals, numbers and capitalized function words.
inline bool is_name_token(const Token& tok) {
    const auto cps = uni::decode(tok.surface);
    if (cps.empty() || !uni::is_upper(cps[0])) return false;
    for (char32_t c : cps) {
        if (!uni::is_letter(c) && c != U'-' && c != U'\'' && c != 0x2019) return false;
    }
    return !is_function_word(tok.surface);
}

struct NameRun {
    std::size_t first = 0; // token indices, half open
    std::size_t last = 0;
    std::size_t cap_count = 0;

    bool empty() const { return first >= last; }
};

// Longest run starting at `i` of name tokens, allowing particle tokens
// ("de", "del", "la") inside when a name token follows them.  A run must
// begin with a name token, so "de Pedro" yields the run "Pedro".
inline NameRun scan_name_run(const std::vector<Token>& tokens, std::size_t i, std::size_t limit,
                             const Gazetteer& gaz) {
    NameRun run;
    run.first = run.last = i;
    if (i >= limit || !is_name_token(tokens[i])) return run;
    std::size_t j = i;
    while (j < limit) {
        if (is_name_token(tokens[j])) {
            ++j;
            run.last = j;
            ++run.cap_count;
            continue;
        }
        if (gaz.is_particle(tokens[j].surface)) {
            std::size_t k = j;
            while (k < limit && gaz.is_particle(tokens[k].surface)) ++k;
            if (k < limit && is_name_token(tokens[k])) {
                j = k; // absorb particles, continue at the name token
                continue;
            }
        }
        break;
    }
    return run;
}

inline Span run_span(const std::vector<Token>& tokens, std::size_t first, std::size_t last) {
    return Span(tokens[first].span.start, tokens[last - 1].span.end);
}

} // namespace detail

/// Detects person-name mentions in a segmented document.  Output is sorted
/// by start offset, non-overlapping, and never crosses a sentence boundary.
inline std::vector<Mention> recognize(const Document& doc, const SegmentationResult& seg,
                                      const Gazetteer& gaz,
                                      const Honorifics& honorifics = Honorifics::defaults(),
                                      const AbbreviationLexicon& lex = AbbreviationLexicon{}) {
    std::vector<Mention> mentions;
    const auto& tokens = seg.tokens;

    const auto emit = [&](std::size_t first, std::size_t last, Trigger trigger,
                          PersonName parsed) {
        const Span span = detail::run_span(tokens, first, last);
        mentions.push_back(Mention{span, doc.slice(span), std::move(parsed), trigger});
    };

    for (std::size_t si = 0; si < seg.sentences.size(); ++si) {
        const Sentence& sent = seg.sentences[si];

        // Caption sentences are marked by a versus token ("c/").
        bool caption_sentence = false;
        if (si == 0) {
            for (std::size_t t = sent.first_token; t < sent.last_token; ++t) {
                if (lex.is_slash_form(tokens[t].surface)) {
                    caption_sentence = true;
                    break;
                }
            }
        }

        std::size_t i = sent.first_token;
        while (i < sent.last_token) {
            const Token& tok = tokens[i];

            if (honorifics.is_honorific(tok.surface)) {
                const bool plural = honorifics.is_plural(tok.surface);
                // Collect conjunct groups after a plural honorific:
                // cap-run ("y" | ",") cap-run ...
                std::vector<detail::NameRun> groups;
                std::size_t j = i + 1;
                while (j < sent.last_token) {
                    const auto run = detail::scan_name_run(tokens, j, sent.last_token, gaz);
                    if (run.empty()) break;
                    groups.push_back(run);
                    j = run.last;
                    if (!plural) break;
                    if (j < sent.last_token &&
                        (tokens[j].surface == "y" || tokens[j].surface == "e" ||
                         tokens[j].surface == ",")) {
                        ++j;
                        continue;
                    }
                    break;
                }
                if (groups.empty()) {
                    ++i;
                    continue;
                }
                if (plural && groups.size() >= 2) {
                    // Parse each group, then distribute the last group's
                    // surnames over conjuncts that lack one.
                    std::vector<PersonName> parsed;
                    bool ok = true;
                    for (const auto& g : groups) {
                        try {
                            parsed.push_back(parse_person_name(
                                doc.slice(detail::run_span(tokens, g.first, g.last)), gaz,
                                honorifics));
                        } catch (const not_a_name&) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) {
                        const std::vector<std::string> shared = parsed.back().surnames;
                        for (std::size_t g = 0; g < groups.size(); ++g) {
                            parsed[g].honorific = tok.surface;
                            if (parsed[g].surnames.empty()) parsed[g].surnames = shared;
                            emit(groups[g].first, groups[g].last, Trigger::conjunction,
                                 std::move(parsed[g]));
                        }
                        i = groups.back().last;
                        continue;
                    }
                }
                // Singular honorific (or degenerate conjunction): one run.
                const auto& run = groups.front();
                PersonName parsed =
                    parse_person_name(doc.slice(detail::run_span(tokens, run.first, run.last)),
                                      gaz, honorifics);
                parsed.honorific = tok.surface;
                emit(run.first, run.last, Trigger::honorific, std::move(parsed));
                i = run.last;
                continue;
            }

            const auto run = detail::scan_name_run(tokens, i, sent.last_token, gaz);
            if (run.empty()) {
                ++i;
                continue;
            }

            // Caption pattern: run "," run in the head sentence.
            if (si == 0 && run.last < sent.last_token && tokens[run.last].surface == ",") {
                const auto right =
                    detail::scan_name_run(tokens, run.last + 1, sent.last_token, gaz);
                if (!right.empty()) {
                    bool right_all_given = true;
                    for (std::size_t t = right.first; t < right.last; ++t) {
                        if (detail::is_name_token(tokens[t]) && !gaz.is_given(tokens[t].surface)) {
                            right_all_given = false;
                        }
                    }
                    bool left_any_given = false;
                    for (std::size_t t = run.first; t < run.last; ++t) {
                        if (gaz.is_given(tokens[t].surface)) left_any_given = true;
                    }
                    if (right_all_given && !left_any_given) {
                        const Span span = Span(tokens[run.first].span.start,
                                               tokens[right.last - 1].span.end);
                        PersonName parsed = parse_person_name(doc.slice(span), gaz, honorifics);
                        mentions.push_back(
                            Mention{span, doc.slice(span), std::move(parsed), Trigger::caption});
                        i = right.last;
                        continue;
                    }
                    if (caption_sentence) {
                        // Ambiguous party caption ("Jorge Martínez, Juan
                        // Líber c/ ..."): one person in caption order or two
                        // parties?  Neither reading is safe; skip both runs.
                        i = right.last;
                        continue;
                    }
                }
            }

            if (run.cap_count >= 2 ||
                (run.cap_count == 1 && gaz.is_given(tokens[run.first].surface))) {
                const Span span = detail::run_span(tokens, run.first, run.last);
                PersonName parsed = parse_person_name(doc.slice(span), gaz, honorifics);
                mentions.push_back(
                    Mention{span, doc.slice(span), std::move(parsed), Trigger::capitalized_sequence});
            }
            i = run.last;
        }
    }
    return mentions;
}

/// Drops mentions whose full surface is a known non-person phrase.
inline std::vector<Mention> filter_stopforms(std::vector<Mention> mentions,
                                             const std::set<std::string>& stoplist) {
    std::vector<Mention> out;
    out.reserve(mentions.size());
    for (auto& m : mentions) {
        if (!stoplist.count(m.surface)) out.push_back(std::move(m));
    }
    return out;
}

} // namespace deid
