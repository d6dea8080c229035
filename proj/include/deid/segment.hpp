#pragma once

#include <string>
#include <vector>

#include "deid/lexicon.hpp"
#include "deid/text.hpp"
#include "deid/unicode.hpp"

// Tokenizer and sentence segmenter for Spanish legal text.  The failure mode
// they are built against is the period: abbreviations ("Sr.", "fs.", "No.",
// "pág.") and ordinals ("7o.") end in one, and naive segmenters break there.
// Tokens cover every non-whitespace character of the document; sentences
// partition the tokens.

namespace deid {

struct SegmentationResult {
    std::vector<Token> tokens;
    std::vector<Sentence> sentences;
};

namespace detail {

inline bool is_opening_punct(char32_t c) {
    switch (c) {
        case U'(': case U'[': case U'{': case U'"': case U'\'':
        case 0x00AB /* « */: case 0x201C /* “ */: case 0x2018 /* ‘ */:
        case 0x00BF /* ¿ */: case 0x00A1 /* ¡ */:
            return true;
        default:
            return false;
    }
}

inline bool is_closing_punct(char32_t c) {
    switch (c) {
        case U')': case U']': case U'}': case U'"': case U'\'':
        case 0x00BB /* » */: case 0x201D /* ” */: case 0x2019 /* ’ */:
            return true;
        default:
            return false;
    }
}

inline bool is_trailing_punct(char32_t c) {
    if (is_closing_punct(c)) return true;
    switch (c) {
        case U'.': case U',': case U';': case U':': case U'!': case U'?':
        case 0x2026 /* … */:
            return true;
        default:
            return false;
    }
}

inline bool is_sentence_final(char32_t c) {
    return c == U'.' || c == U'!' || c == U'?' || c == 0x2026;
}

inline Token make_token(const Document& doc, std::size_t start, std::size_t end) {
    const Span span(start, end);
    return Token{span, doc.slice(span)};
}

// Splits one whitespace-delimited run [s, e) into tokens.  Opening
// punctuation is peeled from the left, trailing punctuation from the right,
// except where the remaining core is a protected form (abbreviation,
// ordinal, slashed number, initial).  A trailing run of two or more periods
// comes off as a single ellipsis token.
inline void split_run(const Document& doc, std::size_t s, std::size_t e,
                      const AbbreviationLexicon& lex, std::vector<Token>& out) {
    while (s < e && is_opening_punct(doc.at(s))) {
        out.push_back(make_token(doc, s, s + 1));
        ++s;
    }
    if (s >= e) return;

    // Known slash prefix glued to the next word ("c/Pérez") splits after it.
    for (const auto& form : lex.slash_forms) {
        const std::size_t flen = uni::length(form);
        if (e - s > flen && doc.slice(Span(s, s + flen)) == form) {
            out.push_back(make_token(doc, s, s + flen));
            s += flen;
            break;
        }
    }

    std::vector<Token> tail; // peeled trailing tokens, in reverse order
    while (e - s > 1) {
        if (lex.is_protected(doc.slice(Span(s, e)))) break;
        const char32_t last = doc.at(e - 1);
        if (!is_trailing_punct(last)) break;
        if (last == U'.') {
            std::size_t k = e - 1;
            while (k > s && doc.at(k - 1) == U'.') --k;
            if (k == s) break; // the whole core is dots: one token
            if (e - k >= 2) {  // "..." comes off as one unit
                tail.push_back(make_token(doc, k, e));
                e = k;
                continue;
            }
        }
        tail.push_back(make_token(doc, e - 1, e));
        --e;
    }
    out.push_back(make_token(doc, s, e));
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) out.push_back(*it);
}

} // namespace detail

/// Tokenizes a document.  Total: every non-whitespace character lands in
/// exactly one token, tokens are sorted and non-overlapping.
inline std::vector<Token> tokenize(const Document& doc, const AbbreviationLexicon& lex) {
    std::vector<Token> out;
    const std::size_t n = doc.length();
    std::size_t i = 0;
    while (i < n) {
        if (uni::is_space(doc.at(i))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && !uni::is_space(doc.at(j))) ++j;
        detail::split_run(doc, i, j, lex, out);
        i = j;
    }
    return out;
}

namespace detail {

// A token after which a sentence may end: it ends with sentence-final
// punctuation and is not a protected form.  Covers both a standalone "." /
// "..." token and a word with an unsplit trailing period.
inline bool is_terminator(const Token& tok, const AbbreviationLexicon& lex) {
    const auto cps = uni::decode(tok.surface);
    if (cps.empty() || !is_sentence_final(cps.back())) return false;
    return !lex.is_protected(tok.surface);
}

inline bool is_closer_token(const Token& tok) {
    const auto cps = uni::decode(tok.surface);
    return cps.size() == 1 && is_closing_punct(cps[0]);
}

} // namespace detail

/// Groups tokens into sentences.  A boundary is placed after sentence-final
/// punctuation that does not belong to an abbreviation or ordinal, with
/// closing quotes and brackets absorbed into the ending sentence.  A
/// terminator followed by a lowercase letter or a digit never breaks.  The
/// end of the token stream always closes the final sentence, even when the
/// last token is an abbreviation.
inline std::vector<Sentence> segment(const std::vector<Token>& tokens, const Document& doc,
                                     const AbbreviationLexicon& lex) {
    if (!tokens.empty() && tokens.back().span.end > doc.length()) {
        throw integrity_error("tokens extend beyond the document they claim to segment");
    }
    std::vector<Sentence> out;
    const std::size_t n = tokens.size();
    std::size_t first = 0, i = 0;
    while (i < n) {
        if (detail::is_terminator(tokens[i], lex)) {
            std::size_t j = i + 1;
            while (j < n && detail::is_closer_token(tokens[j])) ++j;
            bool boundary = true;
            if (j < n) {
                const char32_t c = uni::first_scalar(tokens[j].surface);
                if (uni::is_lower(c) || uni::is_digit(c)) boundary = false;
            }
            if (boundary) {
                out.push_back(Sentence{first, j});
                first = j;
                i = j;
                continue;
            }
        }
        ++i;
    }
    if (first < n) out.push_back(Sentence{first, n});
    return out;
}

inline SegmentationResult segment_document(const Document& doc, const AbbreviationLexicon& lex) {
    SegmentationResult result;
    result.tokens = tokenize(doc, lex);
    result.sentences = segment(result.tokens, doc, lex);
    return result;
}

} // namespace deid
