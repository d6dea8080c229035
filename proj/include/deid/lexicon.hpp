#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "deid/errors.hpp"
#include "deid/unicode.hpp"

namespace deid {

/// Abbreviations and related non-breaking forms for the tokenizer and
/// sentence segmenter.  Abbreviation entries keep their trailing period and
/// are matched case-sensitively; an optional case-folded fallback can be
/// enabled for sloppily cased input.  Ordinals ("7o.", "1a.", "7º.") and
/// run-together numbers ("134/98", "36/37") are matched by pattern, not
/// enumeration.
struct AbbreviationLexicon {
    std::set<std::string> entries;        // each ends with '.'
    std::set<std::string> slash_forms;    // each ends with '/', e.g. "c/"
    bool case_fold_fallback = false;

    void add(const std::string& form) {
        if (form.empty()) throw parse_error("empty lexicon entry");
        if (form.back() == '/') {
            slash_forms.insert(form);
            return;
        }
        if (form.back() != '.') {
            throw parse_error("lexicon entry '" + form + "' must end with '.' or '/'");
        }
        const std::string folded = uni::lower(form);
        if (!folded_entries_.insert(folded).second && !entries.count(form)) {
            throw parse_error("lexicon entry '" + form +
                              "' duplicates an existing entry after case-folding");
        }
        entries.insert(form);
    }

    bool is_abbreviation(std::string_view token) const {
        if (entries.count(std::string(token))) return true;
        return case_fold_fallback && folded_entries_.count(uni::lower(token));
    }

    bool is_slash_form(std::string_view token) const {
        return slash_forms.count(std::string(token)) != 0;
    }

    /// Ordinal with gender suffix and period: "7o.", "1a.", "12as.", "3º.".
    static bool is_ordinal(std::string_view token) {
        const auto cps = uni::decode(token);
        if (cps.size() < 3 || cps.back() != U'.') return false;
        std::size_t i = 0;
        while (i < cps.size() && uni::is_digit(cps[i])) ++i;
        if (i == 0) return false;
        const std::size_t suffix_len = cps.size() - 1 - i;
        if (suffix_len < 1 || suffix_len > 2) return false;
        const char32_t c0 = cps[i];
        if (c0 != U'o' && c0 != U'a' && c0 != 0xBA && c0 != 0xAA) return false;
        if (suffix_len == 2 && cps[i + 1] != U's') return false;
        return true;
    }

    /// Number with internal slashes: "134/98", "36/37", "2/3/2011".
    static bool is_slashed_number(std::string_view token) {
        bool saw_slash = false, expect_digit = true;
        for (char ch : token) {
            if (ch >= '0' && ch <= '9') {
                expect_digit = false;
            } else if (ch == '/') {
                if (expect_digit) return false;
                saw_slash = true;
                expect_digit = true;
            } else {
                return false;
            }
        }
        return saw_slash && !expect_digit;
    }

    /// Single-letter initial: "J.": kept whole so names like "J. Pérez"
    /// do not end sentences.
    static bool is_initial(std::string_view token) {
        const auto cps = uni::decode(token);
        return cps.size() == 2 && uni::is_upper(cps[0]) && cps[1] == U'.';
    }

    /// Any form the tokenizer must not split and the segmenter must not
    /// break after.
    bool is_protected(std::string_view token) const {
        return is_abbreviation(token) || is_ordinal(token) || is_slashed_number(token) ||
               is_initial(token);
    }

    /// One form per line, UTF-8, '#' starts a comment line.
    static AbbreviationLexicon parse(std::string_view text) {
        AbbreviationLexicon lex;
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string line(text.substr(start, end - start));
            start = end + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.erase(0, 1);
            while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
            if (line.empty() || line[0] == '#') {
                if (start > text.size()) break;
                continue;
            }
            try {
                lex.add(line);
            } catch (const parse_error& e) {
                throw parse_error(e.what(), line_no);
            }
            if (start > text.size()) break;
        }
        return lex;
    }

    static AbbreviationLexicon load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw parse_error("cannot open lexicon file " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

private:
    std::set<std::string> folded_entries_;
};

} // namespace deid
