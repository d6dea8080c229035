#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "deid/errors.hpp"
#include "deid/io.hpp"
#include "deid/unicode.hpp"

namespace deid {

namespace detail {

/// One entry per line, UTF-8, '#' comment lines; multi-word lines are split
/// into their words.
inline std::set<std::string> parse_word_list(std::string_view text) {
    std::set<std::string> out;
    std::string word;
    bool in_comment = false;
    const auto flush = [&] {
        if (!word.empty()) {
            out.insert(word);
            word.clear();
        }
    };
    for (char ch : text) {
        if (ch == '\n') {
            flush();
            in_comment = false;
        } else if (in_comment) {
            continue;
        } else if (ch == '#') {
            flush();
            in_comment = true;
        } else if (ch == ' ' || ch == '\t' || ch == '\r') {
            flush();
        } else {
            word.push_back(ch);
        }
    }
    flush();
    return out;
}

} // namespace detail

/// Name knowledge for splitting given names from surnames: a set of known
/// given names and the linking particles that glue onto the surname that
/// follows them ("de", "del", "de la", "los").
struct Gazetteer {
    std::set<std::string> given_names;
    std::set<std::string> surname_particles;

    bool is_given(std::string_view word) const {
        return given_names.count(std::string(word)) != 0;
    }

    /// Particles are matched case-insensitively ("De la Cruz").
    bool is_particle(std::string_view word) const {
        return surname_particles.count(uni::lower(word)) != 0;
    }

    static Gazetteer load(const std::string& given_path, const std::string& particles_path) {
        Gazetteer gaz;
        gaz.given_names = detail::parse_word_list(detail::read_file(given_path, "gazetteer"));
        gaz.surname_particles =
            detail::parse_word_list(detail::read_file(particles_path, "gazetteer"));
        return gaz;
    }
};

/// Honorific inventory.  Plural forms ("Sres.") trigger conjunction
/// expansion; the honorific itself stays outside every mention span.
struct Honorifics {
    std::set<std::string> singular;
    std::set<std::string> plural;

    bool is_honorific(std::string_view word) const {
        const std::string w(word);
        return singular.count(w) != 0 || plural.count(w) != 0;
    }

    bool is_plural(std::string_view word) const { return plural.count(std::string(word)) != 0; }

    static Honorifics defaults() {
        Honorifics h;
        h.singular = {"Sr.", "Sra.", "Srta.", "Dr.", "Dra.", "D.", "Da.", "Dña.", "Lic.", "Esc.",
                      "Ing.", "Cr."};
        h.plural = {"Sres.", "Sras.", "Srtas.", "Dres.", "Dras."};
        return h;
    }

    /// One honorific per line; a form whose stem ends in 's' is plural.
    static Honorifics parse(std::string_view text) {
        Honorifics h;
        for (const auto& form : detail::parse_word_list(text)) {
            if (form.size() < 2 || form.back() != '.') {
                throw parse_error("honorific '" + form + "' must end with '.'");
            }
            if (form[form.size() - 2] == 's') {
                h.plural.insert(form);
            } else {
                h.singular.insert(form);
            }
        }
        return h;
    }

    static Honorifics load(const std::string& path) {
        return parse(detail::read_file(path, "honorifics"));
    }
};

/// Phrases whose exact surface never names a person (court names, months,
/// legal boilerplate).  Used by filter_stopforms.
inline std::set<std::string> parse_stoplist(std::string_view text) {
    std::set<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        const bool at_end = end >= text.size();
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.erase(0, 1);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
        if (!line.empty() && line[0] != '#') out.insert(line);
        if (at_end) break;
    }
    return out;
}

inline std::set<std::string> load_stoplist(const std::string& path) {
    return parse_stoplist(detail::read_file(path, "stoplist"));
}

} // namespace deid
