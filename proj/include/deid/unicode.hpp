#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "deid/errors.hpp"

// Minimal UTF-8 and Latin character handling.  All offsets in this library
// count Unicode scalar values, never bytes, so annotation offsets stay valid
// across encodings.  Case classification covers ASCII and Latin-1, which is
// all Spanish text needs; scalars above U+00FF are treated as lowercase
// letters.

namespace deid::uni {

/// Decodes the scalar value starting at byte `pos` and advances `pos` past it.
/// Throws parse_error on malformed UTF-8.
inline char32_t decode_at(std::string_view text, std::size_t& pos) {
    const auto byte = [&](std::size_t i) -> unsigned char {
        return static_cast<unsigned char>(text[i]);
    };
    if (pos >= text.size()) throw parse_error("UTF-8 decode past end of text");
    const unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len = 0;
    char32_t c = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        c = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        c = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        c = b0 & 0x07;
    } else {
        throw parse_error("invalid UTF-8 lead byte");
    }
    if (pos + len > text.size()) throw parse_error("truncated UTF-8 sequence");
    for (int i = 1; i < len; ++i) {
        const unsigned char bi = byte(pos + i);
        if ((bi & 0xC0) != 0x80) throw parse_error("invalid UTF-8 continuation byte");
        c = (c << 6) | (bi & 0x3F);
    }
    // Reject overlong encodings and surrogates.
    if ((len == 2 && c < 0x80) || (len == 3 && c < 0x800) || (len == 4 && c < 0x10000) ||
        (c >= 0xD800 && c <= 0xDFFF) || c > 0x10FFFF) {
        throw parse_error("invalid UTF-8 scalar value");
    }
    pos += len;
    return c;
}

inline void append_utf8(std::string& out, char32_t c) {
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
}

inline std::vector<char32_t> decode(std::string_view utf8) {
    std::vector<char32_t> out;
    out.reserve(utf8.size());
    std::size_t pos = 0;
    while (pos < utf8.size()) out.push_back(decode_at(utf8, pos));
    return out;
}

inline std::string encode(const std::vector<char32_t>& scalars) {
    std::string out;
    out.reserve(scalars.size());
    for (char32_t c : scalars) append_utf8(out, c);
    return out;
}

/// Scalar-value count of a UTF-8 string.
inline std::size_t length(std::string_view utf8) {
    std::size_t n = 0, pos = 0;
    while (pos < utf8.size()) {
        decode_at(utf8, pos);
        ++n;
    }
    return n;
}

/// First scalar value of a UTF-8 string; 0 for the empty string.
inline char32_t first_scalar(std::string_view utf8) {
    if (utf8.empty()) return 0;
    std::size_t pos = 0;
    return decode_at(utf8, pos);
}

inline bool is_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
           c == 0x00A0; // no-break space, common in court documents
}

inline bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

inline bool is_upper(char32_t c) {
    if (c >= U'A' && c <= U'Z') return true;
    return c >= 0xC0 && c <= 0xDE && c != 0xD7; // À..Þ minus ×
}

inline bool is_lower(char32_t c) {
    if (c >= U'a' && c <= U'z') return true;
    if (c == 0xAA || c == 0xBA) return true; // feminine/masculine ordinal indicators
    if (c >= 0xDF && c <= 0xFF && c != 0xF7) return true; // ß..ÿ minus ÷
    return c > 0xFF; // out of table: letter-like, lowercase
}

inline bool is_letter(char32_t c) { return is_upper(c) || is_lower(c); }

inline char32_t to_lower(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 0x20;
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
    return c;
}

/// Accent-stripping for the Latin-1 letters used in Spanish.
inline char32_t strip_accent(char32_t c) {
    switch (c) {
        case 0xE1: case 0xE0: case 0xE2: case 0xE3: case 0xE4: case 0xE5: return U'a';
        case 0xE9: case 0xE8: case 0xEA: case 0xEB: return U'e';
        case 0xED: case 0xEC: case 0xEE: case 0xEF: return U'i';
        case 0xF3: case 0xF2: case 0xF4: case 0xF5: case 0xF6: return U'o';
        case 0xFA: case 0xF9: case 0xFB: case 0xFC: return U'u';
        case 0xF1: return U'n';
        case 0xE7: return U'c';
        case 0xC1: case 0xC0: case 0xC2: case 0xC3: case 0xC4: case 0xC5: return U'A';
        case 0xC9: case 0xC8: case 0xCA: case 0xCB: return U'E';
        case 0xCD: case 0xCC: case 0xCE: case 0xCF: return U'I';
        case 0xD3: case 0xD2: case 0xD4: case 0xD5: case 0xD6: return U'O';
        case 0xDA: case 0xD9: case 0xDB: case 0xDC: return U'U';
        case 0xD1: return U'N';
        case 0xC7: return U'C';
        default: return c;
    }
}

/// Lowercases a UTF-8 string (Latin-1 table).
inline std::string lower(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    std::size_t pos = 0;
    while (pos < utf8.size()) append_utf8(out, to_lower(decode_at(utf8, pos)));
    return out;
}

/// Lowercases and strips accents ("Pérez" -> "perez").
inline std::string fold(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    std::size_t pos = 0;
    while (pos < utf8.size()) append_utf8(out, strip_accent(to_lower(decode_at(utf8, pos))));
    return out;
}

} // namespace deid::uni
