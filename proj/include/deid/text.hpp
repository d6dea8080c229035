#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "deid/errors.hpp"
#include "deid/unicode.hpp"

namespace deid {

/// Half-open character interval [start, end) into a document's text.
/// Offsets count Unicode scalar values.  Empty spans are invalid.
struct Span {
    std::size_t start;
    std::size_t end;

    Span(std::size_t s, std::size_t e) : start(s), end(e) {
        if (s >= e) {
            throw integrity_error("invalid span [" + std::to_string(s) + ", " +
                                  std::to_string(e) + "): start must precede end");
        }
    }

    std::size_t size() const noexcept { return end - start; }

    auto operator<=>(const Span&) const = default;
};

/// True iff `outer` covers every character of `inner`; equality counts.
inline bool contains(const Span& outer, const Span& inner) noexcept {
    return outer.start <= inner.start && outer.end >= inner.end;
}

/// A plain-text document with an identifier.  The text is stored as UTF-8
/// together with a scalar-to-byte index so character-offset slicing is O(1).
/// Immutable after construction.
class Document {
public:
    Document(std::string id, std::string text) : id_(std::move(id)), text_(std::move(text)) {
        scalar_byte_.reserve(text_.size() + 1);
        std::size_t pos = 0;
        while (pos < text_.size()) {
            scalar_byte_.push_back(pos);
            uni::decode_at(text_, pos);
        }
        scalar_byte_.push_back(text_.size());
    }

    const std::string& id() const noexcept { return id_; }
    const std::string& text() const noexcept { return text_; }

    /// Length in Unicode scalar values.
    std::size_t length() const noexcept { return scalar_byte_.size() - 1; }

    /// Scalar value at character offset `i`.
    char32_t at(std::size_t i) const {
        if (i >= length()) throw std::out_of_range("character offset " + std::to_string(i) +
                                                   " out of range for document of length " +
                                                   std::to_string(length()));
        std::size_t pos = scalar_byte_[i];
        return uni::decode_at(text_, pos);
    }

    /// Exactly the characters in [span.start, span.end), as UTF-8.
    std::string slice(const Span& span) const {
        if (span.end > length()) {
            throw std::out_of_range("span [" + std::to_string(span.start) + ", " +
                                    std::to_string(span.end) + ") exceeds document length " +
                                    std::to_string(length()));
        }
        const std::size_t b0 = scalar_byte_[span.start];
        const std::size_t b1 = scalar_byte_[span.end];
        return text_.substr(b0, b1 - b0);
    }

    bool operator==(const Document& other) const {
        return id_ == other.id_ && text_ == other.text_;
    }

private:
    std::string id_;
    std::string text_;
    std::vector<std::size_t> scalar_byte_;
};

/// Convenience wrapper matching the free-function contract.
inline std::string slice(const Document& doc, const Span& span) { return doc.slice(span); }

/// One token of a document.  `surface` equals the document text at `span`.
struct Token {
    Span span;
    std::string surface;

    bool operator==(const Token&) const = default;
};

/// Contiguous half-open range [first_token, last_token) of token indices.
struct Sentence {
    std::size_t first_token;
    std::size_t last_token;

    bool operator==(const Sentence&) const = default;
};

} // namespace deid
