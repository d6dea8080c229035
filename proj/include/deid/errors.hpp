#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deid {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (standoff annotation, lexicon, partition file, ...).
/// Carries the 1-based line number when one is known.
class parse_error : public error {
public:
    explicit parse_error(const std::string& what, std::size_t line = 0)
        : error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Structurally valid input that violates a cross-field invariant
/// (offsets vs. text, overlapping chain membership, overlapping spans, ...).
class integrity_error : public error {
public:
    using error::error;
};

/// A metric or average is undefined on the given input (zero denominator).
class undefined_metric : public error {
public:
    using error::error;
};

/// A surface form that cannot be read as a person name.
class not_a_name : public error {
public:
    using error::error;
};

} // namespace deid
