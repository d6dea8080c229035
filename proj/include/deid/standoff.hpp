#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "deid/errors.hpp"
#include "deid/io.hpp"
#include "deid/text.hpp"

// Standoff annotation I/O.  The on-disk format is line oriented and
// tab separated:
//
//   T<n>\t<Type> <start> <end>\t<surface>      one mention
//   *\tEquiv T<i> T<j> ...                     one coreference chain
//
// Offsets are character offsets into the sibling .txt file.  Mentions not
// named by any Equiv line are implicitly singleton chains.

namespace deid {

struct GoldMention {
    std::string id;          // e.g. "T1", unique within a document
    Span span;
    std::string entity_type; // e.g. "Persona"
    std::string surface;     // equals document text at span (validated on load)

    bool operator==(const GoldMention&) const = default;
};

struct GoldChain {
    std::string id;                       // e.g. "E1"
    std::vector<std::string> mention_ids; // members, in file order

    bool operator==(const GoldChain&) const = default;
};

struct StandoffAnnotations {
    std::vector<GoldMention> mentions;
    std::vector<GoldChain> chains;
};

struct AnnotatedDocument {
    Document doc;
    std::vector<GoldMention> mentions;
    std::vector<GoldChain> chains;

    bool operator==(const AnnotatedDocument&) const = default;
};

namespace detail {

inline std::size_t parse_offset(std::string_view field, std::size_t line_no) {
    if (field.empty()) throw parse_error("empty offset field", line_no);
    std::size_t value = 0;
    for (char ch : field) {
        if (ch < '0' || ch > '9') {
            throw parse_error("offset is not a non-negative integer: '" + std::string(field) + "'",
                              line_no);
        }
        value = value * 10 + static_cast<std::size_t>(ch - '0');
    }
    return value;
}

} // namespace detail

/// Parses standoff annotation text against its document.  Every mention's
/// surface is cross-checked against the document text; chain membership must
/// be disjoint.  Blank lines are skipped.
inline StandoffAnnotations parse_standoff(std::string_view ann_text, const Document& doc) {
    StandoffAnnotations out;
    std::set<std::string> seen_ids;
    std::map<std::string, std::string> member_of; // mention id -> chain id
    std::size_t chain_counter = 0;

    std::size_t line_no = 0;
    for (std::string_view line : detail::split(ann_text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        const auto fields = detail::split(line, '\t');
        if (line[0] == 'T') {
            if (fields.size() != 3) {
                throw parse_error("mention line must have 3 tab-separated fields, got " +
                                      std::to_string(fields.size()),
                                  line_no);
            }
            const std::string id(fields[0]);
            const auto head = detail::split_ws(fields[1]);
            if (head.size() != 3) {
                throw parse_error("mention header must be '<Type> <start> <end>'", line_no);
            }
            const std::size_t start = detail::parse_offset(head[1], line_no);
            const std::size_t end = detail::parse_offset(head[2], line_no);
            if (start >= end) throw parse_error("mention span is empty or inverted", line_no);
            if (!seen_ids.insert(id).second) {
                throw integrity_error("duplicate mention id " + id);
            }
            if (end > doc.length()) {
                throw integrity_error("mention " + id + " spans [" + std::to_string(start) + ", " +
                                      std::to_string(end) + ") beyond document length " +
                                      std::to_string(doc.length()));
            }
            const Span span(start, end);
            const std::string surface(fields[2]);
            if (doc.slice(span) != surface) {
                throw integrity_error("mention " + id + " surface mismatch: annotation has '" +
                                      surface + "' but document reads '" + doc.slice(span) + "'");
            }
            out.mentions.push_back(GoldMention{id, span, std::string(head[0]), surface});
        } else if (line[0] == '*') {
            if (fields.size() != 2) {
                throw parse_error("equivalence line must be '*\\tEquiv T<i> T<j> ...'", line_no);
            }
            const auto words = detail::split_ws(fields[1]);
            if (words.size() < 3 || words[0] != "Equiv") {
                throw parse_error("equivalence line must name Equiv and at least two mentions",
                                  line_no);
            }
            GoldChain chain;
            chain.id = "E" + std::to_string(++chain_counter);
            for (std::size_t i = 1; i < words.size(); ++i) chain.mention_ids.push_back(words[i]);
            out.chains.push_back(std::move(chain));
        } else {
            throw parse_error("unrecognized line type '" + std::string(1, line[0]) + "'", line_no);
        }
    }

    // Chain integrity: members exist and belong to at most one chain.
    for (const auto& chain : out.chains) {
        for (const auto& mid : chain.mention_ids) {
            if (!seen_ids.count(mid)) {
                throw integrity_error("chain " + chain.id + " references unknown mention " + mid);
            }
            const auto [it, inserted] = member_of.emplace(mid, chain.id);
            if (!inserted) {
                throw integrity_error("mention " + mid + " belongs to chains " + it->second +
                                      " and " + chain.id);
            }
        }
    }
    return out;
}

/// Inverse of parse_standoff on valid annotation sets.
inline std::string serialize_standoff(const std::vector<GoldMention>& mentions,
                                      const std::vector<GoldChain>& chains) {
    std::string out;
    for (const auto& m : mentions) {
        if (m.surface.find('\n') != std::string::npos || m.surface.find('\t') != std::string::npos) {
            throw integrity_error("mention " + m.id + " surface contains a tab or newline");
        }
        out += m.id;
        out += '\t';
        out += m.entity_type;
        out += ' ';
        out += std::to_string(m.span.start);
        out += ' ';
        out += std::to_string(m.span.end);
        out += '\t';
        out += m.surface;
        out += '\n';
    }
    for (const auto& c : chains) {
        out += "*\tEquiv";
        for (const auto& mid : c.mention_ids) {
            out += ' ';
            out += mid;
        }
        out += '\n';
    }
    return out;
}

/// Assembles a document and its annotations, checking every invariant.
/// An empty annotation text is legal and yields zero mentions.
inline AnnotatedDocument load_document_pair(std::string txt, std::string_view ann,
                                            std::string id) {
    if (txt.empty()) throw integrity_error("document " + id + " has empty text");
    Document doc(std::move(id), std::move(txt));
    StandoffAnnotations anns = parse_standoff(ann, doc);
    return AnnotatedDocument{std::move(doc), std::move(anns.mentions), std::move(anns.chains)};
}

} // namespace deid
