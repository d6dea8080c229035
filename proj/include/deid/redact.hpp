#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "deid/chains.hpp"
#include "deid/errors.hpp"
#include "deid/io.hpp"
#include "deid/text.hpp"
#include "deid/unicode.hpp"

// Label assignment and text rewriting.  Chains receive anonymous labels in
// order of first appearance: AA, BB, ..., ZZ, then AAA, BBB, ...  Every
// mention span of a chain is replaced by the chain's label; all surrounding
// text, honorifics included, is preserved byte for byte, so "el Sr. Juan
// Pérez" becomes "el Sr. AA".  The recorded mapping makes the rewrite
// reversible given the original document.

namespace deid {

/// An anonymous replacement label: one letter repeated two or more times.
struct Label {
    std::string text;

    bool operator==(const Label&) const = default;
};

/// Label for the chain with the given ordinal: letter = index mod 26,
/// repeated 2 + index / 26 times.  Injective over all indices.
inline Label label_for(std::size_t index) {
    const char letter = static_cast<char>('A' + index % 26);
    return Label{std::string(2 + index / 26, letter)};
}

/// Assigns labels to chains ordered by their first mention's start offset.
inline std::map<std::size_t, Label> assign_labels(const ChainSet& cs) {
    std::vector<std::size_t> order(cs.chains.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Span& sa = cs.mention_spans[cs.chains[a].mention_indices.front()];
        const Span& sb = cs.mention_spans[cs.chains[b].mention_indices.front()];
        return sa.start < sb.start;
    });
    std::map<std::size_t, Label> labels;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        labels.emplace(cs.chains[order[rank]].id, label_for(rank));
    }
    return labels;
}

/// One substitution: which original span was replaced, by which chain's
/// label, and where the label sits in the rewritten text.
struct RedactionRecord {
    Span original;
    std::size_t chain_id;
    Label label;
    Span replacement;

    bool operator==(const RedactionRecord&) const = default;
};

struct RedactedDocument {
    std::string text; // UTF-8
    std::vector<RedactionRecord> mapping;
};

/// Rewrites the document, replacing every mention span with its chain's
/// label.  Mention spans must not overlap.
inline RedactedDocument redact(const Document& doc, const ChainSet& cs,
                               const std::map<std::size_t, Label>& labels) {
    struct Site {
        Span span;
        std::size_t chain_id;
    };
    std::vector<Site> sites;
    for (const auto& c : cs.chains) {
        if (!labels.count(c.id)) {
            throw integrity_error("no label assigned to chain " + std::to_string(c.id));
        }
        for (std::size_t mi : c.mention_indices) sites.push_back(Site{cs.mention_spans[mi], c.id});
    }
    std::sort(sites.begin(), sites.end(),
              [](const Site& a, const Site& b) { return a.span.start < b.span.start; });
    for (std::size_t i = 1; i < sites.size(); ++i) {
        if (sites[i].span.start < sites[i - 1].span.end) {
            throw integrity_error("overlapping mention spans at " +
                                  std::to_string(sites[i].span.start));
        }
    }

    RedactedDocument out;
    std::size_t cursor = 0;  // characters consumed from the original
    std::size_t written = 0; // characters emitted so far
    for (const auto& site : sites) {
        if (cursor < site.span.start) {
            out.text += doc.slice(Span(cursor, site.span.start));
            written += site.span.start - cursor;
        }
        const Label& label = labels.at(site.chain_id);
        const std::size_t label_len = uni::length(label.text);
        out.text += label.text;
        out.mapping.push_back(RedactionRecord{site.span, site.chain_id, label,
                                              Span(written, written + label_len)});
        written += label_len;
        cursor = site.span.end;
    }
    if (cursor < doc.length()) out.text += doc.slice(Span(cursor, doc.length()));
    return out;
}

/// Reconstructs the original text from a redacted document and its mapping,
/// reading the replaced surfaces back out of the original document.
inline std::string unredact(const RedactedDocument& redacted, const Document& original) {
    const Document rdoc("redacted", redacted.text);
    std::vector<RedactionRecord> records = redacted.mapping;
    std::sort(records.begin(), records.end(), [](const RedactionRecord& a,
                                                 const RedactionRecord& b) {
        return a.replacement.start < b.replacement.start;
    });
    std::string out;
    std::size_t cursor = 0;
    for (const auto& rec : records) {
        if (cursor < rec.replacement.start) {
            out += rdoc.slice(Span(cursor, rec.replacement.start));
        }
        out += original.slice(rec.original);
        cursor = rec.replacement.end;
    }
    if (cursor < rdoc.length()) out += rdoc.slice(Span(cursor, rdoc.length()));
    return out;
}

/// Sidecar mapping file: one line per substitution,
/// "<start>\t<end>\t<chain>\t<label>", sorted by start offset.
inline std::string serialize_mapping(const std::vector<RedactionRecord>& mapping) {
    std::string out;
    for (const auto& rec : mapping) {
        out += std::to_string(rec.original.start);
        out += '\t';
        out += std::to_string(rec.original.end);
        out += '\t';
        out += std::to_string(rec.chain_id);
        out += '\t';
        out += rec.label.text;
        out += '\n';
    }
    return out;
}

/// Parses a sidecar mapping file.  Replacement spans are replayed from the
/// original offsets and label lengths, which determine them uniquely.
inline std::vector<RedactionRecord> parse_mapping(std::string_view text) {
    struct Row {
        std::size_t start, end, chain;
        std::string label;
    };
    std::vector<Row> rows;
    std::size_t line_no = 0;
    for (std::string_view line : detail::split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line[0] == '#') continue;
        const auto fields = detail::split(line, '\t');
        if (fields.size() != 4) {
            throw parse_error("mapping line must have 4 tab-separated fields", line_no);
        }
        const auto num = [&](std::string_view f) {
            std::size_t v = 0;
            if (f.empty()) throw parse_error("empty offset field", line_no);
            for (char ch : f) {
                if (ch < '0' || ch > '9') throw parse_error("bad number in mapping", line_no);
                v = v * 10 + static_cast<std::size_t>(ch - '0');
            }
            return v;
        };
        rows.push_back(Row{num(fields[0]), num(fields[1]), num(fields[2]),
                           std::string(fields[3])});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.start < b.start;
    });
    std::vector<RedactionRecord> out;
    std::ptrdiff_t shift = 0;
    for (const auto& row : rows) {
        if (row.start >= row.end) throw integrity_error("mapping span is empty or inverted");
        const std::size_t label_len = uni::length(row.label);
        const std::size_t repl_start = static_cast<std::size_t>(
            static_cast<std::ptrdiff_t>(row.start) + shift);
        out.push_back(RedactionRecord{Span(row.start, row.end), row.chain, Label{row.label},
                                      Span(repl_start, repl_start + label_len)});
        shift += static_cast<std::ptrdiff_t>(label_len) -
                 static_cast<std::ptrdiff_t>(row.end - row.start);
    }
    return out;
}

} // namespace deid
