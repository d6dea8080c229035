#include <gtest/gtest.h>

#include "deid/standoff.hpp"

using namespace deid;

namespace {
const char* kDocText = "Juan Pérez compró un terreno. Más tarde Pérez lo vendió.";
}

TEST(ParseStandoff, SingleWellFormedLine) {
    const Document doc("d", kDocText);
    const auto anns = parse_standoff("T1\tPersona 0 10\tJuan Pérez", doc);
    ASSERT_EQ(anns.mentions.size(), 1u);
    EXPECT_EQ(anns.mentions[0].id, "T1");
    EXPECT_EQ(anns.mentions[0].span, Span(0, 10));
    EXPECT_EQ(anns.mentions[0].entity_type, "Persona");
    EXPECT_EQ(anns.mentions[0].surface, "Juan Pérez");
    EXPECT_TRUE(anns.chains.empty());
}

TEST(ParseStandoff, EquivLineBecomesChain) {
    const Document doc("d", kDocText);
    const auto anns = parse_standoff(
        "T1\tPersona 0 10\tJuan Pérez\nT2\tPersona 40 45\tPérez\n*\tEquiv T1 T2", doc);
    ASSERT_EQ(anns.mentions.size(), 2u);
    ASSERT_EQ(anns.chains.size(), 1u);
    EXPECT_EQ(anns.chains[0].mention_ids, (std::vector<std::string>{"T1", "T2"}));
}

TEST(ParseStandoff, SurfaceMismatchNamesMention) {
    const Document doc("d", kDocText);
    try {
        parse_standoff("T1\tPersona 0 10\tWRONGTEXTX", doc);
        FAIL() << "expected integrity_error";
    } catch (const integrity_error& e) {
        EXPECT_NE(std::string(e.what()).find("T1"), std::string::npos);
    }
}

TEST(ParseStandoff, MalformedLineReportsLineNumber) {
    const Document doc("d", kDocText);
    try {
        parse_standoff("T1\tPersona 0 10\tJuan Pérez\nT2 broken line", doc);
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(ParseStandoff, OverlappingChainMembershipRejected) {
    const Document doc("d", kDocText);
    EXPECT_THROW(parse_standoff("T1\tPersona 0 10\tJuan Pérez\nT2\tPersona 40 45\tPérez\n"
                                "*\tEquiv T1 T2\n*\tEquiv T2 T1",
                                doc),
                 integrity_error);
}

TEST(ParseStandoff, UnknownChainMemberRejected) {
    const Document doc("d", kDocText);
    EXPECT_THROW(parse_standoff("T1\tPersona 0 10\tJuan Pérez\n*\tEquiv T1 T9", doc),
                 integrity_error);
}

TEST(ParseStandoff, DuplicateMentionIdRejected) {
    const Document doc("d", kDocText);
    EXPECT_THROW(
        parse_standoff("T1\tPersona 0 10\tJuan Pérez\nT1\tPersona 40 45\tPérez", doc),
        integrity_error);
}

TEST(LoadDocumentPair, MentionCountMatchesLines) {
    const auto ad = load_document_pair(kDocText,
                                       "T1\tPersona 0 10\tJuan Pérez\nT2\tPersona 40 45\tPérez",
                                       "doc-1");
    EXPECT_EQ(ad.doc.id(), "doc-1");
    EXPECT_EQ(ad.mentions.size(), 2u);
}

TEST(LoadDocumentPair, EmptyAnnotationIsLegal) {
    const auto ad = load_document_pair(kDocText, "", "doc-1");
    EXPECT_TRUE(ad.mentions.empty());
    EXPECT_TRUE(ad.chains.empty());
}

TEST(LoadDocumentPair, OffsetBeyondTextLength) {
    EXPECT_THROW(load_document_pair("corto", "T1\tPersona 0 400\tcorto", "doc-1"),
                 integrity_error);
}

TEST(LoadDocumentPair, EmptyTextRejected) {
    EXPECT_THROW(load_document_pair("", "", "doc-1"), integrity_error);
}

TEST(Standoff, SerializeParseRoundTrip) {
    const Document doc("d", kDocText);
    const std::string ann =
        "T1\tPersona 0 10\tJuan Pérez\nT2\tPersona 40 45\tPérez\n*\tEquiv T1 T2\n";
    const auto anns = parse_standoff(ann, doc);
    EXPECT_EQ(serialize_standoff(anns.mentions, anns.chains), ann);
    const auto reparsed = parse_standoff(serialize_standoff(anns.mentions, anns.chains), doc);
    EXPECT_EQ(reparsed.mentions, anns.mentions);
    EXPECT_EQ(reparsed.chains, anns.chains);
}

TEST(Standoff, LoadingTwiceIsDeterministic) {
    const std::string ann = "T1\tPersona 0 10\tJuan Pérez";
    const auto a = load_document_pair(kDocText, ann, "doc-1");
    const auto b = load_document_pair(kDocText, ann, "doc-1");
    EXPECT_EQ(a, b);
}
