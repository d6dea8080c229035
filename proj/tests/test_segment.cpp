#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "deid/segment.hpp"

using namespace deid;

namespace {

const AbbreviationLexicon& default_lexicon() {
    static const AbbreviationLexicon lex =
        AbbreviationLexicon::load(std::string(DEID_DATA_DIR) + "/lexicon/abbreviations.txt");
    return lex;
}

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) out.push_back(t.surface);
    return out;
}

std::size_t sentence_count(const std::string& text) {
    const Document doc("d", text);
    const auto seg = segment_document(doc, default_lexicon());
    return seg.sentences.size();
}

} // namespace

TEST(Tokenize, AbbreviationAndSlashedNumberStayWhole) {
    const Document doc("d", "Sentencia No. 134/98");
    EXPECT_EQ(surfaces(tokenize(doc, default_lexicon())),
              (std::vector<std::string>{"Sentencia", "No.", "134/98"}));
}

TEST(Tokenize, CitationAbbreviations) {
    const Document doc("d", "a fs. 183 v.,");
    EXPECT_EQ(surfaces(tokenize(doc, default_lexicon())),
              (std::vector<std::string>{"a", "fs.", "183", "v.", ","}));
}

TEST(Tokenize, EmptyDocument) {
    const Document doc("d", "");
    EXPECT_TRUE(tokenize(doc, default_lexicon()).empty());
}

TEST(Tokenize, PunctuationSplitsOffOrdinaryWords) {
    const Document doc("d", "sostuvo que... (primera vez)");
    EXPECT_EQ(surfaces(tokenize(doc, default_lexicon())),
              (std::vector<std::string>{"sostuvo", "que", "...", "(", "primera", "vez", ")"}));
}

TEST(Tokenize, OrdinalKeepsPeriod) {
    const Document doc("d", "el 7o. Turno y la 1a. Sala");
    const auto toks = surfaces(tokenize(doc, default_lexicon()));
    EXPECT_EQ(toks, (std::vector<std::string>{"el", "7o.", "Turno", "y", "la", "1a.", "Sala"}));
}

TEST(Tokenize, SurfacesMatchSpans) {
    const Document doc("d", "Como lo plantea el Sr. Fiscal (fs. 183 v.) hoy.");
    for (const auto& tok : tokenize(doc, default_lexicon())) {
        EXPECT_EQ(tok.surface, doc.slice(tok.span));
    }
}

TEST(Tokenize, CoversAllNonWhitespaceText) {
    const Document doc("d", "Dr. Pérez, c/ «María» (fs. 36/37)... ¿sí? ¡no!");
    const auto tokens = tokenize(doc, default_lexicon());
    std::string rebuilt;
    std::size_t cursor = 0;
    for (const auto& tok : tokens) {
        EXPECT_LE(cursor, tok.span.start);
        if (cursor < tok.span.start) rebuilt += doc.slice(Span(cursor, tok.span.start));
        rebuilt += tok.surface;
        cursor = tok.span.end;
    }
    if (cursor < doc.length()) rebuilt += doc.slice(Span(cursor, doc.length()));
    EXPECT_EQ(rebuilt, doc.text());
    for (const auto& tok : tokens) {
        for (char32_t c : uni::decode(tok.surface)) EXPECT_FALSE(uni::is_space(c));
    }
}

// The three segmentation regressions: fragments that off-the-shelf
// segmenters split apart on abbreviation or ordinal periods.
TEST(Segment, OrdinalAndNumberAbbreviationDoNotBreak) {
    EXPECT_EQ(sentence_count("En el mismo sentido se pronunció el Tribunal en lo Civil de 7o. "
                             "Turno, cuando en Sentencia No. 134/98 sostuvo que..."),
              1u);
}

TEST(Segment, HonorificAndCitationAbbreviationsDoNotBreak) {
    EXPECT_EQ(sentence_count(
                  "Como lo plantea el Sr. Fiscal de Corte a fs. 183 v., si bien ateniéndonos..."),
              1u);
}

TEST(Segment, BibliographicAbbreviationsDoNotBreak) {
    EXPECT_EQ(sentence_count("(Nicolás Coviello, Doctrina General del Derecho Civil, pág. 78, "
                             "Cf. Eduardo García Maynez, Introducción al estudio del derecho, "
                             "pág. 329)"),
              1u);
}

TEST(Segment, PeriodBeforeUppercaseBreaks) {
    EXPECT_EQ(sentence_count("La demanda fue rechazada. El tribunal confirmó la decisión."), 2u);
}

TEST(Segment, PeriodBeforeLowercaseOrDigitNeverBreaks) {
    EXPECT_EQ(sentence_count("El fallo No . 12 fue revocado"), 1u); // even with stray spacing
    EXPECT_EQ(sentence_count("tal como surge de autos. y de la prueba"), 1u);
}

TEST(Segment, ClosersAttachToTheEndingSentence) {
    const Document doc("d", "Lo dijo (en voz baja.) El resto calló.");
    const auto seg = segment_document(doc, default_lexicon());
    ASSERT_EQ(seg.sentences.size(), 2u);
    const Sentence& s0 = seg.sentences[0];
    EXPECT_EQ(seg.tokens[s0.last_token - 1].surface, ")");
}

TEST(Segment, AbbreviationAtTextEndClosesFinalSentence) {
    const Document doc("d", "Surge de autos a fs.");
    const auto seg = segment_document(doc, default_lexicon());
    ASSERT_EQ(seg.sentences.size(), 1u);
    EXPECT_EQ(seg.sentences[0].last_token, seg.tokens.size());
}

TEST(Segment, EveryTokenInExactlyOneSentence) {
    const Document doc("d", "Visto: el expediente No. 12/34. El Sr. Pérez declaró. Nada más");
    const auto seg = segment_document(doc, default_lexicon());
    std::size_t expected_first = 0;
    for (const auto& s : seg.sentences) {
        EXPECT_EQ(s.first_token, expected_first);
        EXPECT_LT(s.first_token, s.last_token);
        expected_first = s.last_token;
    }
    EXPECT_EQ(expected_first, seg.tokens.size());
}

namespace {

// Pseudo-legal word soup for the segmentation properties.
std::string random_text(std::mt19937& rng) {
    static const std::vector<std::string> words = {
        "el",   "tribunal", "Sr.",   "Pérez",  "declaró", "fs.",  "183",    "v.",
        "que",  "7o.",      "Turno", "No.",    "134/98",  "pág.", "Corte",  "la",
        "Sala", "resolvió", "art.",  "luego.", "Ahora",   "bien", "firme.", "(",
        ")",    ",",        "...",   "contra", "autos",   "12",   "vta.",   "Cf."};
    std::uniform_int_distribution<std::size_t> len(0, 40);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::string text;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        if (!text.empty()) text += ' ';
        text += words[pick(rng)];
    }
    return text;
}

} // namespace

TEST(SegmentProperty, SegmentationPartitionsTokens) {
    std::mt19937 rng(20240901);
    for (int iter = 0; iter < 300; ++iter) {
        const Document doc("d", random_text(rng));
        const auto seg = segment_document(doc, default_lexicon());
        std::size_t expected_first = 0;
        for (const auto& s : seg.sentences) {
            ASSERT_EQ(s.first_token, expected_first);
            ASSERT_LT(s.first_token, s.last_token);
            expected_first = s.last_token;
        }
        ASSERT_EQ(expected_first, seg.tokens.size());
    }
}

TEST(SegmentProperty, ResegmentingOneSentenceYieldsOneSentence) {
    std::mt19937 rng(20240902);
    for (int iter = 0; iter < 300; ++iter) {
        const Document doc("d", random_text(rng));
        const auto seg = segment_document(doc, default_lexicon());
        for (const auto& s : seg.sentences) {
            const std::vector<Token> slice(seg.tokens.begin() + s.first_token,
                                           seg.tokens.begin() + s.last_token);
            const auto again = segment(slice, doc, default_lexicon());
            ASSERT_EQ(again.size(), 1u) << doc.text();
        }
    }
}

TEST(SegmentProperty, GrowingTheLexiconNeverAddsSentences) {
    std::mt19937 rng(20240903);
    AbbreviationLexicon small;
    small.add("Sr.");
    AbbreviationLexicon grown = small;
    grown.add("No.");
    grown.add("fs.");
    grown.add("pág.");
    grown.add("v.");
    for (int iter = 0; iter < 300; ++iter) {
        const Document doc("d", random_text(rng));
        const auto before = segment(tokenize(doc, small), doc, small).size();
        const auto after = segment(tokenize(doc, grown), doc, grown).size();
        ASSERT_LE(after, before) << doc.text();
    }
}

TEST(Lexicon, EntriesMustEndWithPeriodOrSlash) {
    AbbreviationLexicon lex;
    EXPECT_THROW(lex.add("Sr"), parse_error);
    EXPECT_NO_THROW(lex.add("Sr."));
    EXPECT_NO_THROW(lex.add("c/"));
}

TEST(Lexicon, DuplicateAfterCaseFoldingRejected) {
    AbbreviationLexicon lex;
    lex.add("No.");
    EXPECT_THROW(lex.add("no."), parse_error);
    EXPECT_NO_THROW(lex.add("No.")); // re-adding the same form is harmless
}

TEST(Lexicon, CaseSensitiveByDefaultWithOptionalFold) {
    AbbreviationLexicon lex;
    lex.add("No.");
    EXPECT_TRUE(lex.is_abbreviation("No."));
    EXPECT_FALSE(lex.is_abbreviation("no."));
    lex.case_fold_fallback = true;
    EXPECT_TRUE(lex.is_abbreviation("no."));
}

TEST(Lexicon, PatternMatchers) {
    EXPECT_TRUE(AbbreviationLexicon::is_ordinal("7o."));
    EXPECT_TRUE(AbbreviationLexicon::is_ordinal("1a."));
    EXPECT_TRUE(AbbreviationLexicon::is_ordinal("12as."));
    EXPECT_FALSE(AbbreviationLexicon::is_ordinal("7."));
    EXPECT_FALSE(AbbreviationLexicon::is_ordinal("o."));
    EXPECT_TRUE(AbbreviationLexicon::is_slashed_number("134/98"));
    EXPECT_TRUE(AbbreviationLexicon::is_slashed_number("2/3/2011"));
    EXPECT_FALSE(AbbreviationLexicon::is_slashed_number("134/"));
    EXPECT_FALSE(AbbreviationLexicon::is_slashed_number("134"));
    EXPECT_TRUE(AbbreviationLexicon::is_initial("J."));
    EXPECT_FALSE(AbbreviationLexicon::is_initial("Ju."));
}

TEST(Lexicon, ParseSkipsCommentsAndBlankLines) {
    const auto lex = AbbreviationLexicon::parse("# comment\nSr.\n\n  fs.  \nc/\n");
    EXPECT_TRUE(lex.is_abbreviation("Sr."));
    EXPECT_TRUE(lex.is_abbreviation("fs."));
    EXPECT_TRUE(lex.is_slash_form("c/"));
}
