#include <gtest/gtest.h>

#include <notekg/preprocess.hpp>

#include "test_util.hpp"

using namespace notekg;

namespace {

const Resources& res() { return testutil::shared_resources(); }

std::vector<ExpandedSentence> expand(const Tokens& toks) {
    Segment seg;
    seg.tokens = toks;
    return expand_segment(seg, res().lexicon);
}

void expect_single(const Tokens& toks, const std::string& rendered, Pattern pattern,
                   Polarity polarity) {
    auto out = expand(toks);
    ASSERT_EQ(out.size(), 1u) << join(toks);
    EXPECT_EQ(join(out[0].tokens), rendered);
    EXPECT_EQ(out[0].pattern, pattern);
    EXPECT_EQ(out[0].polarity, polarity);
}

}  // namespace

// ---------------------------------------------------------------------------
// Passage splitting

TEST(SplitPassage, SplitsAtDelimitersWithSpans) {
    auto segs = split_passage({"s", "headache couple weeks, last 2 days more feverish"});
    ASSERT_EQ(segs.size(), 2u);
    EXPECT_EQ(join(segs[0].tokens), "headache couple weeks");
    EXPECT_EQ(join(segs[1].tokens), "last 2 days more feverish");
    EXPECT_EQ(segs[0].span_begin, 0u);
    EXPECT_EQ(segs[0].span_end, 21u);
    EXPECT_EQ(segs[1].span_begin, 23u);
    EXPECT_EQ(segs[1].span_end, 48u);
    EXPECT_EQ(segs[0].original_text, "headache couple weeks");
    EXPECT_EQ(segs[1].original_text, "last 2 days more feverish");
}

TEST(SplitPassage, AllFiveDelimiters) {
    auto segs = split_passage({"s", "fever.\nno cough; wheeze: ok"});
    ASSERT_EQ(segs.size(), 4u);
    EXPECT_EQ(join(segs[0].tokens), "fever");
    EXPECT_EQ(join(segs[1].tokens), "no cough");
    EXPECT_EQ(join(segs[2].tokens), "wheeze");
    EXPECT_EQ(join(segs[3].tokens), "ok");
}

TEST(SplitPassage, EdgePunctuationStrippedNumeralsKept) {
    // "!" and parentheses are not delimiters; they are stripped from token
    // edges. Digits survive untouched.
    auto segs = split_passage({"s", "fever! (cough) 111"});
    ASSERT_EQ(segs.size(), 1u);
    EXPECT_EQ(join(segs[0].tokens), "fever cough 111");
}

TEST(SplitPassage, SingleSegmentNote) {
    auto segs = split_passage({"s", "fever."});
    ASSERT_EQ(segs.size(), 1u);
    EXPECT_EQ(segs[0].tokens, Tokens{"fever"});
}

TEST(SplitPassage, AllDelimiterInputIsEmptyNote) {
    EXPECT_THROW(split_passage({"s", "   .  ,  "}), EmptyNote);
    EXPECT_THROW(split_passage({"s", ""}), EmptyNote);
}

TEST(SplitPassage, NoteValidation) {
    EXPECT_THROW(split_passage({"", "fever"}), InvalidNote);
    EXPECT_THROW(split_passage({"big", std::string(10001, 'a')}), InvalidNote);
    EXPECT_NO_THROW(split_passage({"ok", std::string(10000, 'a')}));
}

// ---------------------------------------------------------------------------
// Spell correction

TEST(CorrectSpelling, CorrectsAgainstBundledVocabulary) {
    EXPECT_EQ(correct_spelling("hedache", res().vocabulary), "headache");
    EXPECT_EQ(correct_spelling("fevr", res().vocabulary), "fever");
    EXPECT_EQ(correct_spelling("coughh", res().vocabulary), "cough");
    EXPECT_EQ(correct_spelling("breathles", res().vocabulary), "breathless");
}

TEST(CorrectSpelling, Guards) {
    // In-vocabulary, short, and digit-bearing tokens pass through.
    EXPECT_EQ(correct_spelling("fever", res().vocabulary), "fever");
    EXPECT_EQ(correct_spelling("hed", res().vocabulary), "hed");
    EXPECT_EQ(correct_spelling("111", res().vocabulary), "111");
    EXPECT_EQ(correct_spelling("b12", res().vocabulary), "b12");
}

TEST(CorrectSpelling, DistanceThresholdByLength) {
    std::set<std::string> vocab = {"fever"};
    // Length ≤ 6: only distance 1 allowed.
    EXPECT_EQ(correct_spelling("fevxx", vocab), "fevxx");
    EXPECT_EQ(correct_spelling("fevex", vocab), "fever");
    // Length > 6: distance 2 allowed.
    EXPECT_EQ(correct_spelling("feverxx", vocab), "fever");
    EXPECT_EQ(correct_spelling("feverxxx", vocab), "feverxxx");
}

TEST(CorrectSpelling, TiesBreakLexicographically) {
    std::set<std::string> vocab = {"days", "dabs"};
    EXPECT_EQ(correct_spelling("dazs", vocab), "dabs");
    // The same policy over the full vocabulary: "dasy" is distance 1 from
    // both "day" (deletion) and "days" (transposition), and the
    // lexicographically smaller wins.
    EXPECT_EQ(correct_spelling("dasy", res().vocabulary), "day");
    EXPECT_EQ(correct_spelling("lsight", res().vocabulary), "light");
}

TEST(OsaDistance, CountsTranspositions) {
    EXPECT_EQ(osa_distance("ab", "ba", 2), 1u);
    EXPECT_EQ(osa_distance("abc", "abc", 2), 0u);
    EXPECT_EQ(osa_distance("abc", "axc", 2), 1u);
    EXPECT_EQ(osa_distance("abc", "ab", 2), 1u);
    EXPECT_GT(osa_distance("aaaa", "bbbb", 1), 1u);  // capped early
}

// ---------------------------------------------------------------------------
// Abbreviations and contractions

TEST(ExpandAbbreviations, TableDriven) {
    EXPECT_EQ(expand_abbreviations({"slight", "sob"}, res().lexicon),
              (Tokens{"slight", "shortness", "of", "breath"}));
    EXPECT_EQ(expand_abbreviations({}, res().lexicon), Tokens{});
    EXPECT_EQ(expand_abbreviations({"sob", "sob"}, res().lexicon),
              (Tokens{"shortness", "of", "breath", "shortness", "of", "breath"}));
    EXPECT_EQ(expand_abbreviations({"pt", "c/o", "sob"}, res().lexicon),
              (Tokens{"patient", "complains", "of", "shortness", "of", "breath"}));
    EXPECT_EQ(expand_abbreviations({"quiet"}, res().lexicon), Tokens{"quiet"});
}

TEST(ExpandAbbreviations, Contractions) {
    EXPECT_EQ(expand_abbreviations({"can't"}, res().lexicon), (Tokens{"can", "not"}));
    EXPECT_EQ(expand_abbreviations({"won't", "didn't"}, res().lexicon),
              (Tokens{"will", "not", "did", "not"}));
}

// ---------------------------------------------------------------------------
// The four expansion patterns

TEST(ExpandSegment, NegatedNounPhrase) {
    expect_single({"no", "breathlessness"}, "the patient does not have breathlessness",
                  Pattern::NegatedNounPhrase, Polarity::Negated);
    expect_single({"denies", "cough"}, "the patient does not have cough",
                  Pattern::NegatedNounPhrase, Polarity::Negated);
}

TEST(ExpandSegment, NounPhraseOrList) {
    expect_single({"fever", "fatigue", "and", "anxiety"},
                  "the patient has fever , fatigue and anxiety", Pattern::NounPhraseOrList,
                  Polarity::Affirmed);
    expect_single({"headache", "couple", "weeks"}, "the patient has headache for couple weeks",
                  Pattern::NounPhraseOrList, Polarity::Affirmed);
}

TEST(ExpandSegment, AdjectivePhrase) {
    expect_single({"anxious"}, "the patient is anxious", Pattern::AdjectivePhrase,
                  Polarity::Affirmed);
}

TEST(ExpandSegment, VerbPhrase) {
    expect_single({"coughing"}, "the patient is coughing", Pattern::VerbPhrase,
                  Polarity::Affirmed);
    expect_single({"can", "talk"}, "the patient can talk", Pattern::VerbPhrase,
                  Polarity::Affirmed);
}

TEST(ExpandSegment, SubjectNormalization) {
    expect_single({"she", "is", "breathless"}, "the patient is breathless",
                  Pattern::AlreadyComplete, Polarity::Affirmed);
    expect_single({"patient", "has", "fever"}, "the patient has fever",
                  Pattern::AlreadyComplete, Polarity::Affirmed);
}

TEST(ExpandSegment, IdempotentOnCompleteSentences) {
    expect_single({"the", "patient", "has", "fever"}, "the patient has fever",
                  Pattern::AlreadyComplete, Polarity::Affirmed);
}

TEST(ExpandSegment, UnexpandableKeepsOriginalTokens) {
    expect_single({"wife", "called", "111"}, "wife called 111", Pattern::Unexpandable,
                  Polarity::Affirmed);
    // Negator without an expandable phrase: still Unexpandable, but the
    // explicit negator is reflected in polarity.
    expect_single({"not", "sleeping"}, "not sleeping", Pattern::Unexpandable,
                  Polarity::Negated);
    // The run-on failure shape stays intact rather than being guessed at.
    expect_single(split_ws("no cough tickle only at start first few days sweaty 36"),
                  "no cough tickle only at start first few days sweaty 36",
                  Pattern::Unexpandable, Polarity::Negated);
}

TEST(ExpandSegment, MultiFindingSegmentYieldsSeveralSentences) {
    auto out = expand(split_ws(
        "headache couple weeks last 2 days more feverish and cough slight shortness of breath"));
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(join(out[0].tokens), "the patient has headache for couple weeks");
    EXPECT_EQ(out[0].pattern, Pattern::NounPhraseOrList);
    EXPECT_EQ(join(out[1].tokens), "the patient is more feverish for last 2 days");
    EXPECT_EQ(out[1].pattern, Pattern::AdjectivePhrase);
    EXPECT_EQ(join(out[2].tokens), "the patient has cough");
    EXPECT_EQ(join(out[3].tokens), "the patient has slight shortness of breath");
    for (const auto& s : out) EXPECT_EQ(s.polarity, Polarity::Affirmed);
}

// ---------------------------------------------------------------------------
// Whole-note composition

TEST(PreprocessNote, ComposesAllStages) {
    // Typo + abbreviation + split + expansion in one pass.
    auto sents = preprocess_note({"n", "hedache, slight sob"}, res().lexicon, &res().vocabulary);
    ASSERT_EQ(sents.size(), 2u);
    EXPECT_EQ(join(sents[0].tokens), "the patient has headache");
    EXPECT_EQ(join(sents[1].tokens), "the patient has slight shortness of breath");
}

TEST(PreprocessNote, NegatedSingleSentence) {
    auto sents = preprocess_note({"n", "no fever"}, res().lexicon, &res().vocabulary);
    ASSERT_EQ(sents.size(), 1u);
    EXPECT_EQ(sents[0].polarity, Polarity::Negated);
    EXPECT_EQ(join(sents[0].tokens), "the patient does not have fever");
}

TEST(PreprocessNote, EmptyNotePropagates) {
    EXPECT_THROW(preprocess_note({"n", ""}, res().lexicon, &res().vocabulary), EmptyNote);
}

TEST(PreprocessNote, SubjectGuaranteeAndExhaustiveness) {
    for (const auto& note : testutil::corpus_notes()) {
        std::vector<ExpandedSentence> sents;
        try {
            sents = preprocess_note(note, res().lexicon, &res().vocabulary);
        } catch (const EmptyNote&) {
            continue;
        }
        for (const auto& s : sents) {
            ASSERT_FALSE(s.tokens.empty()) << note.note_id;
            if (s.pattern == Pattern::Unexpandable) continue;
            ASSERT_GE(s.tokens.size(), 2u) << note.note_id;
            EXPECT_EQ(s.tokens[0], "the") << note.note_id;
            EXPECT_EQ(s.tokens[1], "patient") << note.note_id;
        }
    }
}

TEST(PreprocessNote, PreprocessedTextJoinsSentences) {
    auto sents = preprocess_note({"n", "fever, no cough"}, res().lexicon, &res().vocabulary);
    EXPECT_EQ(preprocessed_text(sents), "the patient has fever the patient does not have cough");
}
