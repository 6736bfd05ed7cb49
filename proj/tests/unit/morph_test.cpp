#include <gtest/gtest.h>

#include <algorithm>

#include "anusaaraka/morph.hpp"
#include "oracles.hpp"

namespace anusaaraka {
namespace {

using testing::oracle_analyses;
using testing::sorted_analyses;

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::string> oracle(const std::string& word, const Lexicon& lex) { return oracle_analyses(word, lex); }

std::vector<std::string> formatted(const std::vector<Analysis>& analyses) { return sorted_analyses(analyses); }

std::vector<std::string> oracle_test_words(const Lexicon& lex) { return testing::oracle_words(lex, "corpus-tel.txt"); }

TEST(Analyze, ExampleAnalysesMatchGolden) {
  for (const auto& line : testing::read_lines(testing::golden("analyses.txt"))) {
    auto tab = line.find('\t');
    auto word = line.substr(0, tab);
    EXPECT_EQ(format_analyses(analyze_word(word, testing::telugu())), line.substr(tab + 1)) << word;
  }
}

TEST(Analyze, AnalyzerAgreesWithBruteForceOracle) {
  const auto& lex = testing::telugu();
  auto words = oracle_test_words(lex);
  ASSERT_GE(words.size(), 1000u);
  std::size_t mismatches = 0;
  std::size_t hits = 0;
  for (const auto& w : words) {
    auto got = sorted(formatted(analyze_word(w, lex)));
    auto want = sorted(oracle(w, lex));
    if (!want.empty()) ++hits;
    if (got != want) {
      ++mismatches;
      ADD_FAILURE() << w << ": analyzer " << ::testing::PrintToString(got) << " oracle "
                    << ::testing::PrintToString(want);
    }
  }
  EXPECT_EQ(mismatches, 0u);
  EXPECT_GT(hits, 50u);
}

TEST(Analyze, KannadaAgreesWithOracle) {
  const auto& lex = testing::kannada();
  for (const auto& w : testing::corpus_words("corpus-kan.txt")) {
    EXPECT_EQ(sorted(formatted(analyze_word(w, lex))), sorted(oracle(w, lex))) << w;
  }
}

TEST(Analyze, SegmentationReconstructsTheWord) {
  const auto& lex = testing::telugu();
  for (const auto& w : oracle_test_words(lex)) {
    for (const auto& a : analyze_word(w, lex)) EXPECT_EQ(reconstruct(a), w);
  }
}

TEST(Analyze, CandidatesFollowSplitPositionThenFileOrder) {
  auto splits = propose_splits("mAnava", testing::telugu().source());
  ASSERT_EQ(splits.size(), 2u);
  EXPECT_EQ(splits[0].entry->root, "mAnavuDu");
  EXPECT_EQ(splits[1].entry->root, "mAnuvu");
  EXPECT_EQ(splits[0].applied_join_rule.delete_from_root, "uDu");
}

TEST(Analyze, SandhiFallbackOnlyWhenPlainAnalysisFails) {
  const auto& lex = testing::telugu();
  auto joined = analyze_word("AmevADito", lex);
  ASSERT_FALSE(joined.empty());
  for (const auto& a : joined) {
    EXPECT_TRUE(a.is_compound());
    EXPECT_EQ(a.sandhi_parts.front().root, "Ame");
    EXPECT_EQ(a.root, "vADu");
  }
  for (const auto& a : analyze_word("mAnava", lex)) EXPECT_FALSE(a.is_compound());
}

TEST(Analyze, BoundaryRuleRewritesJunction) {
  const auto& lex = testing::telugu();
  auto splits = split_sandhi("pustakAmlru", lex.source(), lex.boundary_rules());
  EXPECT_TRUE(splits.empty());
  auto a = analyze_word("pustakaMcaduvutunnArA", lex);
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a.front().sandhi_parts.front().root, "pustakaM");
}

TEST(Analyze, UnknownAndEmptyWords) {
  EXPECT_TRUE(analyze_word("", testing::telugu()).empty());
  EXPECT_TRUE(analyze_word("qqqq", testing::telugu()).empty());
}

TEST(Analyze, ResultIndependentOfFileOrder) {
  auto files = testing::sample_files("sample-tel-hin");
  std::reverse(files.begin(), files.end());
  auto reversed = load_lexicon(files);
  for (const auto& w : testing::corpus_words("corpus-tel.txt")) {
    EXPECT_EQ(format_analyses(analyze_word(w, reversed)), format_analyses(analyze_word(w, testing::telugu())));
  }
}

TEST(Synthesize, ExampleForms) {
  const auto& hin = testing::telugu().target();
  EXPECT_EQ(synthesize("rAjA", Category::noun, FeatureBundle::parse("number=pl,case=oblique"), hin), "rAjAoM");
  EXPECT_EQ(synthesize("khA", Category::verb, FeatureBundle::parse("TAM=tA,gnp=fem_sg_3"), hin), "khAtI");
  EXPECT_EQ(synthesize("laDakA", Category::noun, FeatureBundle::parse("number=sg,case=oblique"), hin), "laDake");
  EXPECT_EQ(synthesize("vaHa", Category::pronoun, FeatureBundle::parse("case=oblique"), hin), "usa");
}

TEST(Synthesize, EmptyRequestAndIndeclinablesGiveTheRoot) {
  const auto& hin = testing::telugu().target();
  EXPECT_EQ(synthesize("khA", Category::verb, FeatureBundle{}, hin), "khA");
  EXPECT_EQ(synthesize("smRti", Category::noun, FeatureBundle::parse("number=pl,case=oblique"), hin), "smRti");
}

TEST(Synthesize, Errors) {
  const auto& hin = testing::telugu().target();
  try {
    synthesize("zzz", Category::noun, FeatureBundle::parse("number=sg"), hin);
    FAIL();
  } catch (const SynthesisError& e) {
    EXPECT_EQ(e.kind(), SynthesisError::Kind::unknown_root);
  }
  try {
    synthesize("khA", Category::verb, FeatureBundle::parse("TAM=zz"), hin);
    FAIL();
  } catch (const SynthesisError& e) {
    EXPECT_EQ(e.kind(), SynthesisError::Kind::no_match);
  }
  EXPECT_THROW(synthesize("khA", Category::noun, FeatureBundle::parse("number=sg"), hin), SynthesisError);
}

void expect_round_trip(const Dictionary& dict, std::size_t minimum) {
  std::size_t checked = 0;
  auto failures = testing::round_trip_failures(dict, &checked);
  EXPECT_TRUE(failures.empty()) << ::testing::PrintToString(failures);
  EXPECT_GE(checked, minimum);
}

TEST(RoundTrip, TargetDictionary) { expect_round_trip(testing::telugu().target(), 60); }
TEST(RoundTrip, TeluguSource) { expect_round_trip(testing::telugu().source(), 20); }
TEST(RoundTrip, KannadaSource) { expect_round_trip(testing::kannada().source(), 10); }

}  // namespace
}  // namespace anusaaraka
