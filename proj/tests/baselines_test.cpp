#include "test_util.hpp"

#include <gtest/gtest.h>

namespace lexiscan {
namespace {

using testing::S;
using testing::W;

const OperationSet kLev = OperationSet::preset("lev");
const std::vector<MatchResult> kDreadAnswers = {{W("lead"), 2}, {W("real"), 2}};

class D3Baselines : public ::testing::Test {
 protected:
  Lexicon lex = testing::d3();
  Trie fwd = Trie::build(lex.entries);
  Trie bwd = build_reverse_trie(lex);
};

TEST_F(D3Baselines, BruteForce) {
  EXPECT_EQ(brute_force_search(lex, kLev, W("dread"), 2), kDreadAnswers);
  EXPECT_TRUE(brute_force_search(lex, kLev, W("zzz"), 0).empty());
  EXPECT_EQ(brute_force_search(lex, kLev, W("zz"), 4).size(), 3u);
}

TEST_F(D3Baselines, Oflazer) {
  EXPECT_EQ(oflazer_search(fwd, kLev, W("dread"), 2), kDreadAnswers);
  EXPECT_EQ(oflazer_search(fwd, kLev, W("lead"), 0), (std::vector<MatchResult>{{W("lead"), 0}}));
}

TEST_F(D3Baselines, ForwardBackward) {
  EXPECT_EQ(forward_backward_search(fwd, bwd, kLev, W("dread"), 2), kDreadAnswers);
  EXPECT_EQ(forward_backward_search(fwd, bwd, kLev, W("reel"), 1), (std::vector<MatchResult>{{W("real"), 1}}));
  EXPECT_EQ(forward_backward_search(fwd, bwd, kLev, W("xeal"), 1), (std::vector<MatchResult>{{W("real"), 1}}));
  EXPECT_EQ(forward_backward_search(fwd, bwd, kLev, W("reax"), 1), (std::vector<MatchResult>{{W("real"), 1}}));
}

TEST_F(D3Baselines, PerfectIndex) {
  const auto pi = PerfectIndex::build(lex, kLev, {W("dread"), W("ear"), W("dread")}, 2);
  EXPECT_EQ(pi.size(), 2u);
  EXPECT_EQ(pi.bound(), 2u);
  EXPECT_EQ(pi.lookup(W("dread")), kDreadAnswers);
  EXPECT_THROW(pi.lookup(W("read")), CoverageError);
}

TEST(Trie, AcceptsExactlyTheLexiconWithOneNodePerPrefix) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 50; ++t) {
    const auto lex = testing::random_lexicon(rng, 20, 6, 3);
    const auto trie = Trie::build(lex.entries);
    std::set<Word> prefixes;
    for (const auto& w : lex.entries) {
      for (std::size_t k = 0; k <= w.size(); ++k) prefixes.insert(w.substr(0, k));
    }
    ASSERT_EQ(trie.node_count(), prefixes.size());
    const std::set<Word> entries(lex.entries.begin(), lex.entries.end());
    for (const Word& v : testing::all_strings(3, 6)) ASSERT_EQ(trie.contains(v), entries.contains(v)) << S(v);
  }
}

TEST(Baselines, AgreeWithBruteForce) {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 300; ++t) {
    const auto lex = testing::random_lexicon(rng, 100, 10, 4);
    const auto ops = OperationSet::preset(testing::kPresets[t % 3]);
    const auto fwd = Trie::build(lex.entries);
    const auto bwd = build_reverse_trie(lex);
    const Word p = testing::random_word(rng, 1, 10, 4);
    const Weight b = static_cast<Weight>(t % 4);
    const auto expected = brute_force_search(lex, ops, p, b);
    ASSERT_EQ(oflazer_search(fwd, ops, p, b), expected) << S(p) << " b=" << b;
    ASSERT_EQ(forward_backward_search(fwd, bwd, ops, p, b), expected) << S(p) << " b=" << b << " " << ops.describe();
  }
}

TEST(Baselines, ForwardBackwardWithWideExplicitOperations) {
  const auto ops = OperationSet::parse("classes: substitute insert delete\nabc\tx\t1\nx\tabc\t1\n");
  std::mt19937_64 rng(63);
  for (int t = 0; t < 100; ++t) {
    std::vector<Word> words;
    for (int k = 0; k < 40; ++k) words.push_back(testing::random_word(rng, 1, 8, 3));
    words.push_back(W("abcabc"));
    words.push_back(W("xx"));
    const auto lex = Lexicon::from_words(words);
    const auto fwd = Trie::build(lex.entries);
    const auto bwd = build_reverse_trie(lex);
    const Word p = t % 2 ? W("xabc") : testing::random_word(rng, 1, 8, 3);
    const Weight b = static_cast<Weight>(t % 3);
    ASSERT_EQ(forward_backward_search(fwd, bwd, ops, p, b), brute_force_search(lex, ops, p, b)) << S(p);
    ASSERT_EQ(oflazer_search(fwd, ops, p, b), brute_force_search(lex, ops, p, b)) << S(p);
  }
}

}  // namespace
}  // namespace lexiscan
