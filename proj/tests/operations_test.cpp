#include "test_util.hpp"

#include <gtest/gtest.h>

namespace lexiscan {
namespace {

using testing::W;

TEST(Presets, WidthOfEachPreset) {
  EXPECT_EQ(OperationSet::preset("lev").omega_max(), 1u);
  EXPECT_EQ(OperationSet::preset("lev-transpose").omega_max(), 2u);
  EXPECT_EQ(OperationSet::preset("lev-merge-split").omega_max(), 2u);
}

TEST(Presets, MergeAndSplitWeighOne) {
  const auto ops = OperationSet::preset("lev-merge-split");
  EXPECT_EQ(ops.class_weight(OpClass::merge), Weight{1});
  EXPECT_EQ(ops.class_weight(OpClass::split), Weight{1});
  EXPECT_EQ(ops.weight(W("ab"), W("c")), Weight{1});
  EXPECT_EQ(ops.weight(W("c"), W("ab")), Weight{1});
  EXPECT_FALSE(ops.class_weight(OpClass::transpose));
}

TEST(Presets, UnknownNameIsConfigError) { EXPECT_THROW(OperationSet::preset("hamming"), ConfigError); }

TEST(Weights, IdentityIsFreeAndAlwaysPresent) {
  OperationSet empty;
  EXPECT_EQ(empty.weight(W("x"), W("x")), Weight{0});
  EXPECT_FALSE(empty.weight(W("x"), W("y")));
}

TEST(Weights, TransposeNeedsSwappedDistinctPair) {
  const auto ops = OperationSet::preset("lev-transpose");
  EXPECT_EQ(ops.weight(W("ab"), W("ba")), Weight{1});
  EXPECT_FALSE(ops.weight(W("aa"), W("aa")));
  EXPECT_FALSE(ops.weight(W("ab"), W("bc")));
}

TEST(Parse, ExplicitTranspositionOnTopOfBaseClasses) {
  const auto ops = OperationSet::parse("classes: substitute insert delete\nab\tba\t1\n");
  EXPECT_EQ(ops.weight(W("ab"), W("ba")), Weight{1});
  EXPECT_FALSE(ops.weight(W("cd"), W("dc")));
  EXPECT_EQ(ops.omega_max(), 2u);
  EXPECT_EQ(ops.explicit_operations().size(), 1u);
}

TEST(Parse, BaseClassesEqualLev) {
  EXPECT_EQ(OperationSet::parse("classes: substitute insert delete\n"), OperationSet::preset("lev"));
}

TEST(Parse, ClassWeights) {
  const auto ops = OperationSet::parse("classes: substitute=2 insert delete=3\n");
  EXPECT_EQ(ops.class_weight(OpClass::substitute), Weight{2});
  EXPECT_EQ(ops.class_weight(OpClass::insert), Weight{1});
  EXPECT_EQ(ops.class_weight(OpClass::remove), Weight{3});
}

TEST(Parse, EmptySidesAllowed) {
  const auto ops = OperationSet::parse("x\t\t2\n\ty\t3\n");
  EXPECT_EQ(ops.weight(W("x"), W("")), Weight{2});
  EXPECT_EQ(ops.weight(W(""), W("y")), Weight{3});
}

TEST(Parse, ExplicitOverridesClassWeight) {
  const auto ops = OperationSet::parse("classes: substitute=3\na\tb\t1\n");
  EXPECT_EQ(ops.weight(W("a"), W("b")), Weight{1});
  EXPECT_EQ(ops.weight(W("a"), W("c")), Weight{3});
}

TEST(Parse, DuplicateKeepsLowerWeight) {
  const auto ops = OperationSet::parse("a\tb\t4\na\tb\t2\n");
  EXPECT_EQ(ops.weight(W("a"), W("b")), Weight{2});
}

TEST(Parse, Errors) {
  EXPECT_THROW(OperationSet::parse("ab\tcd\t0\n"), ParseError);
  EXPECT_THROW(OperationSet::parse("a\ta\t1\n"), ParseError);
  EXPECT_THROW(OperationSet::parse("a\tb\n"), ParseError);
  EXPECT_THROW(OperationSet::parse("a\tb\tx\n"), ParseError);
  EXPECT_THROW(OperationSet::parse("\t\t1\n"), ParseError);
  EXPECT_THROW(OperationSet::parse("classes: swap\n"), ParseError);
}

TEST(Parse, ErrorNamesLine) {
  try {
    OperationSet::parse("classes: insert\na\tb\t1\nab\tcd\t0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Reverse, LevIsSelfMirrored) { EXPECT_EQ(OperationSet::preset("lev").reversed(), OperationSet::preset("lev")); }

TEST(Reverse, ExplicitSidesAreReversed) {
  OperationSet ops;
  ops.add(W("ab"), W("c"), 2);
  const auto rev = ops.reversed();
  EXPECT_EQ(rev.weight(W("ba"), W("c")), Weight{2});
  EXPECT_FALSE(rev.weight(W("ab"), W("c")));
  EXPECT_EQ(rev.omega_max(), ops.omega_max());
}

TEST(Reverse, Involution) {
  auto ops = OperationSet::preset("lev-merge-split");
  ops.add(W("abc"), W("x"), 1);
  ops.add(W(""), W("yz"), 3);
  EXPECT_EQ(ops.reversed().reversed(), ops);
}

TEST(Add, RejectsInvalidOperations) {
  OperationSet ops;
  EXPECT_THROW(ops.add(W(""), W(""), 1), ConfigError);
  EXPECT_THROW(ops.add(W("a"), W("a"), 1), ConfigError);
  EXPECT_THROW(ops.add(W("a"), W("b"), 0), ConfigError);
}

TEST(LengthRatio, TracksLargestLengthChangePerWeight) {
  EXPECT_EQ(OperationSet::preset("lev").length_change_ratio(), (std::pair<Weight, Weight>{1, 1}));
  OperationSet ops;
  ops.add(W("a"), W("b"), 1);
  EXPECT_EQ(ops.length_change_ratio().first, 0u);
  ops.add(W("abc"), W(""), 2);
  const auto [num, den] = ops.length_change_ratio();
  EXPECT_EQ(num * 2, den * 3);
}

}  // namespace
}  // namespace lexiscan
