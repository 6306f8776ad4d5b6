#include "test_util.hpp"

#include <gtest/gtest.h>

namespace lexiscan {
namespace {

using testing::W;

const OperationSet kLev = OperationSet::preset("lev");

std::optional<FilterState> feed(const Filter& f, WordView u) {
  FilterState s = f.start();
  for (Symbol c : u) {
    auto next = f.step(s, c);
    if (!next) return std::nullopt;
    s = *next;
  }
  return s;
}

TEST(Filter, StartRowHoldsDeletionCosts) {
  const Filter f(kLev, W("dread"), 2);
  const FilterState s = f.start();
  const auto row = s.row();
  ASSERT_EQ(row.size(), 6u);
  EXPECT_EQ(row[0], 0u);
  EXPECT_EQ(row[1], 1u);
  EXPECT_EQ(row[2], 2u);
  for (std::size_t i = 3; i < 6; ++i) EXPECT_GT(row[i], 2u);
}

TEST(Filter, EmptyPatternAcceptsAtStart) {
  const Filter f(kLev, W(""), 0);
  EXPECT_EQ(f.distance(f.start()), Weight{0});
}

TEST(Filter, LargeBoundIsViable) {
  const Filter f(kLev, W("ab"), 5);
  EXPECT_TRUE(f.viable(f.start()));
  EXPECT_EQ(f.distance(f.start()), Weight{2});
}

TEST(Filter, PrefixOfRealStaysViable) {
  const Filter f(kLev, W("dread"), 2);
  auto s = feed(f, W("re"));
  ASSERT_TRUE(s);
  EXPECT_FALSE(f.distance(*s));
  EXPECT_TRUE(feed(f, W("real")));
}

TEST(Filter, HopelessPrefixDiesAtThirdStep) {
  const Filter f(kLev, W("dread"), 2);
  EXPECT_TRUE(feed(f, W("xx")));
  EXPECT_FALSE(feed(f, W("xxx")));
}

TEST(Filter, ExactMatchAtBoundZero) {
  const Filter f(kLev, W("dread"), 0);
  const Word p = W("dread");
  for (std::size_t k = 1; k <= p.size(); ++k) ASSERT_TRUE(feed(f, p.substr(0, k)));
  EXPECT_EQ(f.distance(*feed(f, p)), Weight{0});
}

TEST(Filter, DistanceOfConsumedString) {
  const Filter f(kLev, W("dread"), 2);
  EXPECT_EQ(f.distance(*feed(f, W("rea"))), Weight{2});
  EXPECT_EQ(f.distance(*feed(f, W("dread"))), Weight{0});
}

TEST(Filter, StepIntoMatchesStep) {
  const auto ops = OperationSet::preset("lev-merge-split");
  const Filter f(ops, W("abcab"), 2);
  FilterState a = f.start(), b = f.start(), tmp;
  for (Symbol c : W("acbab")) {
    auto next = f.step(a, c);
    ASSERT_EQ(next.has_value(), f.step_into(b, c, tmp));
    if (!next) break;
    a = *next;
    b = tmp;
    ASSERT_EQ(a, b);
  }
}

TEST(Filter, TranspositionAcrossSteps) {
  const Filter f(OperationSet::preset("lev-transpose"), W("abcd"), 1);
  EXPECT_EQ(f.distance(*feed(f, W("bacd"))), Weight{1});
  EXPECT_EQ(f.distance(*feed(f, W("abdc"))), Weight{1});
  EXPECT_FALSE(feed(f, W("badc")) && f.distance(*feed(f, W("badc"))));
}

TEST(Filter, SplitAndMerge) {
  const Filter f(OperationSet::preset("lev-merge-split"), W("abc"), 1);
  EXPECT_EQ(f.distance(*feed(f, W("axyc"))), Weight{1});
  EXPECT_EQ(f.distance(*feed(f, W("ac"))), Weight{1});
  EXPECT_EQ(f.distance(*feed(f, W("axc"))), Weight{1});
}

TEST(Filter, GenericKernelAgreesWithSpecialized) {
  std::mt19937_64 rng(21);
  for (const char* name : testing::kPresets) {
    const auto ops = OperationSet::preset(name);
    for (int t = 0; t < 200; ++t) {
      const Word p = testing::random_word(rng, 0, 6, 3);
      const Weight b = static_cast<Weight>(t % 3);
      const Filter fast(ops, p, b), slow(ops, p, b, Filter::Kernel::generic);
      const Word u = testing::random_word(rng, 0, 8, 3);
      FilterState x = fast.start(), y = slow.start();
      ASSERT_EQ(fast.distance(x), slow.distance(y));
      for (Symbol c : u) {
        auto nx = fast.step(x, c);
        auto ny = slow.step(y, c);
        ASSERT_EQ(nx.has_value(), ny.has_value());
        if (!nx) break;
        x = *nx;
        y = *ny;
        ASSERT_EQ(fast.distance(x), slow.distance(y));
        ASSERT_EQ(x.row().size(), y.row().size());
        for (std::size_t i = 0; i < x.row().size(); ++i) ASSERT_EQ(x.row()[i], y.row()[i]);
      }
    }
  }
}

TEST(Filter, LowerBoundNeverExceedsFinalDistance) {
  std::mt19937_64 rng(22);
  for (const char* name : testing::kPresets) {
    const auto ops = OperationSet::preset(name);
    for (int t = 0; t < 300; ++t) {
      const Word p = testing::random_word(rng, 1, 6, 3), w = testing::random_word(rng, 1, 8, 3);
      const Filter f(ops, p, 3);
      FilterState s = f.start();
      std::vector<Weight> bounds{f.lower_bound(s)};
      bool alive = true;
      for (Symbol c : w) {
        auto next = f.step(s, c);
        if (!next) {
          alive = false;
          break;
        }
        s = *next;
        bounds.push_back(f.lower_bound(s));
      }
      if (!alive) continue;
      if (auto d = f.distance(s)) {
        for (Weight lb : bounds) ASSERT_LE(lb, *d);
      }
    }
  }
}

class ExhaustiveFilter : public ::testing::TestWithParam<const char*> {};

TEST_P(ExhaustiveFilter, SoundAndComplete) {
  EXPECT_EQ(testing::exhaustive_filter_check(OperationSet::preset(GetParam()), 3, 4, 2), "");
}

INSTANTIATE_TEST_SUITE_P(Presets, ExhaustiveFilter, ::testing::ValuesIn(testing::kPresets));

TEST(ExhaustiveFilterCustom, ExplicitOperations) {
  OperationSet ops = OperationSet::preset("lev");
  ops.add(W("ab"), W("c"), 1);
  ops.add(W("c"), W("ba"), 1);
  EXPECT_EQ(testing::exhaustive_filter_check(ops, 3, 3, 2), "");
}

TEST(ExhaustiveFilterCustom, WeightedClasses) {
  const auto ops = OperationSet::parse("classes: substitute=2 insert delete transpose=2\n");
  EXPECT_EQ(testing::exhaustive_filter_check(ops, 3, 3, 3), "");
}

}  // namespace
}  // namespace lexiscan
