#include "test_util.hpp"

#include <gtest/gtest.h>

namespace lexiscan {
namespace {

using testing::W;

TEST(Lexicon, LoadsD3) {
  const auto lex = load_lexicon("ear\nlead\nreal\n");
  ASSERT_EQ(lex.entries.size(), 3u);
  EXPECT_EQ(lex.total_size(), 11u);
  EXPECT_EQ(lex.entries[1], W("lead"));
  EXPECT_EQ(lex.max_length(), 4u);
  EXPECT_EQ(lex.alphabet(), (std::set<Symbol>{U'a', U'd', U'e', U'l', U'r'}));
}

TEST(Lexicon, MissingFinalNewline) { EXPECT_EQ(load_lexicon("ear\nlead").entries.size(), 2u); }

TEST(Lexicon, DuplicatesDroppedAndCounted) {
  const auto lex = load_lexicon("ear\nlead\near\nreal\n");
  EXPECT_EQ(lex.entries.size(), 3u);
  EXPECT_EQ(lex.duplicates_dropped, 1u);
  EXPECT_EQ(lex.entries, (std::vector<Word>{W("ear"), W("lead"), W("real")}));
}

TEST(Lexicon, Errors) {
  EXPECT_THROW(load_lexicon(""), LoadError);
  EXPECT_THROW(load_lexicon("ear\n\nreal\n"), LoadError);
  EXPECT_THROW(load_lexicon("ear\n\xff\xfe\n"), LoadError);
  EXPECT_THROW(load_lexicon_file("/nonexistent/lexicon.txt"), LoadError);
}

TEST(Lexicon, ErrorNamesLine) {
  try {
    load_lexicon("ear\nlead\n\xc3\n");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Lexicon, Utf8RoundTrip) {
  const auto lex = load_lexicon("\xd0\xb6\xd0\xb0\xd0\xb1\xd0\xb0\n\xe6\xbc\xa2\xe5\xad\x97\n");
  ASSERT_EQ(lex.entries.size(), 2u);
  EXPECT_EQ(lex.entries[0].size(), 4u);
  EXPECT_EQ(encode_utf8(lex.entries[1]), "\xe6\xbc\xa2\xe5\xad\x97");
}

TEST(Symbols, SentinelsRenderOnlyOnRequest) {
  const Word w = testing::SW("#ab$");
  EXPECT_EQ(encode_utf8(w, true), "#ab$");
  EXPECT_NE(encode_utf8(w, false), "#ab$");
  EXPECT_TRUE(is_sentinel(w[0]));
  EXPECT_FALSE(is_sentinel(U'#'));
}

TEST(Symbols, DecodeRejectsSurrogates) { EXPECT_THROW(decode_utf8("\xed\xa0\x80"), LoadError); }

}  // namespace
}  // namespace lexiscan
