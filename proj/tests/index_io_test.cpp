#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

namespace lexiscan {
namespace {

using testing::W;

std::string fix_crc(std::string bytes) {
  const std::uint32_t crc = detail::crc32(std::string_view(bytes).substr(0, bytes.size() - 4));
  for (int i = 0; i < 4; ++i) bytes[bytes.size() - 4 + i] = static_cast<char>((crc >> (8 * i)) & 0xFF);
  return bytes;
}

TEST(IndexIo, RoundTripIsStructurallyEqual) {
  const auto idx = build_index(testing::d3());
  const auto bytes = serialize(idx);
  EXPECT_EQ(bytes.substr(0, 4), "SCDG");
  const auto back = deserialize(bytes);
  EXPECT_EQ(back, idx);
  EXPECT_EQ(serialize(back), bytes);
  EXPECT_EQ(back.locate(W("re")), idx.locate(W("re")));
}

TEST(IndexIo, RebuildIsByteIdentical) {
  std::mt19937_64 rng(41);
  const auto lex = testing::random_lexicon(rng, 50, 10, 6);
  EXPECT_EQ(serialize(build_index(lex)), serialize(build_index(lex)));
}

TEST(IndexIo, RandomLexicaRoundTrip) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 30; ++t) {
    const auto lex = testing::random_lexicon(rng, 1 + t, 10, 2 + t % 5);
    const auto idx = build_index(lex);
    const auto back = deserialize(serialize(idx));
    ASSERT_EQ(back, idx);
    ASSERT_EQ(testing::index_mismatch(lex, back), "");
  }
}

TEST(IndexIo, WrongMagic) {
  auto bytes = serialize(build_index(testing::d3()));
  bytes[0] = 'X';
  EXPECT_THROW(deserialize(fix_crc(bytes)), FormatError);
}

TEST(IndexIo, WrongVersion) {
  auto bytes = serialize(build_index(testing::d3()));
  bytes[4] = 9;
  EXPECT_THROW(deserialize(fix_crc(bytes)), FormatError);
}

TEST(IndexIo, ChecksumMismatch) {
  auto bytes = serialize(build_index(testing::d3()));
  bytes[bytes.size() / 2] ^= 0x40;
  EXPECT_THROW(deserialize(bytes), FormatError);
}

TEST(IndexIo, Truncation) {
  const auto bytes = serialize(build_index(testing::d3()));
  for (std::size_t n : {std::size_t{0}, std::size_t{5}, std::size_t{40}, bytes.size() - 1}) {
    EXPECT_THROW(deserialize(bytes.substr(0, n)), FormatError) << n;
    if (n >= 8) {
      EXPECT_THROW(deserialize(fix_crc(bytes.substr(0, n))), FormatError) << n;
    }
  }
}

TEST(IndexIo, TrailingBytes) {
  auto bytes = serialize(build_index(testing::d3()));
  bytes.insert(bytes.size() - 4, "xxxx");
  EXPECT_THROW(deserialize(fix_crc(bytes)), FormatError);
}

TEST(IndexIo, SentinelsHoldTheFirstSymbolIds) {
  const auto bytes = serialize(build_index(testing::d3()));
  detail::ByteReader r(bytes);
  EXPECT_EQ(r.u32(), 0x47444353u);  // "SCDG" read little-endian
  EXPECT_EQ(r.u32(), kIndexVersion);
  EXPECT_EQ(r.u64(), 7u);
  EXPECT_EQ(r.u32(), kHash);
  EXPECT_EQ(r.u32(), kDollar);
  EXPECT_EQ(r.u32(), static_cast<std::uint32_t>(U'a'));
}

TEST(IndexIo, SaveAndLoad) {
  const auto path = (std::filesystem::temp_directory_path() / "lexiscan_io_test.idx").string();
  const auto idx = build_index(testing::d3());
  save_index(idx, path);
  EXPECT_EQ(load_index(path), idx);
  std::remove(path.c_str());
  EXPECT_THROW(load_index(path), LoadError);
}

}  // namespace
}  // namespace lexiscan
