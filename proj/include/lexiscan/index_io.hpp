#pragma once

#include "lexiscan/scdawg.hpp"

#include <boost/crc.hpp>

#include <cstring>
#include <fstream>
#include <map>
#include <tuple>
#include <string>

namespace lexiscan {

inline constexpr char kIndexMagic[4] = {'S', 'C', 'D', 'G'};
inline constexpr std::uint32_t kIndexVersion = 1;

namespace detail {

class ByteWriter {
 public:
  void raw(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view in) : in_(in) {}
  void raw(void* p, std::size_t n) {
    need(n);
    std::memcpy(p, in_.data() + at_, n);
    at_ += n;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{static_cast<unsigned char>(in_[at_ + i])} << (8 * i);
    at_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{static_cast<unsigned char>(in_[at_ + i])} << (8 * i);
    at_ += 8;
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  /// Reads a count and checks that at least count * unit bytes remain.
  std::size_t count(std::size_t unit) {
    const std::uint64_t n = u64();
    if (unit != 0 && n > (in_.size() - at_) / unit) throw FormatError("index file truncated");
    return static_cast<std::size_t>(n);
  }
  bool done() const noexcept { return at_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - at_ < n) throw FormatError("index file truncated");
  }
  std::string_view in_;
  std::size_t at_ = 0;
};

inline std::uint32_t crc32(std::string_view bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

inline std::uint64_t widen_state(std::uint32_t q) { return q == kNoState ? ~std::uint64_t{0} : q; }

inline std::uint32_t narrow_state(std::uint64_t q, std::size_t limit) {
  if (q == ~std::uint64_t{0}) return kNoState;
  if (q >= limit) throw FormatError("state id out of range");
  return static_cast<std::uint32_t>(q);
}

inline std::uint32_t narrow(std::uint64_t v, std::uint64_t limit) {
  if (v > limit) throw FormatError("value out of range");
  return static_cast<std::uint32_t>(v);
}

inline void write_cdawg(ByteWriter& w, const Cdawg& a, const std::map<Symbol, std::uint32_t>& ids) {
  w.u64(a.text.size());
  for (Symbol s : a.text) w.u32(ids.at(s));
  w.u64(a.blocks.size());
  for (const auto& [b, e] : a.blocks) {
    w.u64(b);
    w.u64(e);
  }
  const std::size_t n = a.state_count();
  w.u64(n);
  for (std::size_t q = 0; q < n; ++q) {
    w.u64(a.end[q]);
    w.u64(a.length[q]);
    w.u64(widen_state(a.link[q]));
  }
  struct Row {
    std::uint32_t state, id;
    const CdawgEdge* e;
  };
  std::vector<Row> rows;
  rows.reserve(a.edges.size());
  for (std::uint32_t q = 0; q < n; ++q) {
    for (const auto& e : a.out_edges(q)) rows.push_back({q, ids.at(e.symbol), &e});
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& x, const Row& y) { return std::tie(x.state, x.id) < std::tie(y.state, y.id); });
  w.u64(rows.size());
  for (const auto& r : rows) {
    w.u64(r.state);
    w.u32(r.id);
    w.u64(r.e->start);
    w.u64(r.e->length);
    w.u64(r.e->target);
  }
}

inline Cdawg read_cdawg(ByteReader& r, const std::vector<Symbol>& table) {
  Cdawg a;
  auto symbol = [&](std::uint32_t id) {
    if (id >= table.size()) throw FormatError("symbol id out of range");
    return table[id];
  };
  const std::size_t text_size = r.count(4);
  if (text_size >= kNoState) throw FormatError("text too large");
  a.text.resize(text_size);
  for (auto& s : a.text) s = symbol(r.u32());
  const std::size_t blocks = r.count(16);
  a.blocks.resize(blocks);
  for (auto& [b, e] : a.blocks) {
    b = narrow(r.u64(), text_size);
    e = narrow(r.u64(), text_size);
    if (b > e) throw FormatError("bad block");
  }
  const std::size_t n = r.count(24);
  if (n == 0) throw FormatError("automaton without states");
  a.end.resize(n);
  a.length.resize(n);
  a.link.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    a.end[q] = narrow(r.u64(), text_size);
    a.length[q] = narrow(r.u64(), a.end[q]);
    a.link[q] = narrow_state(r.u64(), n);
  }
  const std::size_t m = r.count(36);
  a.edges.resize(m);
  a.edge_offset.assign(n + 1, 0);
  std::uint32_t prev_state = 0;
  for (auto& e : a.edges) {
    const std::uint32_t q = narrow_state(r.u64(), n);
    if (q == kNoState || q < prev_state) throw FormatError("transitions out of order");
    prev_state = q;
    ++a.edge_offset[q + 1];
    e.symbol = symbol(r.u32());
    e.start = narrow(r.u64(), text_size);
    e.length = narrow(r.u64(), text_size - e.start);
    e.target = narrow_state(r.u64(), n);
    if (e.target == kNoState) throw FormatError("transition without target");
  }
  for (std::size_t q = 0; q < n; ++q) {
    a.edge_offset[q + 1] += a.edge_offset[q];
    std::sort(a.edges.begin() + a.edge_offset[q], a.edges.begin() + a.edge_offset[q + 1],
              [](const CdawgEdge& x, const CdawgEdge& y) { return x.symbol < y.symbol; });
  }
  return a;
}

}  // namespace detail

inline std::string serialize(const Scdawg& idx) {
  // Ids 0 and 1 are the sentinels, the rest follow in code point order.
  std::map<Symbol, std::uint32_t> ids{{kHash, 0}, {kDollar, 1}};
  std::vector<Symbol> table{kHash, kDollar};
  {
    std::vector<bool> seen(0x110000, false);
    for (Symbol s : idx.forward.text) {
      if (!is_sentinel(s)) seen[s] = true;
    }
    for (Symbol s = 0; s < 0x110000; ++s) {
      if (seen[s]) {
        ids.emplace(s, static_cast<std::uint32_t>(table.size()));
        table.push_back(s);
      }
    }
  }

  detail::ByteWriter w;
  w.raw(kIndexMagic, 4);
  w.u32(kIndexVersion);
  w.u64(table.size());
  for (Symbol s : table) w.u32(s);
  detail::write_cdawg(w, idx.forward, ids);
  detail::write_cdawg(w, idx.reverse, ids);
  w.u64(idx.entry_count);
  w.u64(idx.b.size());
  for (std::uint32_t q : idx.b) w.u64(q);
  w.u64(idx.bounds.size());
  for (const auto& pb : idx.bounds) {
    w.i64(pb.min_pre);
    w.i64(pb.max_pre);
    w.i64(pb.min_suf);
    w.i64(pb.max_suf);
  }
  w.u32(detail::crc32(w.bytes()));
  return std::move(w.bytes());
}

inline Scdawg deserialize(std::string_view bytes) {
  if (bytes.size() < 12) throw FormatError("index file truncated");
  if (std::memcmp(bytes.data(), kIndexMagic, 4) != 0) throw FormatError("not an index file (bad magic)");
  const std::string_view body = bytes.substr(0, bytes.size() - 4);
  detail::ByteReader trailer(bytes.substr(bytes.size() - 4));
  if (trailer.u32() != detail::crc32(body)) throw FormatError("index checksum mismatch");

  detail::ByteReader r(body);
  char magic[4];
  r.raw(magic, 4);
  if (const std::uint32_t v = r.u32(); v != kIndexVersion) {
    throw FormatError("unsupported index version " + std::to_string(v));
  }
  const std::size_t symbols = r.count(4);
  std::vector<Symbol> table(symbols);
  for (auto& s : table) s = r.u32();
  if (symbols < 2 || table[0] != kHash || table[1] != kDollar) throw FormatError("bad symbol table");

  Scdawg idx;
  idx.forward = detail::read_cdawg(r, table);
  idx.reverse = detail::read_cdawg(r, table);
  idx.entry_count = detail::narrow(r.u64(), kNoState);
  const std::size_t n = idx.forward.state_count();
  if (r.count(8) != n || idx.reverse.state_count() != n) throw FormatError("state mapping size mismatch");
  idx.b.resize(n);
  for (auto& q : idx.b) q = detail::narrow_state(r.u64(), n);
  try {
    idx.b_inv = invert_mapping(idx.b);
  } catch (const ConstructionError& e) {
    throw FormatError(e.what());
  }
  if (r.count(32) != n) throw FormatError("bounds size mismatch");
  idx.bounds.resize(n);
  for (auto& pb : idx.bounds) pb = {r.i64(), r.i64(), r.i64(), r.i64()};
  if (!r.done()) throw FormatError("trailing bytes in index file");
  return idx;
}

inline void save_index(const Scdawg& idx, const std::string& path) {
  const std::string bytes = serialize(idx);
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
    throw LoadError("cannot write '" + path + "'");
  }
}

inline Scdawg load_index(const std::string& path) { return deserialize(read_file(path)); }

}  // namespace lexiscan
