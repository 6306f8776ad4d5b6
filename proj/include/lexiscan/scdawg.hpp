#pragma once

#include "lexiscan/cdawg.hpp"
#include "lexiscan/lexicon.hpp"

#include <functional>
#include <numeric>
#include <optional>

namespace lexiscan {

/// Handle for one substring W of the indexed text: the compact state of W's
/// class, the text index where W starts inside the first occurrence of the
/// class's canonical string, and |W|.
struct Cursor {
  std::uint32_t state = 0;
  std::uint32_t pos = 0;
  std::uint32_t length = 0;
  friend bool operator==(const Cursor&, const Cursor&) = default;
};

struct CursorHash {
  std::size_t operator()(const Cursor& c) const noexcept {
    std::uint64_t h = (std::uint64_t{c.pos} << 32) ^ c.length;
    h ^= std::uint64_t{c.state} * 0x9E3779B97F4A7C15ull;
    return std::hash<std::uint64_t>{}(h);
  }
};

/// Right extension of cursor `c` in automaton `a` by symbol `s`.
inline std::optional<Cursor> step_right(const Cdawg& a, const Cursor& c, Symbol s) {
  const std::uint32_t next = c.pos + c.length;
  if (next < a.end[c.state]) {
    if (a.text[next] != s) return std::nullopt;
    return Cursor{c.state, c.pos, c.length + 1};
  }
  const CdawgEdge* e = a.find_edge(c.state, s);
  if (!e) return std::nullopt;
  return Cursor{e->target, e->start - c.length, c.length + 1};
}

/// Calls f(symbol, cursor) for every right extension of `c` in `a`.
template <class F>
void for_each_right(const Cdawg& a, const Cursor& c, F&& f) {
  const std::uint32_t next = c.pos + c.length;
  if (next < a.end[c.state]) {
    f(a.text[next], Cursor{c.state, c.pos, c.length + 1});
    return;
  }
  for (const auto& e : a.out_edges(c.state)) f(e.symbol, Cursor{e.target, e.start - c.length, c.length + 1});
}

/// Mapping between the two automata: b takes the class of X to the class of
/// X reversed. Computed from suffix links, shortest states first.
inline std::vector<std::uint32_t> resolve_states(const Cdawg& fwd, const Cdawg& rev,
                                                 std::size_t* calls = nullptr) {
  const std::size_t n = fwd.state_count();
  if (rev.state_count() != n) throw ConstructionError("forward and reverse automata differ in size");
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t x, std::uint32_t y) { return fwd.length[x] < fwd.length[y]; });
  std::vector<std::uint32_t> b(n, kNoState);
  std::size_t resolved = 0;
  for (std::uint32_t q : order) {
    ++resolved;
    if (q == 0) {
      b[0] = 0;
      continue;
    }
    const std::uint32_t s = fwd.link[q];
    const Symbol sigma = fwd.text[fwd.end[q] - fwd.length[s] - 1];
    const CdawgEdge* e = rev.find_edge(b[s], sigma);
    if (!e) throw ConstructionError("index corrupted: missing transition while pairing states");
    b[q] = e->target;
  }
  if (calls) *calls = resolved;
  return b;
}

/// Bidirectional index over the sentinel-wrapped lexicon.
class Scdawg {
 public:
  Cdawg forward;
  Cdawg reverse;
  std::vector<std::uint32_t> b;      // forward state -> reverse state
  std::vector<std::uint32_t> b_inv;  // reverse state -> forward state
  std::vector<PruneBounds> bounds;   // per forward state
  std::uint32_t entry_count = 0;

  Cursor root() const noexcept { return {}; }

  std::optional<Cursor> extend_right(const Cursor& c, Symbol s) const { return step_right(forward, c, s); }

  std::optional<Cursor> extend_left(const Cursor& c, Symbol s) const {
    auto r = step_right(reverse, to_reverse(c), s);
    if (!r) return std::nullopt;
    return from_reverse(*r);
  }

  /// The cursor of W reversed in the reverse automaton.
  Cursor to_reverse(const Cursor& c) const noexcept {
    const std::uint32_t q = b[c.state];
    const std::uint32_t offset = c.pos - forward.start(c.state);
    return {q, reverse.start(q) + forward.length[c.state] - offset - c.length, c.length};
  }

  Cursor from_reverse(const Cursor& r) const noexcept {
    const std::uint32_t q = b_inv[r.state];
    const std::uint32_t offset = r.pos - reverse.start(r.state);
    return {q, forward.start(q) + reverse.length[r.state] - offset - r.length, r.length};
  }

  std::optional<Cursor> locate(WordView v) const {
    Cursor c = root();
    for (Symbol s : v) {
      auto next = extend_right(c, s);
      if (!next) return std::nullopt;
      c = *next;
    }
    return c;
  }

  bool is_entry(const Cursor& c) const {
    auto left = extend_left(c, kHash);
    return left && extend_right(*left, kDollar).has_value();
  }

  WordView view(const Cursor& c) const noexcept { return WordView(forward.text).substr(c.pos, c.length); }
  Word cursor_string(const Cursor& c) const { return Word(view(c)); }

  /// Entry symbols that may precede and follow W over all its occurrences.
  PruneBounds boundary_bounds(const Cursor& c) const noexcept {
    const PruneBounds& pb = bounds[c.state];
    if (c.state == 0) return pb;
    const std::int64_t offset = c.pos - forward.start(c.state);
    const std::int64_t tail = std::int64_t{forward.length[c.state]} - offset - c.length;
    return {pb.min_pre + offset, pb.max_pre + offset, pb.min_suf + tail, pb.max_suf + tail};
  }

  /// Same as boundary_bounds for a cursor of the reverse automaton,
  /// reported for the forward orientation of its string.
  PruneBounds boundary_bounds_reverse(const Cursor& r) const noexcept {
    const std::uint32_t q = b_inv[r.state];
    const PruneBounds& pb = bounds[q];
    if (q == 0) return pb;
    const std::int64_t tail = r.pos - reverse.start(r.state);
    const std::int64_t offset = std::int64_t{reverse.length[r.state]} - tail - r.length;
    return {pb.min_pre + offset, pb.max_pre + offset, pb.min_suf + tail, pb.max_suf + tail};
  }

  friend bool operator==(const Scdawg&, const Scdawg&) = default;
};

inline std::vector<std::uint32_t> invert_mapping(const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> inv(b.size(), kNoState);
  for (std::uint32_t q = 0; q < b.size(); ++q) {
    if (b[q] >= b.size() || inv[b[q]] != kNoState) throw ConstructionError("state pairing is not a bijection");
    inv[b[q]] = q;
  }
  return inv;
}

inline Scdawg build_index(const Lexicon& lex) {
  if (lex.entries.empty()) throw ConstructionError("cannot index an empty lexicon");
  const std::size_t symbols = lex.total_size() + 2 * lex.entries.size();
  Scdawg idx;
  idx.entry_count = static_cast<std::uint32_t>(lex.entries.size());
  Word wrapped;
  {
    CdawgBuilder fwd(kHash, kDollar);
    fwd.reserve(symbols);
    for (const auto& w : lex.entries) {
      wrapped.assign(1, kHash);
      wrapped += w;
      wrapped.push_back(kDollar);
      fwd.add_string(wrapped);
    }
    idx.forward = fwd.snapshot();
    idx.bounds = fwd.prune_bounds();
  }
  {
    CdawgBuilder rev(kDollar, kHash);
    rev.reserve(symbols);
    for (const auto& w : lex.entries) {
      wrapped.assign(1, kDollar);
      wrapped.append(w.rbegin(), w.rend());
      wrapped.push_back(kHash);
      rev.add_string(wrapped);
    }
    idx.reverse = rev.snapshot();
  }
  idx.b = resolve_states(idx.forward, idx.reverse);
  idx.b_inv = invert_mapping(idx.b);
  return idx;
}

/// The entries of an index in insertion order, read back from its text.
inline Lexicon recover_lexicon(const Scdawg& idx) {
  std::vector<Word> words;
  Word cur;
  for (Symbol s : idx.forward.text) {
    if (s == kHash) {
      cur.clear();
    } else if (s == kDollar) {
      words.push_back(cur);
    } else {
      cur.push_back(s);
    }
  }
  if (words.size() != idx.entry_count) throw FormatError("index text does not hold the recorded entry count");
  return Lexicon::from_words(std::move(words));
}

}  // namespace lexiscan
