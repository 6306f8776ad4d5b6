#pragma once

#include "lexiscan/filter.hpp"
#include "lexiscan/lexicon.hpp"
#include "lexiscan/query_tree.hpp"
#include "lexiscan/search.hpp"

#include <algorithm>
#include <unordered_map>

namespace lexiscan {

/// Prefix tree over the entries with children stored contiguously.
/// Node 0 is the root.
class Trie {
 public:
  static Trie build(std::vector<Word> words) {
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    Trie t;
    t.symbol_.push_back(0);
    t.final_.push_back(0);
    t.first_.push_back(0);
    t.last_.push_back(0);
    struct Range {
      std::uint32_t node;
      std::size_t lo, hi, depth;
    };
    std::vector<Range> todo{{0, 0, words.size(), 0}};
    while (!todo.empty()) {
      const Range r = todo.back();
      todo.pop_back();
      std::size_t lo = r.lo;
      if (lo < r.hi && words[lo].size() == r.depth) {
        t.final_[r.node] = 1;
        ++lo;
      }
      t.first_[r.node] = static_cast<std::uint32_t>(t.symbol_.size());
      while (lo < r.hi) {
        const Symbol s = words[lo][r.depth];
        std::size_t hi = lo;
        while (hi < r.hi && words[hi][r.depth] == s) ++hi;
        const auto child = static_cast<std::uint32_t>(t.symbol_.size());
        t.symbol_.push_back(s);
        t.final_.push_back(0);
        t.first_.push_back(0);
        t.last_.push_back(0);
        todo.push_back({child, lo, hi, r.depth + 1});
        lo = hi;
      }
      t.last_[r.node] = static_cast<std::uint32_t>(t.symbol_.size());
    }
    return t;
  }

  std::size_t node_count() const noexcept { return symbol_.size(); }
  bool is_final(std::uint32_t n) const noexcept { return final_[n] != 0; }
  Symbol symbol(std::uint32_t n) const noexcept { return symbol_[n]; }
  std::uint32_t children_begin(std::uint32_t n) const noexcept { return first_[n]; }
  std::uint32_t children_end(std::uint32_t n) const noexcept { return last_[n]; }

  std::optional<std::uint32_t> child(std::uint32_t n, Symbol s) const {
    auto b = symbol_.begin() + first_[n], e = symbol_.begin() + last_[n];
    auto it = std::lower_bound(b, e, s);
    if (it == e || *it != s) return std::nullopt;
    return static_cast<std::uint32_t>(it - symbol_.begin());
  }

  bool contains(WordView w) const {
    std::uint32_t n = 0;
    for (Symbol s : w) {
      auto c = child(n, s);
      if (!c) return false;
      n = *c;
    }
    return is_final(n);
  }

 private:
  std::vector<Symbol> symbol_;
  std::vector<std::uint8_t> final_;
  std::vector<std::uint32_t> first_, last_;
};

inline std::vector<MatchResult> brute_force_search(const Lexicon& lex, const OperationSet& ops, WordView pattern,
                                                   Weight bound) {
  std::vector<MatchResult> out;
  for (const auto& w : lex.entries) {
    if (auto d = distance(ops, pattern, w, bound)) out.push_back({w, *d});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Left-to-right trie traversal controlled by one filter.
inline std::vector<MatchResult> oflazer_search(const Trie& trie, const OperationSet& ops, WordView pattern,
                                               Weight bound) {
  std::vector<MatchResult> out;
  const Filter f(ops, Word(pattern), bound);
  std::vector<FilterState> st(1);
  st[0] = f.start();
  Word path;
  auto visit = [&](auto&& self, std::uint32_t n, std::size_t depth) -> void {
    if (trie.is_final(n)) {
      if (auto d = f.distance(st[depth])) out.push_back({path, *d});
    }
    if (st.size() <= depth + 1) st.resize(depth + 2);
    for (std::uint32_t c = trie.children_begin(n); c < trie.children_end(n); ++c) {
      if (!f.step_into(st[depth], trie.symbol(c), st[depth + 1])) continue;
      path.push_back(trie.symbol(c));
      self(self, c, depth + 1);
      path.pop_back();
    }
  };
  visit(visit, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// One pass of the forward-backward method: a full filter for the whole
// pattern, plus stage filters for the first half with half the bound. A path
// survives while the full filter is viable and some stage filter either has
// accepted already or can still accept.
inline void staged_pass(const Trie& trie, const OperationSet& ops, const Word& pattern, Weight bound,
                        const std::vector<Word>& stage_patterns, Weight stage_bound, bool reverse_output,
                        std::vector<MatchResult>& out) {
  const Filter full(ops, pattern, bound);
  std::vector<Filter> stage;
  for (const auto& p : stage_patterns) stage.emplace_back(ops, p, stage_bound);
  const std::size_t k = stage.size();

  struct Level {
    FilterState full;
    std::vector<FilterState> stage;
    std::vector<std::uint8_t> alive;
    bool passed = false;
  };
  std::vector<Level> levels(1);
  levels[0].full = full.start();
  levels[0].stage.resize(k);
  levels[0].alive.assign(k, 1);
  for (std::size_t j = 0; j < k; ++j) {
    levels[0].stage[j] = stage[j].start();
    if (stage[j].distance(levels[0].stage[j])) levels[0].passed = true;
  }

  Word path;
  auto visit = [&](auto&& self, std::uint32_t n, std::size_t depth) -> void {
    if (trie.is_final(n)) {
      if (auto d = full.distance(levels[depth].full)) {
        out.push_back({reverse_output ? reversed(path) : path, *d});
      }
    }
    if (levels.size() <= depth + 1) {
      levels.resize(depth + 2);
      levels[depth + 1].stage.resize(k);
      levels[depth + 1].alive.resize(k);
    }
    for (std::uint32_t c = trie.children_begin(n); c < trie.children_end(n); ++c) {
      const Symbol s = trie.symbol(c);
      Level& cur = levels[depth];
      Level& next = levels[depth + 1];
      if (!full.step_into(cur.full, s, next.full)) continue;
      next.passed = cur.passed;
      bool any = next.passed;
      for (std::size_t j = 0; j < k; ++j) {
        next.alive[j] = cur.alive[j] && stage[j].step_into(cur.stage[j], s, next.stage[j]);
        if (!next.alive[j]) continue;
        any = true;
        if (stage[j].distance(next.stage[j])) next.passed = true;
      }
      if (!any) continue;
      path.push_back(s);
      self(self, c, depth + 1);
      path.pop_back();
    }
  };
  visit(visit, 0, 0);
}

}  // namespace detail

/// Forward pass with half the bound on the first half of the pattern, then a
/// mirrored pass over the reversed entries for the second half.
inline std::vector<MatchResult> forward_backward_search(const Trie& forward, const Trie& backward,
                                                        const OperationSet& ops, WordView pattern, Weight bound) {
  const std::size_t omega = ops.omega_max();
  const std::size_t half = (pattern.size() + 1) / 2;
  const Weight stage_bound = bound / 2;
  const WordView p1 = pattern.substr(0, half), p2 = pattern.substr(half);

  std::vector<MatchResult> out;
  std::vector<Word> stages;
  for (std::size_t j = 0; j < omega && j <= p1.size(); ++j) stages.emplace_back(reduct(0, p1, j));
  detail::staged_pass(forward, ops, Word(pattern), bound, stages, stage_bound, false, out);

  stages.clear();
  for (std::size_t i = 0; i < omega && i <= p2.size(); ++i) stages.push_back(reversed(reduct(i, p2, 0)));
  detail::staged_pass(backward, ops.reversed(), reversed(pattern), bound, stages, stage_bound, true, out);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Trie build_reverse_trie(const Lexicon& lex) {
  std::vector<Word> rev;
  rev.reserve(lex.entries.size());
  for (const auto& w : lex.entries) rev.push_back(reversed(w));
  return Trie::build(std::move(rev));
}

/// Precomputed answers for a fixed query set: lookup does no search.
class PerfectIndex {
 public:
  static PerfectIndex build(const Lexicon& lex, const OperationSet& ops, const std::vector<Word>& queries,
                            Weight bound) {
    PerfectIndex pi;
    pi.bound_ = bound;
    for (const auto& q : queries) {
      if (pi.answers_.contains(q)) continue;
      pi.answers_.emplace(q, brute_force_search(lex, ops, q, bound));
    }
    return pi;
  }

  const std::vector<MatchResult>& lookup(WordView pattern) const {
    auto it = answers_.find(Word(pattern));
    if (it == answers_.end()) throw CoverageError("query '" + encode_utf8(pattern) + "' is not covered by the perfect index");
    return it->second;
  }

  Weight bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return answers_.size(); }

 private:
  Weight bound_ = 0;
  std::unordered_map<Word, std::vector<MatchResult>> answers_;
};

}  // namespace lexiscan
