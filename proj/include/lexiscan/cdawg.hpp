#pragma once

#include "lexiscan/symbol.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace lexiscan {

inline constexpr std::uint32_t kNoState = std::numeric_limits<std::uint32_t>::max();

/// A transition of the compact automaton. Its label is
/// text[start, start + length).
struct CdawgEdge {
  Symbol symbol = 0;
  std::uint32_t start = 0;
  std::uint32_t length = 0;
  std::uint32_t target = 0;
  friend bool operator==(const CdawgEdge&, const CdawgEdge&) = default;
};

/// Occurrence extremes of one state's canonical string inside the entries:
/// the number of entry symbols before and after each occurrence.
struct PruneBounds {
  std::int64_t min_pre = 0, max_pre = 0, min_suf = 0, max_suf = 0;
  friend bool operator==(const PruneBounds&, const PruneBounds&) = default;
};

/// Compact directed acyclic word graph over a set of sentinel-wrapped strings,
/// stored as flat arrays. State 0 is the root.
///
/// The canonical string of state q is text[end(q) - length(q), end(q)), where
/// end is exclusive.
struct Cdawg {
  Word text;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> blocks;  // [begin, end) per added string
  std::vector<std::uint32_t> end;
  std::vector<std::uint32_t> length;
  std::vector<std::uint32_t> link;  // kNoState for the root
  std::vector<std::uint32_t> edge_offset;
  std::vector<CdawgEdge> edges;  // per state, sorted by symbol

  std::size_t state_count() const noexcept { return length.size(); }
  std::size_t transition_count() const noexcept { return edges.size(); }
  std::uint32_t start(std::uint32_t q) const noexcept { return end[q] - length[q]; }

  WordView canonical(std::uint32_t q) const noexcept {
    return WordView(text).substr(start(q), length[q]);
  }

  std::span<const CdawgEdge> out_edges(std::uint32_t q) const noexcept {
    return {edges.data() + edge_offset[q], edges.data() + edge_offset[q + 1]};
  }

  const CdawgEdge* find_edge(std::uint32_t q, Symbol s) const noexcept {
    auto out = out_edges(q);
    auto it = std::lower_bound(out.begin(), out.end(), s,
                               [](const CdawgEdge& e, Symbol v) { return e.symbol < v; });
    if (it == out.end() || it->symbol != s) return nullptr;
    return &*it;
  }

  friend bool operator==(const Cdawg&, const Cdawg&) = default;
};

/// Builds the compact automaton string by string. Internally this grows a
/// generalized suffix automaton; compaction keeps the states with out-degree
/// other than one (plus the root). State ids of the compact automaton are
/// handed out when a state first becomes explicit and never change.
class CdawgBuilder {
 public:
  CdawgBuilder(Symbol open, Symbol close) : open_(open), close_(close) {
    states_.push_back({0, kNoState, 0, kNoEdge, 0});
    id_of_.push_back(0);
    dawg_of_.push_back(0);
  }

  void reserve(std::size_t symbols) {
    text_.reserve(symbols);
    prefix_state_.reserve(symbols);
    states_.reserve(2 * symbols + 1);
    edges_.reserve(3 * symbols);
  }

  void add_string(WordView s) {
    if (s.size() < 2 || s.front() != open_ || s.back() != close_) {
      throw ConstructionError("strings must be wrapped in their sentinels");
    }
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      if (is_sentinel(s[i])) throw ConstructionError("sentinel inside a string");
    }
    if (text_.size() + s.size() >= kNoState) throw ConstructionError("text too large");

    const auto begin = static_cast<std::uint32_t>(text_.size());
    touched_.clear();
    std::uint32_t last = 0;
    for (Symbol c : s) {
      const auto i = static_cast<std::uint32_t>(text_.size());
      text_.push_back(c);
      last = extend(last, c, i);
      prefix_state_.push_back(last);
    }
    blocks_.emplace_back(begin, static_cast<std::uint32_t>(text_.size()));

    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
    id_of_.resize(states_.size(), kNoState);
    for (std::uint32_t u : touched_) {
      if (id_of_[u] == kNoState && states_[u].degree != 1) {
        id_of_[u] = static_cast<std::uint32_t>(dawg_of_.size());
        dawg_of_.push_back(u);
      }
    }
  }

  std::size_t explicit_count() const noexcept { return dawg_of_.size(); }

  /// The compact automaton of all strings added so far.
  Cdawg snapshot() const {
    Cdawg out;
    out.text = text_;
    out.blocks = blocks_;
    const std::size_t n = dawg_of_.size();
    out.end.resize(n);
    out.length.resize(n);
    out.link.resize(n);

    const auto by_len = states_by_length();
    const auto anchor = explicit_ancestors(by_len);
    for (std::size_t id = 0; id < n; ++id) {
      const auto& st = states_[dawg_of_[id]];
      out.end[id] = st.end;
      out.length[id] = st.len;
      out.link[id] = id == 0 ? kNoState : id_of_[anchor[dawg_of_[id]]];
    }

    // For every state of out-degree one: the explicit state its unary chain
    // leads to and the number of steps taken.
    std::vector<std::uint32_t> chain_target(states_.size(), kNoState);
    std::vector<std::uint32_t> chain_steps(states_.size(), 0);
    for (auto it = by_len.rbegin(); it != by_len.rend(); ++it) {
      const std::uint32_t v = *it;
      if (is_explicit(v)) continue;
      const std::uint32_t w = edges_[states_[v].head].target;
      if (is_explicit(w)) {
        chain_target[v] = w;
        chain_steps[v] = 1;
      } else {
        chain_target[v] = chain_target[w];
        chain_steps[v] = chain_steps[w] + 1;
      }
    }

    out.edge_offset.assign(n + 1, 0);
    std::vector<CdawgEdge> local;
    for (std::size_t id = 0; id < n; ++id) {
      local.clear();
      for_each_edge(dawg_of_[id], [&](Symbol c, std::uint32_t v) {
        std::uint32_t t = v, k = 1;
        if (!is_explicit(v)) {
          t = chain_target[v];
          k = chain_steps[v] + 1;
        }
        local.push_back({c, states_[t].end - k, k, id_of_[t]});
      });
      std::sort(local.begin(), local.end(),
                [](const CdawgEdge& a, const CdawgEdge& b) { return a.symbol < b.symbol; });
      out.edges.insert(out.edges.end(), local.begin(), local.end());
      out.edge_offset[id + 1] = static_cast<std::uint32_t>(out.edges.size());
    }
    return out;
  }

  /// Per compact state, the extremes of entry symbols before and after the
  /// occurrences of its canonical string. Blocks are `open word close`.
  std::vector<PruneBounds> prune_bounds() const {
    constexpr std::int64_t kBig = std::numeric_limits<std::int64_t>::max() / 4;
    struct Agg {
      std::int64_t lo_a = kBig, hi_a = -kBig, lo_b = kBig, hi_b = -kBig;
    };
    std::vector<Agg> agg(states_.size());
    for (const auto& [begin, end] : blocks_) {
      for (std::uint32_t e = begin; e < end; ++e) {
        // Occurrence ending at e (inclusive) of a string of length L has
        // e - begin - L entry symbols before it.
        const std::int64_t a = std::int64_t{e} - begin;
        const std::int64_t b = std::int64_t{end} - 2 - e;
        auto& g = agg[prefix_state_[e]];
        g.lo_a = std::min(g.lo_a, a);
        g.hi_a = std::max(g.hi_a, a);
        g.lo_b = std::min(g.lo_b, b);
        g.hi_b = std::max(g.hi_b, b);
      }
    }
    const auto by_len = states_by_length();
    for (auto it = by_len.rbegin(); it != by_len.rend(); ++it) {
      const std::uint32_t v = *it;
      if (v == 0) continue;
      auto& p = agg[states_[v].link];
      const auto& g = agg[v];
      p.lo_a = std::min(p.lo_a, g.lo_a);
      p.hi_a = std::max(p.hi_a, g.hi_a);
      p.lo_b = std::min(p.lo_b, g.lo_b);
      p.hi_b = std::max(p.hi_b, g.hi_b);
    }
    std::int64_t longest = 0;
    for (const auto& [begin, end] : blocks_) longest = std::max<std::int64_t>(longest, end - begin - 2);

    std::vector<PruneBounds> out(dawg_of_.size());
    out[0] = {0, longest, 0, longest};
    for (std::size_t id = 1; id < dawg_of_.size(); ++id) {
      const auto& g = agg[dawg_of_[id]];
      const std::int64_t len = states_[dawg_of_[id]].len;
      out[id] = {g.lo_a - len, g.hi_a - len, g.lo_b, g.hi_b};
    }
    return out;
  }

 private:
  static constexpr std::uint32_t kNoEdge = kNoState;
  static constexpr std::uint32_t kListLimit = 6;

  struct State {
    std::uint32_t len;
    std::uint32_t link;
    std::uint32_t end;  // exclusive end of the first occurrence
    std::uint32_t head;
    std::uint32_t degree;
  };
  struct Edge {
    Symbol symbol;
    std::uint32_t target;
    std::uint32_t next;
  };

  bool is_explicit(std::uint32_t u) const noexcept { return u == 0 || states_[u].degree != 1; }

  static std::uint64_t key(std::uint32_t u, Symbol c) noexcept { return (std::uint64_t{u} << 32) | c; }

  std::uint32_t get(std::uint32_t u, Symbol c) const {
    if (states_[u].degree > kListLimit) {
      auto it = wide_.find(key(u, c));
      return it == wide_.end() ? kNoState : it->second;
    }
    for (std::uint32_t e = states_[u].head; e != kNoEdge; e = edges_[e].next) {
      if (edges_[e].symbol == c) return edges_[e].target;
    }
    return kNoState;
  }

  void set(std::uint32_t u, Symbol c, std::uint32_t v) {
    State& st = states_[u];
    if (st.degree > kListLimit) {
      auto [it, fresh] = wide_.try_emplace(key(u, c), v);
      if (!fresh) {
        it->second = v;
        for (std::uint32_t e = st.head; e != kNoEdge; e = edges_[e].next) {
          if (edges_[e].symbol == c) edges_[e].target = v;
        }
        return;
      }
    } else {
      for (std::uint32_t e = st.head; e != kNoEdge; e = edges_[e].next) {
        if (edges_[e].symbol == c) {
          edges_[e].target = v;
          return;
        }
      }
    }
    edges_.push_back({c, v, st.head});
    st.head = static_cast<std::uint32_t>(edges_.size() - 1);
    if (++st.degree == 2 && u != 0) touched_.push_back(u);
    if (st.degree == kListLimit + 1) {
      // Lookups on this state go through the hash table from now on.
      for (std::uint32_t e = st.head; e != kNoEdge; e = edges_[e].next) wide_.emplace(key(u, edges_[e].symbol), edges_[e].target);
    }
  }

  template <class F>
  void for_each_edge(std::uint32_t u, F&& f) const {
    for (std::uint32_t e = states_[u].head; e != kNoEdge; e = edges_[e].next) f(edges_[e].symbol, edges_[e].target);
  }

  std::uint32_t new_state(std::uint32_t len, std::uint32_t link, std::uint32_t end) {
    states_.push_back({len, link, end, kNoEdge, 0});
    const auto id = static_cast<std::uint32_t>(states_.size() - 1);
    touched_.push_back(id);
    return id;
  }

  std::uint32_t clone(std::uint32_t q, std::uint32_t len) {
    const std::uint32_t c = new_state(len, states_[q].link, states_[q].end);
    std::vector<std::pair<Symbol, std::uint32_t>> copy;
    for_each_edge(q, [&](Symbol s, std::uint32_t t) { copy.emplace_back(s, t); });
    // Keep the original list order.
    for (auto it = copy.rbegin(); it != copy.rend(); ++it) set(c, it->first, it->second);
    states_[q].link = c;
    return c;
  }

  void redirect(std::uint32_t p, Symbol c, std::uint32_t from, std::uint32_t to) {
    while (p != kNoState && get(p, c) == from) {
      set(p, c, to);
      p = states_[p].link;
    }
  }

  std::uint32_t extend(std::uint32_t last, Symbol c, std::uint32_t i) {
    if (std::uint32_t q = get(last, c); q != kNoState) {
      if (states_[last].len + 1 == states_[q].len) return q;
      const std::uint32_t cl = clone(q, states_[last].len + 1);
      redirect(last, c, q, cl);
      return cl;
    }
    const std::uint32_t cur = new_state(states_[last].len + 1, 0, i + 1);
    std::uint32_t p = last;
    while (p != kNoState && get(p, c) == kNoState) {
      set(p, c, cur);
      p = states_[p].link;
    }
    if (p == kNoState) return cur;
    const std::uint32_t q = get(p, c);
    if (states_[p].len + 1 == states_[q].len) {
      states_[cur].link = q;
    } else {
      const std::uint32_t cl = clone(q, states_[p].len + 1);
      redirect(p, c, q, cl);
      states_[cur].link = cl;
    }
    return cur;
  }

  // DAWG states in nondecreasing order of len (counting sort).
  std::vector<std::uint32_t> states_by_length() const {
    std::uint32_t max_len = 0;
    for (const auto& s : states_) max_len = std::max(max_len, s.len);
    std::vector<std::uint32_t> count(max_len + 2, 0);
    for (const auto& s : states_) ++count[s.len + 1];
    for (std::size_t l = 1; l < count.size(); ++l) count[l] += count[l - 1];
    std::vector<std::uint32_t> order(states_.size());
    for (std::uint32_t u = 0; u < states_.size(); ++u) order[count[states_[u].len]++] = u;
    return order;
  }

  // Nearest proper ancestor on the suffix-link chain that is explicit.
  std::vector<std::uint32_t> explicit_ancestors(const std::vector<std::uint32_t>& by_len) const {
    std::vector<std::uint32_t> anchor(states_.size(), 0);
    for (std::uint32_t u : by_len) {
      if (u == 0) continue;
      const std::uint32_t p = states_[u].link;
      anchor[u] = is_explicit(p) ? p : anchor[p];
    }
    return anchor;
  }

  Symbol open_, close_;
  Word text_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> blocks_;
  std::vector<std::uint32_t> prefix_state_;  // DAWG state of the prefix ending at each text index
  std::vector<State> states_;
  std::vector<Edge> edges_;
  absl::flat_hash_map<std::uint64_t, std::uint32_t> wide_;  // transitions of high-degree states
  std::vector<std::uint32_t> id_of_;    // DAWG state -> compact id
  std::vector<std::uint32_t> dawg_of_;  // compact id -> DAWG state
  std::vector<std::uint32_t> touched_;
};

}  // namespace lexiscan
