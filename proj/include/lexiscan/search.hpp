#pragma once

#include "lexiscan/filter.hpp"
#include "lexiscan/query_tree.hpp"
#include "lexiscan/scdawg.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <tuple>
#include <unordered_set>

namespace lexiscan {

struct MatchResult {
  Word entry;
  Weight distance = 0;
  friend bool operator==(const MatchResult&, const MatchResult&) = default;
  friend auto operator<=>(const MatchResult&, const MatchResult&) = default;
};

struct SearchOptions {
  bool positional_pruning = true;
  bool bottom_up = false;
  bool include_substrings = false;
  // Fault injection for testing the verification harness.
  bool skip_left_extensions = false;
};

struct SearchResult {
  std::vector<MatchResult> matches;     // sorted by entry
  std::vector<MatchResult> substrings;  // filled with include_substrings
  bool used_fallback = false;
  std::size_t filter_steps = 0;
};

/// Approximate search over a bidirectional index.
///
/// Both the index and the operation set must outlive the searcher.
class Searcher {
 public:
  Searcher(const Scdawg& index, const OperationSet& ops)
      : idx_(&index), ops_(&ops), rev_ops_(ops.reversed()) {}

  SearchResult solve(WordView pattern, Weight bound, const SearchOptions& opt = {}) const {
    SearchResult out;
    auto tree = build_query_tree(pattern.size(), bound);
    if (!tree) {
      out.used_fallback = true;
      fallback(pattern, bound, opt, out);
    } else {
      Run run(*this, pattern, bound, std::move(*tree), opt);
      if (opt.bottom_up) {
        run.bottom_up();
      } else {
        run.depth_first();
      }
      out.filter_steps = run.steps;
      finish(pattern, bound, opt, run.solutions(0, {0, 0}), out);
    }
    std::sort(out.matches.begin(), out.matches.end());
    std::sort(out.substrings.begin(), out.substrings.end());
    return out;
  }

  /// The substrings of entries within `bound` of the node's derived query,
  /// computed bottom-up without pruning.
  std::vector<Word> node_solutions(WordView pattern, Weight bound, int node, Trim trim) const {
    auto tree = build_query_tree(pattern.size(), bound);
    if (!tree) throw ArgumentError("pattern shorter than bound + 1");
    SearchOptions opt;
    opt.positional_pruning = false;
    opt.bottom_up = true;
    Run run(*this, pattern, bound, std::move(*tree), opt);
    run.bottom_up();
    std::vector<Word> out;
    for (const Cursor& c : run.solutions(node, trim)) out.push_back(idx_->cursor_string(c));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  enum class Side { right, left };

  class Run {
   public:
    Run(const Searcher& s, WordView pattern, Weight bound, QueryTree tree, const SearchOptions& opt)
        : s_(s),
          idx_(*s.idx_),
          pattern_(pattern),
          bound_(bound),
          tree_(std::move(tree)),
          opt_(opt),
          prune_(opt.positional_pruning && !opt.include_substrings),
          omega_(s.ops_->omega_max()),
          need_(derived_demands(tree_, omega_)),
          found_(tree_.nodes.size()),
          max_len_(static_cast<std::size_t>(idx_.bounds[0].max_pre) + 2) {
      std::tie(ratio_num_, ratio_den_) = s.ops_->length_change_ratio();
    }

    std::size_t steps = 0;

    std::vector<Cursor> solutions(int node, Trim trim) const {
      auto it = found_[node].find(trim);
      if (it == found_[node].end()) return {};
      return {it->second.begin(), it->second.end()};
    }

    void depth_first() {
      for (int leaf : tree_.leaves()) {
        for (const Trim& t : need_[leaf]) {
          if (auto c = locate_leaf(leaf, t)) emit(leaf, t, *c, 0);
        }
      }
    }

    void bottom_up() {
      std::vector<int> order;
      post_order(0, order);
      for (int n : order) {
        const QueryNode& node = tree_.nodes[n];
        for (const Trim& t : need_[n]) {
          auto& set = found_[n][t];
          if (node.leaf()) {
            if (auto c = locate_leaf(n, t)) set.insert(*c);
            continue;
          }
          auto add = [&](const Cursor& c) { set.insert(c); };
          for (const Trim& lt : need_[node.left]) {
            if (lt.first != t.first) continue;
            for (const Cursor& u : solutions(node.left, lt)) extend(n, t, Side::right, u, 0, add);
          }
          if (opt_.skip_left_extensions) continue;
          for (const Trim& rt : need_[node.right]) {
            if (rt.second != t.second) continue;
            for (const Cursor& u : solutions(node.right, rt)) extend(n, t, Side::left, u, 0, add);
          }
        }
      }
    }

   private:
    using CursorSet = std::unordered_set<Cursor, CursorHash>;

    void post_order(int n, std::vector<int>& out) const {
      if (!tree_.nodes[n].leaf()) {
        post_order(tree_.nodes[n].left, out);
        post_order(tree_.nodes[n].right, out);
      }
      out.push_back(n);
    }

    WordView node_pattern(int n, Trim t) const {
      const QueryNode& node = tree_.nodes[n];
      return reduct(t.first, pattern_.substr(node.lo, node.size()), t.second);
    }

    std::optional<Cursor> locate_leaf(int leaf, Trim t) const { return idx_.locate(node_pattern(leaf, t)); }

    // Records a solution of (node, trim) and immediately extends it at the parent.
    void emit(int n, Trim t, const Cursor& c, std::size_t level) {
      if (!found_[n][t].insert(c).second) return;
      const int p = tree_.nodes[n].parent;
      if (p < 0) return;
      const bool from_left = tree_.nodes[p].left == n;
      if (!from_left && opt_.skip_left_extensions) return;
      for (const Trim& pt : need_[p]) {
        if (from_left ? pt.first != t.first : pt.second != t.second) continue;
        extend(p, pt, from_left ? Side::right : Side::left, c, level + 1,
               [&](const Cursor& v) { emit(p, pt, v, level + 1); });
      }
    }

    const Filter& filter(int n, Trim t, Side side) {
      auto key = std::make_tuple(n, t.first, t.second, side == Side::left);
      auto it = filters_.find(key);
      if (it != filters_.end()) return *it->second;
      const WordView p = node_pattern(n, t);
      const Weight b = tree_.nodes[n].bound;
      auto f = side == Side::right ? std::make_unique<Filter>(*s_.ops_, Word(p), b)
                                   : std::make_unique<Filter>(s_.rev_ops_, reversed(p), b);
      return *filters_.emplace(key, std::move(f)).first->second;
    }

    std::vector<FilterState>& stack(std::size_t level) {
      while (pool_.size() <= level) pool_.emplace_back(std::make_unique<std::vector<FilterState>>(max_len_ + 2));
      return *pool_[level];
    }

    // Positional test: could the current string still sit inside an entry
    // whose outside part matches the rest of the pattern within budget?
    bool pruned(int n, Trim t, Side side, const Cursor& c, const Filter& f, const FilterState& s) const {
      if (!prune_) return false;
      const QueryNode& node = tree_.nodes[n];
      std::int64_t lo, hi, outside;
      if (side == Side::right) {
        const PruneBounds pb = idx_.boundary_bounds(c);
        lo = pb.min_pre;
        hi = pb.max_pre;
        outside = static_cast<std::int64_t>(node.lo + t.first);
      } else {
        const PruneBounds pb = idx_.boundary_bounds_reverse(c);
        lo = pb.min_suf;
        hi = pb.max_suf;
        outside = static_cast<std::int64_t>(pattern_.size() - node.hi + t.second);
      }
      const std::int64_t gap = std::max<std::int64_t>({0, lo - outside, outside - hi});
      if (gap == 0) return false;
      const std::int64_t spent = f.lower_bound(s);
      const std::int64_t slack = std::int64_t{bound_} - spent;
      if (slack < 0) return true;
      return gap * ratio_den_ > std::int64_t{ratio_num_} * slack;
    }

    // Extends candidate u of a child across the rest of node n's pattern and
    // reports every accepted string.
    template <class Emit>
    void extend(int n, Trim t, Side side, const Cursor& u, std::size_t level, Emit&& report) {
      const Filter& f = filter(n, t, side);
      auto& st = stack(level);
      const Cdawg& a = side == Side::right ? idx_.forward : idx_.reverse;
      const Cursor start = side == Side::right ? u : idx_.to_reverse(u);

      st[0] = f.start();
      const WordView text = WordView(a.text).substr(start.pos, start.length);
      for (std::size_t k = 0; k < text.size(); ++k) {
        ++steps;
        if (!f.step_into(st[k & 1], text[k], st[(k + 1) & 1])) return;
      }
      if (text.size() & 1) std::swap(st[0], st[1]);

      auto visit = [&](auto&& self, const Cursor& c, std::size_t depth) -> void {
        if (pruned(n, t, side, c, f, st[depth])) return;
        if (f.distance(st[depth])) report(side == Side::right ? c : idx_.from_reverse(c));
        for_each_right(a, c, [&](Symbol sym, const Cursor& next) {
          if (is_sentinel(sym)) return;
          ++steps;
          if (f.step_into(st[depth], sym, st[depth + 1])) self(self, next, depth + 1);
        });
      };
      visit(visit, start, 0);
    }

    const Searcher& s_;
    const Scdawg& idx_;
    WordView pattern_;
    Weight bound_;
    QueryTree tree_;
    SearchOptions opt_;
    bool prune_;
    std::size_t omega_;
    std::vector<std::set<Trim>> need_;
    std::vector<std::map<Trim, CursorSet>> found_;
    std::size_t max_len_;
    Weight ratio_num_ = 0, ratio_den_ = 1;
    std::map<std::tuple<int, std::size_t, std::size_t, bool>, std::unique_ptr<Filter>> filters_;
    std::vector<std::unique_ptr<std::vector<FilterState>>> pool_;
  };

  void finish(WordView pattern, Weight bound, const SearchOptions& opt, const std::vector<Cursor>& root,
              SearchResult& out) const {
    for (const Cursor& c : root) {
      const WordView v = idx_->view(c);
      if (opt.include_substrings) {
        if (auto d = distance(*ops_, pattern, v, bound)) out.substrings.push_back({Word(v), *d});
      }
      if (!idx_->is_entry(c)) continue;
      if (auto d = distance(*ops_, pattern, v, bound)) out.matches.push_back({Word(v), *d});
    }
  }

  // Left-to-right filtered traversal for patterns too short to split.
  void fallback(WordView pattern, Weight bound, const SearchOptions& opt, SearchResult& out) const {
    const Filter f(*ops_, Word(pattern), bound);
    std::vector<FilterState> st(static_cast<std::size_t>(idx_->bounds[0].max_pre) + 3);
    auto walk = [&](const Cursor& from, bool entries) {
      st[0] = f.start();
      auto visit = [&](auto&& self, const Cursor& c, std::size_t depth) -> void {
        if (!entries && opt.include_substrings) {
          if (auto d = f.distance(st[depth])) out.substrings.push_back({idx_->cursor_string(c), *d});
        }
        for_each_right(idx_->forward, c, [&](Symbol sym, const Cursor& next) {
          if (sym == kDollar) {
            if (!entries) return;
            if (auto d = f.distance(st[depth])) {
              out.matches.push_back({Word(idx_->view(c).substr(1)), *d});
            }
            return;
          }
          if (sym == kHash) return;
          ++out.filter_steps;
          if (f.step_into(st[depth], sym, st[depth + 1])) self(self, next, depth + 1);
        });
      };
      visit(visit, from, 0);
    };
    if (auto hash = idx_->extend_right(idx_->root(), kHash)) walk(*hash, true);
    if (opt.include_substrings) walk(idx_->root(), false);
  }

  const Scdawg* idx_;
  const OperationSet* ops_;
  OperationSet rev_ops_;
};

inline SearchResult solve(const Scdawg& index, const OperationSet& ops, WordView pattern, Weight bound,
                          const SearchOptions& opt = {}) {
  return Searcher(index, ops).solve(pattern, bound, opt);
}

}  // namespace lexiscan
