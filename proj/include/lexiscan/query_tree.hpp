#pragma once

#include "lexiscan/operations.hpp"

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace lexiscan {

/// One query (P[lo, hi), bound) of the tree.
struct QueryNode {
  std::size_t lo = 0;
  std::size_t hi = 0;
  Weight bound = 0;
  int left = -1;
  int right = -1;
  int parent = -1;

  bool leaf() const noexcept { return left < 0; }
  std::size_t size() const noexcept { return hi - lo; }
  friend bool operator==(const QueryNode&, const QueryNode&) = default;
};

/// Balanced ordered binary tree over b + 1 nearly equal pattern parts; longer
/// parts go last. Node 0 is the root and parents precede their children.
struct QueryTree {
  std::vector<QueryNode> nodes;

  const QueryNode& root() const { return nodes.front(); }

  /// Leaves in left-to-right order.
  std::vector<int> leaves() const {
    std::vector<int> out;
    collect_leaves(0, out);
    return out;
  }

 private:
  void collect_leaves(int n, std::vector<int>& out) const {
    if (nodes[n].leaf()) {
      out.push_back(n);
      return;
    }
    collect_leaves(nodes[n].left, out);
    collect_leaves(nodes[n].right, out);
  }
};

/// Returns nullopt when the pattern is shorter than b + 1.
inline std::optional<QueryTree> build_query_tree(std::size_t pattern_length, Weight b) {
  const std::size_t parts = std::size_t{b} + 1;
  if (pattern_length < parts) return std::nullopt;
  const std::size_t base = pattern_length / parts;
  const std::size_t longer = pattern_length % parts;
  std::vector<std::size_t> cut(parts + 1, 0);
  for (std::size_t k = 0; k < parts; ++k) cut[k + 1] = cut[k] + base + (k >= parts - longer ? 1 : 0);

  QueryTree tree;
  // Builds the subtree over parts [first, last) and returns its node index.
  auto build = [&](auto&& self, std::size_t first, std::size_t last, int parent) -> int {
    const int id = static_cast<int>(tree.nodes.size());
    const std::size_t leaves = last - first;
    tree.nodes.push_back({cut[first], cut[last], static_cast<Weight>(leaves - 1), -1, -1, parent});
    if (leaves > 1) {
      const std::size_t mid = first + (leaves + 1) / 2;
      const int l = self(self, first, mid, id);
      const int r = self(self, mid, last, id);
      tree.nodes[id].left = l;
      tree.nodes[id].right = r;
    }
    return id;
  };
  build(build, 0, parts, -1);
  return tree;
}

/// U with i symbols cut from the front and j from the back.
inline WordView reduct(std::size_t i, WordView u, std::size_t j) {
  if (i + j > u.size()) throw ArgumentError("reduct trims exceed the string length");
  return u.substr(i, u.size() - i - j);
}

using Trim = std::pair<std::size_t, std::size_t>;

/// Derived queries (i, j) each node must answer. The root needs (0, 0); a
/// left child keeps its parent's i and takes every j, a right child keeps j
/// and takes every i. Trims never exceed the node's length.
inline std::vector<std::set<Trim>> derived_demands(const QueryTree& tree, std::size_t omega) {
  std::vector<std::set<Trim>> need(tree.nodes.size());
  need[0].insert({0, 0});
  // Parents precede their children in `nodes`.
  for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
    const QueryNode& node = tree.nodes[n];
    if (node.leaf()) continue;
    const QueryNode& l = tree.nodes[node.left];
    const QueryNode& r = tree.nodes[node.right];
    for (const auto& [i, j] : need[n]) {
      for (std::size_t t = 0; t < omega; ++t) {
        if (i + t <= l.size()) need[node.left].insert({i, t});
        if (t + j <= r.size()) need[node.right].insert({t, j});
      }
    }
  }
  return need;
}

}  // namespace lexiscan
