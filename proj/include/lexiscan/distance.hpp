#pragma once

#include "lexiscan/operations.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace lexiscan {

/// Outcome of a distance computation. Over-cutoff and unreachable are kept
/// apart: the latter means no alignment exists at all.
struct Distance {
  enum class Status : std::uint8_t { exact, over_cutoff, unreachable };

  Status status = Status::unreachable;
  Weight value = 0;

  static Distance exact(Weight w) { return {Status::exact, w}; }
  static Distance over() { return {Status::over_cutoff, 0}; }
  static Distance unreachable() { return {Status::unreachable, 0}; }

  explicit operator bool() const noexcept { return status == Status::exact; }
  Weight operator*() const noexcept { return value; }
  friend bool operator==(const Distance&, const Distance&) = default;
};

struct Alignment {
  std::vector<Operation> ops;

  Word left() const {
    Word out;
    for (const auto& op : ops) out += op.lhs;
    return out;
  }
  Word right() const {
    Word out;
    for (const auto& op : ops) out += op.rhs;
    return out;
  }
  Weight weight() const {
    Weight w = 0;
    for (const auto& op : ops) w += op.weight;
    return w;
  }
  friend bool operator==(const Alignment&, const Alignment&) = default;
};

namespace detail {

inline constexpr std::uint64_t kInfCost = std::uint64_t{1} << 62;

inline std::uint64_t cost_of(const std::optional<Weight>& w) { return w ? *w : kInfCost; }

/// Weights of the implicit classes, kInfCost where a class is absent.
struct ClassCosts {
  std::uint64_t sub, ins, del, tr, merge, split;

  explicit ClassCosts(const OperationSet& ops)
      : sub(cost_of(ops.class_weight(OpClass::substitute))),
        ins(cost_of(ops.class_weight(OpClass::insert))),
        del(cost_of(ops.class_weight(OpClass::remove))),
        tr(cost_of(ops.class_weight(OpClass::transpose))),
        merge(cost_of(ops.class_weight(OpClass::merge))),
        split(cost_of(ops.class_weight(OpClass::split))) {}
};

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return std::min(kInfCost, a + b);
}

}  // namespace detail

/// Minimum alignment weight between `v` (pattern side) and `w`.
///
/// With a cutoff the computation is restricted to the diagonal band that can
/// still stay within it and stops as soon as every live row exceeds it.
inline Distance distance(const OperationSet& ops, WordView v, WordView w,
                         std::optional<Weight> cutoff = std::nullopt) {
  const std::size_t n = v.size(), m = w.size();
  const std::size_t omega = ops.omega_max();
  const std::size_t rhs_max = ops.max_rhs();
  const auto [num, den] = ops.length_change_ratio();

  std::size_t band = std::max(n, m);
  if (cutoff) {
    const std::size_t gap = n > m ? n - m : m - n;
    if (num == 0) {
      if (gap != 0) return Distance::unreachable();
      band = 0;
    } else {
      band = static_cast<std::size_t>(std::uint64_t{num} * *cutoff / den);
      if (gap > band) return Distance::over();
    }
  }

  // Ring of omega + 1 rows over w, indexed by position in v.
  const std::size_t width = m + 1;
  thread_local std::vector<std::uint64_t> buf;
  buf.assign((omega + 1) * width, detail::kInfCost);
  auto row = [&](std::size_t a) { return buf.data() + (a % (omega + 1)) * width; };

  const bool fast = !ops.has_explicit();
  const detail::ClassCosts cc(ops);
  const std::uint64_t limit = cutoff ? std::uint64_t{*cutoff} : detail::kInfCost;

  for (std::size_t a = 0; a <= n; ++a) {
    std::uint64_t* cur = row(a);
    std::fill(cur, cur + width, detail::kInfCost);
    const std::size_t lo = a > band ? a - band : 0;
    const std::size_t hi = std::min(m, a + band);
    for (std::size_t c = lo; c <= hi; ++c) {
      std::uint64_t best = (a == 0 && c == 0) ? 0 : detail::kInfCost;
      if (fast) {
        if (c >= 1) best = std::min(best, detail::sat_add(cur[c - 1], cc.ins));
        if (a >= 1) {
          const std::uint64_t* p1 = row(a - 1);
          best = std::min(best, detail::sat_add(p1[c], cc.del));
          if (c >= 1) best = std::min(best, detail::sat_add(p1[c - 1], v[a - 1] == w[c - 1] ? 0 : cc.sub));
          if (c >= 2) best = std::min(best, detail::sat_add(p1[c - 2], cc.split));
        }
        if (a >= 2 && omega >= 2) {
          const std::uint64_t* p2 = row(a - 2);
          if (c >= 1) best = std::min(best, detail::sat_add(p2[c - 1], cc.merge));
          if (c >= 2 && v[a - 2] != v[a - 1] && v[a - 2] == w[c - 1] && v[a - 1] == w[c - 2]) {
            best = std::min(best, detail::sat_add(p2[c - 2], cc.tr));
          }
        }
      } else {
        for (std::size_t x = 0; x <= std::min(omega, a); ++x) {
          const std::uint64_t* px = row(a - x);
          for (std::size_t y = 0; y <= std::min(rhs_max, c); ++y) {
            if (x == 0 && y == 0) continue;
            const std::uint64_t base = px[c - y];
            if (base >= detail::kInfCost) continue;
            if (auto wt = ops.weight(v.substr(a - x, x), w.substr(c - y, y))) {
              best = std::min(best, detail::sat_add(base, *wt));
            }
          }
        }
      }
      cur[c] = best;
    }
    if (cutoff) {
      // Rows a-omega+1 .. a feed every later row.
      std::uint64_t live = detail::kInfCost;
      for (std::size_t k = 0; k < omega && k <= a; ++k) {
        const std::uint64_t* r = row(a - k);
        live = std::min(live, *std::min_element(r, r + width));
      }
      if (live > limit) return Distance::over();
    }
  }
  const std::uint64_t d = row(n)[m];
  if (d >= detail::kInfCost) return cutoff ? Distance::over() : Distance::unreachable();
  if (d > limit) return Distance::over();
  return Distance::exact(static_cast<Weight>(d));
}

/// One optimal alignment, recovered by backtracing the full DP table. At each
/// step the last operation is chosen in the order identity, substitution,
/// deletion, insertion, then wider operations by (|lhs|, |rhs|).
inline Alignment align(const OperationSet& ops, WordView v, WordView w) {
  const std::size_t n = v.size(), m = w.size();
  const std::size_t omega = ops.omega_max(), rhs_max = ops.max_rhs();
  std::vector<std::uint64_t> table((n + 1) * (m + 1), detail::kInfCost);
  auto at = [&](std::size_t a, std::size_t c) -> std::uint64_t& { return table[a * (m + 1) + c]; };

  std::vector<std::pair<std::size_t, std::size_t>> shapes = {{1, 1}, {1, 0}, {0, 1}};
  for (std::size_t x = 0; x <= omega; ++x) {
    for (std::size_t y = 0; y <= rhs_max; ++y) {
      if (x + y > 0 && !(x <= 1 && y <= 1)) shapes.emplace_back(x, y);
    }
  }

  at(0, 0) = 0;
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t c = 0; c <= m; ++c) {
      if (a == 0 && c == 0) continue;
      std::uint64_t best = detail::kInfCost;
      for (auto [x, y] : shapes) {
        if (x > a || y > c) continue;
        const std::uint64_t base = at(a - x, c - y);
        if (base >= detail::kInfCost) continue;
        if (auto wt = ops.weight(v.substr(a - x, x), w.substr(c - y, y))) {
          best = std::min(best, detail::sat_add(base, *wt));
        }
      }
      at(a, c) = best;
    }
  }
  if (at(n, m) >= detail::kInfCost) throw Error("no alignment exists between the given strings");

  Alignment out;
  std::size_t a = n, c = m;
  while (a > 0 || c > 0) {
    bool stepped = false;
    for (auto [x, y] : shapes) {
      if (x > a || y > c) continue;
      const std::uint64_t base = at(a - x, c - y);
      if (base >= detail::kInfCost) continue;
      auto wt = ops.weight(v.substr(a - x, x), w.substr(c - y, y));
      if (wt && base + *wt == at(a, c)) {
        out.ops.push_back({Word(v.substr(a - x, x)), Word(w.substr(c - y, y)), *wt});
        a -= x;
        c -= y;
        stepped = true;
        break;
      }
    }
    if (!stepped) throw Error("alignment backtrace failed");
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

struct AlignmentSplit {
  Alignment head;
  std::optional<Operation> straddle;
  Alignment tail;
};

/// Splits `alpha` where its left side reaches `k` symbols. `head` is the
/// longest prefix of operations whose left side stays within the first k
/// symbols; `straddle` is the operation crossing position k, if any.
inline AlignmentSplit split_alignment(const Alignment& alpha, std::size_t k) {
  AlignmentSplit out;
  std::size_t consumed = 0;
  std::size_t i = 0;
  while (i < alpha.ops.size() && consumed + alpha.ops[i].lhs.size() <= k) {
    consumed += alpha.ops[i].lhs.size();
    out.head.ops.push_back(alpha.ops[i]);
    ++i;
  }
  if (consumed < k && i < alpha.ops.size()) out.straddle = alpha.ops[i++];
  out.tail.ops.assign(alpha.ops.begin() + static_cast<std::ptrdiff_t>(i), alpha.ops.end());
  return out;
}

}  // namespace lexiscan
