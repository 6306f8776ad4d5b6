#pragma once

#include "lexiscan/distance.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

namespace lexiscan {

/// Incremental DP state of a filter: the last few rows of the
/// pattern-versus-consumed table, capped at bound + 1.
class FilterState {
 public:
  std::size_t consumed() const noexcept { return consumed_; }
  /// Current row: cell i holds d(pattern[0..i), consumed), capped.
  std::span<const Weight> row() const noexcept { return {rows_.data(), width_}; }
  friend bool operator==(const FilterState&, const FilterState&) = default;

 private:
  friend class Filter;
  std::vector<Weight> rows_;  // depth rows; row 0 is the current one
  Word history_;              // last depth-1 consumed symbols, oldest first
  std::size_t width_ = 0;
  std::size_t consumed_ = 0;
};

/// Decides, for a fixed pattern and bound, whether a growing string can still
/// be completed within the bound and whether it already is within it.
///
/// Holds a pointer to `ops`, which must outlive the filter.
class Filter {
 public:
  enum class Kernel { automatic, generic };

  Filter(const OperationSet& ops, Word pattern, Weight bound, Kernel kernel = Kernel::automatic)
      : ops_(&ops),
        pattern_(std::move(pattern)),
        bound_(bound),
        over_(bound + 1),
        width_(pattern_.size() + 1),
        depth_(ops.max_rhs()),
        omega_(ops.omega_max()),
        generic_(kernel == Kernel::generic || ops.has_explicit()) {
    auto cap = [&](std::optional<Weight> w) { return w ? std::min(*w, over_) : over_; };
    sub_ = cap(ops.class_weight(OpClass::substitute));
    ins_ = cap(ops.class_weight(OpClass::insert));
    del_ = cap(ops.class_weight(OpClass::remove));
    tr_ = cap(ops.class_weight(OpClass::transpose));
    merge_ = cap(ops.class_weight(OpClass::merge));
    split_ = cap(ops.class_weight(OpClass::split));
    for (auto& op : ops.explicit_operations()) {
      if (op.rhs.size() >= 2) straddlers_.push_back(std::move(op));
    }
  }

  const Word& pattern() const noexcept { return pattern_; }
  Weight bound() const noexcept { return bound_; }

  FilterState start() const {
    FilterState s;
    s.width_ = width_;
    s.rows_.assign(depth_ * width_, over_);
    s.rows_[0] = 0;
    close_row(s.rows_.data());
    return s;
  }

  std::optional<FilterState> step(const FilterState& in, Symbol sym) const {
    FilterState out;
    if (!step_into(in, sym, out)) return std::nullopt;
    return out;
  }

  /// Writes the successor of `in` into `out`, reusing its storage. Returns
  /// false when no extension of the consumed string can meet the bound.
  bool step_into(const FilterState& in, Symbol sym, FilterState& out) const {
    out.width_ = width_;
    out.consumed_ = in.consumed_ + 1;
    out.rows_.resize(depth_ * width_);
    std::copy(in.rows_.begin(), in.rows_.end() - static_cast<std::ptrdiff_t>(width_),
              out.rows_.begin() + static_cast<std::ptrdiff_t>(width_));
    out.history_ = in.history_;
    if (depth_ > 1) {
      out.history_.push_back(sym);
      if (out.history_.size() > depth_ - 1) out.history_.erase(out.history_.begin());
    }

    Weight* next = out.rows_.data();
    const Weight* cur = in.rows_.data();
    const std::size_t m = pattern_.size();
    if (!generic_) {
      const Weight* prev = depth_ > 1 ? in.rows_.data() + width_ : nullptr;
      const bool has_prev = prev && in.consumed_ >= 1;
      const Symbol last = has_prev ? in.history_.back() : Symbol{0};
      for (std::size_t i = 0; i <= m; ++i) {
        Weight v = cur[i] + ins_;
        if (i >= 1) v = std::min(v, cur[i - 1] + (pattern_[i - 1] == sym ? 0 : sub_));
        if (i >= 2) v = std::min(v, cur[i - 2] + merge_);
        if (has_prev) {
          if (i >= 1) v = std::min(v, prev[i - 1] + split_);
          if (i >= 2 && pattern_[i - 2] == sym && pattern_[i - 1] == last && sym != last) {
            v = std::min(v, prev[i - 2] + tr_);
          }
        }
        next[i] = std::min(v, over_);
      }
    } else {
      generic_row(in, sym, next);
    }
    close_row(next);
    return viable(out);
  }

  /// d(pattern, consumed) when it is within the bound.
  std::optional<Weight> distance(const FilterState& s) const {
    const Weight d = s.rows_[width_ - 1];
    if (d <= bound_) return d;
    return std::nullopt;
  }

  bool viable(const FilterState& s) const {
    const Weight* row = s.rows_.data();
    if (*std::min_element(row, row + width_) <= bound_) return true;
    return pending_straddle(s);
  }

  /// Lower bound on the weight spent on the consumed string by any completion.
  Weight lower_bound(const FilterState& s) const {
    return *std::min_element(s.rows_.begin(), s.rows_.end());
  }

 private:
  // Applies operations with an empty right side inside one row.
  void close_row(Weight* row) const {
    const std::size_t m = pattern_.size();
    if (!generic_) {
      for (std::size_t i = 1; i <= m; ++i) row[i] = std::min(row[i], std::min(row[i - 1] + del_, over_));
      return;
    }
    for (std::size_t i = 1; i <= m; ++i) {
      for (std::size_t x = 1; x <= std::min(omega_, i); ++x) {
        if (auto w = ops_->weight(WordView(pattern_).substr(i - x, x), WordView{})) {
          row[i] = std::min<Weight>(row[i], static_cast<Weight>(std::min<std::uint64_t>(
                                                std::uint64_t{row[i - x]} + *w, over_)));
        }
      }
    }
  }

  void generic_row(const FilterState& in, Symbol sym, Weight* next) const {
    const std::size_t m = pattern_.size();
    // Right sides ending with sym: tails[y-1] has length y.
    const std::size_t ymax = std::min(depth_, in.consumed_ + 1);
    std::vector<Word> tails(ymax);
    for (std::size_t y = 1; y <= ymax; ++y) {
      tails[y - 1] = Word(in.history_.end() - static_cast<std::ptrdiff_t>(y - 1), in.history_.end());
      tails[y - 1].push_back(sym);
    }
    const WordView pat(pattern_);
    for (std::size_t i = 0; i <= m; ++i) {
      std::uint64_t v = over_;
      for (std::size_t x = 0; x <= std::min(omega_, i); ++x) {
        for (std::size_t y = 1; y <= ymax; ++y) {
          const Weight base = in.rows_[(y - 1) * width_ + i - x];
          if (base >= over_) continue;
          if (auto w = ops_->weight(pat.substr(i - x, x), tails[y - 1])) v = std::min<std::uint64_t>(v, std::uint64_t{base} + *w);
        }
      }
      next[i] = static_cast<Weight>(std::min<std::uint64_t>(v, over_));
    }
  }

  // True if an operation whose right side started inside the consumed string
  // and continues past its end could still complete within the bound.
  bool pending_straddle(const FilterState& s) const {
    if (depth_ < 2) return false;
    const std::size_t m = pattern_.size();
    const WordView hist(s.history_);
    for (std::size_t t = 1; t < depth_ && t <= s.consumed_; ++t) {
      const Weight* row = s.rows_.data() + t * width_;
      const WordView recent = hist.substr(hist.size() - t);
      for (std::size_t i = 0; i <= m; ++i) {
        if (row[i] > bound_) continue;
        const std::uint64_t base = row[i];
        if (t == 1) {
          if (i < m && base + split_ <= bound_) return true;
          if (i + 2 <= m && pattern_[i + 1] == recent[0] && pattern_[i] != pattern_[i + 1] &&
              base + tr_ <= bound_) {
            return true;
          }
        }
        for (const auto& op : straddlers_) {
          if (op.rhs.size() <= t || base + op.weight > bound_) continue;
          if (WordView(op.rhs).substr(0, t) != recent) continue;
          if (WordView(pattern_).substr(i).starts_with(op.lhs)) return true;
        }
      }
    }
    return false;
  }

  const OperationSet* ops_;
  Word pattern_;
  Weight bound_;
  Weight over_;
  std::size_t width_;
  std::size_t depth_;
  std::size_t omega_;
  bool generic_;
  Weight sub_ = 0, ins_ = 0, del_ = 0, tr_ = 0, merge_ = 0, split_ = 0;
  std::vector<Operation> straddlers_;
};

}  // namespace lexiscan
