#pragma once

#include "lexiscan/symbol.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexiscan {

using Weight = std::uint32_t;

/// Procedural operation families. Each family covers every symbol tuple of
/// its shape, so none of them is ever enumerated.
enum class OpClass : std::uint8_t { substitute, insert, remove, transpose, merge, split };

inline constexpr std::size_t kOpClassCount = 6;

inline constexpr std::array<std::string_view, kOpClassCount> kOpClassNames = {
    "substitute", "insert", "delete", "transpose", "merge", "split"};

/// One weighted rewriting step: `lhs` is read from the pattern side, `rhs`
/// from the candidate side.
struct Operation {
  Word lhs;
  Word rhs;
  Weight weight = 0;

  bool is_identity() const noexcept { return lhs.size() == 1 && lhs == rhs; }
  friend bool operator==(const Operation&, const Operation&) = default;
};

class OperationSet {
 public:
  OperationSet() = default;

  static OperationSet preset(std::string_view name) {
    OperationSet ops;
    if (name == "lev" || name == "lev-transpose" || name == "lev-merge-split") {
      ops.set_class(OpClass::substitute, 1);
      ops.set_class(OpClass::insert, 1);
      ops.set_class(OpClass::remove, 1);
      if (name == "lev-transpose") ops.set_class(OpClass::transpose, 1);
      if (name == "lev-merge-split") {
        ops.set_class(OpClass::merge, 1);
        ops.set_class(OpClass::split, 1);
      }
      return ops;
    }
    throw ConfigError("unknown operation preset '" + std::string(name) +
                      "' (expected lev, lev-transpose or lev-merge-split)");
  }

  /// Parses the tab-separated operation file format. The optional first line
  /// `classes: NAME[=WEIGHT] ...` enables implicit families (default weight 1);
  /// every further non-empty line is `LHS<TAB>RHS<TAB>WEIGHT`.
  static OperationSet parse(std::string_view text) {
    OperationSet ops;
    std::size_t line_no = 0;
    for (std::size_t begin = 0; begin < text.size();) {
      std::size_t end = text.find('\n', begin);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(begin, end - begin);
      begin = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty()) continue;
      if (line_no == 1 && line.starts_with("classes:")) {
        ops.parse_classes(line.substr(8), line_no);
      } else {
        ops.parse_operation_line(line, line_no);
      }
    }
    return ops;
  }

  /// The mirrored set: every ⟨X,Y⟩ becomes ⟨X^rev,Y^rev⟩ with equal weight.
  OperationSet reversed() const {
    OperationSet rev;
    rev.classes_ = classes_;
    for (const auto& [key, w] : explicit_) {
      rev.explicit_.emplace(std::pair{lexiscan::reversed(key.first), lexiscan::reversed(key.second)}, w);
    }
    rev.recompute();
    return rev;
  }

  void set_class(OpClass c, Weight w) {
    if (w == 0) throw ConfigError("implicit operation classes need a positive weight");
    classes_[static_cast<std::size_t>(c)] = w;
    recompute();
  }

  /// Adds an explicit operation. A duplicate keeps the lower weight.
  void add(Word lhs, Word rhs, Weight w) {
    if (lhs.empty() && rhs.empty()) throw ConfigError("operation with two empty sides");
    if (lhs.size() == 1 && lhs == rhs) throw ConfigError("identity operations carry no weight");
    if (w == 0) throw ConfigError("non-identity operation with zero weight");
    auto [it, inserted] = explicit_.try_emplace(std::pair{std::move(lhs), std::move(rhs)}, w);
    if (!inserted) it->second = std::min(it->second, w);
    recompute();
  }

  std::optional<Weight> class_weight(OpClass c) const { return classes_[static_cast<std::size_t>(c)]; }
  bool has_explicit() const noexcept { return !explicit_.empty(); }

  std::vector<Operation> explicit_operations() const {
    std::vector<Operation> out;
    out.reserve(explicit_.size());
    for (const auto& [key, w] : explicit_) out.push_back({key.first, key.second, w});
    return out;
  }

  /// Weight of ⟨lhs,rhs⟩, or nullopt when the pair is not an operation.
  std::optional<Weight> weight(WordView lhs, WordView rhs) const {
    if (lhs.size() == 1 && rhs.size() == 1 && lhs[0] == rhs[0]) return Weight{0};
    if (!explicit_.empty()) {
      auto it = explicit_.find(std::pair{Word(lhs), Word(rhs)});
      if (it != explicit_.end()) return it->second;
    }
    const std::size_t x = lhs.size(), y = rhs.size();
    if (x == 1 && y == 1) return class_weight(OpClass::substitute);
    if (x == 0 && y == 1) return class_weight(OpClass::insert);
    if (x == 1 && y == 0) return class_weight(OpClass::remove);
    if (x == 2 && y == 1) return class_weight(OpClass::merge);
    if (x == 1 && y == 2) return class_weight(OpClass::split);
    if (x == 2 && y == 2 && lhs[0] != lhs[1] && lhs[0] == rhs[1] && lhs[1] == rhs[0]) {
      return class_weight(OpClass::transpose);
    }
    return std::nullopt;
  }

  /// Maximum |lhs| over all operations (at least 1).
  std::size_t omega_max() const noexcept { return omega_max_; }
  /// Maximum |rhs| over all operations (at least 1).
  std::size_t max_rhs() const noexcept { return max_rhs_; }

  /// Largest ratio |(|lhs| - |rhs|)| / weight, as a fraction. Any alignment
  /// between strings whose lengths differ by g costs at least g / ratio.
  std::pair<Weight, Weight> length_change_ratio() const noexcept { return ratio_; }

  friend bool operator==(const OperationSet& a, const OperationSet& b) {
    return a.classes_ == b.classes_ && a.explicit_ == b.explicit_;
  }

  std::string describe() const {
    std::ostringstream out;
    out << "classes:";
    for (std::size_t c = 0; c < kOpClassCount; ++c) {
      if (classes_[c]) out << ' ' << kOpClassNames[c] << '=' << *classes_[c];
    }
    out << " explicit=" << explicit_.size() << " omega_max=" << omega_max_;
    return out.str();
  }

 private:
  void parse_classes(std::string_view rest, std::size_t line_no) {
    std::istringstream in{std::string(rest)};
    std::string token;
    while (in >> token) {
      std::string_view name = token;
      Weight w = 1;
      if (auto eq = name.find('='); eq != std::string_view::npos) {
        w = parse_weight(name.substr(eq + 1), line_no);
        name = name.substr(0, eq);
      }
      auto it = std::find(kOpClassNames.begin(), kOpClassNames.end(), name);
      if (it == kOpClassNames.end()) {
        throw ParseError("line " + std::to_string(line_no) + ": unknown operation class '" +
                         std::string(name) + "'");
      }
      if (w == 0) throw ParseError("line " + std::to_string(line_no) + ": zero class weight");
      classes_[static_cast<std::size_t>(it - kOpClassNames.begin())] = w;
    }
    recompute();
  }

  void parse_operation_line(std::string_view line, std::size_t line_no) {
    const auto where = "line " + std::to_string(line_no) + ": ";
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos) {
      throw ParseError(where + "expected LHS<TAB>RHS<TAB>WEIGHT");
    }
    Word lhs, rhs;
    try {
      lhs = decode_utf8(line.substr(0, t1));
      rhs = decode_utf8(line.substr(t1 + 1, t2 - t1 - 1));
    } catch (const LoadError&) {
      throw ParseError(where + "invalid UTF-8");
    }
    const Weight w = parse_weight(line.substr(t2 + 1), line_no);
    if (lhs.size() == 1 && lhs == rhs) throw ParseError(where + "weight given for an identity operation");
    if (lhs.empty() && rhs.empty()) throw ParseError(where + "both sides empty");
    if (w == 0) throw ParseError(where + "zero weight on a non-identity operation");
    auto [it, inserted] = explicit_.try_emplace(std::pair{std::move(lhs), std::move(rhs)}, w);
    if (!inserted) it->second = std::min(it->second, w);
    recompute();
  }

  static Weight parse_weight(std::string_view field, std::size_t line_no) {
    Weight w = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), w);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": bad weight '" + std::string(field) + "'");
    }
    return w;
  }

  void recompute() {
    omega_max_ = 1;
    max_rhs_ = 1;
    ratio_ = {0, 1};
    auto consider = [&](std::size_t x, std::size_t y, Weight w) {
      omega_max_ = std::max(omega_max_, x);
      max_rhs_ = std::max(max_rhs_, y);
      const Weight delta = static_cast<Weight>(x > y ? x - y : y - x);
      // delta / w > num / den
      if (std::uint64_t{delta} * ratio_.second > std::uint64_t{ratio_.first} * w) ratio_ = {delta, w};
    };
    constexpr std::array<std::pair<std::size_t, std::size_t>, kOpClassCount> shapes = {
        std::pair{1, 1}, {0, 1}, {1, 0}, {2, 2}, {2, 1}, {1, 2}};
    for (std::size_t c = 0; c < kOpClassCount; ++c) {
      if (classes_[c]) consider(shapes[c].first, shapes[c].second, *classes_[c]);
    }
    for (const auto& [key, w] : explicit_) consider(key.first.size(), key.second.size(), w);
  }

  std::array<std::optional<Weight>, kOpClassCount> classes_{};
  std::map<std::pair<Word, Word>, Weight> explicit_;
  std::size_t omega_max_ = 1;
  std::size_t max_rhs_ = 1;
  std::pair<Weight, Weight> ratio_{0, 1};
};

}  // namespace lexiscan
