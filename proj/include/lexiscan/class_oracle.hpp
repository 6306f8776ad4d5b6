#pragma once

#include "lexiscan/lexicon.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace lexiscan {

/// Brute-force substring classes of the sentinel-wrapped lexicon, for tests.
/// Two substrings share a class when they have the same set of occurrence
/// starts or the same set of occurrence ends, closed transitively.
struct SubstringClasses {
  struct Class {
    Word canonical;
    std::vector<Word> members;  // sorted by length
  };
  std::vector<Class> classes;
  std::map<Word, std::size_t> class_of;

  /// Members that share the canonical string's end positions: the suffixes
  /// of the canonical string inside the class.
  std::vector<Word> endpos_members(std::size_t c) const {
    std::vector<Word> out;
    const Word& canon = classes[c].canonical;
    for (const auto& m : classes[c].members) {
      if (canon.ends_with(m)) out.push_back(m);
    }
    return out;
  }
};

namespace detail {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// With `reversed_entries` the classes are those of the mirrored text.
inline SubstringClasses substring_class_oracle(const Lexicon& lex, bool reversed_entries = false) {
  std::vector<Word> blocks;
  for (const auto& w : lex.entries) {
    Word b;
    if (reversed_entries) {
      b.push_back(kDollar);
      b.append(w.rbegin(), w.rend());
      b.push_back(kHash);
    } else {
      b.push_back(kHash);
      b += w;
      b.push_back(kDollar);
    }
    blocks.push_back(std::move(b));
  }

  // Occurrences as (block, start) and (block, end) sets.
  std::map<Word, std::pair<std::set<std::pair<std::size_t, std::size_t>>, std::set<std::pair<std::size_t, std::size_t>>>> occ;
  occ[Word()];
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Word& b = blocks[k];
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = i + 1; j <= b.size(); ++j) {
        auto& o = occ[b.substr(i, j - i)];
        o.first.emplace(k, i);
        o.second.emplace(k, j);
      }
    }
  }

  std::vector<Word> subs;
  for (const auto& [s, _] : occ) subs.push_back(s);
  std::map<Word, std::size_t> id;
  for (std::size_t i = 0; i < subs.size(); ++i) id[subs[i]] = i;

  detail::DisjointSets sets(subs.size());
  std::map<std::set<std::pair<std::size_t, std::size_t>>, std::size_t> by_start, by_end;
  for (std::size_t i = 1; i < subs.size(); ++i) {
    const auto& [starts, ends] = occ[subs[i]];
    if (auto [it, fresh] = by_start.emplace(starts, i); !fresh) sets.unite(i, it->second);
    if (auto [it, fresh] = by_end.emplace(ends, i); !fresh) sets.unite(i, it->second);
  }

  SubstringClasses out;
  std::map<std::size_t, std::size_t> root_to_class;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::size_t r = sets.find(i);
    auto [it, fresh] = root_to_class.emplace(r, out.classes.size());
    if (fresh) out.classes.emplace_back();
    auto& cls = out.classes[it->second];
    cls.members.push_back(subs[i]);
    if (subs[i].size() > cls.canonical.size()) cls.canonical = subs[i];
    out.class_of[subs[i]] = it->second;
  }
  for (auto& cls : out.classes) {
    std::stable_sort(cls.members.begin(), cls.members.end(),
                     [](const Word& a, const Word& b) { return a.size() < b.size(); });
  }
  return out;
}

/// Every substring of the entries, the empty one included.
inline std::set<Word> entry_substrings(const Lexicon& lex) {
  std::set<Word> out;
  out.insert(Word());
  for (const auto& w : lex.entries) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i + 1; j <= w.size(); ++j) out.insert(w.substr(i, j - i));
    }
  }
  return out;
}

}  // namespace lexiscan
