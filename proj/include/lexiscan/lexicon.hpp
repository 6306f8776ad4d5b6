#pragma once

#include "lexiscan/symbol.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace lexiscan {

struct Lexicon {
  std::vector<Word> entries;
  std::size_t duplicates_dropped = 0;

  std::size_t total_size() const noexcept {
    std::size_t n = 0;
    for (const auto& w : entries) n += w.size();
    return n;
  }

  std::size_t max_length() const noexcept {
    std::size_t n = 0;
    for (const auto& w : entries) n = std::max(n, w.size());
    return n;
  }

  std::set<Symbol> alphabet() const {
    std::set<Symbol> out;
    for (const auto& w : entries) out.insert(w.begin(), w.end());
    return out;
  }

  /// Builds a lexicon from decoded words, keeping the first copy of each.
  static Lexicon from_words(std::vector<Word> words) {
    if (words.empty()) throw LoadError("lexicon is empty");
    Lexicon lex;
    std::unordered_set<Word> seen;
    seen.reserve(words.size());
    for (auto& w : words) {
      if (w.empty()) throw LoadError("lexicon entries must be nonempty");
      if (!seen.insert(w).second) {
        ++lex.duplicates_dropped;
        continue;
      }
      lex.entries.push_back(std::move(w));
    }
    return lex;
  }
};

/// Parses a UTF-8 lexicon file body: one entry per LF-terminated line.
inline Lexicon load_lexicon(std::string_view text) {
  if (text.empty()) throw LoadError("lexicon file is empty");
  std::vector<Word> words;
  std::size_t line_no = 0;
  for (std::size_t begin = 0; begin < text.size();) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (line.empty()) throw LoadError("line " + std::to_string(line_no) + ": empty entry");
    try {
      words.push_back(decode_utf8(line));
    } catch (const LoadError&) {
      throw LoadError("line " + std::to_string(line_no) + ": invalid UTF-8");
    }
  }
  return Lexicon::from_words(std::move(words));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Lexicon load_lexicon_file(const std::string& path) { return load_lexicon(read_file(path)); }

}  // namespace lexiscan
