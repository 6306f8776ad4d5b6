#pragma once

#include <boost/locale/encoding_utf.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lexiscan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class LoadError : public Error { using Error::Error; };
class FormatError : public Error { using Error::Error; };
class ConstructionError : public Error { using Error::Error; };
class CoverageError : public Error { using Error::Error; };
class GenerationError : public Error { using Error::Error; };
class ArgumentError : public Error { using Error::Error; };

/// One Unicode scalar value, or one of the two out-of-band sentinels.
using Symbol = char32_t;
using Word = std::u32string;
using WordView = std::u32string_view;

// Sentinels live above the Unicode range, so no decoded text can contain them.
inline constexpr Symbol kHash = 0x110000;
inline constexpr Symbol kDollar = 0x110001;

constexpr bool is_sentinel(Symbol s) noexcept { return s == kHash || s == kDollar; }

inline Word decode_utf8(std::string_view text) {
  try {
    return boost::locale::conv::utf_to_utf<char32_t>(text.data(), text.data() + text.size(),
                                                     boost::locale::conv::stop);
  } catch (const boost::locale::conv::conversion_error&) {
    throw LoadError("invalid UTF-8 input");
  }
}

/// Encodes `word` as UTF-8. Sentinels are written as '#' and '$' when
/// `render_sentinels` is set and dropped otherwise.
inline std::string encode_utf8(WordView word, bool render_sentinels = false) {
  std::u32string plain;
  plain.reserve(word.size());
  for (Symbol s : word) {
    if (s == kHash) {
      if (render_sentinels) plain.push_back(U'#');
    } else if (s == kDollar) {
      if (render_sentinels) plain.push_back(U'$');
    } else {
      plain.push_back(s);
    }
  }
  return boost::locale::conv::utf_to_utf<char>(plain);
}

inline Word reversed(WordView w) { return Word(w.rbegin(), w.rend()); }

}  // namespace lexiscan
