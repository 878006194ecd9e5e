#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revforge/error.hpp"

namespace revforge {

using Symbol = std::uint32_t;

/// Index of a word of A^n. The leftmost symbol (wire 0) is the most
/// significant base-|A| digit, so numeric order is lexicographic order.
using WordIndex = std::uint32_t;

/// A finite alphabet {0, ..., size-1}.
class Alphabet {
 public:
  explicit Alphabet(std::size_t size) : size_(size) {
    require(size >= 1, "alphabet size must be at least 1");
  }

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool contains(Symbol s) const noexcept { return s < size_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::size_t size_;
};

/// |A|^n, refusing anything that does not fit a WordIndex.
inline std::size_t word_count(const Alphabet& alphabet, std::size_t arity) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    count *= alphabet.size();
    if (count > std::uint64_t{std::numeric_limits<WordIndex>::max()}) {
      throw ResourceCapExceeded("|A|^n exceeds the 32-bit word index range");
    }
  }
  return static_cast<std::size_t>(count);
}

inline WordIndex encode_word(std::span<const Symbol> symbols, const Alphabet& alphabet) {
  word_count(alphabet, symbols.size());
  std::uint64_t value = 0;
  for (Symbol s : symbols) {
    require(alphabet.contains(s), "symbol " + std::to_string(s) + " outside alphabet of size " +
                                      std::to_string(alphabet.size()));
    value = value * alphabet.size() + s;
  }
  return static_cast<WordIndex>(value);
}

inline std::vector<Symbol> decode_word(WordIndex index, const Alphabet& alphabet, std::size_t arity) {
  std::vector<Symbol> out(arity);
  std::size_t value = index;
  for (std::size_t i = arity; i-- > 0;) {
    out[i] = static_cast<Symbol>(value % alphabet.size());
    value /= alphabet.size();
  }
  require(value == 0, "word index out of range for arity " + std::to_string(arity));
  return out;
}

// Words are written as strings of base-36 digits, one character per symbol.
inline char symbol_char(Symbol s) {
  require(s < 36, "symbols beyond 35 have no single-character form");
  return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + (s - 10));
}

inline Symbol symbol_from_char(char c) {
  if (c >= '0' && c <= '9') return static_cast<Symbol>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<Symbol>(c - 'a' + 10);
  if (c >= 'A' && c <= 'Z') return static_cast<Symbol>(c - 'A' + 10);
  throw InvalidArgument(std::string("invalid symbol character '") + c + "'");
}

inline std::string word_to_string(std::span<const Symbol> symbols) {
  std::string out;
  out.reserve(symbols.size());
  for (Symbol s : symbols) out.push_back(symbol_char(s));
  return out;
}

inline std::string word_to_string(WordIndex index, const Alphabet& alphabet, std::size_t arity) {
  return word_to_string(decode_word(index, alphabet, arity));
}

inline std::vector<Symbol> word_from_string(std::string_view text, const Alphabet& alphabet) {
  std::vector<Symbol> out;
  out.reserve(text.size());
  for (char c : text) {
    Symbol s = symbol_from_char(c);
    require(alphabet.contains(s), std::string("symbol '") + c + "' outside alphabet of size " +
                                      std::to_string(alphabet.size()));
    out.push_back(s);
  }
  return out;
}

/// Powers |A|^(n-1-i): the place value of wire i in a word of arity n.
inline std::vector<std::size_t> place_values(const Alphabet& alphabet, std::size_t arity) {
  std::vector<std::size_t> out(arity);
  std::size_t p = 1;
  for (std::size_t i = arity; i-- > 0;) {
    out[i] = p;
    p *= alphabet.size();
  }
  return out;
}

}  // namespace revforge
