#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "revforge/error.hpp"
#include "revforge/word.hpp"

namespace revforge {

using Table = std::vector<WordIndex>;

/// A bijection of A^n stored as its image table: table()[x] = f(x).
/// Immutable after construction.
class Gate {
 public:
  /// Validates that `table` is a permutation of {0, ..., |A|^arity - 1}.
  Gate(Alphabet alphabet, std::size_t arity, Table table)
      : alphabet_(alphabet), arity_(arity), table_(std::move(table)) {
    const std::size_t n = word_count(alphabet_, arity_);
    require(table_.size() == n, "gate table length " + std::to_string(table_.size()) +
                                    " does not match |A|^n = " + std::to_string(n));
    std::vector<bool> seen(n, false);
    for (WordIndex y : table_) {
      require(y < n && !seen[y], "gate table is not a bijection");
      seen[y] = true;
    }
  }

  static Gate identity(Alphabet alphabet, std::size_t arity) {
    Table t(word_count(alphabet, arity));
    std::iota(t.begin(), t.end(), WordIndex{0});
    return Gate(alphabet, arity, std::move(t), Unchecked{});
  }

  /// Builds a gate from disjoint cycles of words; unlisted words are fixed.
  static Gate from_cycles(Alphabet alphabet, std::size_t arity,
                          const std::vector<std::vector<WordIndex>>& cycles) {
    Table t(word_count(alphabet, arity));
    std::iota(t.begin(), t.end(), WordIndex{0});
    std::vector<bool> used(t.size(), false);
    for (const auto& cycle : cycles) {
      for (WordIndex w : cycle) {
        require(w < t.size(), "cycle word out of range");
        require(!used[w], "cycles are not disjoint");
        used[w] = true;
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) t[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
    return Gate(alphabet, arity, std::move(t), Unchecked{});
  }

  static Gate word_swap(Alphabet alphabet, std::size_t arity, WordIndex u, WordIndex v) {
    return from_cycles(alphabet, arity, {{u, v}});
  }

  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
  [[nodiscard]] std::size_t degree() const noexcept { return table_.size(); }
  [[nodiscard]] const Table& table() const noexcept { return table_; }
  [[nodiscard]] WordIndex operator()(WordIndex x) const { return table_[x]; }

  [[nodiscard]] bool is_identity() const noexcept {
    for (std::size_t x = 0; x < table_.size(); ++x)
      if (table_[x] != x) return false;
    return true;
  }

  friend bool operator==(const Gate& a, const Gate& b) {
    return a.alphabet_ == b.alphabet_ && a.arity_ == b.arity_ && a.table_ == b.table_;
  }

  // Internal constructor for tables already known to be bijections.
  struct Unchecked {};
  Gate(Alphabet alphabet, std::size_t arity, Table table, Unchecked) noexcept
      : alphabet_(alphabet), arity_(arity), table_(std::move(table)) {}

 private:
  Alphabet alphabet_;
  std::size_t arity_;
  Table table_;
};

struct GateHash {
  std::size_t operator()(const Gate& g) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL ^ g.arity();
    for (WordIndex y : g.table()) h = (h ^ y) * 0x100000001b3ULL;
    return h;
  }
};

/// A permutation α of the wires {0, ..., n-1}; mapping()[i] is the
/// destination wire of source wire i.
class WirePermutation {
 public:
  explicit WirePermutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
    std::vector<bool> seen(mapping_.size(), false);
    for (std::size_t d : mapping_) {
      require(d < mapping_.size() && !seen[d], "wire mapping is not a permutation");
      seen[d] = true;
    }
  }

  static WirePermutation identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return WirePermutation(std::move(m));
  }

  /// Transposition of wires i and j on n wires.
  static WirePermutation swap(std::size_t n, std::size_t i, std::size_t j) {
    auto p = identity(n);
    require(i < n && j < n, "wire index out of range");
    std::swap(p.mapping_[i], p.mapping_[j]);
    return p;
  }

  [[nodiscard]] std::size_t arity() const noexcept { return mapping_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& mapping() const noexcept { return mapping_; }
  [[nodiscard]] std::size_t operator[](std::size_t i) const { return mapping_[i]; }

  [[nodiscard]] WirePermutation inverse() const {
    std::vector<std::size_t> inv(mapping_.size());
    for (std::size_t i = 0; i < mapping_.size(); ++i) inv[mapping_[i]] = i;
    return WirePermutation(std::move(inv));
  }

  /// (a ∘ b)(i) = a(b(i)).
  friend WirePermutation operator*(const WirePermutation& a, const WirePermutation& b) {
    require(a.arity() == b.arity(), "wire permutation arity mismatch");
    std::vector<std::size_t> m(a.arity());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = a.mapping_[b.mapping_[i]];
    return WirePermutation(std::move(m));
  }

  friend bool operator==(const WirePermutation&, const WirePermutation&) = default;

 private:
  std::vector<std::size_t> mapping_;
};

namespace detail {

inline void require_compatible(const Gate& f, const Gate& g) {
  require(f.alphabet() == g.alphabet(), "alphabet mismatch");
  require(f.arity() == g.arity(), "arity mismatch: " + std::to_string(f.arity()) + " vs " +
                                      std::to_string(g.arity()));
}

}  // namespace detail

/// f ∘ g : x ↦ f(g(x)).
inline Gate compose(const Gate& f, const Gate& g) {
  detail::require_compatible(f, g);
  Table t(g.degree());
  const auto& ft = f.table();
  const auto& gt = g.table();
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = ft[gt[x]];
  return Gate(f.alphabet(), f.arity(), std::move(t), Gate::Unchecked{});
}

inline Gate inverse(const Gate& f) {
  Table t(f.degree());
  for (std::size_t x = 0; x < t.size(); ++x) t[f.table()[x]] = static_cast<WordIndex>(x);
  return Gate(f.alphabet(), f.arity(), std::move(t), Gate::Unchecked{});
}

/// f ⊕ g: f acts on the first f.arity() wires, g on the rest.
inline Gate parallel(const Gate& f, const Gate& g) {
  require(f.alphabet() == g.alphabet(), "alphabet mismatch");
  const std::size_t arity = f.arity() + g.arity();
  const std::size_t low = g.degree();
  Table t(word_count(f.alphabet(), arity));
  for (std::size_t hi = 0; hi < f.degree(); ++hi) {
    const std::size_t fhi = f.table()[hi] * low;
    for (std::size_t lo = 0; lo < low; ++lo) t[hi * low + lo] = static_cast<WordIndex>(fhi + g.table()[lo]);
  }
  return Gate(f.alphabet(), arity, std::move(t), Gate::Unchecked{});
}

/// π_α: output wire α(i) carries input wire i.
inline Gate wire_perm(const WirePermutation& alpha, const Alphabet& alphabet) {
  const std::size_t n = alpha.arity();
  const auto place = place_values(alphabet, n);
  Table t(word_count(alphabet, n));
  for (std::size_t x = 0; x < t.size(); ++x) {
    std::size_t rest = x, out = 0;
    for (std::size_t i = n; i-- > 0;) {
      out += (rest % alphabet.size()) * place[alpha[i]];
      rest /= alphabet.size();
    }
    t[x] = static_cast<WordIndex>(out);
  }
  return Gate(alphabet, n, std::move(t), Gate::Unchecked{});
}

/// π_α ∘ f ∘ π_α⁻¹.
inline Gate rewire(const Gate& f, const WirePermutation& alpha) {
  require(alpha.arity() == f.arity(), "wire permutation arity does not match gate arity");
  const Gate pi = wire_perm(alpha, f.alphabet());
  return compose(pi, compose(f, inverse(pi)));
}

inline void validate_layout(std::span<const std::size_t> layout, std::size_t width) {
  std::vector<bool> used(width, false);
  for (std::size_t w : layout) {
    require(w < width, "layout wire " + std::to_string(w) + " outside width " + std::to_string(width));
    require(!used[w], "layout wires are not distinct");
    used[w] = true;
  }
}

/// Applies f on wires `layout` of an n-wire word (layout[i] carries input i of
/// f); every other wire passes through unchanged.
inline Gate extend(const Gate& f, std::size_t width, std::span<const std::size_t> layout) {
  require(layout.size() == f.arity(), "layout length must equal gate arity");
  validate_layout(layout, width);
  const Alphabet& a = f.alphabet();
  const std::size_t k = a.size();
  const auto place = place_values(a, width);
  const std::size_t ell = f.arity();

  // contribution[y]: value of the local word y written on the layout wires.
  std::vector<std::size_t> contribution(f.degree());
  for (std::size_t y = 0; y < f.degree(); ++y) {
    std::size_t rest = y, v = 0;
    for (std::size_t i = ell; i-- > 0;) {
      v += (rest % k) * place[layout[i]];
      rest /= k;
    }
    contribution[y] = v;
  }

  Table t(word_count(a, width));
  for (std::size_t x = 0; x < t.size(); ++x) {
    std::size_t y = 0;
    for (std::size_t i = 0; i < ell; ++i) y = y * k + (x / place[layout[i]]) % k;
    t[x] = static_cast<WordIndex>(x - contribution[y] + contribution[f.table()[y]]);
  }
  return Gate(a, width, std::move(t), Gate::Unchecked{});
}

inline Gate extend(const Gate& f, std::size_t width, std::initializer_list<std::size_t> layout) {
  return extend(f, width, std::span<const std::size_t>(layout.begin(), layout.size()));
}

/// C_w[p]: applies p to the last p.arity() wires exactly when the first |w|
/// wires read w.
inline Gate controlled(std::span<const Symbol> control_word, const Gate& p) {
  const Alphabet& a = p.alphabet();
  const WordIndex w = encode_word(control_word, a);
  const std::size_t arity = control_word.size() + p.arity();
  const std::size_t block = p.degree();
  Table t(word_count(a, arity));
  std::iota(t.begin(), t.end(), WordIndex{0});
  const std::size_t base = static_cast<std::size_t>(w) * block;
  for (std::size_t v = 0; v < block; ++v) t[base + v] = static_cast<WordIndex>(base + p.table()[v]);
  return Gate(a, arity, std::move(t), Gate::Unchecked{});
}

inline Gate controlled(std::initializer_list<Symbol> control_word, const Gate& p) {
  return controlled(std::span<const Symbol>(control_word.begin(), control_word.size()), p);
}

/// Disjoint cycles of length >= 2, each starting at its smallest word, sorted
/// by that word.
inline std::vector<std::vector<WordIndex>> cycles(const Gate& f) {
  std::vector<std::vector<WordIndex>> out;
  std::vector<bool> seen(f.degree(), false);
  for (std::size_t x = 0; x < f.degree(); ++x) {
    if (seen[x] || f.table()[x] == x) continue;
    std::vector<WordIndex> cycle;
    for (WordIndex y = static_cast<WordIndex>(x); !seen[y]; y = f.table()[y]) {
      seen[y] = true;
      cycle.push_back(y);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

/// Sign of f as an element of Z₂: 0 for even, 1 for odd.
inline int parity(std::span<const WordIndex> table) {
  std::vector<bool> seen(table.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (std::size_t y = x; !seen[y]; y = table[y]) {
      seen[y] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return static_cast<int>(transpositions & 1U);
}

inline int parity(const Gate& f) { return parity(std::span<const WordIndex>(f.table())); }

/// The symbol permutation of A given as an image list, as a gate of arity 1.
inline Gate symbol_permutation(Alphabet alphabet, std::vector<WordIndex> images) {
  return Gate(alphabet, 1, std::move(images));
}

/// Wire swap on two wires: (a, b) ↦ (b, a).
inline Gate wire_swap(Alphabet alphabet) { return wire_perm(WirePermutation::swap(2, 0, 1), alphabet); }

/// Three-wire rotation π_(1 2 3): (x1, x2, x3) ↦ (x3, x1, x2).
inline Gate wire_rotation(Alphabet alphabet) { return wire_perm(WirePermutation({1, 2, 0}), alphabet); }

}  // namespace revforge
