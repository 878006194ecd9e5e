#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "revforge/gate.hpp"

namespace revforge {

/// A letter-weight assignment φ : A* → Z^d × Z_{k1} × ... × Z_{ke}. The
/// weight of a word is the componentwise sum of its letter weights, reduced
/// modulo k_i on the cyclic coordinates. Weight classes are always taken
/// within a fixed word length, so length acts as an implicit extra coordinate.
class WeightHom {
 public:
  using Weight = std::vector<std::int64_t>;

  WeightHom(Alphabet alphabet, std::size_t free_dim, std::vector<std::int64_t> moduli,
            std::vector<Weight> letters, std::string name = "custom")
      : alphabet_(alphabet), free_dim_(free_dim), moduli_(std::move(moduli)), letters_(std::move(letters)),
        name_(std::move(name)) {
    require(letters_.size() == alphabet_.size(), "weight hom needs one weight vector per letter");
    for (auto k : moduli_) require(k >= 2, "cyclic moduli must be at least 2");
    for (auto& w : letters_) {
      require(w.size() == dimension(), "letter weight has " + std::to_string(w.size()) + " coordinates, expected " +
                                           std::to_string(dimension()));
      reduce(w);
    }
  }

  /// Counts occurrences of each letter: d = |A| unit vectors.
  static WeightHom letter_count(Alphabet alphabet) {
    std::vector<Weight> letters(alphabet.size(), Weight(alphabet.size(), 0));
    for (std::size_t a = 0; a < alphabet.size(); ++a) letters[a][a] = 1;
    return WeightHom(alphabet, alphabet.size(), {}, std::move(letters), "letter_count");
  }

  /// x ↦ |x|: a single all-ones coordinate.
  static WeightHom length(Alphabet alphabet) {
    return WeightHom(alphabet, 1, {}, std::vector<Weight>(alphabet.size(), Weight{1}), "length");
  }

  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t free_dim() const noexcept { return free_dim_; }
  [[nodiscard]] const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
  [[nodiscard]] const std::vector<Weight>& letters() const noexcept { return letters_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return free_dim_ + moduli_.size(); }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

  [[nodiscard]] Weight zero() const { return Weight(dimension(), 0); }

  void add_letter(Weight& w, Symbol s) const {
    const auto& l = letters_.at(s);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += l[i];
    reduce(w);
  }

  [[nodiscard]] Weight weight(std::span<const Symbol> word) const {
    Weight w = zero();
    for (Symbol s : word) {
      require(alphabet_.contains(s), "symbol outside alphabet");
      add_letter(w, s);
    }
    return w;
  }

  [[nodiscard]] Weight weight(WordIndex word, std::size_t arity) const {
    return weight(decode_word(word, alphabet_, arity));
  }

 private:
  void reduce(Weight& w) const {
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      auto& c = w[free_dim_ + i];
      c %= moduli_[i];
      if (c < 0) c += moduli_[i];
    }
  }

  Alphabet alphabet_;
  std::size_t free_dim_;
  std::vector<std::int64_t> moduli_;
  std::vector<Weight> letters_;
  std::string name_;
};

/// Partition of A^n into φ-weight classes. Class ids are assigned in order
/// of each class's smallest word.
class WeightPartition {
 public:
  using ClassId = std::uint32_t;

  WeightPartition(const WeightHom& hom, std::size_t arity) : alphabet_(hom.alphabet()), arity_(arity) {
    const std::size_t n = word_count(alphabet_, arity);
    const std::size_t k = alphabet_.size();
    // Weights of all words of every length up to `arity`, built from prefixes.
    std::vector<WeightHom::Weight> current{hom.zero()};
    for (std::size_t len = 0; len < arity; ++len) {
      std::vector<WeightHom::Weight> next;
      next.reserve(current.size() * k);
      for (const auto& w : current) {
        for (Symbol s = 0; s < k; ++s) {
          auto v = w;
          hom.add_letter(v, s);
          next.push_back(std::move(v));
        }
      }
      current = std::move(next);
    }
    std::map<WeightHom::Weight, ClassId> ids;
    class_of_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      auto [it, fresh] = ids.try_emplace(current[x], static_cast<ClassId>(sizes_.size()));
      if (fresh) {
        sizes_.push_back(0);
        representatives_.push_back(static_cast<WordIndex>(x));
        weights_.push_back(current[x]);
      }
      class_of_[x] = it->second;
      ++sizes_[it->second];
    }
  }

  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
  [[nodiscard]] std::size_t class_count() const noexcept { return sizes_.size(); }
  [[nodiscard]] const std::vector<ClassId>& class_of() const noexcept { return class_of_; }
  [[nodiscard]] ClassId class_of(WordIndex x) const { return class_of_.at(x); }
  [[nodiscard]] const std::vector<std::size_t>& class_sizes() const noexcept { return sizes_; }
  [[nodiscard]] const std::vector<WordIndex>& representatives() const noexcept { return representatives_; }
  [[nodiscard]] const std::vector<WeightHom::Weight>& class_weights() const noexcept { return weights_; }

  [[nodiscard]] std::vector<std::vector<WordIndex>> members() const {
    std::vector<std::vector<WordIndex>> out(class_count());
    for (std::size_t x = 0; x < class_of_.size(); ++x) out[class_of_[x]].push_back(static_cast<WordIndex>(x));
    return out;
  }

  [[nodiscard]] std::size_t nontrivial_class_count() const {
    return static_cast<std::size_t>(std::count_if(sizes_.begin(), sizes_.end(), [](auto s) { return s > 1; }));
  }

 private:
  Alphabet alphabet_;
  std::size_t arity_;
  std::vector<ClassId> class_of_;
  std::vector<std::size_t> sizes_;
  std::vector<WordIndex> representatives_;
  std::vector<WeightHom::Weight> weights_;
};

inline bool is_conservative(const Gate& f, const WeightPartition& partition) {
  require(f.alphabet() == partition.alphabet() && f.arity() == partition.arity(),
          "gate and partition disagree on alphabet or arity");
  const auto& cls = partition.class_of();
  for (std::size_t x = 0; x < f.degree(); ++x)
    if (cls[x] != cls[f.table()[x]]) return false;
  return true;
}

inline bool is_conservative(const Gate& f, const WeightHom& hom) {
  require(f.alphabet() == hom.alphabet(), "gate and weight hom disagree on alphabet");
  return is_conservative(f, WeightPartition(hom, f.arity()));
}

/// A vector over Z₂ indexed by weight-class id.
class ParitySequence {
 public:
  explicit ParitySequence(std::size_t length = 0) : length_(length), blocks_((length + 63) / 64, 0) {}

  [[nodiscard]] std::size_t size() const noexcept { return length_; }
  [[nodiscard]] bool get(std::size_t i) const { return (blocks_.at(i / 64) >> (i % 64)) & 1U; }
  void flip(std::size_t i) { blocks_.at(i / 64) ^= std::uint64_t{1} << (i % 64); }
  void set(std::size_t i, bool v) {
    if (get(i) != v) flip(i);
  }

  ParitySequence& operator^=(const ParitySequence& o) {
    require(o.length_ == length_, "parity sequence length mismatch");
    for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] ^= o.blocks_[b];
    return *this;
  }
  friend ParitySequence operator^(ParitySequence a, const ParitySequence& b) { return a ^= b; }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](auto b) { return b == 0; });
  }
  [[nodiscard]] std::size_t popcount() const {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }
  /// Lowest set index, or size() when zero.
  [[nodiscard]] std::size_t lowest_set() const {
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      if (blocks_[b] != 0) return b * 64 + static_cast<std::size_t>(std::countr_zero(blocks_[b]));
    return length_;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  friend bool operator==(const ParitySequence&, const ParitySequence&) = default;
  friend auto operator<=>(const ParitySequence&, const ParitySequence&) = default;

 private:
  std::size_t length_;
  std::vector<std::uint64_t> blocks_;
};

/// ψ(f): per weight class, the sign of f restricted to that class.
/// Throws InvalidArgument when f is not conservative.
inline ParitySequence parity_sequence(const Gate& f, const WeightPartition& partition) {
  require(is_conservative(f, partition), "parity sequence requires a conservative gate");
  ParitySequence psi(partition.class_count());
  std::vector<bool> seen(f.degree(), false);
  for (std::size_t x = 0; x < f.degree(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (std::size_t y = x; !seen[y]; y = f.table()[y]) {
      seen[y] = true;
      ++len;
    }
    if (len % 2 == 0) psi.flip(partition.class_of(static_cast<WordIndex>(x)));
  }
  return psi;
}

inline ParitySequence parity_sequence(const Gate& f, const WeightHom& hom) {
  return parity_sequence(f, WeightPartition(hom, f.arity()));
}

/// Parity sequence of f ⊕ id_{n-ℓ}. Independent of the wires f is placed on.
inline ParitySequence applied_parity(const Gate& f, const WeightPartition& partition) {
  require(f.arity() <= partition.arity(), "gate arity exceeds target arity");
  std::vector<std::size_t> layout(f.arity());
  std::iota(layout.begin(), layout.end(), std::size_t{0});
  return parity_sequence(extend(f, partition.arity(), layout), partition);
}

inline ParitySequence applied_parity(const Gate& f, const WeightHom& hom, std::size_t n) {
  return applied_parity(f, WeightPartition(hom, n));
}

/// A Z₂-subspace of parity sequences held as a reduced echelon basis.
class ParitySpan {
 public:
  explicit ParitySpan(std::size_t length) : length_(length) {}

  [[nodiscard]] std::size_t length() const noexcept { return length_; }
  [[nodiscard]] std::size_t rank() const noexcept { return basis_.size(); }
  [[nodiscard]] const std::vector<ParitySequence>& basis() const noexcept { return basis_; }

  /// Number of elements, 2^rank. Saturates for rank ≥ 64.
  [[nodiscard]] std::uint64_t size() const noexcept {
    return rank() >= 64 ? ~std::uint64_t{0} : std::uint64_t{1} << rank();
  }

  [[nodiscard]] ParitySequence reduce(ParitySequence v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (v.get(pivots_[i])) v ^= basis_[i];
    return v;
  }

  [[nodiscard]] bool contains(const ParitySequence& v) const { return reduce(v).is_zero(); }

  /// Adds v; returns true when it enlarged the span.
  bool insert(const ParitySequence& v) {
    require(v.size() == length_, "parity sequence length mismatch");
    ParitySequence r = reduce(v);
    if (r.is_zero()) return false;
    const std::size_t p = r.lowest_set();
    for (auto& b : basis_)
      if (b.get(p)) b ^= r;
    basis_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  /// All 2^rank elements, sorted.
  [[nodiscard]] std::vector<ParitySequence> elements() const {
    require(rank() <= 24, "span too large to enumerate");
    std::vector<ParitySequence> out;
    out.reserve(std::size_t{1} << rank());
    for (std::size_t mask = 0; mask < (std::size_t{1} << rank()); ++mask) {
      ParitySequence v(length_);
      for (std::size_t i = 0; i < rank(); ++i)
        if ((mask >> i) & 1U) v ^= basis_[i];
      out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t length_;
  std::vector<ParitySequence> basis_;
  std::vector<std::size_t> pivots_;
};

/// Z₂-span of the applied parity sequences of `generators` at arity n.
inline ParitySpan parity_span(const std::vector<Gate>& generators, const WeightPartition& partition) {
  ParitySpan span(partition.class_count());
  for (const auto& g : generators) span.insert(applied_parity(g, partition));
  return span;
}

inline ParitySpan parity_span(const std::vector<Gate>& generators, const WeightHom& hom, std::size_t n) {
  return parity_span(generators, WeightPartition(hom, n));
}

/// A conservative gate that the generators provably cannot produce at this
/// arity: its parity sequence lies outside their span.
struct NonmemberWitness {
  Gate gate;
  ParitySequence parity;
  WeightPartition::ClassId class_id;
  WordIndex first;
  WordIndex second;
};

/// Tries, class by class, the swap of the two smallest words of each
/// nontrivial weight class. Returns the first whose parity sequence is not
/// in the generators' span. An empty result does not prove generation.
inline std::optional<NonmemberWitness> find_nonmember_witness(const std::vector<Gate>& generators,
                                                              const WeightPartition& partition) {
  const ParitySpan span = parity_span(generators, partition);
  const auto members = partition.members();
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (members[c].size() < 2) continue;
    ParitySequence indicator(partition.class_count());
    indicator.flip(c);
    if (span.contains(indicator)) continue;
    const WordIndex u = members[c][0], v = members[c][1];
    return NonmemberWitness{Gate::word_swap(partition.alphabet(), partition.arity(), u, v), indicator,
                            static_cast<WeightPartition::ClassId>(c), u, v};
  }
  return std::nullopt;
}

inline std::optional<NonmemberWitness> find_nonmember_witness(const std::vector<Gate>& generators,
                                                              const WeightHom& hom, std::size_t n) {
  return find_nonmember_witness(generators, WeightPartition(hom, n));
}

// JSON form: {"free_dim": d, "moduli": [k...], "letters": [[v...]...]}, or
// the strings "letter_count" / "length" / "even_odd_count".

inline WeightHom hom_from_json(const nlohmann::json& j, const Alphabet& alphabet) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "letter_count") return WeightHom::letter_count(alphabet);
    if (name == "length") return WeightHom::length(alphabet);
    if (name == "even_odd_count") {
      require(alphabet.size() == 4, "even_odd_count is defined on a 4-letter alphabet");
      return WeightHom(alphabet, 2, {}, {{1, 0}, {0, 1}, {1, 0}, {0, 1}}, "even_odd_count");
    }
    throw InvalidArgument("unknown builtin weight hom \"" + name + "\"");
  }
  try {
    auto moduli = j.contains("moduli") ? j.at("moduli").get<std::vector<std::int64_t>>() : std::vector<std::int64_t>{};
    return WeightHom(alphabet, j.at("free_dim").get<std::size_t>(), std::move(moduli),
                     j.at("letters").get<std::vector<WeightHom::Weight>>(),
                     j.contains("name") ? j.at("name").get<std::string>() : "custom");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed weight hom JSON: ") + e.what());
  }
}

inline nlohmann::json hom_to_json(const WeightHom& hom) {
  return nlohmann::json{{"free_dim", hom.free_dim()}, {"moduli", hom.moduli()}, {"letters", hom.letters()}};
}

/// The 4-letter example: even letters weigh (1,0), odd letters (0,1).
inline WeightHom parity_count_hom() {
  return WeightHom(Alphabet(4), 2, {}, {{1, 0}, {0, 1}, {1, 0}, {0, 1}}, "even_odd_count");
}

inline std::string weight_to_string(const WeightHom::Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

/// CSV census: class id, size, representative word, parity bit (when given).
inline std::string partition_csv(const WeightPartition& partition, const ParitySequence* parity = nullptr) {
  std::ostringstream out;
  out << "class_id,size,representative,weight" << (parity ? ",parity" : "") << "\n";
  for (std::size_t c = 0; c < partition.class_count(); ++c) {
    out << c << ',' << partition.class_sizes()[c] << ','
        << word_to_string(partition.representatives()[c], partition.alphabet(), partition.arity()) << ",\""
        << weight_to_string(partition.class_weights()[c]) << '"';
    if (parity) out << ',' << (parity->get(c) ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

}  // namespace revforge
