#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "revforge/conservation.hpp"
#include "revforge/word.hpp"

namespace revforge {

enum class GraphKind { G1, G2, G2phi, G3, G4, G4phi };

inline std::string to_string(GraphKind k) {
  switch (k) {
    case GraphKind::G1: return "G1";
    case GraphKind::G2: return "G2";
    case GraphKind::G2phi: return "G2phi";
    case GraphKind::G3: return "G3";
    case GraphKind::G4: return "G4";
    case GraphKind::G4phi: return "G4phi";
  }
  return "?";
}

inline GraphKind graph_kind_from_string(const std::string& s) {
  for (auto k : {GraphKind::G1, GraphKind::G2, GraphKind::G2phi, GraphKind::G3, GraphKind::G4, GraphKind::G4phi})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown graph kind \"" + s + "\"");
}

/// One of the six graphs on A^n.
///
///   G1         {u, v} at Hamming distance one
///   G2         {uabv, ubav}
///   G2phi(m)   {uxv, uyv} for x ≠ y in A^m with φ(x) = φ(y)
///   G3         {uabv, uacv, udbv} for a ≠ d, b ≠ c
///   G4         {uxv, uyv, uzv} for distinct x, y, z in A^3 of equal letter count
///   G4phi(m)   {uxv, uyv, uzv} for distinct x, y, z in A^m of equal φ-weight
class EdgeFamily {
 public:
  EdgeFamily(GraphKind kind, Alphabet alphabet, std::size_t n, std::optional<WeightHom> hom = std::nullopt,
             std::size_t m = 0)
      : kind_(kind), alphabet_(alphabet), n_(n), hom_(std::move(hom)), m_(m) {
    switch (kind_) {
      case GraphKind::G1: window_ = 1; break;
      case GraphKind::G2: window_ = 2; break;
      case GraphKind::G3: window_ = 2; break;
      case GraphKind::G4: window_ = 3; break;
      case GraphKind::G2phi:
      case GraphKind::G4phi:
        require(hom_.has_value(), to_string(kind_) + " needs a weight hom");
        require(m_ >= 1, to_string(kind_) + " needs m >= 1");
        require(hom_->alphabet() == alphabet_, "weight hom alphabet differs from graph alphabet");
        window_ = m_;
        break;
    }
    require(n_ >= window_, to_string(kind_) + " needs n >= " + std::to_string(window_) + ", got n = " +
                               std::to_string(n_));
    if (!hom_) {
      if (kind_ == GraphKind::G1) hom_ = WeightHom::length(alphabet_);
      if (kind_ == GraphKind::G2 || kind_ == GraphKind::G4) hom_ = WeightHom::letter_count(alphabet_);
    }
  }

  [[nodiscard]] GraphKind kind() const noexcept { return kind_; }
  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  /// Length of the rewritten factor: 1, 2, m, 2, 3, m.
  [[nodiscard]] std::size_t window() const noexcept { return window_; }
  [[nodiscard]] const std::optional<WeightHom>& hom() const noexcept { return hom_; }
  [[nodiscard]] std::size_t m() const noexcept { return m_; }
  [[nodiscard]] bool is_hypergraph() const noexcept {
    return kind_ == GraphKind::G3 || kind_ == GraphKind::G4 || kind_ == GraphKind::G4phi;
  }

  [[nodiscard]] std::string name() const {
    if (kind_ == GraphKind::G2phi || kind_ == GraphKind::G4phi) return to_string(kind_) + "(" + std::to_string(m_) + ")";
    return to_string(kind_);
  }

 private:
  GraphKind kind_;
  Alphabet alphabet_;
  std::size_t n_;
  std::optional<WeightHom> hom_;
  std::size_t m_;
  std::size_t window_ = 0;
};

/// Union-find labelling of A^n. Component ids are ordered by smallest member.
class ComponentPartition {
 public:
  ComponentPartition(Alphabet alphabet, std::size_t n, std::vector<std::uint32_t> component_of,
                     std::vector<std::size_t> sizes, std::vector<WordIndex> representatives)
      : alphabet_(alphabet), n_(n), component_of_(std::move(component_of)), sizes_(std::move(sizes)),
        representatives_(std::move(representatives)) {}

  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t count() const noexcept { return sizes_.size(); }
  [[nodiscard]] const std::vector<std::uint32_t>& component_of() const noexcept { return component_of_; }
  [[nodiscard]] std::uint32_t component_of(WordIndex x) const { return component_of_.at(x); }
  [[nodiscard]] const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
  [[nodiscard]] const std::vector<WordIndex>& representatives() const noexcept { return representatives_; }

  /// True iff every component lies inside one part of `other`.
  [[nodiscard]] bool refines(const ComponentPartition& other) const {
    require(other.component_of_.size() == component_of_.size(), "partitions of different sets");
    std::vector<std::int64_t> image(count(), -1);
    for (std::size_t x = 0; x < component_of_.size(); ++x) {
      auto& slot = image[component_of_[x]];
      if (slot < 0) slot = other.component_of_[x];
      else if (slot != other.component_of_[x]) return false;
    }
    return true;
  }

 private:
  Alphabet alphabet_;
  std::size_t n_;
  std::vector<std::uint32_t> component_of_;
  std::vector<std::size_t> sizes_;
  std::vector<WordIndex> representatives_;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::uint32_t{0}); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Keeps the smaller root, so every root is its component's smallest member.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

  ComponentPartition partition(Alphabet alphabet, std::size_t n) {
    std::vector<std::uint32_t> label(parent_.size());
    std::vector<std::size_t> sizes;
    std::vector<WordIndex> reps;
    std::vector<std::uint32_t> id_of_root(parent_.size(), UINT32_MAX);
    for (std::uint32_t x = 0; x < parent_.size(); ++x) {
      const auto r = find(x);
      if (id_of_root[r] == UINT32_MAX) {
        id_of_root[r] = static_cast<std::uint32_t>(sizes.size());
        sizes.push_back(0);
        reps.push_back(x);
      }
      label[x] = id_of_root[r];
      ++sizes[label[x]];
    }
    return ComponentPartition(alphabet, n, std::move(label), std::move(sizes), std::move(reps));
  }

 private:
  std::vector<std::uint32_t> parent_;
};

// Words of A^m grouped by φ-weight, buckets in order of smallest member.
inline std::vector<std::vector<WordIndex>> weight_buckets(const WeightHom& hom, std::size_t m) {
  return WeightPartition(hom, m).members();
}

// Calls visit(base, stride) for every placement of a length-`window` factor in
// A^n: base is the word with the factor zeroed, and the factor value f sits at
// base + f * stride. Only factors with contiguous positions [p, p + window).
template <class Visit>
void for_each_context(const Alphabet& a, std::size_t n, std::size_t window, Visit&& visit) {
  const auto place = place_values(a, n);
  for (std::size_t p = 0; p + window <= n; ++p) {
    const std::size_t stride = place[p + window - 1];
    const std::size_t below = stride;
    const std::size_t above = word_count(a, p);
    const std::size_t span = word_count(a, n - p);
    for (std::size_t hi = 0; hi < above; ++hi)
      for (std::size_t lo = 0; lo < below; ++lo) visit(static_cast<WordIndex>(hi * span + lo), stride);
  }
}

}  // namespace detail

/// Exact connected components, by streaming unions over every window
/// position and context; no edge list is stored.
inline ComponentPartition components(const EdgeFamily& family, std::size_t vertex_cap = std::size_t{1} << 26) {
  const Alphabet& a = family.alphabet();
  const std::size_t n = family.n();
  const std::size_t vertices = word_count(a, n);
  if (vertices > vertex_cap) {
    throw ResourceCapExceeded("A^n has " + std::to_string(vertices) + " words, above the cap of " +
                              std::to_string(vertex_cap));
  }
  detail::UnionFind uf(vertices);
  const std::size_t k = a.size();

  if (family.kind() == GraphKind::G3) {
    if (k >= 2) {
      // Any two words at Hamming distance one in a factor of length two share a hyperedge.
      detail::for_each_context(a, n, 2, [&](WordIndex base, std::size_t stride) {
        for (std::size_t x = 0; x < k; ++x)
          for (std::size_t y = 0; y < k; ++y) {
            const auto w = static_cast<WordIndex>(base + (x * k + y) * stride);
            if (y + 1 < k) uf.unite(w, static_cast<WordIndex>(w + stride));
            if (x + 1 < k) uf.unite(w, static_cast<WordIndex>(w + k * stride));
          }
      });
    }
    return uf.partition(a, n);
  }

  const std::size_t min_bucket = family.is_hypergraph() ? 3 : 2;
  std::vector<std::vector<WordIndex>> buckets;
  for (auto& b : detail::weight_buckets(*family.hom(), family.window()))
    if (b.size() >= min_bucket) buckets.push_back(std::move(b));
  if (buckets.empty()) return uf.partition(a, n);

  detail::for_each_context(a, n, family.window(), [&](WordIndex base, std::size_t stride) {
    for (const auto& b : buckets)
      for (std::size_t i = 1; i < b.size(); ++i)
        uf.unite(static_cast<WordIndex>(base + b[0] * stride), static_cast<WordIndex>(base + b[i] * stride));
  });
  return uf.partition(a, n);
}

/// Every edge (two words) or hyperedge (three words) of the family, each
/// listed with its words in increasing order. Intended for small n.
inline void for_each_hyperedge(const EdgeFamily& family, const std::function<void(std::span<const WordIndex>)>& visit) {
  const Alphabet& a = family.alphabet();
  const std::size_t k = a.size();
  const std::size_t n = family.n();

  if (family.kind() == GraphKind::G3) {
    detail::for_each_context(a, n, 2, [&](WordIndex base, std::size_t stride) {
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y)
          for (std::size_t c = 0; c < k; ++c)
            for (std::size_t d = 0; d < k; ++d) {
              if (d == x || c == y) continue;
              std::array<WordIndex, 3> e{static_cast<WordIndex>(base + (x * k + y) * stride),
                                         static_cast<WordIndex>(base + (x * k + c) * stride),
                                         static_cast<WordIndex>(base + (d * k + y) * stride)};
              std::sort(e.begin(), e.end());
              visit(e);
            }
    });
    return;
  }

  const auto buckets = detail::weight_buckets(*family.hom(), family.window());
  detail::for_each_context(a, n, family.window(), [&](WordIndex base, std::size_t stride) {
    for (const auto& b : buckets) {
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
          if (!family.is_hypergraph()) {
            std::array<WordIndex, 2> e{static_cast<WordIndex>(base + b[i] * stride),
                                       static_cast<WordIndex>(base + b[j] * stride)};
            visit(e);
            continue;
          }
          for (std::size_t l = j + 1; l < b.size(); ++l) {
            std::array<WordIndex, 3> e{static_cast<WordIndex>(base + b[i] * stride),
                                       static_cast<WordIndex>(base + b[j] * stride),
                                       static_cast<WordIndex>(base + b[l] * stride)};
            visit(e);
          }
        }
    }
  });
}

/// True iff the components are exactly the φ-weight classes of A^n.
inline bool matches_weight_classes(const ComponentPartition& components, const WeightHom& hom) {
  const WeightPartition classes(hom, components.n());
  // Both labellings order their parts by smallest member, so equal
  // partitions have equal label arrays.
  return classes.class_of() == components.component_of();
}

inline bool matches_weight_classes(const EdgeFamily& family, const WeightHom& hom) {
  return matches_weight_classes(components(family), hom);
}

struct MinimalMReport {
  std::size_t m = 0;
  /// (m, n) pairs checked and found not to match, for m below the answer.
  std::vector<std::pair<std::size_t, std::size_t>> failures;
};

/// Smallest m such that G2phi(m) or G4phi(m) has the weight classes as
/// components for every n in [n_min, n_max] with n ≥ m. At least one such n
/// must exist for an m to count.
inline MinimalMReport minimal_m(const WeightHom& hom, GraphKind kind, std::size_t n_min, std::size_t n_max,
                                std::size_t m_cap = 8) {
  require(kind == GraphKind::G2phi || kind == GraphKind::G4phi, "minimal_m works on G2phi or G4phi");
  require(n_min <= n_max, "empty arity range");
  MinimalMReport report;
  for (std::size_t m = 1; m <= m_cap && m <= n_max; ++m) {
    bool ok = true;
    for (std::size_t n = std::max(n_min, m); n <= n_max; ++n) {
      if (!matches_weight_classes(EdgeFamily(kind, hom.alphabet(), n, hom, m), hom)) {
        ok = false;
        report.failures.emplace_back(m, n);
      }
    }
    if (ok) {
      report.m = m;
      return report;
    }
  }
  throw InvalidArgument("no m up to " + std::to_string(std::min(m_cap, n_max)) + " makes " + to_string(kind) +
                        " match the weight classes on n in [" + std::to_string(n_min) + ", " + std::to_string(n_max) +
                        "]");
}

/// CSV census: component id, size, representative word, weight of the representative.
inline std::string component_csv(const ComponentPartition& p, const WeightHom& hom) {
  std::ostringstream out;
  out << "component_id,size,representative,weight\n";
  for (std::size_t c = 0; c < p.count(); ++c) {
    const auto rep = p.representatives()[c];
    out << c << ',' << p.sizes()[c] << ',' << word_to_string(rep, p.alphabet(), p.n()) << ",\""
        << weight_to_string(hom.weight(rep, p.n())) << "\"\n";
  }
  return out.str();
}

}  // namespace revforge
