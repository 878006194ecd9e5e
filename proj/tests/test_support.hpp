#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "revforge/revforge.hpp"

namespace revforge::testing {

using Rng = std::mt19937_64;

inline Gate random_gate(Rng& rng, Alphabet a, std::size_t arity) {
  Table t(word_count(a, arity));
  std::iota(t.begin(), t.end(), WordIndex{0});
  std::shuffle(t.begin(), t.end(), rng);
  return Gate(a, arity, std::move(t));
}

/// A uniformly random permutation of each weight class.
inline Gate random_conservative_gate(Rng& rng, const WeightHom& hom, std::size_t arity) {
  const WeightPartition part(hom, arity);
  Table t(word_count(hom.alphabet(), arity));
  for (const auto& members : part.members()) {
    auto images = members;
    std::shuffle(images.begin(), images.end(), rng);
    for (std::size_t i = 0; i < members.size(); ++i) t[members[i]] = images[i];
  }
  return Gate(hom.alphabet(), arity, std::move(t));
}

inline std::vector<std::size_t> random_layout(Rng& rng, std::size_t arity, std::size_t width) {
  std::vector<std::size_t> wires(width);
  std::iota(wires.begin(), wires.end(), std::size_t{0});
  std::shuffle(wires.begin(), wires.end(), rng);
  wires.resize(arity);
  return wires;
}

inline WirePermutation random_wire_perm(Rng& rng, std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  std::shuffle(m.begin(), m.end(), rng);
  return WirePermutation(std::move(m));
}

/// Order of ⟨generators⟩ by listing every element. Only for tiny groups.
inline std::size_t brute_force_order(const std::vector<Gate>& generators, std::size_t degree,
                                     std::size_t limit = 200000) {
  Table id(degree);
  std::iota(id.begin(), id.end(), WordIndex{0});
  std::set<Table> seen{id};
  std::vector<Table> queue{id};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const auto& g : generators) {
      Table next(degree);
      for (std::size_t x = 0; x < degree; ++x) next[x] = g.table()[queue[k][x]];
      if (seen.insert(next).second) {
        queue.push_back(std::move(next));
        if (queue.size() > limit) return 0;
      }
    }
  }
  return queue.size();
}

inline Gate not_gate() { return Gate::from_cycles(Alphabet(2), 1, {{0, 1}}); }
inline Gate fredkin() { return controlled({1}, wire_swap(Alphabet(2))); }
inline Gate toffoli() { return controlled({1, 1}, not_gate()); }

}  // namespace revforge::testing
