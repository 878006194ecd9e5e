#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "revforge/circuit.hpp"
#include "revforge/connectivity.hpp"
#include "revforge/conservation.hpp"
#include "revforge/groups.hpp"
#include "revforge/synthesis.hpp"

namespace revforge {

/// A named list of base permutations P. Gates are deduplicated and sorted by
/// table.
struct GateFamily {
  std::string name;
  Alphabet alphabet;
  std::vector<Gate> gates;
};

namespace detail {

inline void canonicalize(std::vector<Gate>& gates) {
  std::sort(gates.begin(), gates.end(), [](const Gate& a, const Gate& b) {
    if (a.arity() != b.arity()) return a.arity() < b.arity();
    return a.table() < b.table();
  });
  gates.erase(std::unique(gates.begin(), gates.end()), gates.end());
}

}  // namespace detail

/// Both 3-cycles (x y z), (x z y) for every 3-subset of `points`.
inline std::vector<Gate> three_cycles(const std::vector<WordIndex>& points, const Alphabet& alphabet, std::size_t arity) {
  std::vector<Gate> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      for (std::size_t l = j + 1; l < points.size(); ++l) {
        out.push_back(Gate::from_cycles(alphabet, arity, {{points[i], points[j], points[l]}}));
        out.push_back(Gate::from_cycles(alphabet, arity, {{points[i], points[l], points[j]}}));
      }
  return out;
}

/// All 3-word-cycles inside the φ-weight classes of A^arity.
inline std::vector<Gate> class_three_cycles(const WeightHom& hom, std::size_t arity) {
  std::vector<Gate> out;
  for (const auto& members : WeightPartition(hom, arity).members()) {
    auto c = three_cycles(members, hom.alphabet(), arity);
    out.insert(out.end(), c.begin(), c.end());
  }
  detail::canonicalize(out);
  return out;
}

/// All word swaps inside the φ-weight classes of A^arity.
inline std::vector<Gate> class_swaps(const WeightHom& hom, std::size_t arity) {
  std::vector<Gate> out;
  for (const auto& members : WeightPartition(hom, arity).members())
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        out.push_back(Gate::word_swap(hom.alphabet(), arity, members[i], members[j]));
  detail::canonicalize(out);
  return out;
}

/// The base families:
///   P1        symbol swaps (a b)
///   P2        (ab ba) for a ≠ b
///   P2phi     word swaps inside φ-classes of A^m
///   P3        (ab ac db) for a ≠ d, b ≠ c
///   P4        3-cycles inside letter-count classes of A^3
///   P4phi     3-cycles inside φ-classes of A^m
inline GateFamily family(const std::string& name, const Alphabet& alphabet, const std::optional<WeightHom>& hom = {},
                         std::size_t m = 0) {
  const std::size_t k = alphabet.size();
  GateFamily f{name, alphabet, {}};
  if (name == "P1") {
    for (WordIndex a = 0; a < k; ++a)
      for (WordIndex b = a + 1; b < k; ++b) f.gates.push_back(Gate::word_swap(alphabet, 1, a, b));
  } else if (name == "P2") {
    for (WordIndex a = 0; a < k; ++a)
      for (WordIndex b = a + 1; b < k; ++b)
        f.gates.push_back(Gate::word_swap(alphabet, 2, static_cast<WordIndex>(a * k + b), static_cast<WordIndex>(b * k + a)));
  } else if (name == "P3") {
    for (WordIndex a = 0; a < k; ++a)
      for (WordIndex b = 0; b < k; ++b)
        for (WordIndex c = 0; c < k; ++c)
          for (WordIndex d = 0; d < k; ++d) {
            if (a == d || b == c) continue;
            f.gates.push_back(Gate::from_cycles(
                alphabet, 2,
                {{static_cast<WordIndex>(a * k + b), static_cast<WordIndex>(a * k + c), static_cast<WordIndex>(d * k + b)}}));
          }
  } else if (name == "P4") {
    f.gates = class_three_cycles(WeightHom::letter_count(alphabet), 3);
  } else if (name == "P2phi" || name == "P4phi") {
    require(hom.has_value(), name + " needs a weight hom");
    require(m >= 1, name + " needs m >= 1");
    require(hom->alphabet() == alphabet, "weight hom alphabet differs from family alphabet");
    f.gates = name == "P2phi" ? class_swaps(*hom, m) : class_three_cycles(*hom, m);
  } else {
    throw InvalidArgument("unknown family \"" + name + "\" (expected P1, P2, P2phi, P3, P4, P4phi)");
  }
  detail::canonicalize(f.gates);
  return f;
}

inline GateFamily custom_family(std::vector<Gate> gates, const std::string& name = "custom") {
  require(!gates.empty(), "custom family needs at least one gate");
  const Alphabet a = gates.front().alphabet();
  for (const auto& g : gates) require(g.alphabet() == a, "custom family mixes alphabets");
  detail::canonicalize(gates);
  return GateFamily{name, a, std::move(gates)};
}

/// True when rewiring any member by any wire permutation of its own arity
/// stays inside the set.
inline bool closed_under_rewiring(const std::vector<Gate>& gates) {
  std::set<Table> tables;
  for (const auto& g : gates) tables.insert(g.table());
  for (const auto& g : gates) {
    std::vector<std::size_t> m(g.arity());
    std::iota(m.begin(), m.end(), std::size_t{0});
    while (std::next_permutation(m.begin(), m.end()))
      if (!tables.count(rewire(g, WirePermutation(m)).table())) return false;
  }
  return true;
}

/// A member of CP(k, P) on `width` wires, as handed to enumeration callbacks.
struct ControlledView {
  std::span<const Symbol> control_word;
  const Gate& perm;
  std::span<const std::size_t> layout;  // controls first, then targets
  std::span<const WordIndex> table;     // the extension to the full width

  [[nodiscard]] PlacedGate placed() const {
    return PlacedGate(std::vector<Symbol>(control_word.begin(), control_word.end()), perm,
                      std::vector<std::size_t>(layout.begin(), layout.end()));
  }
};

namespace detail {

// Table of C_w[p] with controls on `controls` and p's inputs on `targets`.
inline void controlled_table(const Gate& p, std::span<const Symbol> w, std::span<const std::size_t> controls,
                             std::span<const std::size_t> targets, std::size_t width, Table& t,
                             std::vector<std::size_t>& scratch_rest, std::vector<std::size_t>& scratch_contrib) {
  const Alphabet& a = p.alphabet();
  const std::size_t k = a.size();
  const auto place = place_values(a, width);
  t.resize(word_count(a, width));
  std::iota(t.begin(), t.end(), WordIndex{0});

  std::size_t base = 0;
  std::vector<bool> used(width, false);
  for (std::size_t i = 0; i < controls.size(); ++i) {
    base += w[i] * place[controls[i]];
    used[controls[i]] = true;
  }
  for (auto tw : targets) used[tw] = true;

  scratch_contrib.assign(p.degree(), 0);
  for (std::size_t y = 0; y < p.degree(); ++y) {
    std::size_t rest = y, v = 0;
    for (std::size_t i = targets.size(); i-- > 0;) {
      v += (rest % k) * place[targets[i]];
      rest /= k;
    }
    scratch_contrib[y] = v;
  }
  scratch_rest.assign(1, 0);
  for (std::size_t wire = 0; wire < width; ++wire) {
    if (used[wire]) continue;
    const std::size_t old = scratch_rest.size();
    for (std::size_t s = 1; s < k; ++s)
      for (std::size_t i = 0; i < old; ++i) scratch_rest.push_back(scratch_rest[i] + s * place[wire]);
  }
  for (auto r : scratch_rest) {
    const std::size_t offset = base + r;
    for (std::size_t y = 0; y < p.degree(); ++y)
      t[offset + scratch_contrib[y]] = static_cast<WordIndex>(offset + scratch_contrib[p.table()[y]]);
  }
}

// Calls visit(chosen) for every increasing k-subset of `pool`.
inline void for_each_subset(const std::vector<std::size_t>& pool, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k > pool.size()) return;
  std::vector<std::size_t> chosen(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) chosen[i] = pool[idx[i]];
    visit(chosen);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Calls visit(arrangement) for every ordered selection of k elements of pool.
inline void for_each_arrangement(const std::vector<std::size_t>& pool, std::size_t k,
                                 const std::function<void(const std::vector<std::size_t>&)>& visit) {
  for_each_subset(pool, k, [&](const std::vector<std::size_t>& subset) {
    auto perm = subset;
    do visit(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
  });
}

}  // namespace detail

/// Streams CP(k, P) placed on `width` wires. Controls always sit on
/// increasing wires (every control word is enumerated, so other orders add
/// nothing), and targets too when P is closed under rewiring. Members can
/// still repeat; controlled_family removes repeats.
/// `symmetric` overrides the rewiring-closure test, for callers that stream a
/// closed family in pieces.
inline void for_each_controlled(const std::vector<Gate>& base, std::size_t k, std::size_t width,
                                const std::function<void(const ControlledView&)>& visit,
                                std::optional<bool> symmetric_hint = std::nullopt) {
  if (base.empty()) return;
  const Alphabet a = base.front().alphabet();
  std::map<std::size_t, std::vector<const Gate*>> by_arity;
  for (const auto& g : base) {
    require(g.alphabet() == a, "base family mixes alphabets");
    by_arity[g.arity()].push_back(&g);
  }
  Table table;
  std::vector<std::size_t> rest, contrib;
  std::vector<std::size_t> wires(width);
  std::iota(wires.begin(), wires.end(), std::size_t{0});
  const std::size_t words = word_count(a, k);
  std::vector<Symbol> w(k);
  std::vector<std::size_t> layout;

  for (const auto& [ell, gates] : by_arity) {
    require(k + ell <= width, "width " + std::to_string(width) + " too small for " + std::to_string(k) +
                                  " controls on arity-" + std::to_string(ell) + " gates");
    std::vector<Gate> group;
    for (auto* g : gates) group.push_back(*g);
    const bool symmetric = symmetric_hint.value_or(closed_under_rewiring(group));
    detail::for_each_subset(wires, k, [&](const std::vector<std::size_t>& controls) {
      std::vector<std::size_t> free;
      for (auto x : wires)
        if (std::find(controls.begin(), controls.end(), x) == controls.end()) free.push_back(x);
      auto with_targets = [&](const std::vector<std::size_t>& targets) {
        layout = controls;
        layout.insert(layout.end(), targets.begin(), targets.end());
        for (std::size_t cw = 0; cw < words; ++cw) {
          w = decode_word(static_cast<WordIndex>(cw), a, k);
          for (const Gate* p : gates) {
            detail::controlled_table(*p, w, controls, targets, width, table, rest, contrib);
            visit(ControlledView{w, *p, layout, table});
          }
        }
      };
      if (symmetric) detail::for_each_subset(free, ell, with_targets);
      else detail::for_each_arrangement(free, ell, with_targets);
    });
  }
}

/// CP(k, P) on `width` wires, deduplicated by table and sorted.
inline std::vector<Gate> controlled_family(const std::vector<Gate>& base, std::size_t k, std::size_t width) {
  std::vector<Gate> out;
  std::set<Table> seen;
  for_each_controlled(base, k, width, [&](const ControlledView& v) {
    Table t(v.table.begin(), v.table.end());
    if (seen.insert(t).second) out.emplace_back(base.front().alphabet(), width, std::move(t), Gate::Unchecked{});
  });
  detail::canonicalize(out);
  return out;
}

/// Same members as placed gates, one per distinct table, in enumeration order.
inline std::vector<PlacedGate> controlled_placements(const std::vector<Gate>& base, std::size_t k, std::size_t width) {
  std::vector<PlacedGate> out;
  std::set<Table> seen;
  for_each_controlled(base, k, width, [&](const ControlledView& v) {
    if (seen.insert(Table(v.table.begin(), v.table.end())).second) out.push_back(v.placed());
  });
  return out;
}

// ---------------------------------------------------------------------------
// Constructive decompositions

/// Eight 1-controlled 3-word-cycles computing C_w[(x y z)] for |w| = 2, on
/// 2 + n wires. With s, t the two smallest words of X outside {x, y, z}, the
/// half circuit g applies (s t x), (x s y) controlled by w[0] on wire 0, then
/// (s t y), (y s z) controlled by w[1] on wire 1; the result is g followed by g.
inline Circuit lower_control(std::span<const Symbol> w, WordIndex x, WordIndex y, WordIndex z,
                             const std::vector<WordIndex>& X, const Alphabet& alphabet, std::size_t n) {
  require(w.size() == 2, "lower_control needs a control word of length 2");
  require(x != y && y != z && x != z, "x, y, z must be distinct");
  std::set<WordIndex> xs(X.begin(), X.end());
  require(xs.size() >= 5, "the class must contain at least five words");
  for (auto v : {x, y, z}) require(xs.count(v), "x, y, z must lie in the class");
  const std::size_t degree = word_count(alphabet, n);
  for (auto v : xs) require(v < degree, "class word outside A^n");
  std::vector<WordIndex> spare;
  for (auto v : xs)
    if (v != x && v != y && v != z) spare.push_back(v);
  const WordIndex s = spare[0], t = spare[1];

  std::vector<std::size_t> on_first{0}, on_second{1};
  for (std::size_t i = 0; i < n; ++i) {
    on_first.push_back(2 + i);
    on_second.push_back(2 + i);
  }
  auto cyc = [&](WordIndex p, WordIndex q, WordIndex r) { return Gate::from_cycles(alphabet, n, {{p, q, r}}); };
  const std::vector<PlacedGate> half{
      PlacedGate({w[0]}, cyc(s, t, x), on_first),
      PlacedGate({w[0]}, cyc(x, s, y), on_first),
      PlacedGate({w[1]}, cyc(s, t, y), on_second),
      PlacedGate({w[1]}, cyc(y, s, z), on_second),
  };
  Circuit c(alphabet, n + 2);
  for (int rep = 0; rep < 2; ++rep)
    for (const auto& g : half) c.push_back(g);
  return c;
}

/// Prefixes every control word with u, carried on |u| fresh wires placed
/// before the existing ones. If c denotes C_v[p], the result denotes C_uv[p].
inline Circuit lift_control(const Circuit& c, std::span<const Symbol> u) {
  const std::size_t shift = u.size();
  for (Symbol s : u) require(c.alphabet().contains(s), "lift word symbol outside alphabet");
  Circuit out(c.alphabet(), c.width() + shift);
  for (const auto& g : c.gates()) {
    require(!g.control_word().empty(), "lift_control needs controlled gates; found a gate without controls");
    std::vector<Symbol> cw(u.begin(), u.end());
    cw.insert(cw.end(), g.control_word().begin(), g.control_word().end());
    std::vector<std::size_t> layout(shift);
    std::iota(layout.begin(), layout.end(), std::size_t{0});
    for (std::size_t l : g.layout()) layout.push_back(l + shift);
    out.push_back(PlacedGate(std::move(cw), g.perm(), std::move(layout)));
  }
  return out;
}

inline Circuit lift_control(const Circuit& c, std::initializer_list<Symbol> u) {
  return lift_control(c, std::span<const Symbol>(u.begin(), u.size()));
}

/// Four 2-controlled symbol swaps on four wires computing the ab-controlled
/// 3-cycle (xs xt ys). The swaps come from a shortest-circuit search over
/// every 2-controlled swap placement and are memoized per argument tuple.
inline Circuit toffoli_style_decomp(const Alphabet& alphabet, Symbol a, Symbol b, Symbol x, Symbol s, Symbol t, Symbol y) {
  const Gate target = fig2_target(alphabet, a, b, x, s, t, y);
  using Key = std::tuple<std::size_t, Symbol, Symbol, Symbol, Symbol, Symbol, Symbol>;
  static std::mutex mutex;
  static std::map<Key, Circuit> cache;
  const Key key{alphabet.size(), a, b, x, s, t, y};
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  SearchProblem problem{target, two_controlled_swaps(alphabet)};
  problem.max_depth = 4;
  const auto r = synthesize(problem);
  if (!r.found) throw Error("no four-swap decomposition found for this symbol choice");
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, *r.circuit).first->second;
}

// ---------------------------------------------------------------------------
// Finite generating sets

enum class TheoremName { AltFiniteGen, FullFiniteGen_odd, AltCons, AltPhiCons };

inline std::string to_string(TheoremName t) {
  switch (t) {
    case TheoremName::AltFiniteGen: return "AltFiniteGen";
    case TheoremName::FullFiniteGen_odd: return "FullFiniteGen_odd";
    case TheoremName::AltCons: return "AltCons";
    case TheoremName::AltPhiCons: return "AltPhiCons";
  }
  return "?";
}

inline TheoremName theorem_from_string(const std::string& s) {
  for (auto t : {TheoremName::AltFiniteGen, TheoremName::FullFiniteGen_odd, TheoremName::AltCons, TheoremName::AltPhiCons})
    if (to_string(t) == s) return t;
  throw InvalidArgument("unknown theorem \"" + s + "\"");
}

/// CP(controls, base): one block of a finite generating set. When
/// `cycle_hom` is set the base is every 3-cycle inside the φ-classes of
/// A^cycle_arity, streamed rather than stored.
struct GeneratorBlock {
  std::string label;
  std::vector<Gate> base;
  std::size_t controls = 0;
  std::optional<WeightHom> cycle_hom;
  std::size_t cycle_arity = 0;

  [[nodiscard]] std::size_t arity() const { return controls + (cycle_hom ? cycle_arity : base.front().arity()); }

  /// Streams the members placed on `width` wires.
  void for_each(std::size_t width, const std::function<void(const ControlledView&)>& visit) const {
    if (!cycle_hom) {
      for_each_controlled(base, controls, width, visit);
      return;
    }
    const auto& a = cycle_hom->alphabet();
    for (const auto& X : WeightPartition(*cycle_hom, cycle_arity).members())
      for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j)
          for (std::size_t l = j + 1; l < X.size(); ++l) {
            const std::vector<Gate> pair{Gate::from_cycles(a, cycle_arity, {{X[i], X[j], X[l]}}),
                                         Gate::from_cycles(a, cycle_arity, {{X[i], X[l], X[j]}})};
            for_each_controlled(pair, controls, width, visit, true);
          }
  }
};

/// A finite generating set split into the part needed only at small arities
/// (`low`) and the 1-controlled cycles that carry every larger arity (`high`).
struct TheoremGenerators {
  TheoremName name{};
  Alphabet alphabet{1};
  TargetKind target{};
  std::optional<WeightHom> hom;
  std::size_t m = 0;   // factor length of the φ-family (φ kinds only)
  std::size_t n0 = 0;  // arity of the cycled words in `high`
  std::vector<GeneratorBlock> low;
  std::vector<GeneratorBlock> high;
};

/// The generating sets:
///   AltFiniteGen       CP(1, 3-cycles of A^3)                        → Alt
///   FullFiniteGen_odd  the same plus the word swap (0000 1000)       → Sym (|A| odd)
///   AltPhiCons         CP(ℓ - m, P4phi(m)) for m ≤ ℓ ≤ n0, and
///                      CP(1, 3-cycles inside φ-classes of A^n0)      → alternating φ-conservative
///                      with m the minimal G4phi window and n0 = max(5, m + 1)
///   AltCons            AltPhiCons for letter count
inline TheoremGenerators theorem_generators(TheoremName name, const Alphabet& alphabet,
                                            const std::optional<WeightHom>& hom = {}) {
  require(alphabet.size() >= 2, "the theorems need |A| >= 2");
  TheoremGenerators t;
  t.name = name;
  t.alphabet = alphabet;
  switch (name) {
    case TheoremName::AltFiniteGen:
    case TheoremName::FullFiniteGen_odd: {
      std::vector<WordIndex> all(word_count(alphabet, 3));
      std::iota(all.begin(), all.end(), WordIndex{0});
      auto cycles3 = three_cycles(all, alphabet, 3);
      detail::canonicalize(cycles3);
      t.high.push_back({"CP(1, 3-cycles of A^3)", std::move(cycles3), 1, std::nullopt, 0});
      t.n0 = 3;
      t.target = TargetKind::alternating;
      if (name == TheoremName::FullFiniteGen_odd) {
        require(alphabet.size() % 2 == 1, "FullFiniteGen_odd needs an odd alphabet");
        const auto swap = Gate::word_swap(alphabet, 4, 0, encode_word(std::vector<Symbol>{1, 0, 0, 0}, alphabet));
        t.low.push_back({"(0000 1000)", {swap}, 0, std::nullopt, 0});
        t.target = TargetKind::full;
      }
      return t;
    }
    case TheoremName::AltCons:
    case TheoremName::AltPhiCons: {
      t.hom = name == TheoremName::AltCons ? WeightHom::letter_count(alphabet) : hom.value_or(WeightHom::letter_count(alphabet));
      if (name == TheoremName::AltPhiCons) require(hom.has_value(), "AltPhiCons needs a weight hom");
      require(t.hom->alphabet() == alphabet, "weight hom alphabet differs");
      t.m = minimal_m(*t.hom, GraphKind::G4phi, 1, 6).m;
      t.n0 = std::max<std::size_t>(5, t.m + 1);
      t.target = TargetKind::alternating_conservative;
      const auto p4 = class_three_cycles(*t.hom, t.m);
      for (std::size_t ell = t.m; ell <= t.n0; ++ell)
        t.low.push_back(
            {"CP(" + std::to_string(ell - t.m) + ", P4phi(" + std::to_string(t.m) + "))", p4, ell - t.m, std::nullopt, 0});
      t.high.push_back({"CP(1, 3-cycles in classes of A^" + std::to_string(t.n0) + ")", {}, 1, t.hom, t.n0});
      return t;
    }
  }
  return t;
}

/// Streams every block member of arity at most `width`, placed on `width` wires.
inline GeneratorSource block_source(std::vector<GeneratorBlock> blocks, std::size_t width) {
  return [blocks = std::move(blocks), width](const std::function<void(std::span<const WordIndex>)>& visit) {
    for (const auto& b : blocks) {
      if ((!b.cycle_hom && b.base.empty()) || b.arity() > width) continue;
      b.for_each(width, [&](const ControlledView& v) { visit(v.table); });
    }
  };
}

struct TheoremReport {
  TheoremName name{};
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t n0 = 0;
  std::vector<std::string> blocks;  // blocks used at this arity
  GenerationReport report;
  /// φ-conservative theorems at n = n0 + 1: the 1-controlled cycles alone.
  std::optional<GenerationReport> lifted_only;

  [[nodiscard]] bool passed() const { return report.verdict && (!lifted_only || lifted_only->verdict); }

  [[nodiscard]] nlohmann::json to_json(bool with_timing = true) const {
    nlohmann::json j{{"theorem", to_string(name)}, {"n", n}, {"blocks", blocks}, {"report", report.to_json(with_timing)}};
    if (m) j["m"] = m;
    j["n0"] = n0;
    if (lifted_only) j["lifted_only"] = lifted_only->to_json(with_timing);
    j["verdict"] = passed() ? "yes" : "no";
    return j;
  }
};

/// Builds the theorem's generating set at arity n and checks that it
/// generates the target's n-ary layer.
inline TheoremReport reproduce_theorem(TheoremName name, const Alphabet& alphabet, std::size_t n,
                                       const std::optional<WeightHom>& hom = {}, const GenerationOptions& options = {}) {
  const auto gens = theorem_generators(name, alphabet, hom);
  std::vector<GeneratorBlock> used;
  TheoremReport r;
  r.name = name;
  r.n = n;
  r.m = gens.m;
  r.n0 = gens.n0;
  for (const auto* part : {&gens.low, &gens.high})
    for (const auto& b : *part)
      if (b.arity() <= n) {
        used.push_back(b);
        r.blocks.push_back(b.label);
      }
  require(!used.empty(), to_string(name) + " has no generators of arity <= " + std::to_string(n));
  const TargetGroup target(gens.target, alphabet, n, gens.hom);
  r.report = generates_target(block_source(used, n), target, options);
  if (gens.hom && n == gens.n0 + 1) r.lifted_only = generates_target(block_source(gens.high, n), target, options);
  return r;
}

}  // namespace revforge
