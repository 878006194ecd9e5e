#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "revforge/conservation.hpp"
#include "revforge/gate.hpp"

namespace revforge {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Smallest generator-closed set of points containing `point`, sorted.
inline std::vector<WordIndex> orbit(const std::vector<Gate>& generators, WordIndex point) {
  std::size_t degree = generators.empty() ? std::size_t{point} + 1 : generators.front().degree();
  for (const auto& g : generators) require(g.degree() == degree, "generators differ in degree");
  require(point < degree, "point outside the permutation domain");
  std::vector<bool> in(degree, false);
  std::vector<WordIndex> out{point};
  in[point] = true;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& g : generators) {
      const WordIndex q = g.table()[out[k]];
      if (!in[q]) {
        in[q] = true;
        out.push_back(q);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct GroupOptions {
  /// Largest permutation degree accepted.
  std::size_t degree_cap = 4096;
  /// A known upper bound on the group order (the order of a group already
  /// shown to contain every generator). Reaching it certifies the chain.
  std::optional<BigInt> order_bound;
  std::uint64_t seed = 0x7265766667ULL;
  /// Consecutive random elements that must sift trivially before the
  /// randomized phase stops.
  std::size_t random_stop = 40;
};

/// A permutation group on {0, ..., degree-1} held as a base and strong
/// generating set. Construction always finishes with a complete stabilizer
/// chain: either its order meets `order_bound`, or every Schreier generator
/// has been sifted. Base points are chosen greedily as the smallest point
/// moved by the element that extends the chain, and random elements come from
/// a fixed-seed generator, so results are reproducible for a fixed generator
/// order.
class PermGroup {
 public:
  using Point = WordIndex;
  using Perm = std::vector<Point>;

  explicit PermGroup(std::size_t degree, GroupOptions options = {}) : degree_(degree), options_(std::move(options)) {
    if (degree_ > options_.degree_cap) {
      throw ResourceCapExceeded("permutation degree " + std::to_string(degree_) + " exceeds the cap of " +
                                std::to_string(options_.degree_cap));
    }
    if (options_.order_bound) {
      // log2 of a big integer via its bit length and leading digits.
      const BigInt& b = *options_.order_bound;
      const std::size_t bits = b == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(b)) + 1;
      const std::size_t shift = bits > 53 ? bits - 53 : 0;
      const double lead = static_cast<BigInt>(b >> shift).convert_to<double>();
      bound_log2_ = std::log2(lead) + static_cast<double>(shift);
    }
  }

  static PermGroup build(const std::vector<Gate>& generators, GroupOptions options = {}) {
    const std::size_t degree = generators.empty() ? 1 : generators.front().degree();
    PermGroup g(degree, std::move(options));
    std::vector<Perm> perms;
    perms.reserve(generators.size());
    for (const auto& gen : generators) {
      require(gen.degree() == degree, "generators differ in degree");
      perms.push_back(gen.table());
    }
    g.add_generators(perms);
    return g;
  }

  /// Adds generators and brings the chain back to completion. With
  /// `certify` false only the randomized phase runs; the chain then gives a
  /// lower bound on the order until certify() is called.
  void add_generators(const std::vector<Perm>& perms, bool certify_now = true) {
    bool changed = false;
    for (const auto& p : perms) {
      require(p.size() == degree_, "generator degree mismatch");
      generator_count_++;
      Perm r = p;
      const std::size_t level = sift(r, 0);
      if (!is_identity(r)) {
        add_strong(std::move(r), level);
        changed = true;
      }
    }
    if (changed) {
      certified_ = false;
      randomized_completion();
    }
    if (certify_now) certify();
  }

  /// Makes the chain exact: free when the order bound is met, otherwise every
  /// Schreier generator is sifted.
  void certify() {
    if (certified_) return;
    if (bound_reached()) {
      certified_by_bound_ = true;
    } else {
      certified_by_bound_ = false;
      schreier_completion();
    }
    certified_ = true;
  }

  /// True once the chain is known to be complete.
  [[nodiscard]] bool certified() const noexcept { return certified_ || strong_.empty(); }

  /// True when the chain's order equals the order bound.
  [[nodiscard]] bool at_bound() const { return bound_reached(); }

  [[nodiscard]] std::size_t degree() const noexcept { return degree_; }
  [[nodiscard]] std::size_t base_length() const noexcept { return levels_.size(); }
  [[nodiscard]] std::size_t strong_generator_count() const noexcept { return strong_.size(); }
  [[nodiscard]] std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base_point);
    return b;
  }
  [[nodiscard]] std::vector<std::size_t> fundamental_orbit_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& l : levels_) s.push_back(l.orbit.size());
    return s;
  }
  [[nodiscard]] const std::vector<Perm>& strong_generators() const noexcept { return strong_; }
  /// True when completion was certified by reaching the order bound rather
  /// than by sifting Schreier generators.
  [[nodiscard]] bool certified_by_bound() const noexcept { return certified_by_bound_; }

  [[nodiscard]] BigInt order() const {
    BigInt r = 1;
    for (const auto& l : levels_) r *= l.orbit.size();
    return r;
  }

  [[nodiscard]] bool contains(std::span<const Point> perm) const {
    require(perm.size() == degree_, "membership query degree mismatch");
    Perm r(perm.begin(), perm.end());
    sift(r, 0);
    return is_identity(r);
  }

  [[nodiscard]] bool contains(const Gate& g) const { return contains(std::span<const Point>(g.table())); }

 private:
  static constexpr std::int32_t kAbsent = -1;
  static constexpr std::int32_t kRoot = -2;

  struct Level {
    Point base_point;
    std::vector<Point> orbit;
    std::vector<std::int32_t> edge;  // strong generator reaching the point from its parent
    std::vector<std::uint32_t> gens;
    std::size_t verified_gens = 0;
    std::size_t verified_orbit = 0;
  };

  static bool is_identity(const Perm& p) {
    for (std::size_t x = 0; x < p.size(); ++x)
      if (p[x] != x) return false;
    return true;
  }

  // Strips g level by level starting at `start`; g becomes the residue.
  // Returns the first level whose orbit misses the image of its base point,
  // or base_length() when g passed every level.
  std::size_t sift(Perm& g, std::size_t start) const {
    for (std::size_t i = start; i < levels_.size(); ++i) {
      const Level& l = levels_[i];
      Point d = g[l.base_point];
      if (l.edge[d] == kAbsent) return i;
      while (d != l.base_point) {
        const Perm& inv = strong_inv_[static_cast<std::size_t>(l.edge[d])];
        for (auto& x : g) x = inv[x];
        d = inv[d];
      }
    }
    return levels_.size();
  }

  void add_strong(Perm r, std::size_t depth) {
    const auto index = static_cast<std::uint32_t>(strong_.size());
    Perm inv(degree_);
    for (std::size_t x = 0; x < degree_; ++x) inv[r[x]] = static_cast<Point>(x);
    if (depth == levels_.size()) {
      Point moved = 0;
      while (r[moved] == moved) ++moved;
      Level l;
      l.base_point = moved;
      l.orbit = {moved};
      l.edge.assign(degree_, kAbsent);
      l.edge[moved] = kRoot;
      levels_.push_back(std::move(l));
    }
    strong_.push_back(std::move(r));
    strong_inv_.push_back(std::move(inv));
    for (std::size_t i = 0; i <= depth; ++i) {
      levels_[i].gens.push_back(index);
      extend_orbit(levels_[i], index);
    }
  }

  void extend_orbit(Level& l, std::uint32_t fresh) {
    const std::size_t old = l.orbit.size();
    const Perm& s = strong_[fresh];
    for (std::size_t k = 0; k < old; ++k) {
      const Point q = s[l.orbit[k]];
      if (l.edge[q] == kAbsent) {
        l.edge[q] = static_cast<std::int32_t>(fresh);
        l.orbit.push_back(q);
      }
    }
    for (std::size_t k = old; k < l.orbit.size(); ++k) {
      const Point p = l.orbit[k];
      for (auto gi : l.gens) {
        const Point q = strong_[gi][p];
        if (l.edge[q] == kAbsent) {
          l.edge[q] = static_cast<std::int32_t>(gi);
          l.orbit.push_back(q);
        }
      }
    }
  }

  // Coset representative u with u(base point) = point.
  Perm transversal(const Level& l, Point point) const {
    std::vector<std::uint32_t> path;
    for (Point d = point; d != l.base_point;) {
      const auto s = static_cast<std::uint32_t>(l.edge[d]);
      path.push_back(s);
      d = strong_inv_[s][d];
    }
    Perm u(degree_);
    for (std::size_t x = 0; x < degree_; ++x) {
      Point y = static_cast<Point>(x);
      for (auto it = path.rbegin(); it != path.rend(); ++it) y = strong_[*it][y];
      u[x] = y;
    }
    return u;
  }

  [[nodiscard]] double log2_order() const {
    double s = 0;
    for (const auto& l : levels_) s += std::log2(static_cast<double>(l.orbit.size()));
    return s;
  }

  bool bound_reached() const {
    if (!options_.order_bound) return false;
    const double target = bound_log2_;
    if (log2_order() + 1e-6 < target) return false;
    return order() == *options_.order_bound;
  }

  void randomized_completion() {
    if (!bound_reached()) random_phase();
  }

  // Random Schreier-Sims: sift product-replacement elements until enough
  // consecutive ones sift to the identity or the order bound is met.
  void random_phase() {
    if (strong_.empty()) return;
    std::mt19937_64 rng(options_.seed ^ (strong_.size() * 0x9e3779b97f4a7c15ULL));
    constexpr std::size_t kSlots = 12;
    std::vector<Perm> slots;
    const Perm id = identity_perm();
    if (strong_.size() <= kSlots) {
      for (std::size_t k = 0; k < kSlots; ++k) slots.push_back(strong_[k % strong_.size()]);
    } else {
      for (std::size_t k = 0; k < kSlots; ++k) {
        Perm p = id;
        for (const auto& s : strong_)
          if (rng() & 1U) apply_after(p, s);
        slots.push_back(std::move(p));
      }
    }
    Perm acc = id;
    Perm scratch(degree_);
    auto step = [&]() {
      const std::size_t i = rng() % kSlots;
      std::size_t j = rng() % (kSlots - 1);
      if (j >= i) ++j;
      if (rng() & 1U) {
        apply_after(slots[i], slots[j]);
      } else {
        for (std::size_t x = 0; x < degree_; ++x) scratch[slots[j][x]] = static_cast<Point>(x);
        apply_after(slots[i], scratch);
      }
      apply_after(acc, slots[i]);
    };
    for (int w = 0; w < 64; ++w) step();

    std::size_t trivial = 0;
    while (trivial < options_.random_stop) {
      step();
      Perm r = acc;
      const std::size_t level = sift(r, 0);
      if (is_identity(r)) {
        ++trivial;
        continue;
      }
      trivial = 0;
      add_strong(std::move(r), level);
      if (bound_reached()) return;
    }
  }

  // Deterministic completion: every Schreier generator of every level must
  // sift to the identity through the levels below it.
  void schreier_completion() {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool restarted = false;
      const auto li = static_cast<std::size_t>(i);
      for (std::size_t gi = 0; gi < levels_[li].gens.size() && !restarted; ++gi) {
        const std::size_t first_point = gi < levels_[li].verified_gens ? levels_[li].verified_orbit : 0;
        for (std::size_t k = first_point; k < levels_[li].orbit.size(); ++k) {
          const Level& l = levels_[li];
          const auto s = l.gens[gi];
          const Point gamma = l.orbit[k];
          const Point image = strong_[s][gamma];
          if (l.edge[image] == static_cast<std::int32_t>(s) && strong_inv_[s][image] == gamma) continue;
          Perm h = transversal(l, gamma);
          for (auto& x : h) x = strong_[s][x];
          const std::size_t level = sift(h, li);
          if (!is_identity(h)) {
            add_strong(std::move(h), level);
            i = static_cast<std::ptrdiff_t>(level);
            restarted = true;
            break;
          }
        }
      }
      if (restarted) continue;
      levels_[li].verified_gens = levels_[li].gens.size();
      levels_[li].verified_orbit = levels_[li].orbit.size();
      --i;
    }
  }

  Perm identity_perm() const {
    Perm p(degree_);
    std::iota(p.begin(), p.end(), Point{0});
    return p;
  }

  // p ← s ∘ p.
  static void apply_after(Perm& p, const Perm& s) {
    for (auto& x : p) x = s[x];
  }

  std::size_t degree_;
  GroupOptions options_;
  std::vector<Level> levels_;
  std::vector<Perm> strong_;
  std::vector<Perm> strong_inv_;
  std::size_t generator_count_ = 0;
  double bound_log2_ = 0;
  bool certified_by_bound_ = false;
  bool certified_ = false;
};

// ---------------------------------------------------------------------------
// Target groups

enum class TargetKind { full, alternating, conservative, alternating_conservative };

inline std::string to_string(TargetKind k) {
  switch (k) {
    case TargetKind::full: return "full";
    case TargetKind::alternating: return "alternating";
    case TargetKind::conservative: return "conservative";
    case TargetKind::alternating_conservative: return "alternating_conservative";
  }
  return "?";
}

inline TargetKind target_kind_from_string(const std::string& s) {
  if (s == "full") return TargetKind::full;
  if (s == "alternating") return TargetKind::alternating;
  if (s == "conservative") return TargetKind::conservative;
  if (s == "alternating_conservative") return TargetKind::alternating_conservative;
  throw InvalidArgument("unknown target kind \"" + s + "\"");
}

/// The n-ary layer of one of the four revitals: Sym(A^n), Alt(A^n), the
/// φ-conservative gates, or those that are additionally even on every class.
class TargetGroup {
 public:
  TargetGroup(TargetKind kind, Alphabet alphabet, std::size_t arity, std::optional<WeightHom> hom = std::nullopt)
      : kind_(kind), alphabet_(alphabet), arity_(arity), hom_(std::move(hom)) {
    if (needs_hom()) {
      require(hom_.has_value(), to_string(kind) + " target needs a weight hom");
      require(hom_->alphabet() == alphabet_, "weight hom alphabet differs from target alphabet");
      partition_.emplace(*hom_, arity_);
    }
  }

  [[nodiscard]] TargetKind kind() const noexcept { return kind_; }
  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
  [[nodiscard]] const std::optional<WeightHom>& hom() const noexcept { return hom_; }
  [[nodiscard]] const std::optional<WeightPartition>& partition() const noexcept { return partition_; }
  [[nodiscard]] bool needs_hom() const noexcept {
    return kind_ == TargetKind::conservative || kind_ == TargetKind::alternating_conservative;
  }

  /// Closed-form order: N!, N!/2, Π|X|!, or Π max(1, |X|!/2).
  [[nodiscard]] BigInt expected_order() const {
    const std::size_t n = word_count(alphabet_, arity_);
    switch (kind_) {
      case TargetKind::full: return factorial(n);
      case TargetKind::alternating: return n >= 2 ? factorial(n) / 2 : BigInt(1);
      case TargetKind::conservative: {
        BigInt r = 1;
        for (auto s : partition_->class_sizes()) r *= factorial(s);
        return r;
      }
      case TargetKind::alternating_conservative: {
        BigInt r = 1;
        for (auto s : partition_->class_sizes()) r *= s >= 2 ? factorial(s) / 2 : BigInt(1);
        return r;
      }
    }
    return 0;
  }

  /// Why `table` is not in the target, or nullopt when it is.
  [[nodiscard]] std::optional<std::string> violation(std::span<const WordIndex> table) const {
    if (table.size() != word_count(alphabet_, arity_)) return "degree differs from |A|^n";
    switch (kind_) {
      case TargetKind::full: return std::nullopt;
      case TargetKind::alternating:
        if (parity(table) != 0) return "odd permutation";
        return std::nullopt;
      case TargetKind::conservative:
      case TargetKind::alternating_conservative: {
        const auto& cls = partition_->class_of();
        for (std::size_t x = 0; x < table.size(); ++x)
          if (cls[x] != cls[table[x]]) return "not conservative: moves " + std::to_string(x) + " across weight classes";
        if (kind_ == TargetKind::conservative) return std::nullopt;
        return class_parity_violation(table);
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<std::string> class_parity_violation(std::span<const WordIndex> table) const {
    std::vector<bool> odd(partition_->class_count(), false);
    std::vector<bool> seen(table.size(), false);
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (seen[x]) continue;
      std::size_t len = 0;
      for (std::size_t y = x; !seen[y]; y = table[y]) {
        seen[y] = true;
        ++len;
      }
      if (len % 2 == 0) {
        const auto c = partition_->class_of()[x];
        odd[c] = !odd[c];
      }
    }
    for (std::size_t c = 0; c < odd.size(); ++c)
      if (odd[c]) return "odd on weight class " + std::to_string(c);
    return std::nullopt;
  }

  TargetKind kind_;
  Alphabet alphabet_;
  std::size_t arity_;
  std::optional<WeightHom> hom_;
  std::optional<WeightPartition> partition_;
};

inline BigInt expected_order(const TargetGroup& target) { return target.expected_order(); }

// ---------------------------------------------------------------------------
// Generation checks

/// Enumerates candidate generator tables; may be called more than once and
/// must yield the same sequence each time.
using GeneratorSource = std::function<void(const std::function<void(std::span<const WordIndex>)>&)>;

inline GeneratorSource source_of(const std::vector<Gate>& gates) {
  return [&gates](const std::function<void(std::span<const WordIndex>)>& visit) {
    for (const auto& g : gates) visit(g.table());
  };
}

struct GeneratorCensus {
  std::size_t candidates = 0;  // with multiplicity
  std::size_t distinct = 0;    // by table hash
  std::size_t used = 0;        // handed to the group builder
};

struct GenerationOptions {
  GroupOptions group;
  /// Distinct generators handed to the group builder up front; the rest are
  /// sifted afterwards only if the order falls short.
  std::size_t max_generators = 4096;
};

struct GenerationReport {
  TargetKind kind{};
  std::size_t alphabet = 0;
  std::size_t arity = 0;
  std::string hom;
  BigInt expected_order;
  BigInt achieved_order;
  bool verdict = false;
  std::string reason;
  GeneratorCensus census;
  double wall_seconds = 0;

  [[nodiscard]] nlohmann::json to_json(bool with_timing = true) const {
    nlohmann::json j{{"target", to_string(kind)},
                     {"alphabet", alphabet},
                     {"arity", arity},
                     {"expected_order", expected_order.str()},
                     {"achieved_order", achieved_order.str()},
                     {"verdict", verdict ? "yes" : "no"},
                     {"generators",
                      {{"candidates", census.candidates}, {"distinct", census.distinct}, {"used", census.used}}}};
    if (!hom.empty()) j["hom"] = hom;
    if (!reason.empty()) j["reason"] = reason;
    if (with_timing) j["wall_seconds"] = wall_seconds;
    return j;
  }
};

namespace detail {

inline std::uint64_t table_hash(std::span<const WordIndex> t) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (WordIndex y : t) {
    h ^= y + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return h ^ (h >> 33);
}

}  // namespace detail

/// Builds ⟨generators⟩ and compares its order with the target's closed form.
/// Verdict is yes iff every generator lies in the target and the orders are
/// equal; a containment failure is reported as no with the reason, together
/// with the order actually achieved.
inline GenerationReport generates_target(const GeneratorSource& source, const TargetGroup& target,
                                         const GenerationOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  GenerationReport report;
  report.kind = target.kind();
  report.alphabet = target.alphabet().size();
  report.arity = target.arity();
  if (target.hom()) report.hom = target.hom()->name();
  report.expected_order = target.expected_order();
  const std::size_t degree = word_count(target.alphabet(), target.arity());
  if (degree > options.group.degree_cap) {
    throw ResourceCapExceeded("degree " + std::to_string(degree) + " exceeds the cap of " +
                              std::to_string(options.group.degree_cap));
  }

  // Pass 1: containment, parity and census.
  std::unordered_set<std::uint64_t> hashes;
  std::optional<std::string> violation;
  bool all_even = true;
  source([&](std::span<const WordIndex> t) {
    require(t.size() == degree, "generator degree differs from the target's");
    ++report.census.candidates;
    if (hashes.insert(detail::table_hash(t)).second) {
      if (all_even && parity(t) != 0) all_even = false;
      if (!violation) {
        if (auto v = target.violation(t)) violation = "generator " + std::to_string(report.census.candidates - 1) + ": " + *v;
      }
    }
  });
  report.census.distinct = hashes.size();

  // Pass 2: a deterministic pseudo-random sample of distinct generators.
  const double keep = report.census.distinct <= options.max_generators
                          ? 1.0
                          : static_cast<double>(options.max_generators) / static_cast<double>(report.census.distinct);
  std::unordered_set<std::uint64_t> taken;
  std::vector<PermGroup::Perm> sample;
  source([&](std::span<const WordIndex> t) {
    const auto h = detail::table_hash(t);
    if (taken.count(h)) return;
    if (keep < 1.0 && static_cast<double>((h * 0x2545f4914f6cdd1dULL) >> 11) * 0x1.0p-53 >= keep) return;
    taken.insert(h);
    sample.emplace_back(t.begin(), t.end());
  });

  // The tightest order known to bound the group from above. Meeting it
  // certifies the chain without sifting Schreier generators.
  GroupOptions group_options = options.group;
  const BigInt sym = factorial(degree);
  const BigInt parity_bound = all_even && degree > 1 ? sym / 2 : sym;
  if (violation) group_options.order_bound = parity_bound;
  else group_options.order_bound = target.kind() == TargetKind::full ? parity_bound : report.expected_order;
  PermGroup group(degree, group_options);
  group.add_generators(sample, false);
  report.census.used = sample.size();

  // Pass 3: sift the rest when the sample fell short.
  if (sample.size() < report.census.distinct && !group.at_bound()) {
    source([&](std::span<const WordIndex> t) {
      if (group.at_bound()) return;
      const auto h = detail::table_hash(t);
      if (!taken.insert(h).second) return;
      if (!group.contains(t)) {
        group.add_generators({PermGroup::Perm(t.begin(), t.end())}, false);
        ++report.census.used;
      }
    });
  }
  group.certify();

  report.achieved_order = group.order();
  if (violation) {
    report.verdict = false;
    report.reason = *violation;
  } else {
    if (report.expected_order % report.achieved_order != 0) {
      throw Error("internal error: achieved order does not divide the target order");
    }
    report.verdict = report.achieved_order == report.expected_order;
    if (!report.verdict) report.reason = "order too small";
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline GenerationReport generates_target(const std::vector<Gate>& generators, const TargetGroup& target,
                                         const GenerationOptions& options = {}) {
  return generates_target(source_of(generators), target, options);
}

}  // namespace revforge
