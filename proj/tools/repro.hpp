#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "revforge/revforge.hpp"

namespace revforge::repro {

struct Claim {
  std::string name;
  std::function<std::string()> compute;
};

struct Outcome {
  std::string name;
  std::string expected;
  std::string actual;
  bool passed = false;
};

struct Options {
  std::string fixture_dir;
  std::size_t threads = 1;
  std::size_t memory_mb = 2048;
  bool update_fixtures = false;
};

// Orders past 60 digits print as a 15-digit mantissa and exponent. The
// verdict already certifies exact equality with the closed form.
inline std::string order_text(const BigInt& order) {
  const std::string s = order.str();
  if (s.size() <= 60) return s;
  return s.substr(0, 1) + "." + s.substr(1, 14) + "e+" + std::to_string(s.size() - 1);
}

inline std::string verdict_and_order(const GenerationReport& r) {
  return std::string(r.verdict ? "yes " : "no ") + order_text(r.achieved_order);
}

inline std::string control_universality(const std::string& fam, std::size_t k, std::size_t a, std::size_t n,
                                        TargetKind kind) {
  const Alphabet al(a);
  const auto base = family(fam, al).gates;
  std::optional<WeightHom> hom;
  if (kind == TargetKind::conservative || kind == TargetKind::alternating_conservative) hom = WeightHom::letter_count(al);
  const GeneratorSource src = [&](const std::function<void(std::span<const WordIndex>)>& visit) {
    for_each_controlled(base, k, n, [&](const ControlledView& v) { visit(v.table); });
  };
  return verdict_and_order(generates_target(src, TargetGroup(kind, al, n, hom)));
}

inline std::string theorem(TheoremName name, std::size_t a, std::size_t n) {
  std::optional<WeightHom> hom;
  if (name == TheoremName::AltPhiCons) hom = parity_count_hom();
  const auto r = reproduce_theorem(name, Alphabet(a), n, hom);
  std::string s = verdict_and_order(r.report);
  if (r.lifted_only) s += "; lifted only: " + verdict_and_order(*r.lifted_only);
  return s;
}

inline std::string search(const std::string& name, const Options& o) {
  ReproduceOptions ro;
  ro.threads = o.threads;
  ro.memory_mb = o.memory_mb;
  if (!o.fixture_dir.empty()) ro.fixture_dir = o.fixture_dir;
  ro.update_fixtures = o.update_fixtures;
  const auto r = reproduce_search(name, ro);
  std::string s = "length " + std::to_string(r.result.length());
  if (r.optimality) s += std::string(", no shorter: ") + (r.optimality->proved() ? "proved" : "refuted");
  if (r.reference_verifies) s += std::string(", reference circuit: ") + (*r.reference_verifies ? "verifies" : "fails");
  if (!r.fixture.empty()) s += ", fixture " + r.fixture;
  return s;
}

inline std::string fredkin(std::size_t n) {
  const auto r = fredkin_universality_check(n);
  std::string s = "group " + r.group_order.str() + ", even part " + r.even_part_order.str();
  if (r.in_scope) s = std::string(r.verdict ? "yes, " : "no, ") + s;
  return s;
}

inline std::string lowering(std::size_t a, std::size_t n) {
  const Alphabet al(a);
  std::size_t checked = 0;
  const WeightPartition part(WeightHom::letter_count(al), n);
  for (const auto& X : part.members()) {
    if (X.size() < 5) continue;
    for (WordIndex cw = 0; cw < word_count(al, 2); ++cw) {
      const auto w = decode_word(cw, al, 2);
      const auto c = lower_control(w, X[0], X[1], X[2], X, al, n);
      if (c.size() != 8 || !verify_circuit(c, controlled(w, Gate::from_cycles(al, n, {{X[0], X[1], X[2]}})))) {
        return "failed";
      }
      ++checked;
    }
  }
  return std::to_string(checked) + " eight-gate circuits verified";
}

inline std::string fig2(std::size_t a) {
  const Alphabet al(a);
  std::size_t verified = 0, four = 0;
  for (Symbol x = 0; x < a; ++x)
    for (Symbol y = 0; y < a; ++y)
      for (Symbol s = 0; s < a; ++s)
        for (Symbol t = 0; t < a; ++t) {
          if (x == y || s == t) continue;
          const auto c = toffoli_style_decomp(al, 1, 1, x, s, t, y);
          verified += verify_circuit(c, fig2_target(al, 1, 1, x, s, t, y));
          four += c.size() == 4;
        }
  return std::to_string(verified) + " verified, " + std::to_string(four) + " with four swaps";
}

inline std::string minimal(const std::string& hom, std::size_t a, GraphKind kind) {
  const auto h = hom_from_json(nlohmann::json(hom), Alphabet(a));
  return std::to_string(minimal_m(h, kind, 1, 6).m);
}

inline std::string component_count(GraphKind kind, std::size_t a, std::size_t n, std::optional<WeightHom> hom = {},
                                   std::size_t m = 0) {
  const EdgeFamily f(kind, Alphabet(a), n, hom, m);
  return std::to_string(components(f).count());
}

inline std::string even_alphabet() {
  // Sym(A^3) from a transposition and a long cycle, placed on four wires.
  const Alphabet bin(2);
  std::vector<WordIndex> longc(8);
  std::iota(longc.begin(), longc.end(), WordIndex{0});
  const std::vector<Gate> base{Gate::word_swap(bin, 3, 0, 1), Gate::from_cycles(bin, 3, {longc})};
  const auto src = [&](const std::function<void(std::span<const WordIndex>)>& visit) {
    for_each_controlled(base, 0, 4, [&](const ControlledView& v) { visit(v.table); });
  };
  return verdict_and_order(generates_target(src, TargetGroup(TargetKind::full, bin, 4)));
}

inline std::vector<Claim> claims(const Options& o) {
  using TK = TargetKind;
  using TN = TheoremName;
  std::vector<Claim> c{
      {"control/P1_k2_A2_n3_full", [] { return control_universality("P1", 2, 2, 3, TK::full); }},
      {"control/P1_k3_A2_n4_full", [] { return control_universality("P1", 3, 2, 4, TK::full); }},
      {"control/P1_k2_A3_n3_full", [] { return control_universality("P1", 2, 3, 3, TK::full); }},
      {"control/P2_k2_A2_n4_conservative", [] { return control_universality("P2", 2, 2, 4, TK::conservative); }},
      {"control/P3_k2_A2_n4_alternating", [] { return control_universality("P3", 2, 2, 4, TK::alternating); }},
      {"theorem/AltFiniteGen_A2_n4", [] { return theorem(TN::AltFiniteGen, 2, 4); }},
      {"theorem/AltFiniteGen_A2_n5", [] { return theorem(TN::AltFiniteGen, 2, 5); }},
      {"theorem/FullFiniteGen_odd_A3_n4", [] { return theorem(TN::FullFiniteGen_odd, 3, 4); }},
      {"theorem/FullFiniteGen_odd_A3_n5", [] { return theorem(TN::FullFiniteGen_odd, 3, 5); }},
      {"theorem/AltCons_A2_n4", [] { return theorem(TN::AltCons, 2, 4); }},
      {"theorem/AltCons_A2_n5", [] { return theorem(TN::AltCons, 2, 5); }},
      {"theorem/AltCons_A2_n6", [] { return theorem(TN::AltCons, 2, 6); }},
      {"theorem/AltPhiCons_even_odd_n2", [] { return theorem(TN::AltPhiCons, 4, 2); }},
      {"theorem/AltPhiCons_even_odd_n3", [] { return theorem(TN::AltPhiCons, 4, 3); }},
      {"theorem/AltPhiCons_even_odd_n4", [] { return theorem(TN::AltPhiCons, 4, 4); }},
      {"theorem/AltPhiCons_even_odd_n5", [] { return theorem(TN::AltPhiCons, 4, 5); }},
      {"lemma/lower_control_A2_n4", [] { return lowering(2, 4); }},
      {"lemma/lower_control_A3_n3", [] { return lowering(3, 3); }},
      {"lemma/fig2_A2", [] { return fig2(2); }},
      {"lemma/fig2_A3", [] { return fig2(3); }},
      {"fredkin/n3", [] { return fredkin(3); }},
      {"fredkin/n4", [] { return fredkin(4); }},
      {"fredkin/n5", [] { return fredkin(5); }},
      {"connectivity/minimal_m_G2phi_letter_count_A2", [] { return minimal("letter_count", 2, GraphKind::G2phi); }},
      {"connectivity/minimal_m_G4phi_letter_count_A2", [] { return minimal("letter_count", 2, GraphKind::G4phi); }},
      {"connectivity/minimal_m_G2phi_letter_count_A3", [] { return minimal("letter_count", 3, GraphKind::G2phi); }},
      {"connectivity/minimal_m_G4phi_letter_count_A3", [] { return minimal("letter_count", 3, GraphKind::G4phi); }},
      {"connectivity/minimal_m_G2phi_length_A2", [] { return minimal("length", 2, GraphKind::G2phi); }},
      {"connectivity/minimal_m_G4phi_length_A2", [] { return minimal("length", 2, GraphKind::G4phi); }},
      {"connectivity/minimal_m_G2phi_even_odd", [] { return minimal("even_odd_count", 4, GraphKind::G2phi); }},
      {"connectivity/minimal_m_G4phi_even_odd", [] { return minimal("even_odd_count", 4, GraphKind::G4phi); }},
      {"connectivity/G1_A3_n5_components", [] { return component_count(GraphKind::G1, 3, 5); }},
      {"connectivity/G3_A3_n5_components", [] { return component_count(GraphKind::G3, 3, 5); }},
      {"connectivity/G2_A3_n6_components", [] { return component_count(GraphKind::G2, 3, 6); }},
      {"connectivity/G4_A2_n5_components", [] { return component_count(GraphKind::G4, 2, 5); }},
      {"connectivity/G2phi_m1_even_odd_n3_components",
       [] { return component_count(GraphKind::G2phi, 4, 3, parity_count_hom(), 1); }},
      {"parity/even_alphabet_full_from_arity3_A2_n4", [] { return even_alphabet(); }},
  };
  for (const auto& name : search_instance_names())
    c.push_back({"search/" + name, [name, o] { return search(name, o); }});
  return c;
}

/// Runs every claim (or those named in `only`) against the pinned values.
inline std::vector<Outcome> run(const Options& o, const std::map<std::string, std::string>& expected,
                                const std::vector<std::string>& only = {}) {
  std::vector<Outcome> out;
  for (const auto& claim : claims(o)) {
    if (!only.empty() && std::find(only.begin(), only.end(), claim.name) == only.end()) continue;
    Outcome r{claim.name, "", "", false};
    if (auto it = expected.find(claim.name); it != expected.end()) r.expected = it->second;
    try {
      r.actual = claim.compute();
    } catch (const std::exception& e) {
      r.actual = std::string("error: ") + e.what();
    }
    r.passed = !r.expected.empty() && r.expected == r.actual;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace revforge::repro
