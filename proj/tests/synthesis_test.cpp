#include <gtest/gtest.h>

#include <map>

#include "test_support.hpp"

using namespace revforge;
using revforge::testing::Rng;

namespace {

const Alphabet kBin(2);
const Alphabet kTri(3);

struct OracleResult {
  bool found = false;
  std::vector<std::uint32_t> word;
};

// Plain forward BFS. States within a layer are visited in the order of
// their smallest word, gates in index order, so the first discovery of a
// state is its lexicographically smallest shortest word.
OracleResult bfs_oracle(const std::vector<Table>& gates, const Table& target, std::size_t max_depth) {
  Table id(target.size());
  std::iota(id.begin(), id.end(), WordIndex{0});
  std::map<Table, std::vector<std::uint32_t>> seen{{id, {}}};
  std::vector<Table> layer{id};
  for (std::size_t d = 0; d <= max_depth; ++d) {
    for (const auto& s : layer)
      if (s == target) return {true, seen[s]};
    if (d == max_depth) break;
    std::vector<Table> next;
    for (const auto& s : layer) {
      for (std::uint32_t g = 0; g < gates.size(); ++g) {
        Table t(s.size());
        for (std::size_t x = 0; x < s.size(); ++x) t[x] = gates[g][s[x]];
        if (seen.count(t)) continue;
        auto w = seen[s];
        w.push_back(g);
        seen.emplace(t, std::move(w));
        next.push_back(std::move(t));
      }
    }
    layer = std::move(next);
  }
  return {};
}

Gate not_gate() { return revforge::testing::not_gate(); }

// NOT, CNOT and Toffoli on three bits, every layout.
std::vector<LibraryEntry> nct_library() {
  return {{{}, not_gate(), {}}, {{1}, not_gate(), {}}, {{1, 1}, not_gate(), {}}};
}

Gate random_product(Rng& rng, const std::vector<Table>& tables, const Alphabet& a, std::size_t width, std::size_t len) {
  Table t(word_count(a, width));
  std::iota(t.begin(), t.end(), WordIndex{0});
  for (std::size_t i = 0; i < len; ++i) {
    const auto& g = tables[rng() % tables.size()];
    for (auto& x : t) x = g[x];
  }
  return Gate(a, width, std::move(t));
}

SearchProblem problem(const Gate& target, std::vector<LibraryEntry> lib, std::size_t depth = 10) {
  SearchProblem p{target, std::move(lib)};
  p.max_depth = depth;
  return p;
}

}  // namespace

TEST(Library, InstantiationDropsRepeatedTables) {
  const auto lib = instantiate_library(nct_library(), kBin, 3);
  // 3 NOTs, 6 CNOTs, 3 Toffolis (the two control orders coincide).
  EXPECT_EQ(lib.gates.size(), 12U);
  EXPECT_EQ(lib.policy.size(), 3U);
  for (std::size_t i = 0; i < lib.gates.size(); ++i) EXPECT_EQ(lib.gates[i].extension(3).table(), lib.tables[i]);
}

TEST(Library, ListedLayoutsOnly) {
  const std::vector<LibraryEntry> lib{{{1}, not_gate(), {{0, 2}, {2, 1}}}};
  const auto inst = instantiate_library(lib, kBin, 3);
  ASSERT_EQ(inst.gates.size(), 2U);
  EXPECT_EQ(inst.gates[1].layout(), (std::vector<std::size_t>{2, 1}));
  const std::vector<LibraryEntry> bad{{{1}, not_gate(), {{0}}}};
  EXPECT_THROW(instantiate_library(bad, kBin, 3), InvalidArgument);
  EXPECT_THROW(instantiate_library({}, kBin, 3), InvalidArgument);
}

TEST(Synthesize, MatchesForwardBfsOracle) {
  Rng rng(21);
  struct Case {
    Alphabet a;
    std::size_t width;
    std::vector<LibraryEntry> lib;
  };
  const std::vector<Case> cases{
      {kBin, 3, nct_library()},
      {kBin, 3, {{{1}, wire_swap(kBin), {}}, {{}, not_gate(), {}}}},
      {kTri, 2, {{{}, Gate::word_swap(kTri, 1, 0, 1), {}}, {{2}, Gate::word_swap(kTri, 1, 1, 2), {}}}},
      {kBin, 4, {controlled_rotation_entry(), {{}, not_gate(), {{0}}}}},
  };
  for (const auto& c : cases) {
    const auto inst = instantiate_library(c.lib, c.a, c.width);
    for (int trial = 0; trial < 12; ++trial) {
      const auto target = random_product(rng, inst.tables, c.a, c.width, 1 + rng() % 7);
      const auto want = bfs_oracle(inst.tables, target.table(), 8);
      const auto got = synthesize(problem(target, c.lib, 8));
      ASSERT_EQ(got.found, want.found);
      EXPECT_EQ(got.word, want.word);
      if (got.found) {
        EXPECT_TRUE(got.verified);
      }
    }
  }
}

TEST(Synthesize, IdentityTargetIsEmptyCircuit) {
  Table id(8);
  std::iota(id.begin(), id.end(), WordIndex{0});
  const auto r = synthesize(problem(Gate(kBin, 3, id), nct_library()));
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.length(), 0U);
  EXPECT_TRUE(r.verified);
}

TEST(Synthesize, SingleGateTarget) {
  const Gate toffoli = revforge::testing::toffoli();
  const auto r = synthesize(problem(toffoli, nct_library()));
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.length(), 1U);
}

TEST(Synthesize, UnreachableTargetDetected) {
  // Fredkin placements on three bits preserve the letter count; NOT does not.
  const std::vector<LibraryEntry> lib{{{1}, wire_swap(kBin), {}}};
  const Gate flip = extend(not_gate(), 3, {0});
  const auto r = synthesize(problem(flip, lib, 40));
  EXPECT_FALSE(r.found);
  EXPECT_TRUE(r.unreachable);
  EXPECT_EQ(r.exhausted_depth, 40U);
}

TEST(Synthesize, DepthLimitReported) {
  const auto fixed = search_instance("wordcycle_0001_6");
  auto p = fixed.first;
  p.max_depth = 4;
  const auto r = synthesize(p);
  EXPECT_FALSE(r.found);
  EXPECT_FALSE(r.unreachable);
  EXPECT_EQ(r.exhausted_depth, 4U);
}

TEST(Synthesize, ProveNoShorterIsMonotone) {
  Rng rng(22);
  const auto inst = instantiate_library(nct_library(), kBin, 3);
  for (int trial = 0; trial < 6; ++trial) {
    const auto target = random_product(rng, inst.tables, kBin, 3, 3 + rng() % 4);
    const auto shortest = synthesize(problem(target, nct_library()));
    ASSERT_TRUE(shortest.found);
    for (std::size_t d = 1; d <= shortest.length() + 2; ++d) {
      auto p = problem(target, nct_library());
      p.mode = SearchMode::prove_no_shorter;
      p.bound = d;
      const auto r = synthesize(p);
      EXPECT_EQ(r.proved(), d <= shortest.length()) << "bound " << d;
      if (!r.proved()) {
        EXPECT_EQ(r.length(), shortest.length());
      }
    }
  }
}

TEST(Synthesize, LengthInvariantUnderLibraryOrder) {
  Rng rng(23);
  auto lib = nct_library();
  const auto inst = instantiate_library(lib, kBin, 3);
  for (int trial = 0; trial < 8; ++trial) {
    const auto target = random_product(rng, inst.tables, kBin, 3, 2 + rng() % 6);
    const auto a = synthesize(problem(target, lib));
    auto shuffled = lib;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto b = synthesize(problem(target, shuffled));
    ASSERT_TRUE(a.found && b.found);
    EXPECT_EQ(a.length(), b.length());
  }
}

TEST(Synthesize, LengthInvariantUnderWireConjugation) {
  Rng rng(24);
  const auto lib = nct_library();
  const auto inst = instantiate_library(lib, kBin, 3);
  for (int trial = 0; trial < 8; ++trial) {
    const auto target = random_product(rng, inst.tables, kBin, 3, 2 + rng() % 6);
    const auto alpha = revforge::testing::random_wire_perm(rng, 3);
    const auto a = synthesize(problem(target, lib));
    const auto b = synthesize(problem(rewire(target, alpha), lib));
    ASSERT_TRUE(a.found && b.found);
    EXPECT_EQ(a.length(), b.length());
  }
}

TEST(Synthesize, SmallMemoryAndThreadsGiveSameCircuit) {
  const auto [p, expected] = search_instance("fig2_4swaps");
  const auto base = synthesize(p);
  ASSERT_TRUE(base.found);
  EXPECT_EQ(base.length(), expected);
  auto tight = p;
  tight.memory_mb = 0;  // floor of 1024 states per side; the rest is depth-first
  tight.threads = 3;
  const auto r = synthesize(tight);
  EXPECT_GT(r.extension_depth, 0U);
  EXPECT_EQ(r.word, base.word);
}

TEST(Synthesize, FindAnyReturnsVerifiedCircuit) {
  auto [p, expected] = search_instance("fig2_4swaps");
  p.mode = SearchMode::find_any;
  const auto r = synthesize(p);
  ASSERT_TRUE(r.found);
  EXPECT_TRUE(r.verified);
  EXPECT_LE(r.length(), expected);
}

TEST(Synthesize, Caps) {
  auto p = problem(Gate::word_swap(kBin, 4, 0, 1), nct_library());
  p.degree_cap = 8;
  EXPECT_THROW(synthesize(p), ResourceCapExceeded);
  p.degree_cap = 4096;
  p.max_depth = 300;
  EXPECT_THROW(synthesize(p), InvalidArgument);
  p.mode = SearchMode::prove_no_shorter;
  p.bound = 0;
  EXPECT_THROW(synthesize(p), InvalidArgument);
}

TEST(SearchInstances, ShortOnes) {
  for (const char* name : {"fig2_4swaps", "wordcycle_0001_6", "wordcycle_0011_6"}) {
    const auto r = reproduce_search(name);
    EXPECT_TRUE(r.passed()) << r.to_json().dump();
  }
}

TEST(SearchInstances, SixtyFourWordDegreeProvedOptimal) {
  const auto r = reproduce_search("c01_rot_8");
  ASSERT_TRUE(r.optimality.has_value());
  EXPECT_TRUE(r.optimality->proved());
  EXPECT_EQ(r.result.length(), 8U);
}

TEST(SearchInstances, ReferenceNineGateCircuit) {
  const auto [p, expected] = search_instance("cc_rot_9");
  EXPECT_EQ(expected, 9U);
  EXPECT_EQ(cc_rot_reference_circuit().size(), 9U);
  EXPECT_TRUE(verify_circuit(cc_rot_reference_circuit(), p.target));
  EXPECT_THROW(search_instance("nope"), InvalidArgument);
}

TEST(Fig2, AllSymbolChoicesOverTernary) {
  std::size_t count = 0;
  for (Symbol x = 0; x < 3; ++x)
    for (Symbol y = 0; y < 3; ++y)
      for (Symbol s = 0; s < 3; ++s)
        for (Symbol t = 0; t < 3; ++t) {
          if (x == y || s == t) continue;
          const Symbol a = (x + s) % 3, b = (y + t) % 3;
          const auto c = toffoli_style_decomp(kTri, a, b, x, s, t, y);
          EXPECT_EQ(c.size(), 4U);
          EXPECT_TRUE(verify_circuit(c, fig2_target(kTri, a, b, x, s, t, y)));
          ++count;
        }
  EXPECT_EQ(count, 36U);
  EXPECT_THROW(fig2_target(kTri, 0, 0, 1, 1, 2, 1), InvalidArgument);
}

TEST(Fredkin, SmallWidths) {
  const auto r3 = fredkin_universality_check(3);
  EXPECT_FALSE(r3.in_scope);
  // Brute-force closure of the nine placements on three bits.
  std::vector<Gate> gens;
  detail::lexicographic_layouts(2, 3, [&](const std::vector<std::size_t>& l) { gens.push_back(extend(wire_swap(kBin), 3, l)); });
  detail::lexicographic_layouts(3, 3, [&](const std::vector<std::size_t>& l) {
    gens.push_back(extend(revforge::testing::fredkin(), 3, l));
  });
  EXPECT_EQ(r3.group_order, BigInt(revforge::testing::brute_force_order(gens, 8)));

  const auto r4 = fredkin_universality_check(4);
  EXPECT_TRUE(r4.in_scope);
  EXPECT_TRUE(r4.verdict);
  EXPECT_EQ(r4.group_order, r4.expected_order * r4.span_size);
}

TEST(ProblemJson, RoundTrip) {
  auto [p, expected] = search_instance("fig2_4swaps");
  p.mode = SearchMode::prove_no_shorter;
  p.bound = 3;
  p.max_depth = 7;
  p.library.push_back({{1}, not_gate(), {{0, 3}, {3, 0}}});
  const auto q = problem_from_json(problem_to_json(p));
  EXPECT_EQ(q.target, p.target);
  EXPECT_EQ(q.mode, p.mode);
  EXPECT_EQ(q.bound, 3U);
  EXPECT_EQ(q.max_depth, 7U);
  ASSERT_EQ(q.library.size(), p.library.size());
  for (std::size_t i = 0; i < p.library.size(); ++i) {
    EXPECT_EQ(q.library[i].control_word, p.library[i].control_word);
    EXPECT_EQ(q.library[i].perm, p.library[i].perm);
    EXPECT_EQ(q.library[i].layouts, p.library[i].layouts);
  }
  EXPECT_EQ(problem_to_json(q), problem_to_json(p));
}

TEST(ProblemJson, Malformed) {
  EXPECT_THROW(problem_from_json(nlohmann::json::object()), InvalidArgument);
  auto j = problem_to_json(search_instance("fig2_4swaps").first);
  j["width"] = 7;
  EXPECT_THROW(problem_from_json(j), InvalidArgument);
  j = problem_to_json(search_instance("fig2_4swaps").first);
  j["mode"] = "prove_no_shorter";
  EXPECT_THROW(problem_from_json(j), InvalidArgument);
  j["mode"] = "fastest";
  EXPECT_THROW(problem_from_json(j), InvalidArgument);
  j = problem_to_json(search_instance("fig2_4swaps").first);
  j["library"][0]["layouts"] = "some";
  EXPECT_THROW(problem_from_json(j), InvalidArgument);
}

TEST(ResultJson, Fields) {
  const auto r = synthesize(search_instance("fig2_4swaps").first);
  const auto j = r.to_json();
  EXPECT_EQ(j["status"], "found");
  EXPECT_EQ(j["length"], 4);
  EXPECT_EQ(j["certificate"]["verified"], true);
  EXPECT_EQ(circuit_from_json(j["circuit"]), *r.circuit);
  auto p = search_instance("fig2_4swaps").first;
  p.mode = SearchMode::prove_no_shorter;
  p.bound = 4;
  const auto u = synthesize(p).to_json();
  EXPECT_EQ(u["status"], "unsat");
  EXPECT_EQ(u["unsat_depth"], 3);
}
