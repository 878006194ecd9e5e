#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace revforge;
using revforge::testing::Rng;

namespace {

const Alphabet kBin(2);
const Alphabet kTri(3);

WordIndex w(std::string_view s, const Alphabet& a = kBin) { return encode_word(word_from_string(s, a), a); }

}  // namespace

TEST(Word, EncodeLeftmostMostSignificant) {
  EXPECT_EQ(encode_word(std::vector<Symbol>{1, 0, 1}, kBin), 5U);
  EXPECT_EQ(encode_word(std::vector<Symbol>{0, 0, 0}, kTri), 0U);
  EXPECT_EQ(encode_word(std::vector<Symbol>{0, 1, 1}, kBin), 3U);
  EXPECT_EQ(encode_word(std::vector<Symbol>{2, 1}, kTri), 7U);
}

TEST(Word, DecodeRoundTrips) {
  for (std::size_t k = 1; k <= 4; ++k) {
    const Alphabet a(k);
    for (WordIndex x = 0; x < word_count(a, 4); ++x) EXPECT_EQ(encode_word(decode_word(x, a, 4), a), x);
  }
}

TEST(Word, RejectsOutOfRangeSymbol) {
  EXPECT_THROW(encode_word(std::vector<Symbol>{0, 2}, kBin), InvalidArgument);
  EXPECT_THROW(word_from_string("012", kBin), InvalidArgument);
}

TEST(Word, StringForm) {
  EXPECT_EQ(word_to_string(w("0110"), kBin, 4), "0110");
  EXPECT_EQ(word_to_string(w("21", kTri), kTri, 2), "21");
}

TEST(Gate, RejectsNonBijection) {
  EXPECT_THROW(Gate(kBin, 1, {0, 0}), InvalidArgument);
  EXPECT_THROW(Gate(kBin, 1, {0, 1, 2}), InvalidArgument);
}

TEST(Compose, InverseAndIdentity) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto f = revforge::testing::random_gate(rng, kTri, 2);
    EXPECT_EQ(compose(f, inverse(f)), Gate::identity(kTri, 2));
    EXPECT_EQ(compose(Gate::identity(kTri, 2), f), f);
  }
  const auto n = revforge::testing::not_gate();
  EXPECT_EQ(compose(n, n), Gate::identity(kBin, 1));
}

TEST(Compose, MismatchThrows) {
  EXPECT_THROW(compose(Gate::identity(kBin, 1), Gate::identity(kBin, 2)), InvalidArgument);
  EXPECT_THROW(compose(Gate::identity(kBin, 1), Gate::identity(kTri, 1)), InvalidArgument);
}

TEST(Compose, Associative) {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto f = revforge::testing::random_gate(rng, kBin, 3);
    const auto g = revforge::testing::random_gate(rng, kBin, 3);
    const auto h = revforge::testing::random_gate(rng, kBin, 3);
    EXPECT_EQ(compose(f, compose(g, h)), compose(compose(f, g), h));
  }
}

TEST(Parallel, Basics) {
  const auto id1 = Gate::identity(kBin, 1);
  EXPECT_EQ(parallel(id1, id1), Gate::identity(kBin, 2));
  const auto p = parallel(revforge::testing::not_gate(), id1);
  EXPECT_EQ(p(w("00")), w("10"));
  EXPECT_EQ(p(w("01")), w("11"));
  EXPECT_EQ(p(w("10")), w("00"));
  EXPECT_EQ(p(w("11")), w("01"));
  const auto f = revforge::testing::fredkin();
  EXPECT_EQ(parallel(f, Gate::identity(kBin, 0)), f);
}

TEST(WirePerm, Examples) {
  const auto s = wire_perm(WirePermutation::swap(2, 0, 1), kBin);
  EXPECT_EQ(s(w("10")), w("01"));
  EXPECT_EQ(wire_perm(WirePermutation::identity(3), kTri), Gate::identity(kTri, 3));
  const auto r = wire_perm(WirePermutation({1, 2, 0}), kTri);
  EXPECT_EQ(r(w("012", kTri)), w("201", kTri));
  EXPECT_EQ(wire_rotation(kTri), r);
}

TEST(WirePerm, OutputCarriesInverseImage) {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const auto alpha = revforge::testing::random_wire_perm(rng, 4);
    const auto g = wire_perm(alpha, kTri);
    for (WordIndex x = 0; x < g.degree(); ++x) {
      const auto in = decode_word(x, kTri, 4);
      const auto out = decode_word(g(x), kTri, 4);
      for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(out[alpha[i]], in[i]);
    }
  }
}

TEST(Rewire, Examples) {
  Rng rng(4);
  const auto f = revforge::testing::random_gate(rng, kBin, 3);
  EXPECT_EQ(rewire(f, WirePermutation::identity(3)), f);
  const auto alpha = WirePermutation({2, 0, 1});
  EXPECT_EQ(rewire(rewire(f, alpha), alpha.inverse()), f);

  // CNOT with control on wire 0, rewired by the swap, is CNOT with control on wire 1.
  const auto cnot0 = controlled({1}, revforge::testing::not_gate());
  const Gate cnot1(kBin, 2, {w("00"), w("11"), w("10"), w("01")});
  EXPECT_EQ(rewire(cnot0, WirePermutation::swap(2, 0, 1)), cnot1);
}

TEST(Rewire, CoordinateIdentity) {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto f = revforge::testing::random_gate(rng, kTri, 3);
    const auto alpha = revforge::testing::random_wire_perm(rng, 3);
    const auto g = rewire(f, alpha);
    for (WordIndex x = 0; x < f.degree(); ++x) {
      const auto xs = decode_word(x, kTri, 3);
      std::vector<Symbol> permuted(3);
      for (std::size_t i = 0; i < 3; ++i) permuted[i] = xs[alpha[i]];
      const auto lhs = decode_word(g(x), kTri, 3);
      const auto rhs = decode_word(f(encode_word(permuted, kTri)), kTri, 3);
      for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(lhs[alpha[i]], rhs[i]);
    }
  }
}

TEST(Rewire, CompositionLaw) {
  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    const auto f = revforge::testing::random_gate(rng, kBin, 4);
    const auto a = revforge::testing::random_wire_perm(rng, 4);
    const auto b = revforge::testing::random_wire_perm(rng, 4);
    EXPECT_EQ(rewire(f, a * b), rewire(rewire(f, b), a));
  }
}

TEST(Extend, Examples) {
  const auto n = revforge::testing::not_gate();
  const auto e = extend(n, 2, {1});
  EXPECT_EQ(e(w("00")), w("01"));
  EXPECT_EQ(e(w("01")), w("00"));
  EXPECT_EQ(e(w("10")), w("11"));
  EXPECT_EQ(e(w("11")), w("10"));
  const auto f = revforge::testing::fredkin();
  EXPECT_EQ(extend(f, 3, {0, 1, 2}), f);
  EXPECT_EQ(extend(Gate::identity(kTri, 1), 4, {2}), Gate::identity(kTri, 4));
  EXPECT_THROW(extend(n, 2, {2}), InvalidArgument);
  EXPECT_THROW(extend(f, 3, {0, 0, 1}), InvalidArgument);
}

TEST(Extend, EqualsRewiredParallel) {
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    const auto f = revforge::testing::random_gate(rng, kBin, 2);
    const auto layout = revforge::testing::random_layout(rng, 2, 4);
    // α sends wire i < 2 to layout[i]; the rest fill the unused wires in order.
    std::vector<std::size_t> m(layout);
    for (std::size_t x = 0; x < 4; ++x)
      if (std::find(layout.begin(), layout.end(), x) == layout.end()) m.push_back(x);
    const WirePermutation alpha(m);
    EXPECT_EQ(extend(f, 4, layout), rewire(parallel(f, Gate::identity(kBin, 2)), alpha));
  }
}

TEST(Extend, LeavesOtherWiresAlone) {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto f = revforge::testing::random_gate(rng, kTri, 2);
    const auto layout = revforge::testing::random_layout(rng, 2, 4);
    const auto e = extend(f, 4, layout);
    for (WordIndex x = 0; x < e.degree(); ++x) {
      const auto in = decode_word(x, kTri, 4);
      const auto out = decode_word(e(x), kTri, 4);
      for (std::size_t j = 0; j < 4; ++j)
        if (std::find(layout.begin(), layout.end(), j) == layout.end()) {
          EXPECT_EQ(in[j], out[j]);
        }
    }
  }
}

TEST(Controlled, FredkinAndToffoli) {
  const auto f = revforge::testing::fredkin();
  for (auto s : {"000", "001", "010", "011", "100", "111"}) EXPECT_EQ(f(w(s)), w(s)) << s;
  EXPECT_EQ(f(w("101")), w("110"));
  EXPECT_EQ(f(w("110")), w("101"));

  const auto t = revforge::testing::toffoli();
  EXPECT_EQ(t(w("110")), w("111"));
  EXPECT_EQ(t(w("111")), w("110"));
  for (auto s : {"000", "001", "010", "011", "100", "101"}) EXPECT_EQ(t(w(s)), w(s)) << s;

  EXPECT_EQ(controlled({2, 0}, Gate::identity(kTri, 2)), Gate::identity(kTri, 4));
}

TEST(Controlled, ActsOnlyOnControlBlock) {
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto p = revforge::testing::random_gate(rng, kTri, 1);
    const std::vector<Symbol> cw{static_cast<Symbol>(rng() % 3), static_cast<Symbol>(rng() % 3)};
    const auto c = controlled(cw, p);
    for (WordIndex x = 0; x < c.degree(); ++x) {
      const auto xs = decode_word(x, kTri, 3);
      auto expect = xs;
      if (xs[0] == cw[0] && xs[1] == cw[1]) expect[2] = static_cast<Symbol>(p(xs[2]));
      EXPECT_EQ(c(x), encode_word(expect, kTri));
    }
  }
}

TEST(Parity, Examples) {
  EXPECT_EQ(parity(Gate::identity(kBin, 3)), 0);
  EXPECT_EQ(parity(Gate::word_swap(kBin, 3, 1, 6)), 1);
  EXPECT_EQ(parity(parallel(revforge::testing::not_gate(), Gate::identity(kBin, 1))), 0);
}

TEST(Parity, Homomorphism) {
  Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    const auto f = revforge::testing::random_gate(rng, kTri, 2);
    const auto g = revforge::testing::random_gate(rng, kTri, 2);
    EXPECT_EQ(parity(compose(f, g)), (parity(f) + parity(g)) % 2);
  }
}

TEST(Parity, ExtensionMultipliesByBlockCount) {
  Rng rng(11);
  for (std::size_t k : {2U, 3U}) {
    const Alphabet a(k);
    for (int i = 0; i < 20; ++i) {
      const auto f = revforge::testing::random_gate(rng, a, 2);
      const auto layout = revforge::testing::random_layout(rng, 2, 3);
      const int expect = static_cast<int>((static_cast<std::size_t>(parity(f)) * k) % 2);
      EXPECT_EQ(parity(extend(f, 3, layout)), expect);
    }
  }
}

TEST(Cycles, Canonical) {
  const auto g = Gate::from_cycles(kBin, 3, {{6, 2, 4}, {5, 1}});
  const auto c = cycles(g);
  ASSERT_EQ(c.size(), 2U);
  EXPECT_EQ(c[0], (std::vector<WordIndex>{1, 5}));
  EXPECT_EQ(c[1], (std::vector<WordIndex>{2, 4, 6}));
}

TEST(Circuit, EmptyIsIdentity) {
  const Circuit c(kBin, 3);
  EXPECT_EQ(circuit_denotation(c), Gate::identity(kBin, 3));
  EXPECT_TRUE(verify_circuit(c, Gate::identity(kBin, 3)));
}

TEST(Circuit, SingleGateIsExtension) {
  const PlacedGate g({1}, wire_swap(kBin), {3, 0, 2});
  const Circuit c(kBin, 4, {g});
  EXPECT_EQ(circuit_denotation(c), extend(revforge::testing::fredkin(), 4, {3, 0, 2}));
}

TEST(Circuit, FirstListedAppliedFirst) {
  Rng rng(12);
  const auto f = revforge::testing::random_gate(rng, kBin, 2);
  const auto g = revforge::testing::random_gate(rng, kBin, 2);
  const Circuit c(kBin, 2, {PlacedGate::plain(f), PlacedGate::plain(g)});
  EXPECT_EQ(circuit_denotation(c), compose(g, f));
}

TEST(Circuit, RejectsBadLayout) {
  EXPECT_THROW(Circuit(kBin, 2, {PlacedGate({1}, wire_swap(kBin), {0, 1, 2})}), InvalidArgument);
  EXPECT_THROW(PlacedGate({1}, wire_swap(kBin), {0, 1}), InvalidArgument);
}

TEST(Circuit, VerifyRejectsOneWordDifference) {
  const Circuit c(kBin, 3, {PlacedGate::plain(revforge::testing::fredkin())});
  const auto target = compose(revforge::testing::fredkin(), Gate::word_swap(kBin, 3, 0, 1));
  EXPECT_TRUE(verify_circuit(c, revforge::testing::fredkin()));
  EXPECT_FALSE(verify_circuit(c, target));
}
