#include <gtest/gtest.h>

#include <random>

#include "gshift/controllability.hpp"
#include "gshift/encoder.hpp"
#include "oracles.hpp"

using namespace gshift;

namespace {

Word word(const FiniteAbelianGroup& h, std::int64_t first, const std::vector<std::vector<std::int64_t>>& symbols) {
  std::vector<GroupElement> s;
  for (const auto& c : symbols) s.push_back(h.from_input(c));
  return Word(first, std::move(s), h.rank());
}

bool small_enough(const GroupShift& g, int len, double limit) {
  double size = 1;
  for (int i = 0; i < len; ++i) size *= static_cast<double>(g.alphabet.order());
  return size <= limit;
}

}  // namespace

TEST(SteeringHolds, MatchesLiteralDefinition) {
  std::mt19937_64 rng(31);
  int compared = 0;
  for (int trial = 0; trial < 200 && compared < 120; ++trial) {
    const GroupShift g = oracle::random_small_shift(rng);
    for (int L = 1; L <= 2; ++L) {
      for (int n = 0; n <= 2; ++n) {
        if (!small_enough(g, n + 2 * L + 1, 70000)) continue;
        ++compared;
        EXPECT_EQ(steering_holds(g, n, L, SteeringKind::plain), oracle::steering(g, n, L, false))
            << g.alphabet.to_string() << " n=" << n << " L=" << L;
        EXPECT_EQ(steering_holds(g, n, L, SteeringKind::order_dividing), oracle::steering(g, n, L, true))
            << g.alphabet.to_string() << " n=" << n << " L=" << L;
      }
    }
  }
  EXPECT_GE(compared, 100);
}

TEST(SteeringHolds, RejectsBadArguments) {
  const GroupShift g = full_shift(parse_group("Z2"));
  EXPECT_THROW(steering_holds(g, 0, 0, SteeringKind::plain), std::invalid_argument);
  EXPECT_THROW(steering_holds(g, -1, 2, SteeringKind::plain), std::invalid_argument);
}

TEST(ControllabilityIndex, FullShiftIsZero) {
  for (const char* text : {"Z2", "Z4 x Z2", "Z6"}) {
    const GroupShift g = full_shift(parse_group(text));
    EXPECT_EQ(controllability_index(g, 0, 4).index, 0);
    EXPECT_EQ(order_controllability_index(g, 0, 4).index, 0);
  }
}

TEST(ControllabilityIndex, PairGeneratorOverZ2) {
  // The closed shift generated by (1,1) is the full binary shift, so the
  // truncation of any past is already a member.
  const auto h = parse_group("Z2");
  const GroupShift g{h, {word(h, 0, {{1}, {1}})}, std::nullopt};
  ASSERT_TRUE(oracle::steering(g, 0, 4, false));
  EXPECT_EQ(controllability_index(g, 4, 4).index, 0);
}

TEST(ControllabilityIndex, RepeatCodeIsZero) {
  const auto h = parse_group("Z2 x Z2");
  const GroupShift g{h, {word(h, 0, {{1, 1}})}, std::nullopt};
  ASSERT_TRUE(oracle::steering(g, 0, 3, false));
  EXPECT_EQ(controllability_index(g, 3, 4).index, 0);
}

TEST(ControllabilityIndex, ScaledImpulseOverZ4) {
  const auto h = parse_group("Z4");
  const GroupShift g{h, {word(h, 0, {{2}})}, std::nullopt};
  ASSERT_TRUE(oracle::steering(g, 0, 4, false));
  EXPECT_EQ(controllability_index(g, 4, 4).index, 0);
}

TEST(ControllabilityIndex, ConvolutionalCodeNeedsTwoSteps) {
  const auto h = parse_group("Z2 x Z2");
  const GroupShift g{h, {word(h, 0, {{1, 1}, {0, 1}, {1, 1}})}, std::nullopt};
  ASSERT_FALSE(oracle::steering(g, 1, 2, false));
  ASSERT_TRUE(oracle::steering(g, 2, 2, false));
  EXPECT_EQ(controllability_index(g, 2, 6).index, 2);
}

TEST(OrderControllabilityIndex, Z4GeneratorOneTwo) {
  const auto h = parse_group("Z4");
  const GroupShift g{h, {word(h, 0, {{1}, {2}})}, std::nullopt};
  int expected = -1;
  for (int n = 0; n <= 2 && expected < 0; ++n) {
    if (oracle::steering(g, n, 2, true)) expected = n;
  }
  ASSERT_EQ(expected, 0);
  EXPECT_EQ(order_controllability_index(g, 2, 6).index, expected);
}

TEST(OrderControllabilityIndex, MixedOrdersFailWithCounterexample) {
  const auto h = parse_group("Z2 x Z4");
  const GroupShift g{h, {word(h, 0, {{1, 0}, {1, 3}, {1, 3}})}, std::nullopt};
  for (int n = 0; n <= 1; ++n) ASSERT_FALSE(oracle::steering(g, n, 2, true));
  ASSERT_TRUE(oracle::steering(g, 2, 2, false));
  const IndexSearch s = order_controllability_index(g, 2, 4);
  EXPECT_FALSE(s.index.has_value());
  ASSERT_TRUE(s.counterexample.has_value());
  EXPECT_EQ(controllability_index(g, 2, 4).index, 2);
}

TEST(OrderControllabilityIndex, EqualsPlainIndexOverPrimeExponent) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    GroupShift g = oracle::random_small_shift(rng);
    const std::int64_t e = g.alphabet.exponent();
    if (!is_prime(e)) continue;
    EXPECT_EQ(controllability_index(g, 0, 6).index, order_controllability_index(g, 0, 6).index);
  }
}

TEST(IndexSearch, ConsistentAndMonotone) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const GroupShift g = oracle::random_small_shift(rng);
    const IndexSearch c = controllability_index(g, 0, 6);
    const IndexSearch o = order_controllability_index(g, 0, 6);
    EXPECT_TRUE(c.monotone);
    EXPECT_TRUE(o.monotone);
    if (c.index && o.index) {
      EXPECT_LE(*c.index, *o.index);
    }
    if (o.index) {
      EXPECT_TRUE(c.index.has_value());
    }
    for (std::size_t n = 0; c.index && n < c.holds.size(); ++n) EXPECT_EQ(c.holds[n], static_cast<int>(n) >= *c.index);
  }
}

TEST(IndexSearch, ScalingDoesNotIncreaseOrderIndex) {
  std::mt19937_64 rng(34);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 20; ++trial) {
    const GroupShift g = oracle::random_small_shift(rng);
    const std::int64_t p = g.alphabet.primes().front();
    if (!g.alphabet.is_p_group(p) || g.alphabet.exponent() == p) continue;
    const auto o = order_controllability_index(g, 0, 6).index;
    if (!o) continue;
    ++checked;
    const auto scaled = order_controllability_index(multiple_shift(g, p, 1), 0, 6).index;
    ASSERT_TRUE(scaled.has_value());
    EXPECT_LE(*scaled, *o);
  }
  EXPECT_GE(checked, 5);
}

TEST(IndexSearch, Deterministic) {
  const auto h = parse_group("Z2 x Z4");
  const GroupShift g{h, {word(h, 0, {{1, 0}, {1, 3}, {1, 3}})}, std::nullopt};
  const IndexSearch a = order_controllability_index(g, 0, 4);
  const IndexSearch b = order_controllability_index(g, 0, 4);
  EXPECT_EQ(a.holds, b.holds);
  EXPECT_EQ(a.counterexample, b.counterexample);
}

TEST(WeakControllability, ItselfAlwaysHolds) {
  const auto h = parse_group("Z2 x Z4");
  const GroupShift g{h, {word(h, 0, {{1, 0}, {1, 3}, {1, 3}})}, std::nullopt};
  EXPECT_TRUE(weak_controllability_check(g, DerivedShift::itself, 2, 4).holds);
  EXPECT_THROW(weak_controllability_check(g, DerivedShift::itself, 2, 0), std::invalid_argument);
}

TEST(WeakControllability, FullShiftSocle) {
  EXPECT_TRUE(weak_controllability_check(full_shift(parse_group("Z8")), DerivedShift::socle, 2, 5).holds);
}

TEST(WeakControllability, PairGeneratorOverZ4Socle) {
  const auto h = parse_group("Z4");
  GroupShift g{h, {word(h, 0, {{1}, {1}})}, std::nullopt};
  g.declared_memory = finite_type_memory(g, 6);
  // Oracle: the 2-torsion of every window code [0, len) is realized by
  // finite 2-torsion words, which here are all words over {0, 2}.
  for (int len = 1; len <= 4; ++len) {
    const auto p = oracle::projection(g, 0, len - 1);
    std::size_t torsion = 0;
    for (const auto& v : p) torsion += std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x % 2 == 0; });
    ASSERT_EQ(torsion, static_cast<std::size_t>(1) << len);
  }
  EXPECT_TRUE(weak_controllability_check(g, DerivedShift::socle, 2, 6).holds);
}

TEST(WeakControllability, RandomOrderControllableShifts) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 25; ++trial) {
    GroupShift g = oracle::random_small_shift(rng);
    g.declared_memory = finite_type_memory(g, 6);
    if (!order_controllability_index(g, 0, 6).index) continue;
    for (auto p : g.alphabet.primes()) EXPECT_TRUE(weak_controllability_check(g, DerivedShift::socle, p, 5).holds);
  }
}
