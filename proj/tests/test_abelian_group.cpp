#include <gtest/gtest.h>

#include <random>

#include "gshift/abelian_group.hpp"
#include "oracles.hpp"

using namespace gshift;

namespace {

std::vector<GroupElement> elements(const FiniteAbelianGroup& h) {
  std::vector<GroupElement> out;
  std::vector<std::int64_t> coords(h.rank(), 0);
  while (true) {
    out.push_back(GroupElement{coords});
    std::size_t k = 0;
    while (k < coords.size() && ++coords[k] == h.factors()[k].order()) coords[k++] = 0;
    if (k == coords.size()) break;
  }
  return out;
}

std::int64_t order_by_addition(const FiniteAbelianGroup& h, const GroupElement& g) {
  GroupElement acc = g;
  std::int64_t n = 1;
  while (!acc.is_zero()) {
    acc = h.add(acc, g);
    ++n;
  }
  return n;
}

// Largest k with g in p^k H, by scanning every multiple.
int height_by_search(const FiniteAbelianGroup& h, const GroupElement& g, std::int64_t p) {
  int best = 0;
  for (int k = 1; k <= 8; ++k) {
    bool found = false;
    for (const auto& y : elements(h)) found = found || h.multiply(ipow(p, k), y) == g;
    if (!found) break;
    best = k;
  }
  return best;
}

}  // namespace

TEST(ParseGroup, SyntaxVariants) {
  EXPECT_EQ(parse_group("Z4 x Z2").to_string(), "Z4 x Z2");
  EXPECT_EQ(parse_group("z4*z2").to_string(), "Z4 x Z2");
  EXPECT_EQ(parse_group("Z12").factors().size(), 2u);
  EXPECT_THROW(parse_group("Z0"), std::invalid_argument);
  EXPECT_THROW(parse_group("Q4"), std::invalid_argument);
}

TEST(ElementOrder, Examples) {
  const auto h = parse_group("Z4 x Z2");
  EXPECT_EQ(element_order(h, h.zero()), 1);
  const std::vector<std::int64_t> in{2, 1};
  EXPECT_EQ(element_order(h, h.from_input(in)), 2);
}

TEST(ElementOrder, Z8OrderFromHeight) {
  const auto h = parse_group("Z8");
  for (const auto& g : elements(h)) {
    const std::int64_t expected = order_by_addition(h, g);
    EXPECT_EQ(element_order(h, g), expected);
    if (!g.is_zero()) {
      EXPECT_EQ(expected, 8 / ipow(2, height_in_group(h, g, 2)));
    }
  }
}

TEST(ElementOrder, PropertiesOnMixedGroups) {
  for (const char* text : {"Z12", "Z4 x Z9 x Z2", "Z6 x Z10"}) {
    const auto h = parse_group(text);
    for (const auto& g : elements(h)) {
      const std::int64_t n = element_order(h, g);
      EXPECT_TRUE(h.multiply(n, g).is_zero());
      EXPECT_EQ(h.exponent() % n, 0);
      for (const auto& [q, e] : factorize(n)) EXPECT_FALSE(h.multiply(n / q, g).is_zero());
    }
  }
}

TEST(PrimaryComponent, Z12) {
  EXPECT_EQ(primary_component(parse_group("Z12"), 2).group.to_string(), "Z4");
  EXPECT_TRUE(primary_component(parse_group("Z12"), 5).group.is_trivial());
  EXPECT_THROW(primary_component(parse_group("Z12"), 4), std::invalid_argument);
}

TEST(PrimaryComponent, TwoPartOfMixedGroup) {
  const auto h = parse_group("Z4 x Z9 x Z2");
  std::size_t two_power_torsion = 0;
  for (const auto& g : elements(h)) two_power_torsion += h.multiply(4, g).is_zero() ? 1 : 0;
  ASSERT_EQ(two_power_torsion, 8u);
  const auto pc = primary_component(h, 2);
  EXPECT_EQ(pc.group.order(), 8);
  EXPECT_EQ(pc.group.to_string(), "Z4 x Z2");
}

TEST(PrimaryComponent, EmbeddingsReconstructIdentity) {
  const auto h = parse_group("Z12 x Z10");
  std::int64_t product = 1;
  for (auto p : h.primes()) product *= primary_component(h, p).group.order();
  EXPECT_EQ(product, h.order());
  for (const auto& g : elements(h)) {
    GroupElement sum = h.zero();
    for (auto p : h.primes()) {
      const auto pc = primary_component(h, p);
      sum = h.add(sum, pc.embed(pc.project(g), h.rank()));
    }
    EXPECT_EQ(sum, g);
  }
}

TEST(Height, Examples) {
  const auto z8 = parse_group("Z8");
  const std::vector<std::int64_t> four{4};
  EXPECT_EQ(height_in_group(z8, z8.from_input(four), 2), 2);
  EXPECT_EQ(height_in_group(z8, z8.zero(), 2), kInfiniteHeight);

  const auto h = parse_group("Z4 x Z2");
  const std::vector<std::int64_t> in{2, 0};
  const auto g = h.from_input(in);
  ASSERT_EQ(height_by_search(h, g, 2), 1);
  EXPECT_EQ(height_in_group(h, g, 2), 1);
}

TEST(Height, OutsidePrimaryPartThrows) {
  const auto h = parse_group("Z6");
  const std::vector<std::int64_t> in{1};
  EXPECT_THROW(height_in_group(h, h.from_input(in), 2), std::invalid_argument);
}

TEST(Height, MatchesSearchAndGrowsUnderMultiplication) {
  for (const char* text : {"Z8", "Z4 x Z2", "Z9 x Z3"}) {
    const auto h = parse_group(text);
    const std::int64_t p = h.primes().front();
    for (const auto& g : elements(h)) {
      if (g.is_zero()) continue;
      EXPECT_EQ(height_in_group(h, g, p), height_by_search(h, g, p));
      const auto pg = h.multiply(p, g);
      if (!pg.is_zero()) {
        EXPECT_EQ(height_in_group(h, pg, p), height_in_group(h, g, p) + 1);
      }
    }
  }
}

TEST(InputCoordinates, RoundTripThroughCrt) {
  const auto h = parse_group("Z12 x Z5");
  for (std::int64_t a = 0; a < 12; ++a) {
    for (std::int64_t b = 0; b < 5; ++b) {
      const std::vector<std::int64_t> in{a, b};
      EXPECT_EQ(h.to_input(h.from_input(in)), in);
    }
  }
  const std::vector<std::int64_t> bad{12, 0};
  EXPECT_THROW(h.from_input(bad), std::out_of_range);
}
