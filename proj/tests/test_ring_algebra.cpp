#include <gtest/gtest.h>

#include <random>

#include "gshift/ring_algebra.hpp"
#include "oracles.hpp"

using namespace gshift;

namespace {

std::vector<oracle::Vec> rows_of(const ResidueMatrix& m) {
  std::vector<oracle::Vec> out;
  for (const auto& r : m.row_vectors()) out.emplace_back(r.begin(), r.end());
  return out;
}

ResidueMatrix random_matrix(std::mt19937_64& rng, Residue m, std::size_t rows, std::size_t cols) {
  ResidueMatrix a(m, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a.set(r, c, static_cast<Residue>(rng() % static_cast<std::uint64_t>(m)));
  }
  return a;
}

}  // namespace

TEST(HowellForm, ZeroMatrixHasEmptyForm) {
  const auto f = howell_form(ResidueMatrix::from_rows(4, 1, {{0}}));
  EXPECT_EQ(f.rank(), 0u);
  EXPECT_EQ(f.matrix.rows(), 0u);
}

TEST(HowellForm, IdentityIsItsOwnForm) {
  const auto id = ResidueMatrix::identity(9, 2);
  const auto f = howell_form(id);
  EXPECT_EQ(f.matrix, id);
  EXPECT_EQ(f.pivot_columns, (std::vector<std::size_t>{0, 1}));
}

TEST(HowellForm, TwoTimesIdentityOverZ4) {
  const auto a = ResidueMatrix::from_rows(4, 2, {{2, 0}, {0, 2}});
  const auto f = howell_form(a);
  // Oracle first: the row span has 4 elements out of 16.
  const auto span = oracle::span(4, 2, rows_of(a));
  ASSERT_EQ(span.size(), 4u);
  EXPECT_EQ(f.matrix.rows(), 2u);
  EXPECT_EQ(f.annihilators, (std::vector<Residue>{2, 2}));
  EXPECT_EQ(f.module_size(), static_cast<std::int64_t>(span.size()));
  for (const auto& v : oracle::all_vectors(4, 2)) EXPECT_EQ(f.contains(v), span.count(v) == 1);
}

TEST(HowellForm, RandomSpansMatchEnumeration) {
  std::mt19937_64 rng(11);
  for (Residue m : {2, 3, 4, 6, 8, 9}) {
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t cols = 1 + rng() % 4, rows = 1 + rng() % 4;
      const auto a = random_matrix(rng, m, rows, cols);
      const auto span = oracle::span(m, cols, rows_of(a));
      const auto f = howell_form(a);
      ASSERT_EQ(f.module_size(), static_cast<std::int64_t>(span.size())) << "m=" << m;
      for (const auto& v : oracle::all_vectors(m, cols)) ASSERT_EQ(f.contains(v), span.count(v) == 1);
      // Idempotent, and the elements listed are exactly the span.
      EXPECT_EQ(howell_form(f.matrix), f);
      const auto elems = module_elements(f);
      EXPECT_EQ(std::set<oracle::Vec>(elems.begin(), elems.end()), span);
      EXPECT_EQ(elems.size(), span.size());
    }
  }
}

TEST(HowellForm, EqualSpansGiveEqualForms) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Residue m = trial % 2 ? 8 : 12;
    const auto a = random_matrix(rng, m, 3, 3);
    // Mix rows with a unimodular transformation and append a redundant row.
    auto b = a;
    for (std::size_t c = 0; c < 3; ++c) b.set(0, c, a(0, c) + 3 * a(1, c));
    std::vector<Residue> extra(3);
    for (std::size_t c = 0; c < 3; ++c) extra[c] = mod(a(1, c) + a(2, c), m);
    b.append_row(extra);
    EXPECT_EQ(howell_form(a), howell_form(b));
    EXPECT_TRUE(same_row_span(a, b));
  }
}

TEST(SolveLinear, NoSolution) {
  const std::vector<Residue> b{1};
  EXPECT_FALSE(solve_linear(ResidueMatrix::from_rows(4, 1, {{2}}), b).has_value());
}

TEST(SolveLinear, IdentityReturnsRightHandSide) {
  const std::vector<Residue> b{3, 0, 4};
  const auto s = solve_linear(ResidueMatrix::identity(5, 3), b);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, b);
  for (const auto& k : s->kernel) EXPECT_TRUE(std::all_of(k.begin(), k.end(), [](Residue r) { return r == 0; }));
}

TEST(SolveLinear, TwoXEqualsTwoModFour) {
  const auto a = ResidueMatrix::from_rows(4, 1, {{2}});
  const std::vector<Residue> b{2};
  const auto all = oracle::solutions(4, rows_of(a), {2}, 1);
  ASSERT_EQ(all, (std::vector<oracle::Vec>{{1}, {3}}));
  const auto s = solve_linear(a, b);
  ASSERT_TRUE(s);
  EXPECT_EQ(mod(2 * s->particular[0], 4), 2);
  // The kernel is {0, 2}: generated by 2.
  std::vector<oracle::Vec> kernel;
  for (const auto& k : s->kernel) kernel.emplace_back(k.begin(), k.end());
  EXPECT_EQ(oracle::span(4, 1, kernel), (std::set<oracle::Vec>{{0}, {2}}));
}

TEST(SolveLinear, DimensionMismatchThrows) {
  const std::vector<Residue> b{1, 2};
  EXPECT_THROW(solve_linear(ResidueMatrix::identity(4, 3), b), std::invalid_argument);
}

TEST(SolveLinear, RandomSystemsMatchEnumeration) {
  std::mt19937_64 rng(13);
  for (Residue m : {2, 4, 6, 9}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
      const auto a = random_matrix(rng, m, rows, cols);
      std::vector<Residue> b(rows);
      for (auto& x : b) x = static_cast<Residue>(rng() % static_cast<std::uint64_t>(m));
      const auto all = oracle::solutions(m, rows_of(a), oracle::Vec(b.begin(), b.end()), cols);
      const auto s = solve_linear(a, b);
      ASSERT_EQ(s.has_value(), !all.empty());
      if (!s) continue;
      // Particular plus kernel span reproduces every solution.
      std::vector<oracle::Vec> kernel;
      for (const auto& k : s->kernel) kernel.emplace_back(k.begin(), k.end());
      std::set<oracle::Vec> generated;
      for (const auto& k : oracle::span(m, cols, kernel)) {
        oracle::Vec x(cols);
        for (std::size_t c = 0; c < cols; ++c) x[c] = mod(s->particular[c] + k[c], m);
        generated.insert(x);
      }
      EXPECT_EQ(generated, std::set<oracle::Vec>(all.begin(), all.end()));
    }
  }
}

TEST(LeftKernel, MatchesEnumeration) {
  std::mt19937_64 rng(14);
  for (Residue m : {2, 4, 6}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
      const auto a = random_matrix(rng, m, rows, cols);
      std::set<oracle::Vec> expected;
      for (const auto& x : oracle::all_vectors(m, rows)) {
        bool zero = true;
        for (std::size_t c = 0; c < cols && zero; ++c) {
          Residue s = 0;
          for (std::size_t r = 0; r < rows; ++r) s += x[r] * a(r, c);
          zero = mod(s, m) == 0;
        }
        if (zero) expected.insert(x);
      }
      EXPECT_EQ(oracle::span(m, rows, rows_of(left_kernel(a))), expected);
    }
  }
}

TEST(Independent, EmptySetIsIndependent) { EXPECT_TRUE(independent({})); }

TEST(Independent, RepeatedVectorIsDependent) {
  const std::vector<ResidueVector> vs{{3, {1, 2}}, {3, {1, 2}}};
  EXPECT_FALSE(independent(vs));
}

TEST(Independent, TwoOverlappingVectorsOverF2) {
  const std::vector<oracle::Vec> raw{{1, 1, 0}, {0, 1, 1}};
  ASSERT_TRUE(oracle::independent_mod_p(2, raw));
  const std::vector<ResidueVector> vs{{2, {1, 1, 0}}, {2, {0, 1, 1}}};
  EXPECT_TRUE(independent(vs));
}

TEST(Independent, MixedModuliThrow) {
  const std::vector<ResidueVector> vs{{2, {1}}, {3, {1}}};
  EXPECT_THROW(independent(vs), std::invalid_argument);
}

TEST(Independent, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(15);
  for (Residue p : {2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t count = rng() % 6, len = 1 + rng() % 4;
      std::vector<oracle::Vec> raw;
      std::vector<ResidueVector> vs;
      for (std::size_t i = 0; i < count; ++i) {
        oracle::Vec v(len);
        for (auto& x : v) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
        raw.push_back(v);
        vs.push_back({p, std::vector<Residue>(v.begin(), v.end())});
      }
      EXPECT_EQ(independent(vs), oracle::independent_mod_p(p, raw));
    }
  }
}

TEST(SmithInvariants, DiagonalWithDivisibility) {
  EXPECT_EQ(smith_invariants({{2, 0}, {0, 4}}), (std::vector<std::int64_t>{2, 4}));
}

TEST(SmithInvariants, CoprimeDiagonalMerges) {
  // Z^2 / <(2,0), (0,3)> has 6 elements and is cyclic: invariants (1, 6).
  std::set<std::pair<int, int>> classes;
  for (int a = -6; a <= 6; ++a) {
    for (int b = -6; b <= 6; ++b) classes.insert({((a % 2) + 2) % 2, ((b % 3) + 3) % 3});
  }
  ASSERT_EQ(classes.size(), 6u);
  EXPECT_EQ(smith_invariants({{2, 0}, {0, 3}}), (std::vector<std::int64_t>{1, 6}));
}

TEST(SmithInvariants, ZeroMatrixHasNoInvariants) {
  EXPECT_TRUE(smith_invariants({{0, 0}, {0, 0}}).empty());
}

TEST(SmithInvariants, ProductMatchesDeterminant) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<std::int64_t>> m(2, std::vector<std::int64_t>(2));
    for (auto& r : m) {
      for (auto& x : r) x = static_cast<std::int64_t>(rng() % 13) - 6;
    }
    const std::int64_t det = std::llabs(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    const auto inv = smith_invariants(m);
    if (det == 0) {
      EXPECT_LT(inv.size(), 2u);
      continue;
    }
    ASSERT_EQ(inv.size(), 2u);
    EXPECT_EQ(inv[1] % inv[0], 0);
    EXPECT_EQ(inv[0] * inv[1], det);
  }
}

TEST(Scalars, Basics) {
  EXPECT_EQ(mod(-1, 4), 3);
  EXPECT_EQ(inverse_mod(3, 7), 5);
  EXPECT_THROW(inverse_mod(2, 4), std::domain_error);
  EXPECT_TRUE(is_prime(7));
  EXPECT_FALSE(is_prime(1));
  EXPECT_EQ(factorize(12), (std::vector<std::pair<std::int64_t, int>>{{2, 2}, {3, 1}}));
  EXPECT_EQ(valuation(24, 2), 3);
}
