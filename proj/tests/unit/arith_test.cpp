#include <gtest/gtest.h>

#include <random>

#include "ctkit/arith.hpp"
#include "ctkit/lattice.hpp"

using namespace ctkit;

namespace {

struct SnfCase {
  int p;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<int> diag;  // p-adic valuations of the integer invariant factors
};

// Invariant factors computed over Z with an independent computer algebra system.
const std::vector<SnfCase> kSnfCases = {
    {2, {{48, 16, 0}, {2, 0, -4}, {-1, 14, -4}}, {0, 2, 4}},
    {3, {{-3, -27, -3}, {-3, -3, -27}, {0, 0, 21}, {6, 3, 54}}, {1, 1, 1}},
    {2, {{12, -4, -16, 6, 0}, {12, 7, -2, 14, 6}, {3, 0, -1, 12, 0}}, {0, 0, 1}},
    {5, {{625, 75, -5, 175}, {1, 0, 25, 75}, {0, -25, 125, 0}, {-5, 0, 35, 75}}, {0, 1, 2, 2}},
    {2, {{24, -8, 0, 24}, {14, 2, -4, 12}, {12, 12, 2, 6}, {0, 24, 0, 2}, {6, 12, 0, 6}}, {1, 1, 1, 1}},
};

ModMatrix random_matrix(std::size_t r, std::size_t c, const PadicContext& ctx, std::mt19937_64& rng) {
  ModMatrix m(r, c);
  std::uniform_int_distribution<int> val(0, 3);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = ctx.mul(ctx.pow(val(rng)), ctx.reduce(static_cast<std::int64_t>(rng() % 1000)));
  return m;
}

}  // namespace

TEST(Arith, ContextArithmetic) {
  const PadicContext c(3, 4);
  EXPECT_EQ(c.modulus(), 81U);
  EXPECT_EQ(c.reduce(-1), 80U);
  EXPECT_EQ(c.centered(80), -1);
  EXPECT_EQ(c.valuation(54), 3);
  EXPECT_EQ(c.valuation(0), 4);
  EXPECT_EQ(c.mul(c.unit_inverse(5), 5), 1U);
  EXPECT_EQ(c.divide_by_power(18, 2), 2U);
  const PadicContext wide(2, 61);
  EXPECT_EQ(wide.mul(wide.neg(1), wide.neg(1)), 1U);
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(97));
}

TEST(Arith, SmithMatchesIntegerOracle) {
  for (const auto& k : kSnfCases) {
    const PadicContext ctx(k.p, 12);
    const auto m = ModMatrix::from_rows(k.rows, ctx);
    EXPECT_EQ(smith(m, ctx).diag, k.diag);
  }
}

TEST(Arith, SmithTransformsReproduceDiagonal) {
  std::mt19937_64 rng(3);
  for (int p : {2, 3, 5})
    for (int trial = 0; trial < 20; ++trial) {
      const PadicContext ctx(p, 6);
      const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      const auto m = random_matrix(r, c, ctx, rng);
      const auto s = smith(m, ctx, {.want_P = true, .want_Q = true, .want_P_inverse = true});
      EXPECT_TRUE(std::is_sorted(s.diag.begin(), s.diag.end()));
      const auto d = multiply(multiply(s.P, m, ctx), s.Q, ctx);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) EXPECT_EQ(d(i, j), i == j ? ctx.pow(s.diag[i]) : 0U);
      EXPECT_EQ(multiply(s.P, s.P_inverse, ctx), ModMatrix::identity(r));
    }
}

TEST(Arith, CokernelAndSolve) {
  const PadicContext ctx(2, 6);
  const auto m = ModMatrix::from_rows({{2, 0}, {0, 8}, {0, 0}}, ctx);
  const auto cs = cokernel_structure(m, ctx);
  EXPECT_EQ(cs.exponents, (std::vector<int>{1, 3}));
  EXPECT_EQ(cs.saturated, 1);
  const std::vector<Residue> b{4, 8, 0};
  const auto x = solve(m, b, ctx);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(multiply(m, *x, ctx), b);
  EXPECT_FALSE(solve(m, std::vector<Residue>{1, 0, 0}, ctx).has_value());
}

TEST(Arith, ResidueFieldKernels) {
  const PadicContext f(3, 1);
  const auto m = ModMatrix::from_rows({{1, 2, 0}, {2, 1, 0}}, f);
  EXPECT_EQ(rank_fp(m, 3), 1U);
  const auto k = kernel_basis_fp(m, 3);
  EXPECT_EQ(k.size(), 2U);
  for (const auto& v : k) EXPECT_EQ(multiply(m, v, f), (std::vector<Residue>{0, 0}));
  FpEchelon e(3, 3);
  EXPECT_TRUE(e.insert({1, 2, 0}));
  EXPECT_FALSE(e.insert({2, 1, 0}));
  EXPECT_TRUE(e.contains({2, 1, 0}));
  EXPECT_TRUE(e.insert({0, 0, 1}));
  EXPECT_EQ(e.rank(), 2U);
}

TEST(Arith, InverseAndKronecker) {
  const PadicContext ctx(5, 3);
  const auto m = ModMatrix::from_rows({{1, 5}, {3, 7}}, ctx);
  ASSERT_TRUE(is_invertible(m, ctx));
  EXPECT_EQ(multiply(m, inverse(m, ctx), ctx), ModMatrix::identity(2));
  EXPECT_FALSE(is_invertible(ModMatrix::from_rows({{5, 0}, {0, 1}}, ctx), ctx));
  const auto k = kronecker(ModMatrix::identity(2), m, ctx);
  EXPECT_EQ(k.rows(), 4U);
  EXPECT_EQ(k(3, 2), 3U);
}

TEST(Lattice, PreimageAndQuotient) {
  const PadicContext ctx(2, 8);
  // x -> 2x into Z/8: preimage of 0 is 4 Z_2.
  const auto map = ModMatrix::from_rows({{2}}, ctx);
  const auto rel = ModMatrix::from_rows({{8}}, ctx);
  const auto pre = preimage_lattice(map, rel, ctx);
  EXPECT_EQ(lattice_index_exponent(pre.generators, ctx), 2);
  const auto q = lattice_quotient(pre.generators, ModMatrix::from_rows({{16}}, ctx), ctx, pre.precision_loss);
  EXPECT_EQ(q.exponents, std::vector<int>{2});
  EXPECT_TRUE(lattice_contains(pre.generators, std::vector<Residue>{12}, ctx));
  EXPECT_FALSE(lattice_contains(pre.generators, std::vector<Residue>{2}, ctx));
}
