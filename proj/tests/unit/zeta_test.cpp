#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <set>

#include "ctkit/errors.hpp"
#include "ctkit/module.hpp"
#include "ctkit/zeta.hpp"

using namespace ctkit;

namespace {

// All additive subgroups of (Z/p^N)^D closed under the generator matrices, by closure from below.
std::size_t naive_invariant_count(const FgModule& l, int window) {
  const int p = l.p();
  const auto dim = static_cast<std::size_t>(l.dim());
  const PadicContext ctx(p, window);
  std::size_t size = 1;
  for (std::size_t i = 0; i < dim * static_cast<std::size_t>(window); ++i) size *= static_cast<std::size_t>(p);
  const Residue q = ctx.modulus();
  auto encode = [&](const std::vector<Residue>& v) {
    std::size_t code = 0;
    for (auto x : v) code = code * q + x;
    return code;
  };
  auto decode = [&](std::size_t code) {
    std::vector<Residue> v(dim);
    for (std::size_t i = dim; i-- > 0;) {
      v[i] = code % q;
      code /= q;
    }
    return v;
  };
  // H + (additive span of the G-orbit of c); both summands are G-invariant.
  auto close = [&](const std::vector<bool>& h, std::size_t c) {
    const auto v = decode(c);
    std::vector<std::size_t> span{0};
    std::vector<bool> in(size, false);
    in[0] = true;
    for (int x = 0; x < l.group()->order(); ++x) {
      const auto u = multiply(l.element_action(x).reduced(ctx), v, ctx);
      const std::size_t before = span.size();
      for (std::size_t k = 0; k < before; ++k) {
        auto w = decode(span[k]);
        for (;;) {
          for (std::size_t i = 0; i < dim; ++i) w[i] = ctx.add(w[i], u[i]);
          const auto code = encode(w);
          if (in[code]) break;
          in[code] = true;
          span.push_back(code);
        }
      }
    }
    std::vector<bool> out(size, false);
    for (std::size_t a = 0; a < size; ++a) {
      if (!h[a]) continue;
      const auto x = decode(a);
      for (auto b : span) {
        auto y = decode(b);
        for (std::size_t i = 0; i < dim; ++i) y[i] = ctx.add(y[i], x[i]);
        out[encode(y)] = true;
      }
    }
    return out;
  };
  std::set<std::vector<bool>> seen;
  std::vector<std::vector<bool>> frontier;
  std::vector<bool> zero(size, false);
  zero[0] = true;
  seen.insert(zero);
  frontier.push_back(zero);
  while (!frontier.empty()) {
    const auto cur = frontier.back();
    frontier.pop_back();
    for (std::size_t c = 0; c < size; ++c) {
      if (cur[c]) continue;
      auto next = close(cur, c);
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return seen.size();
}

}  // namespace

TEST(Zeta, CanonicalFormIsUnique) {
  const PadicContext ctx(3, 2);
  const auto a = ModMatrix::from_rows({{3, 1}, {0, 3}}, ctx);
  const auto b = ModMatrix::from_rows({{3, 4}, {0, 3}}, ctx);
  EXPECT_EQ(canonical_submodule(a, 3, 2), canonical_submodule(b, 3, 2));
  const auto f = canonical_submodule(a, 3, 2);
  EXPECT_EQ(f.exponents, (std::vector<int>{1, 1}));
  EXPECT_EQ(f.basis(0, 1), 1U);
}

TEST(Zeta, InvariantSubmoduleAnchors) {
  EXPECT_EQ(invariant_submodules(catalog("trivial", {2}), 1, 2).size(), 3U);
  EXPECT_EQ(invariant_submodules(cyclic_group(2, 1), 1, 1).size(), 3U);
}

TEST(Zeta, InvariantSubmodulesMatchNaiveClosure) {
  for (const auto& [g, d, n] : std::vector<std::tuple<GroupPtr, int, int>>{
           {cyclic_group(2, 1), 1, 2}, {cyclic_group(2, 1), 1, 3}, {cyclic_group(3, 1), 1, 1},
           {cyclic_group(2, 1), 2, 1}, {abelian_group(2, {1, 1}), 1, 1}, {cyclic_group(2, 2), 1, 2}}) {
    const auto l = regular_module(g, d, PadicContext(g->p(), n + 2));
    EXPECT_EQ(invariant_submodules(g, d, n).size(), naive_invariant_count(l, n)) << g->name() << " d=" << d;
  }
}

TEST(Zeta, BudgetIsEnforced) {
  EXPECT_THROW(invariant_submodules(cyclic_group(3, 1), 1, 5, 1000), BudgetExceeded);
  EXPECT_THROW(zeta_coefficients(cyclic_group(3, 1), 1, 6, 20), BudgetExceeded);
}

TEST(Zeta, TrivialGroupCountsOne) {
  const auto z = zeta_coefficients(catalog("trivial", {3}), 1, 5);
  EXPECT_EQ(z.coefficients, (std::vector<std::int64_t>{1, 1, 1, 1, 1, 1}));
}

TEST(Zeta, CyclicOfPrimeOrder) {
  for (int p : {2, 3}) {
    const int window = p == 2 ? 6 : 4;
    const auto z = zeta_coefficients(cyclic_group(p, 1), 1, window);
    for (int n = 0; n <= window; ++n) {
      const std::int64_t expect = n == 0 ? 1 : n == 1 ? 0 : static_cast<std::int64_t>(p - 1) * (n - 1);
      EXPECT_EQ(z.coefficients[static_cast<std::size_t>(n)], expect) << "p=" << p << " n=" << n;
    }
    EXPECT_EQ(z.coefficients, z.basis_counts);
    const auto shorter = zeta_coefficients(cyclic_group(p, 1), 1, window - 1);
    EXPECT_TRUE(std::equal(shorter.coefficients.begin(), shorter.coefficients.end(), z.coefficients.begin()));
  }
}

TEST(Zeta, CacheResumes) {
  const auto path = (std::filesystem::temp_directory_path() / "ctkit_zeta_cache_test.txt").string();
  std::remove(path.c_str());
  const auto g = cyclic_group(2, 1);
  zeta_coefficients(g, 1, 3, kDefaultBudget, path);
  const auto resumed = zeta_coefficients(g, 1, 6, kDefaultBudget, path);
  const auto direct = zeta_coefficients(g, 1, 6);
  EXPECT_EQ(resumed.coefficients, direct.coefficients);
  const auto truncated = zeta_coefficients(g, 1, 2, kDefaultBudget, path);
  EXPECT_EQ(truncated.coefficients.size(), 3U);
  std::remove(path.c_str());
}

TEST(Zeta, FitRational) {
  const auto geometric = fit_rational(std::vector<std::int64_t>{1, 1, 1, 1, 1}, 2);
  ASSERT_TRUE(geometric.has_value());
  EXPECT_EQ(geometric->denominator, (std::vector<Fraction>{{1, 1}, {-1, 1}}));
  const auto poly = fit_rational(std::vector<std::int64_t>{1, 0, 0, 0}, 1);
  ASSERT_TRUE(poly.has_value());
  EXPECT_EQ(poly->denominator, (std::vector<Fraction>{{1, 1}}));
  EXPECT_EQ(poly->numerator, (std::vector<Fraction>{{1, 1}}));
  EXPECT_FALSE(fit_rational(std::vector<std::int64_t>{1, 2, 3}, 2).has_value());
  // 1 + t^2 / (1 - t)^2
  const auto c2 = fit_rational(std::vector<std::int64_t>{1, 0, 1, 2, 3, 4, 5, 6, 7}, 4);
  ASSERT_TRUE(c2.has_value());
  EXPECT_EQ(c2->order, 3);
  EXPECT_EQ(c2->denominator, (std::vector<Fraction>{{1, 1}, {-2, 1}, {1, 1}}));
  EXPECT_EQ(c2->numerator, (std::vector<Fraction>{{1, 1}, {-2, 1}, {2, 1}}));
  EXPECT_EQ(c2->expand(10).back(), (Fraction{8, 1}));
  EXPECT_EQ(c2->to_string(), "(1 - 2t + 2t^2) / (1 - 2t + t^2)");
}
