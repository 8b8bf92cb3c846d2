#include <gtest/gtest.h>

#include "ctkit/errors.hpp"
#include "ctkit/module.hpp"

using namespace ctkit;

TEST(Module, RanksOfStandardModules) {
  const auto g = catalog("dihedral", {8});
  const PadicContext ctx(2, 8);
  EXPECT_EQ(ranks(regular_module(g, 1, ctx)), (RankReport{8, 1, 8}));
  EXPECT_EQ(ranks(regular_module(g, 3, ctx)), (RankReport{24, 3, 24}));
  EXPECT_EQ(ranks(trivial_module(g, {1}, 0, ctx)), (RankReport{1, 1, 0}));
  EXPECT_EQ(ranks(augmentation_ideal(g, ctx)).r_R, 2);
  const auto perm = permutation_module(center(g), 2, ctx);
  EXPECT_EQ(perm.dim(), 4);
  EXPECT_EQ(perm.log_order(), 8);
  EXPECT_EQ(ranks(perm).r_R, 1);
}

TEST(Module, ValidationNamesViolations) {
  const auto g = cyclic_group(2, 1);
  const PadicContext ctx(2, 8);
  const FgModule bad(ctx, g, {}, 1, {ModMatrix::from_rows({{3}}, ctx)});
  EXPECT_FALSE(validate(bad).empty());
  EXPECT_THROW(require_valid(bad), ValidationError);
  EXPECT_TRUE(validate(regular_module(g, 2, ctx)).empty());
  EXPECT_EQ(minimum_precision(*g, 3), 6);
}

TEST(Module, QuotientStructure) {
  const auto g = cyclic_group(3, 1);
  const PadicContext ctx(3, 8);
  const auto rg = regular_module(g, 1, ctx);
  const auto q = quotient_module(rg, std::vector<std::vector<std::int64_t>>{{3, 0, 0}});
  EXPECT_EQ(q.torsion_exponents(), (std::vector<int>{1, 1, 1}));
  EXPECT_TRUE(q.is_finite());
  const auto aug2 = group_ring_mod_augmentation_power(g, 2, ctx);
  EXPECT_EQ(aug2.free_rank(), 1);
  EXPECT_EQ(aug2.torsion_exponents(), std::vector<int>{1});
  EXPECT_TRUE(validate(aug2).empty());
}

TEST(Module, TorsionSplitOfDirectSum) {
  const auto g = abelian_group(2, {1, 1});
  const PadicContext ctx(2, 8);
  const auto a = direct_sum(trivial_module(g, {2}, 0, ctx), regular_module(g, 1, ctx));
  EXPECT_EQ(a.torsion_exponents(), std::vector<int>{2});
  EXPECT_EQ(a.free_rank(), 4);
  EXPECT_EQ(torsion_submodule(a).module.dim(), 1);
  EXPECT_EQ(quotient_by_torsion(a).dim(), 4);
}

TEST(Module, CoinvariantsAndFixedPoints) {
  const auto g = cyclic_group(2, 2);
  const PadicContext ctx(2, 8);
  const auto rg = regular_module(g, 1, ctx);
  const auto co = coinvariants(rg);
  EXPECT_EQ(co.free_rank(), 1);
  EXPECT_TRUE(co.torsion_exponents().empty());
  const auto aug = augmentation_ideal(g, ctx);
  EXPECT_EQ(coinvariants(aug).torsion_exponents(), std::vector<int>{2});
  EXPECT_EQ(fixed_points(rg).generators.rows(), 4U);
}

TEST(Module, RestrictionAndPrecision) {
  const auto g = catalog("quaternion", {8});
  const PadicContext ctx(2, 9);
  const auto a = random_finite_module(g, ctx, {}, 42);
  const auto b = random_finite_module(g, ctx, {}, 42);
  EXPECT_EQ(a.action(), b.action());
  EXPECT_TRUE(validate(a).empty());
  const auto up = a.with_precision(14);
  EXPECT_EQ(up.torsion_exponents(), a.torsion_exponents());
  EXPECT_TRUE(validate(up).empty());
  for (const auto& s : subgroups(g)) {
    const auto r = restrict(a, s);
    EXPECT_EQ(r.group()->order(), s.order());
    EXPECT_TRUE(validate(r).empty());
  }
}

TEST(Module, RandomModulesAreValid) {
  for (const auto& g : {cyclic_group(2, 2), abelian_group(2, {1, 1}), cyclic_group(3, 1), catalog("dihedral", {8})}) {
    const PadicContext ctx(g->p(), minimum_precision(*g, 2) + 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto a = random_finite_module(g, ctx, {}, seed);
      EXPECT_TRUE(a.is_finite());
      EXPECT_LE(a.max_exponent(), 2);
      EXPECT_TRUE(validate(a).empty()) << g->name() << " seed " << seed;
    }
  }
}

TEST(Module, SchmidModule) {
  const auto d8 = catalog("dihedral", {8});
  const auto z = build_schmid_module(d8);
  EXPECT_EQ(z.group()->order(), 4);
  EXPECT_EQ(z.log_order(), 1);
  EXPECT_THROW(build_schmid_module(abelian_group(2, {1, 1})), GroupError);
}
