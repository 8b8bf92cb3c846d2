#include <gtest/gtest.h>

#include "ctkit/cohomology.hpp"
#include "ctkit/errors.hpp"

using namespace ctkit;

namespace {

std::vector<int> exps(const CohomologyGroup& h) { return h.exponents; }

}  // namespace

TEST(Cohomology, TrivialModuleOverCyclic) {
  for (int p : {2, 3}) {
    const auto g = cyclic_group(p, 1);
    const PadicContext ctx(p, 8);
    const auto z = trivial_module(g, {}, 1, ctx);
    EXPECT_EQ(exps(tate(z, 0)), std::vector<int>{1});
    EXPECT_TRUE(tate(z, 1).is_zero());
    EXPECT_EQ(exps(tate(z, 2)), std::vector<int>{1});
    EXPECT_TRUE(tate(z, -1).is_zero());
    EXPECT_EQ(exps(tate(z, -2)), std::vector<int>{1});
  }
}

TEST(Cohomology, KleinFourTrivial) {
  const auto g = abelian_group(2, {1, 1});
  const PadicContext ctx(2, 10);
  const auto z = trivial_module(g, {}, 1, ctx);
  EXPECT_EQ(exps(tate(z, 0)), std::vector<int>{2});
  EXPECT_TRUE(tate(z, 1).is_zero());
  EXPECT_EQ(exps(tate(z, 2)), (std::vector<int>{1, 1}));
  EXPECT_EQ(exps(tate(z, -1)), std::vector<int>{});
  EXPECT_EQ(exps(tate(z, -2)), (std::vector<int>{1, 1}));
}

TEST(Cohomology, RegularModuleIsCt) {
  const auto g = catalog("dihedral", {8});
  const PadicContext ctx(2, 10);
  const auto rg = regular_module(g, 1, ctx);
  const auto scan = ct_definition_scan(rg);
  EXPECT_TRUE(scan.all_zero());
}

TEST(Cohomology, GroupRingModSquareOfAugmentationIsNotCt) {
  const auto g = cyclic_group(2, 2);
  const PadicContext ctx(2, 10);
  const auto m = group_ring_mod_augmentation_power(g, 2, ctx);
  EXPECT_FALSE(m.is_finite());
  EXPECT_FALSE(is_ct(m).ct);
  EXPECT_FALSE(certificate_from_scan(ct_definition_scan(m)).ct);
}

TEST(Cohomology, ReferenceAgrees) {
  for (const auto& [name, params] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"cyclic", {2, 2}}, {"elementary", {2, 2}}, {"dihedral", {8}}, {"cyclic", {3, 1}}}) {
    const auto g = catalog(name, params);
    const PadicContext ctx(g->p(), 10);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto a = random_finite_module(g, ctx, {}, seed);
      for (const auto& s : subgroups(g))
        for (int n = kMinDegree; n <= kMaxDegree; ++n)
          EXPECT_EQ(exps(tate(a, s, n)), exps(tate_reference(a, s, n)))
              << name << " seed " << seed << " |S|=" << s.order() << " n=" << n;
    }
  }
}

TEST(Cohomology, IntegersAgainstAbelianization) {
  // H^2(G, Z) and H_1(G, Z) are both G^ab; H^1 and the norm kernel vanish.
  for (const auto& [name, params] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"quaternion", {8}}, {"dihedral", {8}}, {"modular", {2, 4}}, {"heisenberg", {3}}, {"cyclic", {3, 2}}}) {
    const auto g = catalog(name, params);
    const auto z = trivial_module(g, {}, 1, PadicContext(g->p(), 8));
    const auto ab = abelianization_invariants(g);
    const auto hs = tate_degrees(z, whole_group(g), {-2, -1, 0, 1, 2});
    EXPECT_EQ(hs[0].exponents, ab) << g->name();
    EXPECT_TRUE(hs[1].is_zero()) << g->name();
    EXPECT_EQ(hs[2].log_order(), g->log_order()) << g->name();
    EXPECT_EQ(hs[2].exponents.size(), 1U) << g->name();
    EXPECT_TRUE(hs[3].is_zero()) << g->name();
    EXPECT_EQ(hs[4].exponents, ab) << g->name();
  }
}

TEST(Cohomology, AugmentationIdealShiftsDegree) {
  const auto g = catalog("quaternion", {8});
  const PadicContext ctx(2, 8);
  const auto z = trivial_module(g, {}, 1, ctx);
  const auto i = augmentation_ideal(g, ctx);
  for (int n = -1; n <= 2; ++n) EXPECT_EQ(tate(i, n).exponents, tate(z, n - 1).exponents) << n;
}

TEST(Cohomology, HerbrandAndPeriodicityOnCyclic) {
  for (const auto& g : {cyclic_group(2, 2), cyclic_group(3, 1), cyclic_group(2, 3)}) {
    const PadicContext ctx(g->p(), 10);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto a = random_finite_module(g, ctx, {}, seed);
      const auto h = tate_degrees(a, whole_group(g), {-2, -1, 0, 1, 2});
      EXPECT_EQ(h[2].log_order(), h[1].log_order());
      EXPECT_EQ(h[0].exponents, h[2].exponents);
      EXPECT_EQ(h[1].exponents, h[3].exponents);
      EXPECT_EQ(h[2].exponents, h[4].exponents);
    }
  }
}

TEST(Cohomology, ErrorsAndResolution) {
  const auto g = cyclic_group(2, 1);
  const auto z = trivial_module(g, {}, 1, PadicContext(2, 8));
  EXPECT_THROW(tate(z, 3), UnsupportedDegree);
  EXPECT_THROW(ct_definition_scan(z, -3, 0), UnsupportedDegree);
  EXPECT_THROW(is_ct_finite(z), ValidationError);
  EXPECT_EQ(resolution_ranks(catalog("quaternion", {8}), 6), (std::vector<int>{1, 2, 2, 1}));
  EXPECT_EQ(resolution_ranks(abelian_group(2, {1, 1}), 6), (std::vector<int>{1, 2, 3, 4}));
}

TEST(Cohomology, TrivialSubgroupIsZero) {
  const auto g = catalog("dihedral", {8});
  const auto z = trivial_module(g, {}, 1, PadicContext(2, 8));
  EXPECT_TRUE(tate(z, trivial_subgroup(g), 0).is_zero());
}
