#include <gtest/gtest.h>

#include "ctkit/errors.hpp"
#include "ctkit/group.hpp"

using namespace ctkit;

namespace {

struct GroupFacts {
  std::string name;
  std::vector<int> params;
  int order;
  int subgroups;
  int center;
  std::vector<int> abelianization;
};

// Standard small-group data.
const std::vector<GroupFacts> kFacts = {
    {"cyclic", {2, 2}, 4, 3, 4, {2}},
    {"elementary", {2, 2}, 4, 5, 4, {1, 1}},
    {"dihedral", {8}, 8, 10, 2, {1, 1}},
    {"quaternion", {8}, 8, 6, 2, {1, 1}},
    {"dihedral", {16}, 16, 19, 2, {1, 1}},
    {"quaternion", {16}, 16, 11, 2, {1, 1}},
    {"semidihedral", {16}, 16, 15, 2, {1, 1}},
    {"modular", {2, 4}, 16, 11, 4, {1, 2}},
    {"cyclic", {3, 2}, 9, 3, 9, {2}},
    {"elementary", {3, 2}, 9, 6, 9, {1, 1}},
    {"heisenberg", {3}, 27, 19, 3, {1, 1}},
    {"elementary", {2, 3}, 8, 16, 8, {1, 1, 1}},
};

}  // namespace

TEST(Group, CatalogFacts) {
  for (const auto& f : kFacts) {
    const auto g = catalog(f.name, f.params);
    EXPECT_EQ(g->order(), f.order) << g->name();
    EXPECT_EQ(static_cast<int>(subgroups(g).size()), f.subgroups) << g->name();
    EXPECT_EQ(center(g).order(), f.center) << g->name();
    EXPECT_EQ(abelianization_invariants(g), f.abelianization) << g->name();
  }
}

TEST(Group, FrattiniQuotientIsElementary) {
  for (const auto& f : kFacts) {
    const auto g = catalog(f.name, f.params);
    const auto phi = frattini(g);
    const auto q = quotient(g, phi);
    const auto inv = abelian_invariants(*q.group);
    EXPECT_TRUE(std::all_of(inv.begin(), inv.end(), [](int a) { return a == 1; })) << g->name();
    EXPECT_EQ(inv.size(), minimal_generators(*g).size()) << g->name();
  }
}

TEST(Group, TableValidation) {
  using K = GroupErrorKind;
  auto kind = [](const std::vector<std::vector<int>>& t) {
    try {
      PGroup::from_cayley_table(t);
    } catch (const GroupError& e) {
      return e.kind();
    }
    return K::Malformed;
  };
  EXPECT_EQ(kind({{0, 1, 2}, {1, 2, 0}, {2, 0, 0}}), K::NotAssociative);
  EXPECT_EQ(kind({{1, 0}, {1, 0}}), K::NoIdentity);
  EXPECT_EQ(kind({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0}}), K::Malformed);
  EXPECT_EQ(kind({{0, 1, 2, 3, 4, 5}, {1, 2, 0, 4, 5, 3}, {2, 0, 1, 5, 3, 4}, {3, 5, 4, 0, 2, 1}, {4, 3, 5, 1, 0, 2},
                  {5, 4, 3, 2, 1, 0}}),
            K::NotPPower);
  EXPECT_THROW(catalog("dihedral", {12}), GroupError);
  EXPECT_THROW(catalog("unknown", {}), GroupError);
}

TEST(Group, SubgroupsAndQuotients) {
  const auto d8 = catalog("dihedral", {8});
  int normal = 0;
  for (const auto& s : subgroups(d8)) normal += s.is_normal();
  EXPECT_EQ(normal, 6);
  const auto q = quotient(d8, center(d8));
  EXPECT_EQ(abelian_invariants(*q.group), (std::vector<int>{1, 1}));
  EXPECT_EQ(commutator_subgroup(d8).order(), 2);
  const auto prod = direct_product(*cyclic_group(2, 1), *catalog("quaternion", {8}));
  EXPECT_EQ(prod->order(), 16);
  EXPECT_EQ(center(prod).order(), 4);
}

TEST(Group, PowersAndInverses) {
  const auto g = catalog("modular", {3, 3});
  for (int x = 0; x < g->order(); ++x) {
    EXPECT_EQ(g->mul(x, g->inverse(x)), 0);
    EXPECT_EQ(g->power(x, g->element_order(x)), 0);
  }
}
