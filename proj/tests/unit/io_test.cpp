#include <gtest/gtest.h>

#include <filesystem>

#include "ctkit/cohomology.hpp"
#include "ctkit/errors.hpp"
#include "ctkit/io.hpp"

using namespace ctkit;

namespace {

std::filesystem::path data(const std::string& name) { return std::filesystem::path(CTKIT_TEST_DATA) / name; }

}  // namespace

TEST(Io, GroupRoundTrip) {
  const auto g = read_group_file(data("group_dihedral8.txt"));
  EXPECT_EQ(g->order(), 8);
  EXPECT_FALSE(g->is_abelian());
  EXPECT_EQ(serialize_group(*g), read_text_file(data("group_dihedral8.txt")));
}

TEST(Io, IdentityIsRelabelled) {
  const auto g = read_group_file(data("group_cyclic4_shuffled.txt"));
  EXPECT_EQ(g->order(), 4);
  EXPECT_EQ(g->mul(0, 1), 1);
  EXPECT_EQ(g->element_order(g->generators().front()), 4);
}

TEST(Io, ModuleFixtures) {
  const auto rg = read_module_file(data("module_rg_c2.txt"));
  EXPECT_EQ(ranks(rg), (RankReport{2, 1, 2}));
  const auto f2 = read_module_file(data("module_trivial_f2.txt"));
  EXPECT_EQ(ranks(f2), (RankReport{1, 1, 0}));
  const auto q = read_module_file(data("module_rg_mod_aug2_c2.txt"));
  EXPECT_FALSE(tate(q, 0).is_zero());
  const auto d = read_module_file(data("module_dihedral8_file.txt"));
  EXPECT_EQ(d.group()->order(), 8);
}

TEST(Io, ModuleRoundTripIsBitExact) {
  for (const char* name : {"module_rg_c2.txt", "module_rg_mod_aug2_c2.txt", "module_dihedral8_file.txt"}) {
    const auto a = read_module_file(data(name));
    const auto text = serialize_module(a);
    EXPECT_EQ(serialize_module(parse_module(text)), text) << name;
  }
  const auto rand = random_finite_module(catalog("quaternion", {8}), PadicContext(2, 9), {}, 7);
  const auto text = serialize_module(rand);
  EXPECT_EQ(serialize_module(parse_module(text)), text);
}

TEST(Io, ParseErrorsCarryLineNumbers) {
  try {
    read_module_file(data("module_malformed.txt"));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 9);
  }
  EXPECT_THROW(parse_module("format: 2\n"), ParseError);
  EXPECT_THROW(parse_module("format: 1\np: 2\ne: 8\ngroup: catalog nosuch 3\n"), ParseError);
  EXPECT_THROW(parse_group("format: 1\norder: 2\ntable:\n0 1\n"), ParseError);
  EXPECT_THROW(parse_group("format: 1\norder: 3\ntable:\n0 1 2\n1 2 0\n2 0 0\n"), GroupError);
}

TEST(Io, InvalidActionIsRejected) {
  EXPECT_THROW(parse_module("format: 1\np: 2\ne: 8\ngroup: catalog cyclic 2 1\ntorsion:\nfree_rank: 1\naction:\n3\n"),
               ValidationError);
}
