#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "ctkit/errors.hpp"
#include "ctkit_cli/commands.hpp"

using namespace ctkit;
using namespace ctkit::cli;

namespace {

std::string data(const std::string& name) { return std::string(CTKIT_TEST_DATA) + "/" + name; }

RunConfig module_config(const std::string& command, const std::string& file) {
  RunConfig c;
  c.command = command;
  c.module_path = data(file);
  return c;
}

std::string field(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.fields)
    if (k == key) return v;
  return "<missing>";
}

std::string meta(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.meta)
    if (k == key) return v;
  return "<missing>";
}

}  // namespace

TEST(Cli, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Cli, DegreeWindow) {
  EXPECT_EQ(parse_degree_window("-2..2"), std::make_pair(-2, 2));
  EXPECT_EQ(parse_degree_window("0"), std::make_pair(0, 0));
  EXPECT_THROW(parse_degree_window("a..1"), std::invalid_argument);
  EXPECT_THROW(parse_degree_window("1.."), std::invalid_argument);
}

TEST(Cli, InvariantsOfFixtures) {
  const Report rg = run(module_config("invariants", "module_rg_c2.txt"));
  EXPECT_EQ(field(rg, "d_R"), "2");
  EXPECT_EQ(field(rg, "r_R"), "1");
  EXPECT_EQ(field(rg, "d_K"), "2");
  const Report triv = run(module_config("invariants", "module_trivial_f2.txt"));
  EXPECT_EQ(field(triv, "d_R"), "1");
  EXPECT_EQ(field(triv, "r_R"), "1");
  EXPECT_EQ(field(triv, "d_K"), "0");
}

TEST(Cli, RecordEmbedsRunIdentity) {
  RunConfig c = module_config("invariants", "module_rg_c2.txt");
  c.seed = 42;
  const Report r = run(c);
  EXPECT_EQ(meta(r, "seed"), "42");
  EXPECT_EQ(meta(r, "p"), "2");
  EXPECT_EQ(meta(r, "e"), "8");
  EXPECT_EQ(meta(r, "input.module").rfind("sha256:", 0), 0u);
  EXPECT_EQ(meta(r, "tool").rfind("ctkit ", 0), 0u);
  const std::string text = render(r, Format::Record);
  EXPECT_EQ(text.rfind("format: 1\n", 0), 0u);
  EXPECT_NE(text.find("\nseed: 42\n"), std::string::npos);
  EXPECT_EQ(text, render(run(c), Format::Record));
}

TEST(Cli, MalformedModuleReportsLine) {
  try {
    run(module_config("invariants", "module_malformed.txt"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 9);
    EXPECT_EQ(exit_code(e), 1);
  }
}

TEST(Cli, CohomologyTables) {
  RunConfig c = module_config("cohomology", "module_rg_c2.txt");
  c.all_subgroups = true;
  EXPECT_EQ(field(run(c), "all_zero"), "yes");

  c.module_path = data("module_rg_mod_aug2_c2.txt");
  c.all_subgroups = false;
  c.degree_lo = c.degree_hi = 0;
  const Report r = run(c);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0][1], "2");
  EXPECT_EQ(r.rows[0][3], "Z/2");

  c.degree_lo = -3;
  EXPECT_THROW(run(c), UnsupportedDegree);
}

TEST(Cli, SplitAndRelationCount) {
  const Report rg = run(module_config("split", "module_rg_c2.txt"));
  EXPECT_EQ(field(rg, "ct"), "yes");
  EXPECT_EQ(field(rg, "checked"), "yes");
  EXPECT_EQ(field(rg, "free_part_rank"), "1");
  const Report bad = run(module_config("split", "module_rg_mod_aug2_c2.txt"));
  EXPECT_EQ(field(bad, "ct"), "no");
  EXPECT_EQ(field(bad, "witness_degree"), "0");
  const Report t2 = run(module_config("theorem2", "module_trivial_f2.txt"));
  EXPECT_EQ(field(t2, "r_R_M"), "2");
  EXPECT_EQ(field(t2, "match"), "yes");
}

TEST(Cli, TensorCsv) {
  RunConfig c;
  c.command = "tensor";
  c.p = 2;
  c.r = 2;
  c.s = 2;
  EXPECT_EQ(render(run(c), Format::Csv), "p,n,r,s,parts\n2,1,2,2,2+2\n");
  c.r = 5;
  EXPECT_ANY_THROW(run(c));
}

TEST(Cli, ZetaCsvAndBudget) {
  RunConfig c;
  c.command = "zeta";
  c.catalog = "cyclic 2 1";
  c.window = 3;
  c.fit_degree = 1;
  const Report r = run(c);
  EXPECT_EQ(render(r, Format::Csv), "n,c_n\n0,1\n1,0\n2,1\n3,2\n");
  EXPECT_EQ(field(r, "counts_agree"), "yes");
  c.budget = 4;
  try {
    run(c);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(exit_code(e), 2);
  }
}

TEST(Cli, BudgetFromEnvironment) {
  setenv("CTKIT_BUDGET", "123", 1);
  EXPECT_EQ(default_budget(), 123u);
  setenv("CTKIT_BUDGET", "many", 1);
  EXPECT_ANY_THROW(default_budget());
  unsetenv("CTKIT_BUDGET");
}

TEST(Cli, Schmid) {
  RunConfig c;
  c.command = "schmid";
  for (const char* g : {"dihedral 8", "quaternion 8"}) {
    c.catalog = g;
    EXPECT_EQ(field(run(c), "ct"), "no") << g;
  }
  c.catalog = "";
  c.group_path = data("group_dihedral8.txt");
  const Report r = run(c);
  EXPECT_EQ(field(r, "ct"), "no");
  EXPECT_EQ(meta(r, "input.group").rfind("sha256:", 0), 0u);
  c.group_path = "";
  c.catalog = "cyclic 2 2";
  try {
    run(c);
    FAIL() << "expected GroupError";
  } catch (const GroupError& e) {
    EXPECT_EQ(e.kind(), GroupErrorKind::Abelian);
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(exit_code(InternalContradiction("x")), 4);
  EXPECT_EQ(exit_code(PrecisionExhausted("x")), 3);
  EXPECT_EQ(exit_code(BudgetExceeded("x")), 2);
  EXPECT_EQ(exit_code(ValidationError("x")), 1);
}

TEST(Cli, SelftestPassesAndIsDeterministic) {
  RunConfig c;
  c.command = "selftest";
  c.seed = 3;
  const Report a = run(c);
  EXPECT_FALSE(a.failed);
  EXPECT_EQ(render(a, Format::Record), render(run(c), Format::Record));
}
