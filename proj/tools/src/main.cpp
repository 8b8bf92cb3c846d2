#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ctkit_cli/commands.hpp"

using ctkit::cli::Format;
using ctkit::cli::RunConfig;

namespace {

void module_options(CLI::App* app, RunConfig& c) {
  app->add_option("--module", c.module_path, "module file")->required()->check(CLI::ExistingFile);
}

void common_options(CLI::App* app, RunConfig& c, std::string& format) {
  app->add_option("--p", c.p, "prime (checked against the input)");
  app->add_option("--e", c.e, "working precision p^e");
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--budget", c.budget, "enumeration budget (default $CTKIT_BUDGET)");
  app->add_option("--out", c.out_path, "write the output to this file");
  app->add_option("--format", format, "table, csv or record")->check(CLI::IsMember({"table", "csv", "record"}));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomological triviality toolkit for modules over Z_p[G]"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "table";
  std::string degrees;

  auto* inv = app.add_subcommand("invariants", "d_R, r_R and d_K of a module");
  module_options(inv, c);

  auto* coh = app.add_subcommand("cohomology", "Tate cohomology table");
  module_options(coh, c);
  coh->add_option("--degrees", degrees, "degree window LO..HI within -2..2");
  coh->add_flag("--all-subgroups", c.all_subgroups, "scan every subgroup, not just G");

  auto* split = app.add_subcommand("split", "torsion splitting of a CT module, or a witness");
  module_options(split, c);

  auto* thm2 = app.add_subcommand("theorem2", "relation count of a minimal presentation");
  module_options(thm2, c);

  auto* tensor = app.add_subcommand("tensor", "Jordan types of V_r (x) V_s over F_p[C_{p^n}]");
  tensor->add_option("--n", c.n, "cyclic group of order p^n (default 1)");
  tensor->add_option("--r", c.r, "first block size");
  tensor->add_option("--s", c.s, "second block size");

  auto* zeta = app.add_subcommand("zeta", "free submodule counts of (Z_pG)^d");
  zeta->add_option("--group", c.group_path, "group file")->check(CLI::ExistingFile);
  zeta->add_option("--catalog", c.catalog, "catalog group, e.g. \"cyclic 2 1\"");
  zeta->add_option("--rank", c.rank, "d (default 1)")->check(CLI::PositiveNumber);
  zeta->add_option("--window", c.window, "N: count submodules of index at most p^N")->check(CLI::NonNegativeNumber);
  zeta->add_option("--fit-degree", c.fit_degree, "largest recurrence order to fit")->check(CLI::PositiveNumber);
  zeta->add_option("--cache", c.cache_path, "resumable cache file");

  auto* schmid = app.add_subcommand("schmid", "CT test of Z(Phi(G)) over G/Phi(G)");
  schmid->add_option("--group", c.group_path, "group file")->check(CLI::ExistingFile);
  schmid->add_option("--catalog", c.catalog, "catalog group, e.g. \"quaternion 8\"");

  auto* selftest = app.add_subcommand("selftest", "seeded invariant checks, one line per property");

  for (auto* sub : {inv, coh, split, thm2, tensor, zeta, schmid, selftest}) common_options(sub, c, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  c.command = app.get_subcommands().front()->get_name();
  c.format = *ctkit::cli::parse_format(format);
  try {
    if (!degrees.empty()) std::tie(c.degree_lo, c.degree_hi) = ctkit::cli::parse_degree_window(degrees);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    const ctkit::cli::Report report = ctkit::cli::run(c);
    const std::string text = ctkit::cli::render(report, c.format);
    if (c.out_path.empty()) {
      std::cout << text;
    } else {
      write_file(c.out_path, text);
      if (c.format == Format::Csv && !report.companion.empty()) {
        ctkit::cli::Report fit;
        fit.fields = report.companion;
        write_file(c.out_path + ".fit", ctkit::cli::render(fit, Format::Record));
      }
    }
    return report.failed ? 4 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ctkit::cli::exit_code(e);
  }
}
