#include "ctkit_cli/commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "ctkit/cohomology.hpp"
#include "ctkit/errors.hpp"
#include "ctkit/io.hpp"
#include "ctkit/jordan.hpp"
#include "ctkit/module.hpp"
#include "ctkit/structure.hpp"
#include "ctkit/zeta.hpp"
#include "ctkit_cli/checks.hpp"

#ifndef CTKIT_VERSION
#define CTKIT_VERSION "unknown"
#endif

namespace ctkit::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<int>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string matrix_text(const ModMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? " " : "") + std::to_string(m(i, j));
  }
  return out.empty() ? "-" : out;
}

std::string subgroup_label(const Subgroup& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.elements().size(); ++i) out += (i ? "," : "") + std::to_string(s.elements()[i]);
  return out + "}";
}

class Run {
 public:
  explicit Run(const RunConfig& c) : config_(c) {
    report_.command = c.command;
    report_.meta.emplace_back("tool", std::string("ctkit ") + CTKIT_VERSION);
    report_.meta.emplace_back("command", c.command);
    report_.meta.emplace_back("seed", std::to_string(c.seed));
  }

  FgModule module() {
    if (config_.module_path.empty()) throw UsageError("--module is required");
    const std::string text = read_input("module", config_.module_path);
    FgModule a = parse_module(text, std::filesystem::path(config_.module_path).parent_path());
    if (config_.p && *config_.p != a.p()) throw UsageError("--p does not match the module's prime");
    if (config_.e) a = a.with_precision(*config_.e);
    set_precision(a.p(), a.precision());
    return a;
  }

  GroupPtr group() {
    GroupPtr g;
    if (!config_.group_path.empty()) {
      g = parse_group(read_input("group", config_.group_path));
    } else if (!config_.catalog.empty()) {
      g = resolve_group_reference("catalog " + config_.catalog);
      report_.meta.emplace_back("group", "catalog " + config_.catalog);
    } else {
      throw UsageError("--group or --catalog is required");
    }
    if (config_.p && *config_.p != g->p()) throw UsageError("--p does not match the group's prime");
    return g;
  }

  void set_precision(int p, std::optional<int> e) {
    report_.meta.emplace_back("p", std::to_string(p));
    if (e) report_.meta.emplace_back("e", std::to_string(*e));
  }

  Report& report() { return report_; }
  const RunConfig& config() const { return config_; }

 private:
  std::string read_input(const std::string& role, const std::string& path) {
    std::string text = read_text_file(path);
    report_.meta.emplace_back("input." + role, "sha256:" + sha256_hex(text));
    return text;
  }

  const RunConfig& config_;
  Report report_;
};

void cmd_invariants(Run& run) {
  const FgModule a = run.module();
  const RankReport r = ranks(a);
  auto& f = run.report().fields;
  f.emplace_back("dim", std::to_string(a.dim()));
  f.emplace_back("torsion", a.torsion_exponents().empty() ? "-" : join(a.torsion_exponents(), " "));
  f.emplace_back("free_rank", std::to_string(a.free_rank()));
  f.emplace_back("d_R", std::to_string(r.d_R));
  f.emplace_back("r_R", std::to_string(r.r_R));
  f.emplace_back("d_K", std::to_string(r.d_K));
}

void cmd_cohomology(Run& run) {
  const RunConfig& c = run.config();
  for (int n : {c.degree_lo, c.degree_hi})
    if (n < kMinDegree || n > kMaxDegree) throw UnsupportedDegree("degree " + std::to_string(n) + " is outside -2..2");
  if (c.degree_lo > c.degree_hi) throw UsageError("empty degree window");
  const FgModule a = run.module();
  Report& r = run.report();
  r.columns = {"subgroup", "order", "degree", "cohomology", "log_order"};
  ScanTable t;
  if (c.all_subgroups) {
    t = ct_definition_scan(a, c.degree_lo, c.degree_hi);
  } else {
    t.subgroups = {whole_group(a.group())};
    t.lo = c.degree_lo;
    t.hi = c.degree_hi;
    std::vector<int> degrees;
    for (int n = c.degree_lo; n <= c.degree_hi; ++n) degrees.push_back(n);
    t.cells = {tate_degrees(a, t.subgroups.front(), degrees)};
  }
  for (std::size_t i = 0; i < t.subgroups.size(); ++i)
    for (std::size_t k = 0; k < t.cells[i].size(); ++k) {
      const CohomologyGroup& h = t.cells[i][k];
      r.rows.push_back({subgroup_label(t.subgroups[i]), std::to_string(t.subgroups[i].order()),
                        std::to_string(h.degree), h.to_string(), std::to_string(h.log_order())});
    }
  r.fields.emplace_back("all_zero", yes_no(t.all_zero()));
}

void witness_fields(Report& r, const CtWitness& w) {
  r.fields.emplace_back("witness_subgroup_order", std::to_string(w.subgroup_order));
  r.fields.emplace_back("witness_degree", std::to_string(w.degree));
  r.fields.emplace_back("witness_cohomology", w.group.to_string());
}

void cmd_split(Run& run) {
  const FgModule a = run.module();
  const SplitResult s = split_theorem_a(a);
  Report& r = run.report();
  r.fields.emplace_back("ct", yes_no(s.splitting.has_value()));
  if (!s.splitting) {
    if (s.witness) witness_fields(r, *s.witness);
    return;
  }
  const Splitting& sp = *s.splitting;
  r.fields.emplace_back("torsion", sp.torsion.torsion_exponents().empty() ? "-" : join(sp.torsion.torsion_exponents(), " "));
  r.fields.emplace_back("free_part_rank", std::to_string(sp.free_part.dim() / a.group()->order()));
  r.fields.emplace_back("checked", yes_no(sp.checked));
  r.fields.emplace_back("inclusion", matrix_text(sp.inclusion));
  r.fields.emplace_back("section", matrix_text(sp.section));
  r.fields.emplace_back("free_basis", matrix_text(sp.free_basis.basis));
}

void cmd_theorem2(Run& run) {
  const FgModule a = run.module();
  const Theorem2Report t = verify_theorem2(a);
  Report& r = run.report();
  r.fields.emplace_back("r_R_M", std::to_string(t.r_R_M));
  r.fields.emplace_back("r_R_L", std::to_string(t.r_R_L));
  r.fields.emplace_back("d_K_coinvariants", std::to_string(t.d_K_coinvariants));
  r.fields.emplace_back("d_R_h1", std::to_string(t.d_R_h1));
  r.fields.emplace_back("formula", std::to_string(t.formula));
  r.fields.emplace_back("match", yes_no(t.match));
  r.fields.emplace_back("ct", yes_no(is_ct_finite(a).ct));
  if (!t.match) r.failed = true;
}

void cmd_tensor(Run& run) {
  const RunConfig& c = run.config();
  if (!c.p) throw UsageError("--p is required");
  const int n = c.n.value_or(1);
  run.set_precision(*c.p, std::nullopt);
  Report& r = run.report();
  r.columns = {"p", "n", "r", "s", "parts"};
  std::istringstream in(tensor_table_csv(*c.p, n));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(cell);
    if (row.size() != 5) continue;
    if (c.r && row[2] != std::to_string(*c.r)) continue;
    if (c.s && row[3] != std::to_string(*c.s)) continue;
    r.rows.push_back(std::move(row));
  }
  if (r.rows.empty()) throw UsageError("r and s must lie in 1..p^n");
}

void cmd_zeta(Run& run) {
  const RunConfig& c = run.config();
  const GroupPtr g = run.group();
  run.set_precision(g->p(), std::nullopt);
  Report& r = run.report();
  const std::size_t budget = c.budget.value_or(default_budget());
  r.meta.emplace_back("d", std::to_string(c.rank));
  r.meta.emplace_back("window", std::to_string(c.window));
  r.meta.emplace_back("budget", std::to_string(budget));
  const ZetaSeries z = fit_rational(zeta_coefficients(g, c.rank, c.window, budget, c.cache_path), c.fit_degree);
  r.columns = {"n", "c_n"};
  for (std::size_t i = 0; i < z.coefficients.size(); ++i)
    r.rows.push_back({std::to_string(i), std::to_string(z.coefficients[i])});
  r.fields.emplace_back("visited", std::to_string(z.visited));
  r.fields.emplace_back("counts_agree", yes_no(z.coefficients == z.basis_counts));
  r.fields.emplace_back("fit", z.fitted ? z.fitted->to_string() : "none");
  if (z.fitted) r.fields.emplace_back("fit_order", std::to_string(z.fitted->order));
  r.companion = r.meta;
  r.companion.insert(r.companion.end(), r.fields.begin(), r.fields.end());
}

void cmd_schmid(Run& run) {
  const GroupPtr g = run.group();
  const FgModule z = build_schmid_module(g);
  run.set_precision(z.p(), z.precision());
  const ScanTable t = ct_definition_scan(z);
  const CtCertificate cert = is_ct_finite(z);
  if (cert.ct != t.all_zero()) throw InternalContradiction("the full scan and the degree-0 test disagree");
  Report& r = run.report();
  r.fields.emplace_back("group_order", std::to_string(g->order()));
  r.fields.emplace_back("module_torsion", z.torsion_exponents().empty() ? "-" : join(z.torsion_exponents(), " "));
  r.fields.emplace_back("quotient_order", std::to_string(z.group()->order()));
  r.fields.emplace_back("ct", yes_no(cert.ct));
  if (auto w = t.first_nonzero()) witness_fields(r, *w);
}

void cmd_selftest(Run& run) {
  const std::uint64_t seed = run.config().seed;
  const auto groups = load_catalog({{"cyclic", {2, 1}}, {"cyclic", {2, 2}}, {"elementary", {2, 2}}, {"cyclic", {3, 1}}});
  const auto cyclic = load_catalog({{"cyclic", {2, 1}}, {"cyclic", {2, 2}}, {"cyclic", {3, 1}}});
  const auto free_groups = load_catalog({{"cyclic", {2, 1}}, {"cyclic", {2, 2}}, {"elementary", {2, 2}},
                                         {"dihedral", {8}}, {"quaternion", {8}}, {"cyclic", {3, 1}}});
  const auto nonabelian = load_catalog({{"dihedral", {8}}, {"quaternion", {8}}});
  const std::size_t budget = run.config().budget.value_or(default_budget());
  std::vector<CheckResult> results{
      check_free_triviality(free_groups, 8),
      check_gaschutz_uchida(groups, 20, seed),
      check_nakayama(groups, 10, seed),
      check_torsion_splitting(groups, 10, seed),
      check_relation_count(groups, 10, seed),
      check_augmentation_ranks(free_groups),
      check_herbrand(cyclic, 20, seed),
      check_hom_freeness({2, 3}, 6),
      check_tensor_tables({2, 3}),
      check_zeta(2, 6, 3, budget),
      check_zeta(3, 6, 3, budget),
      check_schmid(nonabelian),
  };
  Report& r = run.report();
  r.columns = {"check", "result", "detail"};
  int failed = 0;
  for (const auto& c : results) {
    r.rows.push_back({c.name, c.pass ? "PASS" : "FAIL", c.detail});
    failed += !c.pass;
  }
  r.fields.emplace_back("checks", std::to_string(results.size()));
  r.fields.emplace_back("failed", std::to_string(failed));
  r.failed = failed > 0;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

}  // namespace

std::optional<Format> parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "csv") return Format::Csv;
  if (s == "record") return Format::Record;
  return std::nullopt;
}

std::string render(const Report& r, Format f) {
  std::ostringstream os;
  if (f == Format::Csv) {
    if (!r.columns.empty()) {
      for (std::size_t j = 0; j < r.columns.size(); ++j) os << (j ? "," : "") << r.columns[j];
      os << '\n';
      for (const auto& row : r.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_cell(row[j]);
        os << '\n';
      }
    } else {
      os << "key,value\n";
      for (const auto& [k, v] : r.fields) os << k << ',' << csv_cell(v) << '\n';
    }
    return os.str();
  }
  if (f == Format::Record) {
    os << "format: 1\n";
    for (const auto& [k, v] : r.meta) os << k << ": " << v << '\n';
    for (const auto& [k, v] : r.fields) os << k << ": " << v << '\n';
    if (!r.columns.empty()) {
      os << "columns:";
      for (std::size_t j = 0; j < r.columns.size(); ++j) os << (j ? "," : " ") << r.columns[j];
      os << "\nrows: " << r.rows.size() << '\n';
      for (const auto& row : r.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_cell(row[j]);
        os << '\n';
      }
    }
    return os.str();
  }
  for (const auto& [k, v] : r.meta) os << "# " << k << ": " << v << '\n';
  std::size_t key_width = 0;
  for (const auto& kv : r.fields) key_width = std::max(key_width, kv.first.size());
  for (const auto& [k, v] : r.fields) os << k << std::string(key_width - k.size() + 2, ' ') << v << '\n';
  if (!r.columns.empty()) {
    if (!r.fields.empty()) os << '\n';
    std::vector<std::size_t> w(r.columns.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = r.columns[j].size();
    for (const auto& row : r.rows)
      for (std::size_t j = 0; j < row.size() && j < w.size(); ++j) w[j] = std::max(w[j], row[j].size());
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t j = 0; j < cells.size(); ++j) {
        s += cells[j];
        if (j + 1 < cells.size()) s += std::string(w[j] - cells[j].size() + 2, ' ');
      }
      os << s << '\n';
    };
    line(r.columns);
    for (const auto& row : r.rows) line(row);
  }
  return os.str();
}

std::size_t default_budget() {
  const char* env = std::getenv("CTKIT_BUDGET");
  if (!env || !*env) return kDefaultBudget;
  std::size_t v = 0;
  const std::string s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
    throw UsageError("CTKIT_BUDGET must be a positive integer");
  return v;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::pair<int, int> parse_degree_window(const std::string& s) {
  const auto dots = s.find("..");
  auto number = [](const std::string& t) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) throw std::invalid_argument("bad degree '" + t + "'");
    return v;
  };
  if (dots == std::string::npos) {
    const int n = number(s);
    return {n, n};
  }
  return {number(s.substr(0, dots)), number(s.substr(dots + 2))};
}

Report run(const RunConfig& config) {
  Run r(config);
  const std::string& c = config.command;
  if (c == "invariants") cmd_invariants(r);
  else if (c == "cohomology") cmd_cohomology(r);
  else if (c == "split") cmd_split(r);
  else if (c == "theorem2") cmd_theorem2(r);
  else if (c == "tensor") cmd_tensor(r);
  else if (c == "zeta") cmd_zeta(r);
  else if (c == "schmid") cmd_schmid(r);
  else if (c == "selftest") cmd_selftest(r);
  else throw UsageError("unknown command '" + c + "'");
  return r.report();
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const InternalContradiction*>(&e)) return 4;
  if (dynamic_cast<const PrecisionExhausted*>(&e)) return 3;
  if (dynamic_cast<const BudgetExceeded*>(&e)) return 2;
  return 1;
}

}  // namespace ctkit::cli
