#include "ctkit/zeta.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ctkit/cohomology.hpp"
#include "ctkit/errors.hpp"
#include "ctkit/module.hpp"
#include "ctkit/structure.hpp"

namespace ctkit {

int SubmoduleForm::index() const {
  int s = 0;
  for (int a : exponents) s += a;
  return s;
}

bool operator<(const SubmoduleForm& a, const SubmoduleForm& b) {
  if (a.exponents != b.exponents) return a.exponents < b.exponents;
  return a.basis.data() < b.basis.data();
}

SubmoduleForm canonical_submodule(const ModMatrix& generators, int p, int window) {
  const PadicContext ctx(p, window);
  const std::size_t dim = generators.rows();
  std::vector<std::vector<Residue>> pool;
  for (std::size_t j = 0; j < generators.cols(); ++j) {
    auto v = generators.column(j);
    for (auto& x : v) x = ctx.reduce_wide(x);
    if (std::any_of(v.begin(), v.end(), [](Residue x) { return x != 0; })) pool.push_back(std::move(v));
  }
  ModMatrix h(dim, dim);
  std::vector<int> a(dim, window);
  for (std::size_t i = dim; i-- > 0;) {
    std::size_t best = pool.size();
    int bv = window;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      const int v = ctx.valuation(pool[k][i]);
      if (v < bv) {
        bv = v;
        best = k;
      }
    }
    if (best == pool.size()) continue;
    std::vector<Residue> v = std::move(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    const Residue u = ctx.unit_inverse(ctx.divide_by_power(v[i], bv));
    for (auto& x : v) x = ctx.mul(x, u);
    for (auto& w : pool) {
      if (w[i] == 0) continue;
      const Residue q = ctx.divide_by_power(w[i], bv);
      for (std::size_t r = 0; r < dim; ++r) w[r] = ctx.sub(w[r], ctx.mul(q, v[r]));
    }
    if (bv > 0) {
      std::vector<Residue> shifted(dim);
      for (std::size_t r = 0; r < dim; ++r) shifted[r] = ctx.mul(v[r], ctx.pow(window - bv));
      pool.push_back(std::move(shifted));
    }
    std::erase_if(pool, [](const std::vector<Residue>& w) {
      return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
    });
    a[i] = bv;
    for (std::size_t r = 0; r < dim; ++r) h(r, i) = v[r];
  }
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = j; i-- > 0;) {
      if (a[i] >= window) continue;
      const Residue q = h(i, j) / ctx.pow(a[i]);
      if (q == 0) continue;
      for (std::size_t r = 0; r <= i; ++r) h(r, j) = ctx.sub(h(r, j), ctx.mul(q, h(r, i)));
    }
  for (std::size_t i = 0; i < dim; ++i) {
    Residue d = 1;
    for (int k = 0; k < a[i]; ++k) d *= static_cast<Residue>(p);
    h(i, i) = d;
  }
  return {std::move(a), std::move(h)};
}

namespace {

class Enumerator {
 public:
  Enumerator(const GroupPtr& g, int d, int window, int max_level)
      : g_(g),
        window_(window),
        ctx_(g->p(), max_level + window + 2),
        free_(regular_module(g, d, ctx_)) {
    if (ctx_.precision() > PadicContext::max_precision(g->p()))
      throw BudgetExceeded("enumeration window exceeds the machine precision");
  }

  const FgModule& free() const { return free_; }
  const PadicContext& ctx() const { return ctx_; }

  SubmoduleForm root() const {
    const auto dim = static_cast<std::size_t>(free_.dim());
    return {std::vector<int>(dim, 0), ModMatrix::identity(dim)};
  }

  ModMatrix basis(const SubmoduleForm& m) const { return m.basis.reduced(ctx_); }

  std::vector<SubmoduleForm> children(const SubmoduleForm& m) const {
    const auto dim = static_cast<std::size_t>(free_.dim());
    const int p = ctx_.p();
    const ModMatrix b = basis(m);
    std::vector<ModMatrix> blocks;
    for (const auto& mg : free_.action()) {
      ModMatrix x = solve_upper(b, m.exponents, multiply(mg, b, ctx_));
      for (std::size_t i = 0; i < dim; ++i) x(i, i) = ctx_.sub(x(i, i), 1);
      blocks.push_back(x.reduced(ctx_.residue_field()));
    }
    std::vector<const ModMatrix*> ptrs;
    for (const auto& x : blocks) ptrs.push_back(&x);
    const ModMatrix u = hstack(ptrs, dim);
    const auto functionals = kernel_basis_fp(u.transpose(), p);
    const std::size_t r = functionals.size();
    std::vector<SubmoduleForm> out;
    std::vector<int> coef(r, 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= static_cast<std::size_t>(p);
    for (std::size_t code = 1; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < r; ++i) {
        coef[i] = static_cast<int>(c % static_cast<std::size_t>(p));
        c /= static_cast<std::size_t>(p);
      }
      const auto lead = std::find_if(coef.begin(), coef.end(), [](int x) { return x != 0; });
      if (*lead != 1) continue;
      std::vector<Residue> phi(dim, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          phi[j] = (phi[j] + static_cast<Residue>(coef[i]) * functionals[i][j]) % static_cast<Residue>(p);
      std::size_t t = 0;
      while (phi[t] == 0) ++t;
      const PadicContext fp = ctx_.residue_field();
      const Residue inv = fp.unit_inverse(phi[t]);
      ModMatrix local(dim, dim);
      for (std::size_t j = 0; j < dim; ++j) {
        if (j == t) {
          local(t, j) = static_cast<Residue>(p);
          continue;
        }
        local(j, j) = 1;
        local(t, j) = ctx_.neg(fp.mul(phi[j], inv));
      }
      out.push_back(canonical_submodule(multiply(b, local, ctx_), p, window_));
    }
    return out;
  }

  bool ct_by_cohomology(const SubmoduleForm& m) const {
    if (m.index() == 0) return true;
    const PadicContext qctx(ctx_.p(), minimum_precision(*g_, window_) + 2);
    const FgModule l = free_.with_precision(qctx.precision());
    std::vector<std::vector<std::int64_t>> gens;
    for (std::size_t j = 0; j < m.basis.cols(); ++j) {
      std::vector<std::int64_t> col;
      for (std::size_t i = 0; i < m.basis.rows(); ++i) col.push_back(static_cast<std::int64_t>(m.basis(i, j)));
      gens.push_back(std::move(col));
    }
    return is_ct_finite(quotient_module(l, gens)).ct;
  }

  bool free_by_basis(const SubmoduleForm& m) const {
    return free_basis_certificate(sublattice_module(free_, basis(m)).module).has_value();
  }

 private:
  ModMatrix solve_upper(const ModMatrix& b, const std::vector<int>& a, const ModMatrix& y) const {
    const std::size_t n = b.rows();
    ModMatrix x(n, y.cols());
    for (std::size_t c = 0; c < y.cols(); ++c)
      for (std::size_t i = n; i-- > 0;) {
        Residue s = y(i, c);
        for (std::size_t j = i + 1; j < n; ++j) s = ctx_.sub(s, ctx_.mul(b(i, j), x(j, c)));
        if (s != 0 && ctx_.valuation(s) < a[i]) throw std::logic_error("submodule is not G-invariant");
        x(i, c) = ctx_.divide_by_power(s, a[i]);
      }
    return x;
  }

  GroupPtr g_;
  int window_;
  PadicContext ctx_;
  FgModule free_;
};

std::string form_line(const SubmoduleForm& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) os << (i ? " " : "") << m.exponents[i];
  os << " ;";
  for (std::size_t i = 0; i < m.basis.rows(); ++i)
    for (std::size_t j = i + 1; j < m.basis.cols(); ++j) os << ' ' << m.basis(i, j);
  return os.str();
}

SubmoduleForm parse_form(const std::string& line, int p, std::size_t dim, int lineno) {
  const auto semi = line.find(';');
  if (semi == std::string::npos) throw ParseError(lineno, "frontier line without ';'");
  std::istringstream head(line.substr(0, semi)), tail(line.substr(semi + 1));
  SubmoduleForm m{std::vector<int>(dim), ModMatrix(dim, dim)};
  for (std::size_t i = 0; i < dim; ++i)
    if (!(head >> m.exponents[i])) throw ParseError(lineno, "missing exponent");
  for (std::size_t i = 0; i < dim; ++i) {
    Residue d = 1;
    for (int k = 0; k < m.exponents[i]; ++k) d *= static_cast<Residue>(p);
    m.basis(i, i) = d;
    for (std::size_t j = i + 1; j < dim; ++j)
      if (!(tail >> m.basis(i, j))) throw ParseError(lineno, "missing entry");
  }
  return m;
}

struct CacheState {
  int window = 0;
  std::vector<std::int64_t> ct, basis;
  std::vector<SubmoduleForm> frontier;
};

std::optional<CacheState> read_cache(const std::string& path, const GroupPtr& g, int d, std::size_t dim) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  CacheState s;
  std::string line;
  int lineno = 0;
  auto expect = [&](const std::string& key) {
    ++lineno;
    if (!std::getline(in, line) || line.rfind(key + ": ", 0) != 0) throw ParseError(lineno, "expected '" + key + ":'");
    return line.substr(key.size() + 2);
  };
  if (expect("format") != "1") throw ParseError(lineno, "unsupported cache format");
  if (std::stoi(expect("p")) != g->p() || expect("group") != g->name() || std::stoi(expect("d")) != d)
    throw ValidationError("cache " + path + " belongs to a different series");
  s.window = std::stoi(expect("N"));
  ++lineno;
  if (!std::getline(in, line) || line != "coefficients:") throw ParseError(lineno, "expected 'coefficients:'");
  bool frontier = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line == "frontier:") {
      frontier = true;
      continue;
    }
    if (frontier) {
      s.frontier.push_back(parse_form(line, g->p(), dim, lineno));
      continue;
    }
    std::istringstream row(line);
    long long n, a, b;
    char c1, c2;
    if (!(row >> n >> c1 >> a >> c2 >> b) || c1 != ',' || c2 != ',' || n != static_cast<long long>(s.ct.size()))
      throw ParseError(lineno, "malformed coefficient line");
    s.ct.push_back(a);
    s.basis.push_back(b);
  }
  if (static_cast<int>(s.ct.size()) != s.window + 1) throw ParseError(lineno, "coefficient count does not match N");
  return s;
}

void write_cache(const std::string& path, const ZetaSeries& z, const std::vector<SubmoduleForm>& frontier) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write cache " + path);
  out << "format: 1\np: " << z.p << "\ngroup: " << z.group << "\nd: " << z.d << "\nN: " << z.window
      << "\ncoefficients:\n";
  for (std::size_t n = 0; n < z.coefficients.size(); ++n)
    out << n << ',' << z.coefficients[n] << ',' << z.basis_counts[n] << '\n';
  out << "frontier:\n";
  for (const auto& m : frontier) out << form_line(m) << '\n';
}

}  // namespace

std::vector<SubmoduleForm> invariant_submodules(const GroupPtr& g, int d, int window, std::size_t budget) {
  if (window < 1) throw ValidationError("window must be at least 1");
  const auto dim = static_cast<std::size_t>(d * g->order());
  double size = 1;
  for (std::size_t i = 0; i < dim * static_cast<std::size_t>(window); ++i) size *= g->p();
  if (size > static_cast<double>(budget))
    throw BudgetExceeded("|L / p^N L| exceeds the enumeration budget of " + std::to_string(budget));
  const int top = static_cast<int>(dim) * window;
  const Enumerator e(g, d, window, top);
  std::vector<SubmoduleForm> all{e.root()};
  std::vector<SubmoduleForm> level{e.root()};
  for (int n = 0; n < top && !level.empty(); ++n) {
    std::set<SubmoduleForm> next;
    for (const auto& m : level)
      for (auto& c : e.children(m))
        if (c.index() == n + 1) next.insert(std::move(c));
    level.assign(next.begin(), next.end());
    all.insert(all.end(), level.begin(), level.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

ZetaSeries zeta_coefficients(const GroupPtr& g, int d, int window, std::size_t budget, const std::string& cache_path) {
  if (window < 1) throw ValidationError("window must be at least 1");
  if (d < 1) throw ValidationError("rank must be at least 1");
  const Enumerator e(g, d, window, window);
  const auto dim = static_cast<std::size_t>(e.free().dim());
  ZetaSeries z;
  z.p = g->p();
  z.group = g->name();
  z.d = d;
  z.window = window;

  std::vector<SubmoduleForm> level{e.root()};
  int start = 0;
  if (!cache_path.empty()) {
    if (auto cached = read_cache(cache_path, g, d, dim)) {
      const int keep = std::min(window, cached->window);
      z.coefficients.assign(cached->ct.begin(), cached->ct.begin() + keep + 1);
      z.basis_counts.assign(cached->basis.begin(), cached->basis.begin() + keep + 1);
      if (cached->window >= window) return z;
      level = std::move(cached->frontier);
      start = cached->window;
    }
  }

  auto count = [&](const std::vector<SubmoduleForm>& forms) {
    std::int64_t ct = 0, basis = 0;
    for (const auto& m : forms) {
      const bool a = e.ct_by_cohomology(m);
      const bool b = e.free_by_basis(m);
      if (a != b)
        throw InternalContradiction("free-basis search and cohomological test disagree on a submodule of index p^" +
                                    std::to_string(m.index()));
      ct += a;
      basis += b;
    }
    z.coefficients.push_back(ct);
    z.basis_counts.push_back(basis);
  };

  z.visited = level.size();
  if (start == 0) count(level);
  for (int n = start; n < window; ++n) {
    std::set<SubmoduleForm> next;
    for (const auto& m : level)
      for (auto& c : e.children(m)) {
        next.insert(std::move(c));
        if (z.visited + next.size() > budget)
          throw BudgetExceeded("more than " + std::to_string(budget) + " submodules visited");
      }
    level.assign(next.begin(), next.end());
    z.visited += level.size();
    count(level);
  }
  if (!cache_path.empty()) write_cache(cache_path, z, level);
  return z;
}

// ---------------------------------------------------------------- rational fitting

namespace {

Fraction to_fraction(const mpq_class& q) {
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
    throw std::overflow_error("rational coefficient exceeds 64 bits");
  return {q.get_num().get_si(), q.get_den().get_si()};
}

mpq_class from_fraction(const Fraction& f) { return mpq_class(f.num, f.den); }

std::string term(const mpq_class& c, std::size_t k, bool first) {
  std::ostringstream os;
  mpq_class a = abs(c);
  if (!first) os << (sgn(c) < 0 ? " - " : " + ");
  else if (sgn(c) < 0) os << "-";
  if (k == 0 || a != 1) os << a.get_str();
  if (k >= 1) os << "t";
  if (k >= 2) os << "^" << k;
  return os.str();
}

std::string poly_string(const std::vector<Fraction>& p) {
  std::string s;
  bool first = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const mpq_class c = from_fraction(p[k]);
    if (c == 0) continue;
    s += term(c, k, first);
    first = false;
  }
  return first ? "0" : s;
}

}  // namespace

std::string RationalForm::to_string() const {
  return "(" + poly_string(numerator) + ") / (" + poly_string(denominator) + ")";
}

std::vector<Fraction> RationalForm::expand(std::size_t count) const {
  std::vector<mpq_class> s(count);
  for (std::size_t n = 0; n < count; ++n) {
    mpq_class v = n < numerator.size() ? from_fraction(numerator[n]) : mpq_class(0);
    for (std::size_t k = 1; k < denominator.size() && k <= n; ++k) v -= from_fraction(denominator[k]) * s[n - k];
    s[n] = v;
  }
  std::vector<Fraction> out;
  for (const auto& q : s) out.push_back(to_fraction(q));
  return out;
}

std::optional<RationalForm> fit_rational(const std::vector<std::int64_t>& coefficients, int max_degree) {
  if (max_degree < 0 || coefficients.size() < static_cast<std::size_t>(2 * max_degree + 1)) return std::nullopt;
  std::vector<mpq_class> c{1}, b{1};
  int length = 0, shift = 1;
  mpq_class last = 1;
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    mpq_class disc = coefficients[n];
    for (int i = 1; i <= length && i < static_cast<int>(c.size()); ++i) disc += c[i] * coefficients[n - i];
    if (disc == 0) {
      ++shift;
      continue;
    }
    const mpq_class f = disc / last;
    std::vector<mpq_class> t = c;
    if (c.size() < b.size() + shift) c.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] -= f * b[i];
    if (2 * length <= static_cast<int>(n)) {
      length = static_cast<int>(n) + 1 - length;
      b = std::move(t);
      last = disc;
      shift = 1;
    } else {
      ++shift;
    }
  }
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  if (length > max_degree) return std::nullopt;
  RationalForm form;
  form.order = length;
  for (const auto& q : c) form.denominator.push_back(to_fraction(q));
  for (int k = 0; k < length; ++k) {
    mpq_class v = 0;
    for (int i = 0; i <= k && i < static_cast<int>(c.size()); ++i) v += c[i] * coefficients[static_cast<std::size_t>(k - i)];
    form.numerator.push_back(to_fraction(v));
  }
  while (!form.numerator.empty() && form.numerator.back().num == 0) form.numerator.pop_back();
  const auto e = form.expand(coefficients.size());
  for (std::size_t n = 0; n < coefficients.size(); ++n)
    if (!(e[n] == Fraction{coefficients[n], 1})) return std::nullopt;
  return form;
}

ZetaSeries fit_rational(ZetaSeries series, int max_degree) {
  series.fitted = fit_rational(series.coefficients, max_degree);
  return series;
}

std::string zeta_csv(const ZetaSeries& s) {
  std::ostringstream os;
  os << "n,c_n\n";
  for (std::size_t n = 0; n < s.coefficients.size(); ++n) os << n << ',' << s.coefficients[n] << '\n';
  return os.str();
}

}  // namespace ctkit
