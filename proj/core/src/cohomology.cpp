#include "ctkit/cohomology.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "ctkit/errors.hpp"
#include "ctkit/lattice.hpp"

namespace ctkit {

namespace {

using GroupRingElement = std::vector<Residue>;
// boundary[j][i]: coefficient of e_i in the image of e_j.
using Boundary = std::vector<std::vector<GroupRingElement>>;

struct Resolution {
  std::vector<int> ranks;         // r_0..r_3
  std::vector<Boundary> boundary;  // boundary[k] : F_k -> F_{k-1}, k = 1..3
};

int v_p(int n, int p) {
  int k = 0;
  while (n > 1 && n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

// Z_p-matrix of the G-map (RG)^{src} -> (RG)^{dst} given by a boundary.
ModMatrix group_map_matrix(const PGroup& g, const Boundary& b, int dst, int src, const PadicContext& ctx) {
  const auto n = static_cast<std::size_t>(g.order());
  ModMatrix m(static_cast<std::size_t>(dst) * n, static_cast<std::size_t>(src) * n);
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < b[j].size(); ++i)
      for (std::size_t y = 0; y < n; ++y) {
        const Residue c = b[j][i][y];
        if (c == 0) continue;
        for (std::size_t x = 0; x < n; ++x) {
          auto& entry = m(i * n + static_cast<std::size_t>(g.mul(static_cast<int>(x), static_cast<int>(y))), j * n + x);
          entry = ctx.add(entry, c);
        }
      }
  return m;
}

std::vector<Residue> translate(const PGroup& g, const std::vector<Residue>& v, int x) {
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<Residue> out(v.size(), 0);
  for (std::size_t base = 0; base < v.size(); base += n)
    for (std::size_t z = 0; z < n; ++z) out[base + static_cast<std::size_t>(g.mul(x, static_cast<int>(z)))] = v[base + z];
  return out;
}

Resolution build_resolution(const PGroup& g, const PadicContext& ctx) {
  const auto n = static_cast<std::size_t>(g.order());
  const int p = ctx.p();
  Resolution res;
  res.ranks.push_back(1);
  res.boundary.emplace_back();
  Boundary d1;
  for (int s : g.generators()) {
    GroupRingElement c(n, 0);
    c[static_cast<std::size_t>(s)] = 1;
    c[0] = ctx.sub(c[0], 1);
    d1.push_back({c});
  }
  res.ranks.push_back(static_cast<int>(d1.size()));
  res.boundary.push_back(std::move(d1));
  for (int k = 1; k <= 2; ++k) {
    const int rk = res.ranks[k];
    const ModMatrix d = group_map_matrix(g, res.boundary[k], res.ranks[k - 1], rk, ctx);
    Boundary next;
    if (rk > 0) {
      const SmithForm s = smith(d, ctx, {.want_P = false, .want_Q = true});
      const std::size_t r = s.rank();
      for (std::size_t i = 0; i < r; ++i)
        if (s.diag[i] != 0) throw std::logic_error("resolution: boundary image is not a direct summand");
      const ModMatrix kernel = s.Q.column_block(r, d.cols() - r);
      FpEchelon span(p, d.cols());
      auto mod_p = [p](std::vector<Residue> v) {
        for (auto& x : v) x %= static_cast<Residue>(p);
        return v;
      };
      for (std::size_t c = 0; c < kernel.cols(); ++c) {
        const auto v = kernel.column(c);
        for (int s : g.generators()) {
          auto w = translate(g, v, s);
          for (std::size_t i = 0; i < w.size(); ++i) w[i] = ctx.sub(w[i], v[i]);
          span.insert(mod_p(std::move(w)));
        }
      }
      for (std::size_t c = 0; c < kernel.cols(); ++c) {
        const auto v = kernel.column(c);
        if (!span.insert(mod_p(v))) continue;
        std::vector<GroupRingElement> row(static_cast<std::size_t>(rk), GroupRingElement(n, 0));
        for (std::size_t i = 0; i < static_cast<std::size_t>(rk); ++i)
          for (std::size_t z = 0; z < n; ++z) row[i][z] = v[i * n + z];
        next.push_back(std::move(row));
      }
    }
    res.ranks.push_back(static_cast<int>(next.size()));
    res.boundary.push_back(std::move(next));
  }
  return res;
}

std::shared_ptr<const Resolution> resolution_for(const PGroup& g, const PadicContext& ctx) {
  static std::mutex mutex;
  static std::map<std::pair<std::vector<int>, int>, std::shared_ptr<const Resolution>> cache;
  std::vector<int> key;
  key.reserve(static_cast<std::size_t>(g.order()) * g.order() + g.generators().size() + 1);
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) key.push_back(g.mul(a, b));
  key.push_back(-1);
  key.insert(key.end(), g.generators().begin(), g.generators().end());
  key.push_back(-ctx.p());
  const auto k = std::make_pair(std::move(key), ctx.precision());
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  auto res = std::make_shared<const Resolution>(build_resolution(g, ctx));
  std::lock_guard<std::mutex> lock(mutex);
  if (cache.size() > 512) cache.clear();
  cache.emplace(k, res);
  return res;
}

ModMatrix rho(const FgModule& a, const GroupRingElement& c, bool star) {
  const auto& ctx = a.ctx();
  const auto m = static_cast<std::size_t>(a.dim());
  const PGroup& g = *a.group();
  ModMatrix out(m, m);
  for (std::size_t y = 0; y < c.size(); ++y) {
    if (c[y] == 0) continue;
    const int x = star ? g.inverse(static_cast<int>(y)) : static_cast<int>(y);
    out = add(out, scale(a.element_action(x), c[y], ctx), ctx);
  }
  return a.reduce_rows(out);
}

void put_block(ModMatrix& dst, std::size_t bi, std::size_t bj, const ModMatrix& block, const PadicContext& ctx,
               bool accumulate = false) {
  const std::size_t r0 = bi * block.rows(), c0 = bj * block.cols();
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) {
      auto& x = dst(r0 + i, c0 + j);
      x = accumulate ? ctx.add(x, block(i, j)) : block(i, j);
    }
}

// Hom_G(F_k, A) -> Hom_G(F_{k+1}, A).
ModMatrix coboundary(const FgModule& a, const Resolution& res, int k) {
  const auto m = static_cast<std::size_t>(a.dim());
  const Boundary& b = res.boundary[static_cast<std::size_t>(k + 1)];
  ModMatrix out(static_cast<std::size_t>(res.ranks[k + 1]) * m, static_cast<std::size_t>(res.ranks[k]) * m);
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < b[j].size(); ++i) put_block(out, j, i, rho(a, b[j][i], false), a.ctx());
  return out;
}

// F_k (x)_G A -> F_{k-1} (x)_G A.
ModMatrix chain_boundary(const FgModule& a, const Resolution& res, int k) {
  const auto m = static_cast<std::size_t>(a.dim());
  const Boundary& b = res.boundary[static_cast<std::size_t>(k)];
  ModMatrix out(static_cast<std::size_t>(res.ranks[k - 1]) * m, static_cast<std::size_t>(res.ranks[k]) * m);
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < b[j].size(); ++i) put_block(out, i, j, rho(a, b[j][i], true), a.ctx());
  return out;
}

GeneratedLattice preimage_or_all(const ModMatrix& map, const ModMatrix& rel, const PadicContext& ctx) {
  if (map.rows() == 0) return {ModMatrix::identity(map.cols()), 0};
  return preimage_lattice(map, rel, ctx);
}

LatticeQuotient quotient_of(const GeneratedLattice& outer, const ModMatrix& inner, const PadicContext& ctx) {
  if (outer.generators.rows() == 0) {
    LatticeQuotient q;
    q.effective_precision = ctx.precision();
    return q;
  }
  return lattice_quotient(outer.generators, inner, ctx, outer.precision_loss);
}

ModMatrix side_by_side(const ModMatrix& a, const ModMatrix& b) { return hstack({&a, &b}, a.rows()); }

ModMatrix generator_differences(const FgModule& a) {
  std::vector<ModMatrix> blocks{a.relations()};
  for (const auto& g : a.action()) blocks.push_back(subtract(g, ModMatrix::identity(g.rows()), a.ctx()));
  std::vector<const ModMatrix*> ptrs;
  for (const auto& b : blocks) ptrs.push_back(&b);
  return hstack(ptrs, static_cast<std::size_t>(a.dim()));
}

LatticeQuotient norm_degrees(const FgModule& a, int n) {
  const auto& ctx = a.ctx();
  if (n == 0) {
    std::vector<ModMatrix> blocks;
    for (const auto& g : a.action()) blocks.push_back(subtract(g, ModMatrix::identity(g.rows()), ctx));
    std::vector<const ModMatrix*> ptrs;
    for (const auto& b : blocks) ptrs.push_back(&b);
    const ModMatrix stacked = vstack(ptrs, static_cast<std::size_t>(a.dim()));
    const GeneratedLattice outer = preimage_or_all(stacked, a.relations(static_cast<int>(blocks.size())), ctx);
    return quotient_of(outer, side_by_side(a.norm_matrix(), a.relations()), ctx);
  }
  const GeneratedLattice outer = preimage_lattice(a.norm_matrix(), a.relations(), ctx);
  return quotient_of(outer, generator_differences(a), ctx);
}

LatticeQuotient compute_degree(const FgModule& a, int n) {
  if (n == 0 || n == -1) return norm_degrees(a, n);
  const auto& ctx = a.ctx();
  const auto res = resolution_for(*a.group(), ctx);
  if (n == -2) {
    const GeneratedLattice outer = preimage_or_all(chain_boundary(a, *res, 1), a.relations(), ctx);
    return quotient_of(outer, side_by_side(chain_boundary(a, *res, 2), a.relations(res->ranks[1])), ctx);
  }
  const GeneratedLattice outer = preimage_or_all(coboundary(a, *res, n), a.relations(res->ranks[n + 1]), ctx);
  return quotient_of(outer, side_by_side(coboundary(a, *res, n - 1), a.relations(res->ranks[n])), ctx);
}

// ---------------------------------------------------------------- reference complexes

LatticeQuotient compute_reference(const FgModule& a, int n) {
  if (n == 0 || n == -1) return norm_degrees(a, n);
  const auto& ctx = a.ctx();
  const PGroup& g = *a.group();
  const auto m = static_cast<std::size_t>(a.dim());
  const auto order = static_cast<std::size_t>(g.order());
  const std::size_t k = order - 1;
  const ModMatrix id = ModMatrix::identity(m);
  const ModMatrix minus_id = scale(id, ctx.neg(1), ctx);
  auto block = [&](ModMatrix& dst, std::size_t bi, std::size_t bj, const ModMatrix& b) { put_block(dst, bi, bj, b, ctx, true); };
  const auto& gens = g.generators();
  if (n == 1) {
    // f(gy) - f(g) - g f(y) for generators g; f(1) = 0.
    ModMatrix cocycle(gens.size() * k * m, k * m);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const int s = gens[gi];
      for (std::size_t y = 1; y < order; ++y) {
        const std::size_t row = gi * k + (y - 1);
        const int sy = g.mul(s, static_cast<int>(y));
        if (sy != 0) block(cocycle, row, static_cast<std::size_t>(sy - 1), id);
        block(cocycle, row, static_cast<std::size_t>(s - 1), minus_id);
        block(cocycle, row, y - 1, scale(a.element_action(s), ctx.neg(1), ctx));
      }
    }
    ModMatrix cob(k * m, m);
    for (std::size_t x = 1; x < order; ++x)
      block(cob, x - 1, 0, subtract(a.element_action(static_cast<int>(x)), id, ctx));
    const GeneratedLattice outer = preimage_or_all(cocycle, a.relations(static_cast<int>(gens.size() * k)), ctx);
    return quotient_of(outer, side_by_side(cob, a.relations(static_cast<int>(k))), ctx);
  }
  if (n == 2) {
    if (order > 16) throw UnsupportedDegree("reference degree 2 is limited to groups of order 16");
    auto pair = [k](std::size_t x, std::size_t y) { return (x - 1) * k + (y - 1); };
    ModMatrix cocycle(gens.size() * k * k * m, k * k * m);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const int s = gens[gi];
      for (std::size_t h = 1; h < order; ++h)
        for (std::size_t c = 1; c < order; ++c) {
          const std::size_t row = (gi * k + (h - 1)) * k + (c - 1);
          // s f(h,c) - f(sh,c) + f(s,hc) - f(s,h)
          block(cocycle, row, pair(h, c), a.element_action(s));
          const int sh = g.mul(s, static_cast<int>(h));
          if (sh != 0) block(cocycle, row, pair(static_cast<std::size_t>(sh), c), minus_id);
          const int hc = g.mul(static_cast<int>(h), static_cast<int>(c));
          if (hc != 0) block(cocycle, row, pair(static_cast<std::size_t>(s), static_cast<std::size_t>(hc)), id);
          block(cocycle, row, pair(static_cast<std::size_t>(s), h), minus_id);
        }
    }
    ModMatrix cob(k * k * m, k * m);
    for (std::size_t x = 1; x < order; ++x)
      for (std::size_t y = 1; y < order; ++y) {
        // x f(y) - f(xy) + f(x)
        const std::size_t row = pair(x, y);
        block(cob, row, y - 1, a.element_action(static_cast<int>(x)));
        const int xy = g.mul(static_cast<int>(x), static_cast<int>(y));
        if (xy != 0) block(cob, row, static_cast<std::size_t>(xy - 1), minus_id);
        block(cob, row, x - 1, id);
      }
    const GeneratedLattice outer = preimage_or_all(cocycle, a.relations(static_cast<int>(gens.size() * k * k)), ctx);
    return quotient_of(outer, side_by_side(cob, a.relations(static_cast<int>(k * k))), ctx);
  }
  // n == -2: normalised bar chains.
  ModMatrix d1(m, k * m);
  for (std::size_t x = 1; x < order; ++x)
    block(d1, 0, x - 1, subtract(a.element_action(g.inverse(static_cast<int>(x))), id, ctx));
  ModMatrix d2(k * m, k * k * m);
  for (std::size_t x = 1; x < order; ++x)
    for (std::size_t y = 1; y < order; ++y) {
      // [x|y] (x) a -> [y] (x) x^{-1}a - [xy] (x) a + [x] (x) a
      const std::size_t col = (x - 1) * k + (y - 1);
      block(d2, y - 1, col, a.element_action(g.inverse(static_cast<int>(x))));
      const int xy = g.mul(static_cast<int>(x), static_cast<int>(y));
      if (xy != 0) block(d2, static_cast<std::size_t>(xy - 1), col, minus_id);
      block(d2, x - 1, col, id);
    }
  const GeneratedLattice outer = preimage_or_all(d1, a.relations(), ctx);
  return quotient_of(outer, side_by_side(d2, a.relations(static_cast<int>(k))), ctx);
}

void check_degree(int n) {
  if (n < kMinDegree || n > kMaxDegree)
    throw UnsupportedDegree("degree " + std::to_string(n) + " outside [" + std::to_string(kMinDegree) + ", " +
                            std::to_string(kMaxDegree) + "]");
}

int start_precision(const FgModule& a) {
  const int v = a.group()->p() == 0 ? 0 : v_p(a.group()->order(), a.group()->p());
  return std::max(a.precision(), 2 * (a.max_exponent() + v) + v + 2);
}

bool acceptable(const LatticeQuotient& q1, const LatticeQuotient& q2, int bound) {
  if (!(q1 == q2) || q1.saturated != 0) return false;
  return q1.exponents.empty() || q1.exponents.back() <= bound;
}

template <class Compute>
std::vector<CohomologyGroup> stable_degrees(const FgModule& a, const Subgroup& s, const std::vector<int>& degrees,
                                            Compute compute) {
  for (int n : degrees) check_degree(n);
  std::vector<CohomologyGroup> out(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    out[i].p = a.p();
    out[i].degree = degrees[i];
    out[i].subgroup = s.mask();
  }
  if (s.order() == 1) return out;
  const SubgroupAsGroup sub = s.is_whole() ? SubgroupAsGroup{} : as_group(s);
  auto at = [&](int w) { return s.is_whole() ? a.with_precision(w) : restrict(a.with_precision(w), sub); };
  const int bound = v_p(s.order(), a.p());
  std::vector<std::size_t> pending(degrees.size());
  for (std::size_t i = 0; i < pending.size(); ++i) pending[i] = i;
  int w = start_precision(a);
  const int cap = PadicContext::max_precision(a.p());
  for (int attempt = 0; attempt < 4 && w + 1 <= cap; ++attempt) {
    const FgModule lo = at(w), hi = at(w + 1);
    std::vector<std::size_t> still;
    for (std::size_t i : pending) {
      try {
        const LatticeQuotient q1 = compute(lo, degrees[i]);
        const LatticeQuotient q2 = compute(hi, degrees[i]);
        if (acceptable(q1, q2, bound)) {
          out[i].exponents = q1.exponents;
          continue;
        }
      } catch (const std::logic_error&) {
        // containment failed at this precision
      }
      still.push_back(i);
    }
    pending = std::move(still);
    if (pending.empty()) return out;
    w = std::min(cap - 1, w + std::max(4, w / 2));
  }
  throw PrecisionExhausted("Tate cohomology in degree " + std::to_string(degrees[pending.front()]) +
                           " did not stabilise below precision " + std::to_string(cap));
}

}  // namespace

int CohomologyGroup::log_order() const {
  int s = 0;
  for (int a : exponents) s += a;
  return s;
}

std::string CohomologyGroup::to_string() const {
  if (exponents.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    long long q = 1;
    for (int j = 0; j < exponents[i]; ++j) q *= p;
    os << (i ? " + " : "") << "Z/" << q;
  }
  return os.str();
}

std::vector<CohomologyGroup> tate_degrees(const FgModule& a, const Subgroup& s, const std::vector<int>& degrees) {
  return stable_degrees(a, s, degrees, [](const FgModule& m, int n) { return compute_degree(m, n); });
}

CohomologyGroup tate(const FgModule& a, const Subgroup& s, int n) { return tate_degrees(a, s, {n}).front(); }

CohomologyGroup tate(const FgModule& a, int n) { return tate(a, whole_group(a.group()), n); }

CohomologyGroup homology_h1(const FgModule& a) { return tate(a, -2); }

CohomologyGroup tate_reference(const FgModule& a, const Subgroup& s, int n) {
  return stable_degrees(a, s, {n}, [](const FgModule& m, int d) { return compute_reference(m, d); }).front();
}

const char* to_string(CtMethod m) {
  switch (m) {
    case CtMethod::DefinitionScan: return "definition-scan";
    case CtMethod::Nakayama: return "nakayama";
    case CtMethod::GaschutzUchida: return "gaschutz-uchida";
  }
  return "unknown";
}

namespace {

CtCertificate certificate(const FgModule& a, const std::vector<CohomologyGroup>& groups, CtMethod method) {
  CtCertificate c;
  c.method = method;
  c.ct = true;
  for (const auto& h : groups) {
    if (h.is_zero()) continue;
    c.ct = false;
    c.witness = CtWitness{h.subgroup, a.group()->order(), h.degree, h};
    break;
  }
  return c;
}

}  // namespace

CtCertificate is_ct_finite(const FgModule& a) {
  if (!a.is_finite()) throw ValidationError("is_ct_finite requires a finite module");
  return certificate(a, tate_degrees(a, whole_group(a.group()), {0}), CtMethod::GaschutzUchida);
}

CtCertificate is_ct(const FgModule& a) {
  return certificate(a, tate_degrees(a, whole_group(a.group()), {0, 1}), CtMethod::Nakayama);
}

bool is_free_fpG(const FgModule& v) {
  for (int n : v.torsion_exponents())
    if (n != 1) throw ValidationError("is_free_fpG requires a module killed by p");
  if (!v.is_finite()) throw ValidationError("is_free_fpG requires a finite module");
  const bool free = tate(v, 0).is_zero();
  if (free && v.dim() % v.group()->order() != 0)
    throw InternalContradiction("Ĥ^0 vanishes on an F_pG-module whose dimension is not divisible by |G|");
  return free;
}

bool ScanTable::all_zero() const {
  for (const auto& row : cells)
    for (const auto& c : row)
      if (!c.is_zero()) return false;
  return true;
}

std::optional<CtWitness> ScanTable::first_nonzero() const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (const auto& c : cells[i])
      if (!c.is_zero()) return CtWitness{c.subgroup, subgroups[i].order(), c.degree, c};
  return std::nullopt;
}

ScanTable ct_definition_scan(const FgModule& a, int lo, int hi) {
  check_degree(lo);
  check_degree(hi);
  if (lo > hi) throw UnsupportedDegree("empty degree window");
  ScanTable t;
  t.lo = lo;
  t.hi = hi;
  t.subgroups = subgroups(a.group());
  std::vector<int> degrees;
  for (int n = lo; n <= hi; ++n) degrees.push_back(n);
  for (const auto& s : t.subgroups) t.cells.push_back(tate_degrees(a, s, degrees));
  return t;
}

CtCertificate certificate_from_scan(const ScanTable& t) {
  CtCertificate c;
  c.method = CtMethod::DefinitionScan;
  c.witness = t.first_nonzero();
  c.ct = !c.witness.has_value();
  return c;
}

std::vector<int> resolution_ranks(const GroupPtr& g, int precision) {
  return resolution_for(*g, PadicContext(g->p() == 0 ? 2 : g->p(), precision))->ranks;
}

}  // namespace ctkit
