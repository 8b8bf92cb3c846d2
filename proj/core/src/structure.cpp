#include "ctkit/structure.hpp"

#include <algorithm>

#include "ctkit/errors.hpp"
#include "ctkit/lattice.hpp"

namespace ctkit {

namespace {

std::vector<Residue> mod_p(std::vector<Residue> v, int p) {
  for (auto& x : v) x %= static_cast<Residue>(p);
  return v;
}

int log_p(int n, int p) {
  int k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

// Columns M_x v_i for all x, block-major in i.
ModMatrix translates(const FgModule& a, const ModMatrix& v) {
  const auto m = static_cast<std::size_t>(a.dim());
  const auto n = static_cast<std::size_t>(a.group()->order());
  ModMatrix out(m, v.cols() * n);
  for (std::size_t i = 0; i < v.cols(); ++i) {
    const auto col = v.column(i);
    for (std::size_t x = 0; x < n; ++x)
      out.set_column(i * n + x, multiply(a.element_action(static_cast<int>(x)), col, a.ctx()));
  }
  return a.reduce_rows(out);
}

ModMatrix unit_columns(std::size_t dim, const std::vector<std::size_t>& idx) {
  ModMatrix out(dim, idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out(idx[i], i) = 1;
  return out;
}

}  // namespace

std::vector<std::size_t> residue_basis(const FgModule& a) {
  const auto m = static_cast<std::size_t>(a.dim());
  const int p = a.p();
  FpEchelon span(p, m);
  for (const auto& g : a.action())
    for (std::size_t j = 0; j < m; ++j) {
      auto col = g.column(j);
      col[j] = a.ctx().sub(col[j], 1);
      span.insert(mod_p(std::move(col), p));
    }
  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Residue> e(m, 0);
    e[j] = 1;
    if (span.insert(std::move(e))) chosen.push_back(j);
  }
  return chosen;
}

std::optional<FreeBasis> free_basis_certificate(const FgModule& b) {
  if (b.torsion_rank() != 0) throw ValidationError("free_basis_certificate requires a torsion-free module");
  const auto m = static_cast<std::size_t>(b.dim());
  const auto idx = residue_basis(b);
  if (idx.size() * static_cast<std::size_t>(b.group()->order()) != m) return std::nullopt;
  FreeBasis out;
  out.basis = unit_columns(m, idx);
  out.expanded = translates(b, out.basis);
  if (m > 0 && rank_fp(out.expanded, b.p()) != m) return std::nullopt;
  return out;
}

SplitResult split_theorem_a(const FgModule& a) {
  SplitResult result;
  const CtCertificate cert = is_ct(a);
  if (!cert.ct) {
    result.witness = cert.witness;
    return result;
  }
  const auto& ctx = a.ctx();
  TorsionPart t = torsion_submodule(a);
  FgModule f = quotient_by_torsion(a);
  if (t.module.dim() > 0 && !is_ct_finite(t.module).ct)
    throw InternalContradiction("CT module with a torsion submodule that is not CT");
  auto basis = free_basis_certificate(f);
  if (!basis) throw InternalContradiction("CT module whose torsion-free quotient has no free basis");

  const auto m = static_cast<std::size_t>(a.dim());
  const auto k = static_cast<std::size_t>(t.module.dim());
  const auto r = static_cast<std::size_t>(f.dim());
  ModMatrix lifted(m, basis->basis.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < lifted.cols(); ++j) lifted(k + i, j) = basis->basis(i, j);
  ModMatrix section(m, r);
  if (r > 0) section = a.reduce_rows(multiply(translates(a, lifted), inverse(basis->expanded, ctx), ctx));

  bool ok = true;
  for (std::size_t g = 0; g < a.action().size(); ++g) {
    const ModMatrix lhs = multiply(a.action()[g], section, ctx);
    const ModMatrix rhs = multiply(section, f.action()[g], ctx);
    ok = ok && a.reduce_rows(subtract(lhs, rhs, ctx)).is_zero();
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) ok = ok && section(k + i, j) == (i == j ? 1U : 0U);
  ModMatrix joined = hstack({&t.inclusion, &section}, m);
  ok = ok && (m == 0 || is_invertible(joined, ctx));
  if (!ok) throw InternalContradiction("splitting identities fail for a CT module");

  result.splitting = Splitting{std::move(t.module), std::move(f), std::move(t.inclusion), std::move(section),
                               std::move(*basis), true};
  return result;
}

namespace {

Presentation present_at(const FgModule& a) {
  const auto& g = a.group();
  const auto n = static_cast<std::size_t>(g->order());
  const auto m = static_cast<std::size_t>(a.dim());
  const auto& ctx = a.ctx();
  const auto idx = residue_basis(a);
  const auto r = idx.size();
  Presentation pres{regular_module(g, static_cast<int>(r), ctx), unit_columns(m, idx), a.max_exponent(),
                    ModMatrix(r * n, 0), regular_module(g, static_cast<int>(r), ctx), 0, 0};
  if (r == 0) return pres;
  const ModMatrix phi = translates(a, pres.images);
  const GeneratedLattice kernel = preimage_lattice(phi, a.relations(), ctx);
  const ModMatrix scaled = scale(ModMatrix::identity(r * n), ctx.pow(pres.exponent), ctx);
  pres.kernel_generators = hstack({&kernel.generators, &scaled}, r * n);
  const Sublattice sub = sublattice_module(pres.free, pres.kernel_generators);
  pres.kernel = sub.module;
  const RankReport rk = ranks(pres.kernel);
  pres.r_R_kernel = rk.r_R;
  pres.d_R_kernel = rk.d_R;
  return pres;
}

}  // namespace

Presentation minimal_presentation(const FgModule& a) {
  if (!a.is_finite()) throw ValidationError("minimal_presentation requires a finite module");
  const int w = a.precision() + a.max_exponent();
  Presentation lo = present_at(a.with_precision(w));
  const Presentation hi = present_at(a.with_precision(w + 1));
  if (lo.r_R_kernel != hi.r_R_kernel || lo.d_R_kernel != hi.d_R_kernel)
    throw PrecisionExhausted("presentation kernel ranks are not stable");
  if (lo.d_R_kernel != lo.free.dim())
    throw InternalContradiction("kernel of a presentation of a finite module has the wrong rank");
  return lo;
}

Theorem2Report verify_theorem2(const FgModule& a, const Presentation& pres) {
  Theorem2Report rep;
  rep.r_R_M = pres.r_R_kernel;
  rep.r_R_L = pres.images.cols();
  rep.d_K_coinvariants = coinvariants(a).free_rank();
  if (rep.d_K_coinvariants != 0) throw InternalContradiction("coinvariants of a finite module have positive rank");
  rep.d_R_h1 = static_cast<int>(homology_h1(a).exponents.size());
  rep.formula = rep.r_R_L - rep.d_K_coinvariants + rep.d_R_h1;
  rep.match = rep.formula == rep.r_R_M;
  return rep;
}

Theorem2Report verify_theorem2(const FgModule& a) { return verify_theorem2(a, minimal_presentation(a)); }

bool verify_corollary(const FgModule& a) {
  const Presentation pres = minimal_presentation(a);
  const bool ct = is_ct_finite(a).ct;
  return ct == (pres.r_R_kernel == static_cast<int>(pres.images.cols()));
}

AugmentationRankReport augmentation_ideal_rank(const GroupPtr& g) {
  if (g->order() > 64) throw ValidationError("augmentation_ideal_rank is limited to groups of order 64");
  AugmentationRankReport rep;
  const PadicContext ctx(g->p(), minimum_precision(*g, 0) + 2);
  rep.r_R = ranks(augmentation_ideal(g, ctx)).r_R;
  rep.generators = log_p(g->order() / frattini(g).order(), g->p());
  rep.abelian_rank = static_cast<int>(abelianization_invariants(g).size());
  rep.match = rep.r_R == rep.generators && rep.generators == rep.abelian_rank;
  return rep;
}

}  // namespace ctkit
