#include "ctkit/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctkit {

namespace {

int max_nonzero_exponent(const SmithForm& s) {
  int m = 0;
  for (int a : s.diag)
    if (a < s.precision) m = std::max(m, a);
  return m;
}

}  // namespace

GeneratedLattice kernel_lattice(const ModMatrix& m, const PadicContext& ctx) {
  const SmithForm s = smith(m, ctx, {.want_P = false, .want_Q = true});
  const std::size_t r = s.rank();
  GeneratedLattice out;
  out.generators = s.Q.column_block(r, m.cols() - r);
  out.precision_loss = max_nonzero_exponent(s);
  return out;
}

GeneratedLattice preimage_lattice(const ModMatrix& map, const ModMatrix& target_relations,
                                  const PadicContext& ctx) {
  const std::size_t n = map.cols();
  if (target_relations.cols() == 0) return kernel_lattice(map, ctx);
  if (target_relations.rows() != map.rows()) throw std::invalid_argument("preimage_lattice: row mismatch");
  const ModMatrix x = hstack({&map, &target_relations}, map.rows());
  GeneratedLattice k = kernel_lattice(x, ctx);
  k.generators = k.generators.row_block(0, n);
  return k;
}

ModMatrix lattice_basis(const ModMatrix& gens, const PadicContext& ctx) {
  const SmithForm s = smith(gens, ctx, {.want_P = false, .want_Q = false, .want_P_inverse = true});
  const std::size_t k = s.rank();
  ModMatrix b(gens.rows(), k);
  for (std::size_t j = 0; j < k; ++j) {
    const Residue scale_by = ctx.pow(s.diag[j]);
    for (std::size_t i = 0; i < gens.rows(); ++i) b(i, j) = ctx.mul(s.P_inverse(i, j), scale_by);
  }
  return b;
}

LatticeQuotient lattice_quotient(const ModMatrix& outer, const ModMatrix& inner, const PadicContext& ctx,
                                 int extra_loss) {
  if (outer.rows() != inner.rows() && inner.cols() != 0) throw std::invalid_argument("lattice_quotient: ambient mismatch");
  const SmithForm s = smith(outer, ctx, {.want_P = true, .want_Q = false});
  const std::size_t k = s.rank();
  const int loss = max_nonzero_exponent(s) + extra_loss;
  LatticeQuotient out;
  out.effective_precision = ctx.precision() - loss;
  if (out.effective_precision < 1) {
    out.effective_precision = 0;
    out.saturated = static_cast<int>(k);
    return out;
  }
  const ModMatrix y = inner.cols() == 0 ? ModMatrix(outer.rows(), 0) : multiply(s.P, inner, ctx);
  for (std::size_t i = k; i < y.rows(); ++i) {
    for (Residue x : y.row(i)) {
      if (ctx.valuation(x) < out.effective_precision)
        throw std::logic_error("lattice_quotient: inner lattice is not contained in outer lattice");
    }
  }
  const PadicContext eff = ctx.with_precision(out.effective_precision);
  ModMatrix c(k, y.cols());
  for (std::size_t i = 0; i < k; ++i) {
    const int a = s.diag[i];
    for (std::size_t j = 0; j < y.cols(); ++j) {
      const Residue x = y(i, j);
      if (x == 0) continue;
      if (ctx.valuation(x) < a)
        throw std::logic_error("lattice_quotient: inner lattice is not contained in outer lattice");
      c(i, j) = eff.reduce_wide(ctx.divide_by_power(x, a));
    }
  }
  const CokernelStructure cs = cokernel_structure(c, eff);
  out.exponents = cs.exponents;
  out.saturated = cs.saturated;
  return out;
}

bool lattice_contains(const ModMatrix& gens, std::span<const Residue> v, const PadicContext& ctx) {
  return solve(gens, v, ctx).has_value();
}

int lattice_index_exponent(const ModMatrix& gens, const PadicContext& ctx) {
  const SmithForm s = smith(gens, ctx, {.want_P = false, .want_Q = false});
  if (s.rank() < gens.rows()) return -1;
  int total = 0;
  for (int a : s.diag) total += a;
  return total;
}

}  // namespace ctkit
