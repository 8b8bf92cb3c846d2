#pragma once

// Z_p-lattices given by generator columns, computed at finite precision.
//
// Matrices are read as exact p-adic integers truncated at the context precision. Results carry
// an effective precision: digits at or beyond it are not determined by the input.

#include <vector>

#include "ctkit/arith.hpp"

namespace ctkit {

struct GeneratedLattice {
  ModMatrix generators;  // ambient x k, columns span the lattice
  int precision_loss = 0;
};

/// Columns spanning the Z_p-kernel of `m`.
GeneratedLattice kernel_lattice(const ModMatrix& m, const PadicContext& ctx);

/// {x : map * x lies in span(target_relations)}; `target_relations` may have zero columns.
GeneratedLattice preimage_lattice(const ModMatrix& map, const ModMatrix& target_relations,
                                  const PadicContext& ctx);

/// Independent generators of span(gens): columns P^{-1} e_i p^{a_i}.
ModMatrix lattice_basis(const ModMatrix& gens, const PadicContext& ctx);

struct LatticeQuotient {
  std::vector<int> exponents;  // cyclic factors Z/p^a, sorted, 0 < a < effective_precision
  int saturated = 0;           // factors indistinguishable from Z_p at this precision
  int effective_precision = 0;

  bool is_zero() const { return exponents.empty() && saturated == 0; }
  friend bool operator==(const LatticeQuotient& a, const LatticeQuotient& b) {
    return a.exponents == b.exponents && a.saturated == b.saturated;
  }
};

/// Structure of span(outer) / span(inner); `inner` must lie in `outer`.
LatticeQuotient lattice_quotient(const ModMatrix& outer, const ModMatrix& inner, const PadicContext& ctx,
                                 int extra_loss = 0);

bool lattice_contains(const ModMatrix& gens, std::span<const Residue> v, const PadicContext& ctx);

/// Index [Z_p^n : span(gens)] as a p-exponent, or -1 when the lattice is not of full rank.
int lattice_index_exponent(const ModMatrix& gens, const PadicContext& ctx);

}  // namespace ctkit
