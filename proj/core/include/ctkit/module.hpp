#pragma once

// Finitely generated Z_pG-modules at finite precision.
//
// A module is Z_p^m modulo the relation lattice spanned by p^{n_i} e_i over the torsion
// coordinates. Torsion coordinates come first with nondecreasing exponents, free coordinates
// follow. Each group generator acts by an m x m matrix over Z/p^e; entries of a torsion row j
// only matter modulo p^{n_j} and are kept reduced.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ctkit/arith.hpp"
#include "ctkit/group.hpp"
#include "ctkit/lattice.hpp"

namespace ctkit {

class FgModule {
 public:
  FgModule(PadicContext ctx, GroupPtr group, std::vector<int> torsion_exponents, int free_rank,
           std::vector<ModMatrix> action);

  const PadicContext& ctx() const { return ctx_; }
  int p() const { return ctx_.p(); }
  int precision() const { return ctx_.precision(); }
  const GroupPtr& group() const { return group_; }
  const std::vector<int>& torsion_exponents() const { return torsion_; }
  int torsion_rank() const { return static_cast<int>(torsion_.size()); }
  int free_rank() const { return free_rank_; }
  int dim() const { return torsion_rank() + free_rank_; }
  bool is_finite() const { return free_rank_ == 0; }
  int max_exponent() const { return torsion_.empty() ? 0 : torsion_.back(); }
  /// log_p of the order; only meaningful for finite modules.
  int log_order() const;

  /// Matrices of the group generators, in the order of group()->generators().
  const std::vector<ModMatrix>& action() const { return action_; }
  /// Matrix of an arbitrary group element, expanded along the Cayley graph.
  const ModMatrix& element_action(int x) const { return (*elements_)[static_cast<std::size_t>(x)]; }
  ModMatrix norm_matrix() const;

  /// n_i for a torsion coordinate, the precision for a free one.
  int component_exponent(std::size_t i) const;
  /// Columns p^{n_i} e_i (dim x torsion_rank).
  ModMatrix relations() const;
  /// Relations of the direct sum of `copies` copies of the module.
  ModMatrix relations(int copies) const;
  /// Reduces each row of a matrix with dim() rows modulo its component order.
  ModMatrix reduce_rows(const ModMatrix& m) const;

  /// The same module over Z/p^e. Derived modules are rebuilt from their sources; modules read
  /// from integer data are lifted and re-validated.
  FgModule with_precision(int e) const;
  FgModule with_rebuild(std::function<FgModule(int)> rebuild) const;

 private:
  PadicContext ctx_;
  GroupPtr group_;
  std::vector<int> torsion_;
  int free_rank_;
  std::vector<ModMatrix> action_;
  std::shared_ptr<const std::vector<ModMatrix>> elements_;
  std::shared_ptr<const std::function<FgModule(int)>> rebuild_;
};

/// Every violated invariant, named; empty when the module is valid.
std::vector<std::string> validate(const FgModule& a);
/// Throws ValidationError listing the violations.
void require_valid(const FgModule& a);

/// Smallest precision satisfying the headroom requirement e > max n_i + v_p|G| + 1.
int minimum_precision(const PGroup& g, int max_exponent);

struct RankReport {
  int d_R = 0;
  int r_R = 0;
  int d_K = 0;
  friend bool operator==(const RankReport&, const RankReport&) = default;
};

RankReport ranks(const FgModule& a);

// Constructions. All take a context whose prime matches the group.

/// (Z_pG)^d with the regular action on each block.
FgModule regular_module(const GroupPtr& g, int d, const PadicContext& ctx);
/// Trivial action on (+)Z/p^{n_i} (+) Z_p^r.
FgModule trivial_module(const GroupPtr& g, std::vector<int> torsion_exponents, int free_rank, const PadicContext& ctx);
/// The augmentation ideal, on the basis x - 1 for x != 1.
FgModule augmentation_ideal(const GroupPtr& g, const PadicContext& ctx);
/// Z_pG / I^n with I the augmentation ideal.
FgModule group_ring_mod_augmentation_power(const GroupPtr& g, int n, const PadicContext& ctx);
/// Z/p^k [G/H] with G permuting the left cosets of H.
FgModule permutation_module(const Subgroup& h, int k, const PadicContext& ctx);

FgModule direct_sum(const FgModule& a, const FgModule& b);
/// A / (G-span of the given integer vectors). Coordinates surviving at full precision become free.
FgModule quotient_module(const FgModule& a, const std::vector<std::vector<std::int64_t>>& generators);
/// The same, with generators given as residues at the module's precision.
FgModule quotient_module(const FgModule& a, const ModMatrix& generators);

/// A G-invariant full-rank sublattice of a torsion-free module, as a module on its own basis.
/// Precision drops by the largest elementary divisor exponent of the sublattice.
struct Sublattice {
  FgModule module;
  ModMatrix basis;  // ambient coordinates of the new generators
};
Sublattice sublattice_module(const FgModule& a, const ModMatrix& generators);

struct TorsionPart {
  FgModule module;
  ModMatrix inclusion;  // dim(A) x dim(T)
};

TorsionPart torsion_submodule(const FgModule& a);
FgModule quotient_by_torsion(const FgModule& a);

/// A^G as a sublattice of Z_p^m (containing the relation lattice).
GeneratedLattice fixed_points(const FgModule& a);
/// The augmentation submodule [A,G] + relations.
ModMatrix augmentation_submodule(const FgModule& a);
/// A_G = A/[A,G] with trivial action, its invariants stable under precision refinement.
FgModule coinvariants(const FgModule& a);
/// N·A + relations, and the preimage of the relations under N.
ModMatrix norm_image(const FgModule& a);
GeneratedLattice norm_kernel(const FgModule& a);

/// The module restricted to a subgroup, acting through as_group(s).
FgModule restrict(const FgModule& a, const Subgroup& s);
FgModule restrict(const FgModule& a, const SubgroupAsGroup& s);

struct RandomModuleParams {
  int max_exponent = 2;  // torsion exponents stay at or below this
  int max_rank = 1;      // rank of the free module the construction starts from
};

/// A seeded random finite module. The construction kind is drawn from: quotients of (RG)^d by
/// random vectors, (Z/p^k G)^d, permutation modules, cokernels of random injective endomorphisms
/// of (RG)^d, trivial modules, and direct sums of these.
FgModule random_finite_module(const GroupPtr& g, const PadicContext& ctx, const RandomModuleParams& params,
                              std::uint64_t seed);

/// Z(Phi(G)) as a module over G/Phi(G) acting by conjugation.
FgModule build_schmid_module(const GroupPtr& g);

}  // namespace ctkit
