#pragma once

// Splitting of cohomologically trivial modules and presentations of finite modules.

#include <optional>
#include <vector>

#include "ctkit/cohomology.hpp"
#include "ctkit/module.hpp"

namespace ctkit {

struct FreeBasis {
  ModMatrix basis;     // dim x r, ambient coordinates of b_1..b_r
  ModMatrix expanded;  // dim x r|G|, columns x·b_i, block i holds x = 0..|G|-1
};

/// A basis of a torsion-free module over Z_pG, or nothing when the module is not free.
/// Lifts a basis of B/mB and checks that its G-translates form a Z_p-basis.
std::optional<FreeBasis> free_basis_certificate(const FgModule& b);

struct Splitting {
  FgModule torsion;
  FgModule free_part;
  ModMatrix inclusion;  // dim(A) x dim(T)
  ModMatrix section;    // dim(A) x dim(F), G-equivariant with projection∘section = 1
  FreeBasis free_basis;
  bool checked = false;
};

struct SplitResult {
  std::optional<Splitting> splitting;
  std::optional<CtWitness> witness;  // set when A is not CT
};

SplitResult split_theorem_a(const FgModule& a);

struct Presentation {
  FgModule free;                // (Z_pG)^r with r = r_R(A)
  ModMatrix images;             // dim(A) x r, images of the basis of L
  int exponent = 0;             // N with p^N A = 0
  ModMatrix kernel_generators;  // r|G| x k, generators of M including p^N L
  FgModule kernel;              // M on its own basis
  int r_R_kernel = 0;
  int d_R_kernel = 0;
};

Presentation minimal_presentation(const FgModule& a);

struct Theorem2Report {
  int r_R_M = 0;
  int r_R_L = 0;
  int d_K_coinvariants = 0;
  int d_R_h1 = 0;
  int formula = 0;
  bool match = false;
};

Theorem2Report verify_theorem2(const FgModule& a);
Theorem2Report verify_theorem2(const FgModule& a, const Presentation& pres);

/// Whether CT(A) coincides with r_R(M) = r_R(L).
bool verify_corollary(const FgModule& a);

struct AugmentationRankReport {
  int r_R = 0;           // minimal number of generators of the augmentation ideal
  int generators = 0;    // log_p |G/Phi(G)|
  int abelian_rank = 0;  // number of cyclic factors of G^ab
  bool match = false;
};

AugmentationRankReport augmentation_ideal_rank(const GroupPtr& g);

/// Coordinates e_j whose images form a basis of A/mA.
std::vector<std::size_t> residue_basis(const FgModule& a);

}  // namespace ctkit
