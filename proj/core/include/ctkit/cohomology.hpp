#pragma once

// Tate cohomology in degrees -2..2 and cohomological triviality.
//
// Degrees 1 and 2 (and homology in degree -2) are computed from a minimal free resolution of Z_p
// over Z_pS; degrees 0 and -1 from the norm formulas. Every result is recomputed one digit of
// precision higher and accepted only when both agree.

#include <optional>
#include <string>
#include <vector>

#include "ctkit/group.hpp"
#include "ctkit/module.hpp"

namespace ctkit {

inline constexpr int kMinDegree = -2;
inline constexpr int kMaxDegree = 2;

struct CohomologyGroup {
  int p = 0;
  int degree = 0;
  ElementMask subgroup = 0;  // elements of the parent group
  std::vector<int> exponents;  // cyclic factors Z/p^a, sorted

  bool is_zero() const { return exponents.empty(); }
  /// log_p of the order.
  int log_order() const;
  /// "0" or e.g. "Z/2 + Z/4".
  std::string to_string() const;
};

/// Ĥ^n(S, A) for the subgroup S of A's group.
CohomologyGroup tate(const FgModule& a, const Subgroup& s, int n);
CohomologyGroup tate(const FgModule& a, int n);
/// Several degrees over one subgroup, sharing the restricted modules.
std::vector<CohomologyGroup> tate_degrees(const FgModule& a, const Subgroup& s, const std::vector<int>& degrees);
/// H_1(G, A), which is Ĥ^{-2}(G, A).
CohomologyGroup homology_h1(const FgModule& a);

/// Independent computation from the normalised inhomogeneous cochain and bar chain complexes.
/// Degree 2 is limited to subgroups of order at most 16.
CohomologyGroup tate_reference(const FgModule& a, const Subgroup& s, int n);

enum class CtMethod { DefinitionScan, Nakayama, GaschutzUchida };
const char* to_string(CtMethod m);

struct CtWitness {
  ElementMask subgroup = 0;
  int subgroup_order = 0;
  int degree = 0;
  CohomologyGroup group;
};

struct CtCertificate {
  bool ct = false;
  CtMethod method = CtMethod::DefinitionScan;
  std::optional<CtWitness> witness;
};

/// Finite A: CT iff Ĥ^0(G, A) = 0.
CtCertificate is_ct_finite(const FgModule& a);
/// Any A: CT iff Ĥ^0(G, A) = Ĥ^1(G, A) = 0.
CtCertificate is_ct(const FgModule& a);
/// pV = 0: V is free over F_pG iff Ĥ^0(G, V) = 0.
bool is_free_fpG(const FgModule& v);

struct ScanTable {
  std::vector<Subgroup> subgroups;
  int lo = kMinDegree;
  int hi = kMaxDegree;
  std::vector<std::vector<CohomologyGroup>> cells;  // [subgroup][degree - lo]

  bool all_zero() const;
  std::optional<CtWitness> first_nonzero() const;
};

ScanTable ct_definition_scan(const FgModule& a, int lo = kMinDegree, int hi = kMaxDegree);
CtCertificate certificate_from_scan(const ScanTable& t);

/// Ranks r_0..r_3 of the minimal free resolution of Z_p over Z_pG.
std::vector<int> resolution_ranks(const GroupPtr& g, int precision);

}  // namespace ctkit
