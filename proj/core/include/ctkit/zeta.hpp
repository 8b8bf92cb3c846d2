#pragma once

// Counting free submodules of finite index in (Z_pG)^d, and exact rational fits of the counts.
//
// Submodules M with p^N L <= M <= L are enumerated level by level: the maximal submodules of M are
// the kernels of the functionals on M/mM. Each is stored in a canonical triangular form, so every
// submodule is visited once.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctkit/arith.hpp"
#include "ctkit/group.hpp"

namespace ctkit {

inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 14;

/// Upper triangular basis of a sublattice of Z_p^D: column i has p^{a_i} on the diagonal, and the
/// entries of row i to the right of the diagonal lie in [0, p^{a_i}).
struct SubmoduleForm {
  std::vector<int> exponents;  // a_i
  ModMatrix basis;             // D x D integer entries

  int index() const;  // log_p |L : M|
  friend bool operator<(const SubmoduleForm& a, const SubmoduleForm& b);
  friend bool operator==(const SubmoduleForm& a, const SubmoduleForm& b) = default;
};

/// Canonical form of the lattice spanned by the columns of `generators` together with p^N Z_p^D.
SubmoduleForm canonical_submodule(const ModMatrix& generators, int p, int window);

/// Every G-invariant sublattice of L = (Z_pG)^d containing p^N L, in canonical order.
/// Throws BudgetExceeded when |L / p^N L| exceeds the budget.
std::vector<SubmoduleForm> invariant_submodules(const GroupPtr& g, int d, int window,
                                                std::size_t budget = kDefaultBudget);

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct RationalForm {
  std::vector<Fraction> numerator;    // coefficients of t^0, t^1, ...
  std::vector<Fraction> denominator;  // constant term 1
  int order = 0;                      // length of the recurrence
  /// "(1 - 2t + t^2) / (1 - t)^..." style text, expanded.
  std::string to_string() const;
  /// First `count` coefficients of numerator / denominator.
  std::vector<Fraction> expand(std::size_t count) const;
};

struct ZetaSeries {
  int p = 0;
  std::string group;
  int d = 1;
  int window = 0;
  std::vector<std::int64_t> coefficients;  // c_n from the cohomological test
  std::vector<std::int64_t> basis_counts;  // c_n from the free-basis search
  std::size_t visited = 0;
  std::optional<RationalForm> fitted;
};

/// c_0..c_N. With a cache path, earlier levels are read from and the result written back to it.
ZetaSeries zeta_coefficients(const GroupPtr& g, int d, int window, std::size_t budget = kDefaultBudget,
                             const std::string& cache_path = {});

/// Minimal recurrence of the sequence over Q by Berlekamp-Massey; absent when its order exceeds
/// `max_degree`, when fewer than 2 max_degree + 1 terms are given, or when the form does not
/// reproduce every term.
std::optional<RationalForm> fit_rational(const std::vector<std::int64_t>& coefficients, int max_degree);
ZetaSeries fit_rational(ZetaSeries series, int max_degree);

/// Header `n,c_n`.
std::string zeta_csv(const ZetaSeries& s);

}  // namespace ctkit
