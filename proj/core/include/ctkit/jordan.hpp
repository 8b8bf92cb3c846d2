#pragma once

// Modules over F_p[C_{p^n}] = F_p[X]/(X^{p^n}) and their Jordan types.

#include <cstdint>
#include <string>
#include <vector>

#include "ctkit/arith.hpp"

namespace ctkit {

struct JordanType {
  int p = 2;
  int n = 1;
  std::vector<int> parts;  // nonincreasing, each in [1, p^n]

  int dim() const;
  int max_part() const;  // p^n
  bool is_free() const;
  /// "3+1"; "0" for the zero module.
  std::string to_string() const;
  friend bool operator==(const JordanType&, const JordanType&) = default;
};

/// Action of the generator on V_r: I plus the shift e_i -> e_{i+1}.
ModMatrix jordan_block(int r);
ModMatrix jordan_matrix(const std::vector<int>& parts);

/// Jordan type of a generator g of C_{p^n} acting on F_p^m.
JordanType jordan_type(const ModMatrix& g, int p, int n);
JordanType tensor_decompose(int r, int s, int p, int n);
/// End(V) with g acting by conjugation.
JordanType hom_decompose(const JordanType& v);
/// The dual V* with g acting by the inverse transpose.
JordanType dual_type(const JordanType& v);

struct HomFreenessCheck {
  JordanType v;
  JordanType hom;             // computed on End(V) directly
  bool table_agrees = false;  // hom equals the sum of tensor_decompose(r_i, r_j)
  bool divisibility = false;  // hom free implies p | r_i r_j for all pairs
  bool implication = false;   // hom free implies v free
  bool holds() const { return table_agrees && divisibility && implication; }
};

/// Order-p case only.
HomFreenessCheck verify_lemma44(const JordanType& v);

/// Partitions of `total` into parts of size at most `max_part`, each nonincreasing.
std::vector<std::vector<int>> partitions(int total, int max_part);

/// CSV with header `p,n,r,s,parts` for 1 <= r, s <= p^n.
std::string tensor_table_csv(int p, int n);

}  // namespace ctkit
