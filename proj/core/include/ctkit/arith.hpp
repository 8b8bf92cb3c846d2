#pragma once

// Dense linear algebra over the chain rings Z/p^e and the residue field F_p.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctkit {

using Residue = std::uint64_t;

/// Prime p and working precision e; all ring arithmetic is modulo p^e.
class PadicContext {
 public:
  PadicContext(int p, int e);

  int p() const { return p_; }
  int precision() const { return e_; }
  Residue modulus() const { return modulus_; }

  PadicContext with_precision(int e) const { return PadicContext(p_, e); }
  PadicContext residue_field() const { return PadicContext(p_, 1); }

  /// p^k for 0 <= k < e; p^k for k >= e is the zero class.
  Residue pow(int k) const;

  Residue reduce(std::int64_t x) const;
  Residue reduce_wide(Residue x) const { return x % modulus_; }
  std::int64_t centered(Residue x) const;

  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + modulus_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : modulus_ - a; }
  Residue mul(Residue a, Residue b) const {
    if (narrow_) return (a * b) % modulus_;
    return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % modulus_);
  }

  /// p-adic valuation of a residue; the zero class has valuation e.
  int valuation(Residue a) const;
  bool is_unit(Residue a) const { return a % static_cast<Residue>(p_) != 0; }
  Residue unit_inverse(Residue u) const;
  /// x / p^k for a residue of valuation at least k (result taken mod p^e).
  Residue divide_by_power(Residue x, int k) const;

  friend bool operator==(const PadicContext& a, const PadicContext& b) {
    return a.p_ == b.p_ && a.e_ == b.e_;
  }

  /// Largest precision whose modulus still fits the 62-bit machine range.
  static int max_precision(int p);

 private:
  int p_;
  int e_;
  Residue modulus_;
  bool narrow_;
};

bool is_prime(std::int64_t n);

/// Dense row-major matrix of residues; the modulus lives in the context passed to each operation.
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static ModMatrix identity(std::size_t n);
  static ModMatrix from_signed(std::size_t rows, std::size_t cols, std::span<const std::int64_t> values,
                               const PadicContext& ctx);
  static ModMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, const PadicContext& ctx);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Residue& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Residue operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Residue> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Residue> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<Residue> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Residue> v);

  const std::vector<Residue>& data() const { return data_; }

  ModMatrix transpose() const;
  ModMatrix reduced(const PadicContext& ctx) const;
  bool is_zero() const;

  /// Columns [first, first+count).
  ModMatrix column_block(std::size_t first, std::size_t count) const;
  ModMatrix row_block(std::size_t first, std::size_t count) const;

  friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

ModMatrix multiply(const ModMatrix& a, const ModMatrix& b, const PadicContext& ctx);
std::vector<Residue> multiply(const ModMatrix& a, std::span<const Residue> x, const PadicContext& ctx);
ModMatrix add(const ModMatrix& a, const ModMatrix& b, const PadicContext& ctx);
ModMatrix subtract(const ModMatrix& a, const ModMatrix& b, const PadicContext& ctx);
ModMatrix scale(const ModMatrix& a, Residue s, const PadicContext& ctx);
ModMatrix hstack(const std::vector<const ModMatrix*>& blocks, std::size_t rows);
ModMatrix vstack(const std::vector<const ModMatrix*>& blocks, std::size_t cols);
ModMatrix kronecker(const ModMatrix& a, const ModMatrix& b, const PadicContext& ctx);
/// Diagonal matrix with entries p^{exps[i]}.
ModMatrix diagonal_powers(std::span<const int> exps, const PadicContext& ctx);

/// D = P * M * Q with D diagonal, entries p^{diag[i]} (diag[i] == e marks the zero class).
struct SmithForm {
  std::vector<int> diag;  // length min(rows, cols), nondecreasing
  ModMatrix P;            // rows x rows (empty unless requested)
  ModMatrix Q;            // cols x cols (empty unless requested)
  ModMatrix P_inverse;    // rows x rows (empty unless requested)
  int precision = 0;

  /// Number of diagonal entries that are nonzero at this precision.
  std::size_t rank() const;
};

struct SmithOptions {
  bool want_P = true;
  bool want_Q = true;
  bool want_P_inverse = false;
};

SmithForm smith(const ModMatrix& m, const PadicContext& ctx, SmithOptions options = {});

/// Structure of (Z/p^e)^rows / column-span(M).
struct CokernelStructure {
  std::vector<int> exponents;  // 0 < a < e, sorted
  int saturated = 0;           // classes with a == e: free or beyond precision
  bool precision_exhausted() const { return saturated > 0; }
  std::vector<Residue> orders(const PadicContext& ctx) const;
};

CokernelStructure cokernel_structure(const ModMatrix& m, const PadicContext& ctx);

std::optional<std::vector<Residue>> solve(const ModMatrix& m, std::span<const Residue> b, const PadicContext& ctx);

/// F_p basis of the right kernel; `m` must have entries in [0, p).
std::vector<std::vector<Residue>> kernel_basis_fp(const ModMatrix& m, int p);
std::size_t rank_fp(const ModMatrix& m, int p);
bool is_invertible(const ModMatrix& m, const PadicContext& ctx);
ModMatrix inverse(const ModMatrix& m, const PadicContext& ctx);

/// Incrementally maintained F_p row echelon basis.
class FpEchelon {
 public:
  FpEchelon(int p, std::size_t dim) : p_(p), dim_(dim) {}

  /// Adds v to the span; returns false when v was already in it.
  bool insert(std::vector<Residue> v);
  bool contains(std::vector<Residue> v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  /// Reduces v against the basis; returns the pivot of the remainder or dim_ when it vanishes.
  std::size_t reduce(std::vector<Residue>& v) const;

  int p_;
  std::size_t dim_;
  std::vector<std::vector<Residue>> rows_;
  std::vector<std::size_t> pivots_;
};

std::string to_string(const ModMatrix& m);

}  // namespace ctkit
