#include "ctkit/arith.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ctkit {

namespace {

constexpr Residue kMaxModulus = Residue{1} << 62;

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int PadicContext::max_precision(int p) {
  int e = 0;
  Residue m = 1;
  while (m <= kMaxModulus / static_cast<Residue>(p)) {
    m *= static_cast<Residue>(p);
    ++e;
  }
  return e;
}

PadicContext::PadicContext(int p, int e) : p_(p), e_(e), modulus_(1), narrow_(false) {
  if (!is_prime(p)) throw std::invalid_argument("PadicContext: p = " + std::to_string(p) + " is not prime");
  if (e < 1) throw std::invalid_argument("PadicContext: precision must be >= 1");
  if (e > max_precision(p)) {
    throw std::invalid_argument("PadicContext: p^e exceeds the 62-bit residue range (p = " + std::to_string(p) +
                                ", e = " + std::to_string(e) + ")");
  }
  for (int i = 0; i < e; ++i) modulus_ *= static_cast<Residue>(p);
  narrow_ = modulus_ <= (Residue{1} << 32);
}

Residue PadicContext::pow(int k) const {
  if (k >= e_) return 0;
  Residue r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<Residue>(p_);
  return r;
}

Residue PadicContext::reduce(std::int64_t x) const {
  const auto m = static_cast<std::int64_t>(modulus_);
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

std::int64_t PadicContext::centered(Residue x) const {
  if (x > modulus_ / 2) return -static_cast<std::int64_t>(modulus_ - x);
  return static_cast<std::int64_t>(x);
}

int PadicContext::valuation(Residue a) const {
  if (a == 0) return e_;
  int v = 0;
  const auto p = static_cast<Residue>(p_);
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

Residue PadicContext::unit_inverse(Residue u) const {
  // Extended Euclid on (u, p^e); u must be coprime to p.
  std::int64_t old_r = static_cast<std::int64_t>(modulus_), r = static_cast<std::int64_t>(u % modulus_);
  __int128 old_s = 0, s = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= static_cast<__int128>(q) * old_s;
  }
  if (old_r != 1) throw std::domain_error("unit_inverse: argument is not a unit");
  __int128 res = old_s % static_cast<__int128>(modulus_);
  if (res < 0) res += modulus_;
  return static_cast<Residue>(res);
}

Residue PadicContext::divide_by_power(Residue x, int k) const {
  if (k == 0) return x;
  return (x / pow(k)) % modulus_;
}

// ---------------------------------------------------------------- ModMatrix

ModMatrix ModMatrix::identity(std::size_t n) {
  ModMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ModMatrix ModMatrix::from_signed(std::size_t rows, std::size_t cols, std::span<const std::int64_t> values,
                                 const PadicContext& ctx) {
  if (values.size() != rows * cols) throw std::invalid_argument("ModMatrix::from_signed: size mismatch");
  ModMatrix m(rows, cols);
  for (std::size_t i = 0; i < values.size(); ++i) m.data_[i] = ctx.reduce(values[i]);
  return m;
}

ModMatrix ModMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, const PadicContext& ctx) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  ModMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ModMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = ctx.reduce(rows[i][j]);
  }
  return m;
}

std::vector<Residue> ModMatrix::column(std::size_t j) const {
  std::vector<Residue> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void ModMatrix::set_column(std::size_t j, std::span<const Residue> v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ModMatrix ModMatrix::reduced(const PadicContext& ctx) const {
  ModMatrix m = *this;
  for (auto& x : m.data_) x = ctx.reduce_wide(x);
  return m;
}

bool ModMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

ModMatrix ModMatrix::column_block(std::size_t first, std::size_t count) const {
  ModMatrix m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
  return m;
}

ModMatrix ModMatrix::row_block(std::size_t first, std::size_t count) const {
  ModMatrix m(count, cols_);
  std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_), m.data_.begin());
  return m;
}

ModMatrix multiply(const ModMatrix& a, const ModMatrix& b, const PadicContext& ctx) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  ModMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Residue x = a(i, k);
      if (x == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (brow[j] != 0) out[j] = ctx.add(out[j], ctx.mul(x, brow[j]));
      }
    }
  }
  return c;
}

std::vector<Residue> multiply(const ModMatrix& a, std::span<const Residue> x, const PadicContext& ctx) {
  if (a.cols() != x.size()) throw std::invalid_argument("multiply: vector length mismatch");
  std::vector<Residue> y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Residue s = 0;
    auto r = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (r[j] != 0 && x[j] != 0) s = ctx.add(s, ctx.mul(r[j], x[j]));
    }
    y[i] = s;
  }
  return y;
}

ModMatrix add(const ModMatrix& a, const ModMatrix& b, const PadicContext& ctx) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
  ModMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ctx.add(a(i, j), b(i, j));
  return c;
}

ModMatrix subtract(const ModMatrix& a, const ModMatrix& b, const PadicContext& ctx) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("subtract: shape mismatch");
  ModMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ctx.sub(a(i, j), b(i, j));
  return c;
}

ModMatrix scale(const ModMatrix& a, Residue s, const PadicContext& ctx) {
  ModMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ctx.mul(a(i, j), s);
  return c;
}

ModMatrix hstack(const std::vector<const ModMatrix*>& blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto* b : blocks) {
    if (b->rows() != rows && b->cols() != 0) throw std::invalid_argument("hstack: row mismatch");
    cols += b->cols();
  }
  ModMatrix m(rows, cols);
  std::size_t off = 0;
  for (const auto* b : blocks) {
    for (std::size_t i = 0; i < b->rows(); ++i)
      for (std::size_t j = 0; j < b->cols(); ++j) m(i, off + j) = (*b)(i, j);
    off += b->cols();
  }
  return m;
}

ModMatrix vstack(const std::vector<const ModMatrix*>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto* b : blocks) {
    if (b->cols() != cols && b->rows() != 0) throw std::invalid_argument("vstack: column mismatch");
    rows += b->rows();
  }
  ModMatrix m(rows, cols);
  std::size_t off = 0;
  for (const auto* b : blocks) {
    for (std::size_t i = 0; i < b->rows(); ++i)
      for (std::size_t j = 0; j < b->cols(); ++j) m(off + i, j) = (*b)(i, j);
    off += b->rows();
  }
  return m;
}

ModMatrix kronecker(const ModMatrix& a, const ModMatrix& b, const PadicContext& ctx) {
  ModMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Residue x = a(i, j);
      if (x == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = ctx.mul(x, b(r, c));
    }
  return k;
}

ModMatrix diagonal_powers(std::span<const int> exps, const PadicContext& ctx) {
  ModMatrix d(exps.size(), exps.size());
  for (std::size_t i = 0; i < exps.size(); ++i) d(i, i) = ctx.pow(exps[i]);
  return d;
}

// ---------------------------------------------------------------- Smith form

std::size_t SmithForm::rank() const {
  return static_cast<std::size_t>(
      std::count_if(diag.begin(), diag.end(), [this](int a) { return a < precision; }));
}

namespace {

// dst -= f * src over the index range [from, n).
inline void row_axpy(std::span<Residue> dst, std::span<const Residue> src, Residue f, std::size_t from,
                     const PadicContext& ctx) {
  for (std::size_t j = from; j < dst.size(); ++j) {
    if (src[j] != 0) dst[j] = ctx.sub(dst[j], ctx.mul(f, src[j]));
  }
}

inline void row_add_scaled(std::span<Residue> dst, std::span<const Residue> src, Residue f,
                           const PadicContext& ctx) {
  for (std::size_t j = 0; j < dst.size(); ++j) {
    if (src[j] != 0) dst[j] = ctx.add(dst[j], ctx.mul(f, src[j]));
  }
}

inline void swap_rows(ModMatrix& m, std::size_t a, std::size_t b) {
  if (a == b || m.empty()) return;
  auto ra = m.row(a);
  auto rb = m.row(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

inline void swap_cols(ModMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

inline void scale_row(ModMatrix& m, std::size_t r, Residue f, const PadicContext& ctx) {
  for (auto& x : m.row(r)) x = ctx.mul(x, f);
}

}  // namespace

SmithForm smith(const ModMatrix& input, const PadicContext& ctx, SmithOptions options) {
  const std::size_t rows = input.rows();
  const std::size_t cols = input.cols();
  ModMatrix a = input.reduced(ctx);
  ModMatrix P = options.want_P ? ModMatrix::identity(rows) : ModMatrix();
  ModMatrix Pinv_t = options.want_P_inverse ? ModMatrix::identity(rows) : ModMatrix();
  // Column operations on Q are applied as row operations on its transpose.
  ModMatrix Q_t = options.want_Q ? ModMatrix::identity(cols) : ModMatrix();

  const std::size_t steps = std::min(rows, cols);
  const int e = ctx.precision();
  SmithForm out;
  out.precision = e;
  out.diag.assign(steps, e);

  for (std::size_t t = 0; t < steps; ++t) {
    int best = e;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < rows && best > 0; ++i) {
      auto r = a.row(i);
      for (std::size_t j = t; j < cols; ++j) {
        if (r[j] == 0) continue;
        const int v = ctx.valuation(r[j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    }
    if (best == e) break;

    swap_rows(a, t, bi);
    if (options.want_P) swap_rows(P, t, bi);
    if (options.want_P_inverse) swap_rows(Pinv_t, t, bi);
    swap_cols(a, t, bj);
    if (options.want_Q) swap_rows(Q_t, t, bj);

    const Residue pivot = a(t, t);
    const Residue unit = ctx.divide_by_power(pivot, best);
    if (unit != 1) {
      const Residue uinv = ctx.unit_inverse(unit);
      scale_row(a, t, uinv, ctx);
      if (options.want_P) scale_row(P, t, uinv, ctx);
      if (options.want_P_inverse) scale_row(Pinv_t, t, unit, ctx);
    }

    for (std::size_t i = t + 1; i < rows; ++i) {
      const Residue x = a(i, t);
      if (x == 0) continue;
      const Residue f = ctx.divide_by_power(x, best);
      row_axpy(a.row(i), a.row(t), f, t, ctx);
      if (options.want_P) row_axpy(P.row(i), P.row(t), f, 0, ctx);
      if (options.want_P_inverse) row_add_scaled(Pinv_t.row(t), Pinv_t.row(i), f, ctx);
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      const Residue x = a(t, j);
      if (x == 0) continue;
      const Residue f = ctx.divide_by_power(x, best);
      a(t, j) = 0;
      if (options.want_Q) row_axpy(Q_t.row(j), Q_t.row(t), f, 0, ctx);
    }
    out.diag[t] = best;
  }

  if (options.want_P) out.P = std::move(P);
  if (options.want_Q) out.Q = Q_t.transpose();
  if (options.want_P_inverse) out.P_inverse = Pinv_t.transpose();
  return out;
}

std::vector<Residue> CokernelStructure::orders(const PadicContext& ctx) const {
  std::vector<Residue> o;
  o.reserve(exponents.size());
  for (int a : exponents) o.push_back(ctx.pow(a));
  return o;
}

CokernelStructure cokernel_structure(const ModMatrix& m, const PadicContext& ctx) {
  const SmithForm s = smith(m, ctx, {.want_P = false, .want_Q = false});
  CokernelStructure out;
  const int e = ctx.precision();
  for (int a : s.diag) {
    if (a == e) {
      ++out.saturated;
    } else if (a > 0) {
      out.exponents.push_back(a);
    }
  }
  if (m.rows() > s.diag.size()) out.saturated += static_cast<int>(m.rows() - s.diag.size());
  return out;
}

std::optional<std::vector<Residue>> solve(const ModMatrix& m, std::span<const Residue> b, const PadicContext& ctx) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  const SmithForm s = smith(m, ctx);
  const std::vector<Residue> pb = multiply(s.P, b, ctx);
  std::vector<Residue> y(m.cols(), 0);
  const int e = ctx.precision();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const int a = i < s.diag.size() ? s.diag[i] : e;
    if (a == e) {
      if (pb[i] != 0) return std::nullopt;
      continue;
    }
    if (ctx.valuation(pb[i]) < a) return std::nullopt;
    y[i] = ctx.divide_by_power(pb[i], a);
  }
  return multiply(s.Q, y, ctx);
}

std::vector<std::vector<Residue>> kernel_basis_fp(const ModMatrix& m, int p) {
  const PadicContext f(p, 1);
  const SmithForm s = smith(m, f, {.want_P = false, .want_Q = true});
  std::vector<std::vector<Residue>> basis;
  const std::size_t r = s.rank();
  for (std::size_t j = r; j < m.cols(); ++j) basis.push_back(s.Q.column(j));
  return basis;
}

std::size_t rank_fp(const ModMatrix& m, int p) {
  const PadicContext f(p, 1);
  return smith(m, f, {.want_P = false, .want_Q = false}).rank();
}

bool is_invertible(const ModMatrix& m, const PadicContext& ctx) {
  if (m.rows() != m.cols()) return false;
  return rank_fp(m.reduced(ctx.residue_field()), ctx.p()) == m.rows();
}

ModMatrix inverse(const ModMatrix& m, const PadicContext& ctx) {
  if (!is_invertible(m, ctx)) throw std::domain_error("inverse: matrix is not invertible modulo p");
  // P m Q = I, so m^{-1} = Q P.
  const SmithForm s = smith(m, ctx);
  return multiply(s.Q, s.P, ctx);
}

std::size_t FpEchelon::reduce(std::vector<Residue>& v) const {
  const Residue p = static_cast<Residue>(p_);
  for (auto& x : v) x %= p;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Residue c = v[pivots_[k]];
    if (c == 0) continue;
    const Residue f = p - c;
    for (std::size_t j = pivots_[k]; j < dim_; ++j) v[j] = (v[j] + f * rows_[k][j]) % p;
  }
  for (std::size_t j = 0; j < dim_; ++j)
    if (v[j] != 0) return j;
  return dim_;
}

bool FpEchelon::insert(std::vector<Residue> v) {
  const std::size_t piv = reduce(v);
  if (piv == dim_) return false;
  const PadicContext f(p_, 1);
  const Residue inv = f.unit_inverse(v[piv]);
  for (auto& x : v) x = f.mul(x, inv);
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

bool FpEchelon::contains(std::vector<Residue> v) const { return reduce(v) == dim_; }

std::string to_string(const ModMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace ctkit
