#include "ctkit/jordan.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "ctkit/errors.hpp"

namespace ctkit {

namespace {

// Dense F_p matrix with products accumulated in 64 bits and reduced once per entry.
class FpDense {
 public:
  FpDense(std::size_t n, std::uint32_t p) : n_(n), p_(p), a_(n * n, 0) {}

  static FpDense from(const ModMatrix& m, std::uint32_t p) {
    FpDense out(m.rows(), p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = static_cast<std::uint32_t>(m(i, j) % p);
    return out;
  }

  std::uint32_t& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::size_t size() const { return n_; }

  FpDense operator*(const FpDense& b) const {
    FpDense c(n_, p_);
    std::vector<std::uint64_t> acc(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < n_; ++k) {
        const std::uint64_t x = at(i, k);
        if (x == 0) continue;
        const std::uint32_t* row = &b.a_[k * n_];
        for (std::size_t j = 0; j < n_; ++j) acc[j] += x * row[j];
      }
      for (std::size_t j = 0; j < n_; ++j) c.at(i, j) = static_cast<std::uint32_t>(acc[j] % p_);
    }
    return c;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::uint32_t x) { return x == 0; });
  }

  std::size_t rank() const {
    std::vector<std::uint32_t> m = a_;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n_ && r < n_; ++c) {
      std::size_t piv = r;
      while (piv < n_ && m[piv * n_ + c] == 0) ++piv;
      if (piv == n_) continue;
      if (piv != r)
        for (std::size_t j = 0; j < n_; ++j) std::swap(m[piv * n_ + j], m[r * n_ + j]);
      const std::uint64_t inv = inverse(m[r * n_ + c]);
      for (std::size_t j = c; j < n_; ++j) m[r * n_ + j] = static_cast<std::uint32_t>(m[r * n_ + j] * inv % p_);
      for (std::size_t i = r + 1; i < n_; ++i) {
        const std::uint64_t f = m[i * n_ + c];
        if (f == 0) continue;
        for (std::size_t j = c; j < n_; ++j)
          m[i * n_ + j] = static_cast<std::uint32_t>((m[i * n_ + j] + (p_ - f) * m[r * n_ + j]) % p_);
      }
      ++r;
    }
    return r;
  }

 private:
  std::uint64_t inverse(std::uint64_t x) const {
    std::uint64_t r = 1, b = x, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return r;
  }

  std::size_t n_;
  std::uint32_t p_;
  std::vector<std::uint32_t> a_;
};

int ipow(int p, int n) {
  int r = 1;
  while (n-- > 0) r *= p;
  return r;
}

JordanType type_of(const FpDense& g, int p, int n) {
  const std::size_t m = g.size();
  const int top = ipow(p, n);
  FpDense nil = g;
  for (std::size_t i = 0; i < m; ++i) nil.at(i, i) = (nil.at(i, i) + static_cast<std::uint32_t>(p) - 1) % p;
  std::vector<long> rk{static_cast<long>(m)};
  FpDense power = nil;
  for (int k = 1; k <= top + 1; ++k) {
    rk.push_back(static_cast<long>(power.rank()));
    if (k == top && rk.back() != 0)
      throw NotNilpotent("(g-1)^" + std::to_string(top) + " does not vanish");
    if (rk.back() == 0) {
      while (static_cast<int>(rk.size()) <= top + 1) rk.push_back(0);
      break;
    }
    power = power * nil;
  }
  JordanType t{p, n, {}};
  for (int r = top; r >= 1; --r) {
    const long mult = rk[r - 1] - 2 * rk[r] + rk[r + 1];
    for (long i = 0; i < mult; ++i) t.parts.push_back(r);
  }
  return t;
}

FpDense kron(const FpDense& a, const FpDense& b, std::uint32_t p) {
  const std::size_t n = a.size(), m = b.size();
  FpDense out(n * m, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t x = a.at(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out.at(i * m + k, j * m + l) = static_cast<std::uint32_t>(x * b.at(k, l) % p);
    }
  return out;
}

// Inverse transpose of a block-diagonal unipotent matrix: invert each Jordan block.
FpDense dual_action(const FpDense& g, std::uint32_t p) {
  const std::size_t m = g.size();
  FpDense inv(m, p);
  // (I + S)^{-1} = sum (-S)^k, valid for any unipotent matrix.
  FpDense nil = g;
  for (std::size_t i = 0; i < m; ++i) nil.at(i, i) = (nil.at(i, i) + p - 1) % p;
  FpDense neg(m, p);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) neg.at(i, j) = (p - nil.at(i, j)) % p;
  FpDense term(m, p);
  for (std::size_t i = 0; i < m; ++i) term.at(i, i) = 1;
  while (!term.is_zero()) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) inv.at(i, j) = (inv.at(i, j) + term.at(i, j)) % p;
    term = term * neg;
  }
  FpDense out(m, p);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out.at(i, j) = inv.at(j, i);
  return out;
}

void check_type(const JordanType& v) {
  for (int r : v.parts)
    if (r < 1 || r > v.max_part()) throw ValidationError("Jordan part out of range: " + std::to_string(r));
}

FpDense block_matrix(const std::vector<int>& parts, std::uint32_t p) {
  return FpDense::from(jordan_matrix(parts), p);
}

}  // namespace

int JordanType::dim() const {
  int s = 0;
  for (int r : parts) s += r;
  return s;
}

int JordanType::max_part() const { return ipow(p, n); }

bool JordanType::is_free() const {
  return std::all_of(parts.begin(), parts.end(), [this](int r) { return r == max_part(); });
}

std::string JordanType::to_string() const {
  if (parts.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "+" : "") << parts[i];
  return os.str();
}

ModMatrix jordan_block(int r) { return jordan_matrix({r}); }

ModMatrix jordan_matrix(const std::vector<int>& parts) {
  std::size_t m = 0;
  for (int r : parts) m += static_cast<std::size_t>(r);
  ModMatrix out = ModMatrix::identity(m);
  std::size_t base = 0;
  for (int r : parts) {
    for (int i = 0; i + 1 < r; ++i) out(base + static_cast<std::size_t>(i) + 1, base + static_cast<std::size_t>(i)) = 1;
    base += static_cast<std::size_t>(r);
  }
  return out;
}

JordanType jordan_type(const ModMatrix& g, int p, int n) {
  if (g.rows() != g.cols()) throw ValidationError("jordan_type needs a square matrix");
  return type_of(FpDense::from(g, static_cast<std::uint32_t>(p)), p, n);
}

JordanType tensor_decompose(int r, int s, int p, int n) {
  const int top = ipow(p, n);
  if (r < 1 || s < 1 || r > top || s > top) throw ValidationError("tensor_decompose: sizes must lie in [1, p^n]");
  const auto q = static_cast<std::uint32_t>(p);
  return type_of(kron(block_matrix({r}, q), block_matrix({s}, q), q), p, n);
}

JordanType hom_decompose(const JordanType& v) {
  check_type(v);
  const auto q = static_cast<std::uint32_t>(v.p);
  const FpDense g = block_matrix(v.parts, q);
  return type_of(kron(dual_action(g, q), g, q), v.p, v.n);
}

JordanType dual_type(const JordanType& v) {
  check_type(v);
  const auto q = static_cast<std::uint32_t>(v.p);
  return type_of(dual_action(block_matrix(v.parts, q), q), v.p, v.n);
}

HomFreenessCheck verify_lemma44(const JordanType& v) {
  if (v.n != 1) throw ValidationError("verify_lemma44 covers groups of order p");
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, JordanType> table;
  HomFreenessCheck c;
  c.v = v;
  c.hom = hom_decompose(v);
  std::vector<int> summed;
  for (int r : v.parts)
    for (int s : v.parts) {
      JordanType t;
      {
        std::lock_guard<std::mutex> lock(mutex);
        auto key = std::make_tuple(v.p, r, s);
        auto it = table.find(key);
        if (it == table.end()) it = table.emplace(key, tensor_decompose(r, s, v.p, 1)).first;
        t = it->second;
      }
      summed.insert(summed.end(), t.parts.begin(), t.parts.end());
    }
  std::sort(summed.rbegin(), summed.rend());
  c.table_agrees = summed == c.hom.parts;
  const bool hom_free = c.hom.is_free();
  c.divisibility = true;
  if (hom_free)
    for (int r : v.parts)
      for (int s : v.parts) c.divisibility = c.divisibility && (r * s) % v.p == 0;
  c.implication = !hom_free || v.is_free();
  return c;
}

std::vector<std::vector<int>> partitions(int total, int max_part) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int cap) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int r = std::min(left, cap); r >= 1; --r) {
      cur.push_back(r);
      self(self, left - r, r);
      cur.pop_back();
    }
  };
  rec(rec, total, max_part);
  return out;
}

std::string tensor_table_csv(int p, int n) {
  std::ostringstream os;
  os << "p,n,r,s,parts\n";
  const int top = ipow(p, n);
  for (int r = 1; r <= top; ++r)
    for (int s = 1; s <= top; ++s) os << p << ',' << n << ',' << r << ',' << s << ',' << tensor_decompose(r, s, p, n).to_string() << '\n';
  return os.str();
}

}  // namespace ctkit
