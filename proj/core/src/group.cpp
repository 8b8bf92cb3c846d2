#include "ctkit/group.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "ctkit/arith.hpp"
#include "ctkit/errors.hpp"

namespace ctkit {

const char* to_string(GroupErrorKind kind) {
  switch (kind) {
    case GroupErrorKind::NotAssociative: return "NotAssociative";
    case GroupErrorKind::NoIdentity: return "NoIdentity";
    case GroupErrorKind::NoInverse: return "NoInverse";
    case GroupErrorKind::NotPPower: return "NotPPower";
    case GroupErrorKind::UnknownName: return "UnknownName";
    case GroupErrorKind::TooLarge: return "TooLarge";
    case GroupErrorKind::NotNormal: return "NotNormal";
    case GroupErrorKind::Abelian: return "Abelian";
    case GroupErrorKind::Malformed: return "Malformed";
  }
  return "GroupError";
}

namespace {

std::vector<char> closure_flags(const PGroup& g, const std::vector<int>& seed) {
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  std::vector<int> queue{PGroup::identity()};
  in[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (int s : seed) {
      const int y = g.mul(x, s);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return in;
}

bool generates(const PGroup& g, const std::vector<int>& gens) {
  const auto in = closure_flags(g, gens);
  return std::all_of(in.begin(), in.end(), [](char c) { return c != 0; });
}

std::vector<int> mask_elements(ElementMask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

void require_mask_size(const PGroup& g) {
  if (g.order() > kMaxSubgroupOrder)
    throw GroupError(GroupErrorKind::TooLarge,
                     "order " + std::to_string(g.order()) + " exceeds the subgroup cap of " +
                         std::to_string(kMaxSubgroupOrder));
}

ElementMask full_mask(int n) { return n == 64 ? ~ElementMask{0} : ((ElementMask{1} << n) - 1); }

}  // namespace

// ---------------------------------------------------------------- PGroup

PGroup PGroup::from_cayley_table(const std::vector<std::vector<int>>& input, const std::vector<int>& generators,
                                 std::optional<int> p, std::string name) {
  const int n = static_cast<int>(input.size());
  if (n == 0) throw GroupError(GroupErrorKind::Malformed, "empty table");
  if (n > kMaxGroupOrder)
    throw GroupError(GroupErrorKind::TooLarge, "order " + std::to_string(n) + " exceeds " + std::to_string(kMaxGroupOrder));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(input[i].size()) != n)
      throw GroupError(GroupErrorKind::Malformed, "row " + std::to_string(i) + " has the wrong length");
    for (int x : input[i])
      if (x < 0 || x >= n)
        throw GroupError(GroupErrorKind::Malformed, "entry " + std::to_string(x) + " out of range in row " + std::to_string(i));
  }
  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = input[c][x] == x && input[x][c] == x;
    if (ok) e = c;
  }
  if (e < 0) throw GroupError(GroupErrorKind::NoIdentity, "no two-sided identity element");

  // Relabel so that the identity is element 0.
  std::vector<int> relabel(n);
  std::iota(relabel.begin(), relabel.end(), 0);
  std::swap(relabel[0], relabel[e]);
  PGroup g;
  g.order_ = n;
  g.table_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table_[static_cast<std::size_t>(relabel[a]) * n + relabel[b]] = relabel[input[a][b]];

  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul(a, b) == 0 && g.mul(b, a) == 0) {
        g.inverse_[a] = b;
        break;
      }
    }
    if (g.inverse_[a] < 0) throw GroupError(GroupErrorKind::NoInverse, "element " + std::to_string(relabel[a]) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = g.mul(a, b);
      for (int c = 0; c < n; ++c) {
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
          std::ostringstream os;
          os << "(" << relabel[a] << "*" << relabel[b] << ")*" << relabel[c] << " != " << relabel[a] << "*(" << relabel[b]
             << "*" << relabel[c] << ")";
          throw GroupError(GroupErrorKind::NotAssociative, os.str());
        }
      }
    }

  if (n == 1) {
    g.p_ = p.value_or(0);
    if (g.p_ != 0 && !is_prime(g.p_)) throw GroupError(GroupErrorKind::NotPPower, "p = " + std::to_string(g.p_) + " is not prime");
  } else {
    int q = 2;
    while (n % q != 0) ++q;
    int m = n, k = 0;
    while (m % q == 0) {
      m /= q;
      ++k;
    }
    if (m != 1) throw GroupError(GroupErrorKind::NotPPower, "order " + std::to_string(n) + " is not a prime power");
    if (p && *p != q)
      throw GroupError(GroupErrorKind::NotPPower, "order " + std::to_string(n) + " is not a power of " + std::to_string(*p));
    g.p_ = q;
    g.log_order_ = k;
  }

  if (generators.empty()) {
    g.generators_ = minimal_generators(g);
  } else {
    for (int x : generators) {
      if (x < 0 || x >= n) throw GroupError(GroupErrorKind::Malformed, "generator " + std::to_string(x) + " out of range");
      g.generators_.push_back(relabel[x]);
    }
    if (!generates(g, g.generators_)) throw GroupError(GroupErrorKind::Malformed, "listed generators do not generate the group");
  }
  g.name_ = std::move(name);
  return g;
}

int PGroup::power(int a, long k) const {
  int r = identity();
  int base = a;
  if (k < 0) {
    base = inverse(a);
    k = -k;
  }
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

int PGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

bool PGroup::is_abelian() const {
  for (int a : generators_)
    for (int b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<std::vector<int>> PGroup::table() const {
  std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  return t;
}

PGroup PGroup::renamed(std::string name) const {
  PGroup g = *this;
  g.name_ = std::move(name);
  return g;
}

GroupPtr make_group(PGroup g) { return std::make_shared<const PGroup>(std::move(g)); }

std::vector<int> minimal_generators(const PGroup& g) {
  std::vector<int> candidates(static_cast<std::size_t>(std::max(0, g.order() - 1)));
  std::iota(candidates.begin(), candidates.end(), 1);
  std::vector<int> orders(g.order());
  for (int x = 0; x < g.order(); ++x) orders[x] = g.element_order(x);
  std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) { return orders[a] > orders[b]; });
  std::vector<int> gens;
  std::vector<char> in = closure_flags(g, gens);
  for (int x : candidates) {
    if (in[x]) continue;
    gens.push_back(x);
    in = closure_flags(g, gens);
  }
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<int> fewer = gens;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
    if (generates(g, fewer)) gens = std::move(fewer);
  }
  return gens;
}

ElementMask closure(const PGroup& g, ElementMask seed) {
  require_mask_size(g);
  const auto in = closure_flags(g, mask_elements(seed));
  ElementMask m = 0;
  for (int x = 0; x < g.order(); ++x)
    if (in[x]) m |= ElementMask{1} << x;
  return m;
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(GroupPtr parent, ElementMask elements) : parent_(std::move(parent)), mask_(elements) {
  require_mask_size(*parent_);
  elements_ = mask_elements(mask_);
  if (!contains(PGroup::identity())) throw GroupError(GroupErrorKind::Malformed, "subgroup does not contain the identity");
  for (int a : elements_) {
    if (!contains(parent_->inverse(a))) throw GroupError(GroupErrorKind::Malformed, "subset is not closed under inverses");
    for (int b : elements_)
      if (!contains(parent_->mul(a, b))) throw GroupError(GroupErrorKind::Malformed, "subset is not closed under products");
  }
  if (parent_->order() % order() != 0) throw GroupError(GroupErrorKind::Malformed, "subgroup order does not divide group order");
  normal_ = true;
  central_ = true;
  for (int g : parent_->generators()) {
    for (int x : elements_) {
      if (!contains(parent_->conjugate(g, x))) normal_ = false;
      if (parent_->mul(g, x) != parent_->mul(x, g)) central_ = false;
    }
  }
}

SubgroupAsGroup as_group(const Subgroup& s) {
  const PGroup& g = *s.parent();
  const auto& elems = s.elements();
  std::vector<int> local(g.order(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) local[elems[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) table[i][j] = local[g.mul(elems[i], elems[j])];
  std::ostringstream name;
  name << (g.name().empty() ? "G" : g.name()) << " > subgroup of order " << elems.size();
  SubgroupAsGroup out;
  out.group = make_group(PGroup::from_cayley_table(table, {}, g.p() == 0 ? std::nullopt : std::optional<int>(g.p()), name.str()));
  out.embedding = elems;
  return out;
}

Subgroup whole_group(const GroupPtr& g) { return Subgroup(g, full_mask(g->order())); }

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, ElementMask{1}); }

Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& elements) {
  ElementMask seed = 0;
  for (int x : elements) seed |= ElementMask{1} << x;
  return Subgroup(g, closure(*g, seed));
}

std::vector<Subgroup> subgroups(const GroupPtr& gp) {
  const PGroup& g = *gp;
  require_mask_size(g);
  struct Found {
    ElementMask mask;
    std::vector<int> gens;
  };
  std::vector<Found> found;
  std::unordered_set<ElementMask> seen;
  std::vector<std::pair<ElementMask, int>> cyclic;
  for (int x = 0; x < g.order(); ++x) {
    const ElementMask c = closure(g, ElementMask{1} << x);
    if (seen.insert(c).second) {
      found.push_back({c, x == 0 ? std::vector<int>{} : std::vector<int>{x}});
      cyclic.emplace_back(c, x);
    }
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& [cmask, cgen] : cyclic) {
      if ((cmask & ~found[i].mask) == 0) continue;
      std::vector<int> gens = found[i].gens;
      gens.push_back(cgen);
      const auto in = closure_flags(g, gens);
      ElementMask m = 0;
      for (int x = 0; x < g.order(); ++x)
        if (in[x]) m |= ElementMask{1} << x;
      if (seen.insert(m).second) found.push_back({m, std::move(gens)});
    }
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    const int pa = std::popcount(a.mask), pb = std::popcount(b.mask);
    return pa != pb ? pa < pb : a.mask < b.mask;
  });
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& f : found) out.emplace_back(gp, f.mask);
  return out;
}

Subgroup centralizer(const GroupPtr& gp, ElementMask subset) {
  const PGroup& g = *gp;
  require_mask_size(g);
  const auto targets = mask_elements(subset);
  ElementMask m = 0;
  for (int x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (int y : targets) ok = ok && g.mul(x, y) == g.mul(y, x);
    if (ok) m |= ElementMask{1} << x;
  }
  return Subgroup(gp, m);
}

Subgroup center(const GroupPtr& gp) {
  ElementMask gens = 0;
  for (int x : gp->generators()) gens |= ElementMask{1} << x;
  return centralizer(gp, gens);
}

Subgroup commutator_subgroup(const GroupPtr& gp) {
  const PGroup& g = *gp;
  std::vector<int> comms;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) comms.push_back(g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b)));
  return generated_subgroup(gp, comms);
}

Subgroup power_subgroup(const GroupPtr& gp) {
  const PGroup& g = *gp;
  std::vector<int> powers;
  for (int a = 0; a < g.order(); ++a) powers.push_back(g.power(a, std::max(1, g.p())));
  return generated_subgroup(gp, powers);
}

Subgroup frattini(const GroupPtr& gp) {
  const PGroup& g = *gp;
  if (g.order() == 1) return trivial_subgroup(gp);
  ElementMask m = full_mask(g.order());
  for (const auto& s : subgroups(gp)) {
    if (s.order() * g.p() == g.order()) m &= s.mask();
  }
  return Subgroup(gp, m);
}

QuotientGroup quotient(const GroupPtr& gp, const Subgroup& n) {
  const PGroup& g = *gp;
  if (!n.is_normal()) throw GroupError(GroupErrorKind::NotNormal, "subgroup of order " + std::to_string(n.order()) + " is not normal");
  std::vector<int> proj(g.order(), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (proj[x] >= 0) continue;
    const int idx = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int y : n.elements()) proj[g.mul(x, y)] = idx;
  }
  const std::size_t k = reps.size();
  std::vector<std::vector<int>> table(k, std::vector<int>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) table[a][b] = proj[g.mul(reps[a], reps[b])];
  std::ostringstream name;
  name << (g.name().empty() ? "G" : g.name()) << " / normal subgroup of order " << n.order();
  QuotientGroup q;
  q.group = make_group(PGroup::from_cayley_table(table, {}, g.p() == 0 ? std::nullopt : std::optional<int>(g.p()), name.str()));
  q.projection = std::move(proj);
  return q;
}

std::vector<int> abelian_invariants(const PGroup& g) {
  if (!g.is_abelian()) throw GroupError(GroupErrorKind::Malformed, "abelian_invariants: group is not abelian");
  if (g.order() == 1) return {};
  const int p = g.p();
  // |{x : x^{p^k} = 1}| = p^{sum_i min(a_i, k)}.
  std::vector<int> log_omega{0};
  for (int k = 1; log_omega.back() < g.log_order(); ++k) {
    long pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    int count = 0;
    for (int x = 0; x < g.order(); ++x)
      if (g.power(x, pk) == PGroup::identity()) ++count;
    int lg = 0;
    while (count > 1) {
      count /= p;
      ++lg;
    }
    log_omega.push_back(lg);
  }
  std::vector<int> inv;
  const int kmax = static_cast<int>(log_omega.size()) - 1;
  for (int k = 1; k <= kmax; ++k) {
    const int at_least_k = log_omega[k] - log_omega[k - 1];
    const int at_least_next = k < kmax ? log_omega[k + 1] - log_omega[k] : 0;
    for (int i = 0; i < at_least_k - at_least_next; ++i) inv.push_back(k);
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

std::vector<int> abelianization_invariants(const GroupPtr& g) {
  const auto q = quotient(g, commutator_subgroup(g));
  return abelian_invariants(*q.group);
}

AbelianBasis abelian_basis(const GroupPtr& gp, const Subgroup& h) {
  const PGroup& g = *gp;
  const auto sub = as_group(h);
  const PGroup& hg = *sub.group;
  if (!hg.is_abelian()) throw GroupError(GroupErrorKind::Malformed, "abelian_basis: subgroup is not abelian");
  AbelianBasis out;
  out.coordinates.assign(g.order(), {});
  if (hg.order() == 1) {
    out.coordinates[0] = {};
    return out;
  }
  const int p = hg.p();
  const std::vector<int> gens = hg.generators();
  const std::size_t d = gens.size();
  std::vector<int> orders(d);
  for (std::size_t i = 0; i < d; ++i) orders[i] = hg.element_order(gens[i]);

  // Enumerate exponent vectors: relations and one representative vector per element.
  std::vector<std::vector<int>> relations;
  std::vector<std::vector<int>> rep(hg.order());
  std::vector<int> c(d, 0);
  while (true) {
    int x = PGroup::identity();
    for (std::size_t i = 0; i < d; ++i) x = hg.mul(x, hg.power(gens[i], c[i]));
    if (x == PGroup::identity() && std::any_of(c.begin(), c.end(), [](int v) { return v != 0; })) relations.push_back(c);
    if (rep[x].empty()) rep[x] = c;
    std::size_t i = 0;
    while (i < d && ++c[i] == orders[i]) c[i++] = 0;
    if (i == d) break;
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<int> r(d, 0);
    r[i] = orders[i];
    relations.push_back(r);
  }
  const PadicContext ctx(p, 2 * hg.log_order() + 2);
  ModMatrix rel(d, relations.size());
  for (std::size_t j = 0; j < relations.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) rel(i, j) = ctx.reduce(relations[j][i]);
  const SmithForm s = smith(rel, ctx, {.want_P = true, .want_Q = false, .want_P_inverse = true});

  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < d; ++j)
    if (s.diag[j] > 0) kept.push_back(j);
  for (std::size_t j : kept) {
    int z = PGroup::identity();
    for (std::size_t i = 0; i < d; ++i)
      z = hg.mul(z, hg.power(gens[i], static_cast<long>(s.P_inverse(i, j) % static_cast<Residue>(orders[i]))));
    out.basis.push_back(sub.embedding[z]);
    out.exponents.push_back(s.diag[j]);
  }
  for (int x = 0; x < hg.order(); ++x) {
    std::vector<int> coords;
    for (std::size_t j : kept) {
      Residue y = 0;
      for (std::size_t i = 0; i < d; ++i) y = ctx.add(y, ctx.mul(s.P(j, i), ctx.reduce(rep[x][i])));
      coords.push_back(static_cast<int>(y % ctx.pow(s.diag[j])));
    }
    out.coordinates[sub.embedding[x]] = std::move(coords);
  }
  return out;
}

// ---------------------------------------------------------------- catalog

namespace {

int ipow(int b, int k) {
  int r = 1;
  for (int i = 0; i < k; ++i) r *= b;
  return r;
}

int log_exact(int n, int b) {
  int k = 0;
  while (n > 1 && n % b == 0) {
    n /= b;
    ++k;
  }
  return n == 1 ? k : -1;
}

GroupPtr build(int n, const std::function<int(int, int)>& mul, const std::vector<int>& gens, int p, std::string name) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = mul(a, b);
  return make_group(PGroup::from_cayley_table(t, gens, p, std::move(name)));
}

std::string label(const std::string& name, const std::vector<int>& params) {
  std::string s = name;
  for (int v : params) s += " " + std::to_string(v);
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw GroupError(GroupErrorKind::UnknownName, what);
}

// Groups of the form <r, s> with r of order m, s of order 2, s r s^{-1} = r^k and s^2 = r^h; element r^i s^j.
GroupPtr two_generator(int m, int k, int h, std::string name) {
  const int n = 2 * m;
  auto mul = [=](int a, int b) {
    const int i = a % m, j = a / m, c = b % m, d = b / m;
    int expo = c;
    if (j == 1) expo = static_cast<int>((static_cast<long>(c) * k) % m);
    int r = (i + expo) % m;
    int s = j + d;
    if (s == 2) {
      r = (r + h) % m;
      s = 0;
    }
    return r + s * m;
  };
  return build(n, mul, {1, m}, 2, std::move(name));
}

}  // namespace

GroupPtr cyclic_group(int p, int n) {
  require(is_prime(p) && n >= 0, "cyclic requires a prime p and n >= 0");
  const int m = ipow(p, n);
  return build(m, [m](int a, int b) { return (a + b) % m; }, m > 1 ? std::vector<int>{1} : std::vector<int>{}, p,
               label("cyclic", {p, n}));
}

GroupPtr abelian_group(int p, const std::vector<int>& exponents) {
  require(is_prime(p), "abelian requires a prime p");
  std::vector<int> mods;
  int n = 1;
  for (int a : exponents) {
    require(a >= 1, "abelian exponents must be >= 1");
    mods.push_back(ipow(p, a));
    n *= mods.back();
  }
  auto mul = [mods](int a, int b) {
    int r = 0, scale_by = 1;
    for (int m : mods) {
      r += ((a % m + b % m) % m) * scale_by;
      a /= m;
      b /= m;
      scale_by *= m;
    }
    return r;
  };
  std::vector<int> gens;
  int scale_by = 1;
  for (int m : mods) {
    gens.push_back(scale_by);
    scale_by *= m;
  }
  std::vector<int> params{p};
  params.insert(params.end(), exponents.begin(), exponents.end());
  return build(n, mul, gens, p, label("abelian", params));
}

GroupPtr direct_product(const PGroup& a, const PGroup& b) {
  if (a.p() != 0 && b.p() != 0 && a.p() != b.p())
    throw GroupError(GroupErrorKind::NotPPower, "direct product of groups for different primes");
  const int na = a.order();
  const int n = na * b.order();
  std::vector<int> gens;
  for (int x : a.generators()) gens.push_back(x);
  for (int y : b.generators()) gens.push_back(y * na);
  return build(
      n, [&](int x, int y) { return a.mul(x % na, y % na) + na * b.mul(x / na, y / na); }, gens,
      a.p() != 0 ? a.p() : b.p(), a.name() + " x " + b.name());
}

GroupPtr catalog(const std::string& name, const std::vector<int>& params) {
  auto nparams = [&](std::size_t k) {
    if (params.size() != k)
      throw GroupError(GroupErrorKind::UnknownName, name + " expects " + std::to_string(k) + " parameter(s)");
  };
  if (name == "trivial") {
    require(params.size() <= 1, "trivial takes an optional prime");
    const int p = params.empty() ? 2 : params[0];
    return make_group(PGroup::from_cayley_table({{0}}, {}, p, label("trivial", params)));
  }
  if (name == "cyclic") {
    nparams(2);
    return cyclic_group(params[0], params[1]);
  }
  if (name == "elementary") {
    nparams(2);
    const auto g = abelian_group(params[0], std::vector<int>(static_cast<std::size_t>(std::max(0, params[1])), 1));
    return make_group(g->renamed(label(name, params)));
  }
  if (name == "abelian") {
    require(!params.empty(), "abelian expects p followed by exponents");
    return abelian_group(params[0], std::vector<int>(params.begin() + 1, params.end()));
  }
  if (name == "dihedral") {
    nparams(1);
    const int n = params[0];
    require(n >= 4 && log_exact(n, 2) > 0, "dihedral order must be a power of 2, at least 4");
    const int m = n / 2;
    return two_generator(m, m - 1, 0, label(name, params));
  }
  if (name == "quaternion") {
    nparams(1);
    const int n = params[0];
    require(n >= 8 && log_exact(n, 2) > 0, "quaternion order must be a power of 2, at least 8");
    const int m = n / 2;
    return two_generator(m, m - 1, m / 2, label(name, params));
  }
  if (name == "semidihedral") {
    nparams(1);
    const int n = params[0];
    require(n >= 16 && log_exact(n, 2) > 0, "semidihedral order must be a power of 2, at least 16");
    const int m = n / 2;
    return two_generator(m, m / 2 - 1, 0, label(name, params));
  }
  if (name == "modular") {
    nparams(2);
    const int p = params[0], n = params[1];
    require(is_prime(p) && (p == 2 ? n >= 4 : n >= 3), "modular requires n >= 3 (n >= 4 for p = 2)");
    const int m = ipow(p, n - 1);
    const int k = 1 + ipow(p, n - 2);
    // x^i y^j with y x y^{-1} = x^k, y of order p.
    std::vector<int> kpow(p, 1);
    for (int j = 1; j < p; ++j) kpow[j] = static_cast<int>((static_cast<long>(kpow[j - 1]) * k) % m);
    auto mul = [=](int a, int b) {
      const int i = a % m, j = a / m, c = b % m, d = b / m;
      const int r = static_cast<int>((i + static_cast<long>(c) * kpow[j]) % m);
      return r + ((j + d) % p) * m;
    };
    return build(m * p, mul, {1, m}, p, label(name, params));
  }
  if (name == "heisenberg") {
    nparams(1);
    const int p = params[0];
    require(is_prime(p), "heisenberg requires a prime");
    auto mul = [p](int x, int y) {
      const int a = x % p, b = (x / p) % p, c = x / (p * p);
      const int a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
      return (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
    };
    return build(p * p * p, mul, {1, p}, p, label(name, params));
  }
  throw GroupError(GroupErrorKind::UnknownName, "unknown catalog group '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> catalog_names() {
  return {{"trivial", "[p]"},          {"cyclic", "p n"},           {"elementary", "p k"},
          {"abelian", "p a1 a2 ..."},  {"dihedral", "order"},       {"quaternion", "order"},
          {"semidihedral", "order"},   {"modular", "p n"},          {"heisenberg", "p"}};
}

}  // namespace ctkit
