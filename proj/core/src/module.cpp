#include "ctkit/module.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "ctkit/errors.hpp"

namespace ctkit {

namespace {

int v_p(int n, int p) {
  int k = 0;
  while (n > 1 && n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

std::vector<ModMatrix> expand_elements(const PGroup& g, const std::vector<ModMatrix>& action, std::size_t dim,
                                       const std::function<ModMatrix(const ModMatrix&)>& reduce_rows,
                                       const PadicContext& ctx) {
  std::vector<ModMatrix> elements(static_cast<std::size_t>(g.order()));
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  elements[0] = ModMatrix::identity(dim);
  seen[0] = 1;
  std::vector<int> queue{0};
  const auto& gens = g.generators();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const int y = g.mul(gens[i], x);
      if (seen[y]) continue;
      seen[y] = 1;
      elements[y] = reduce_rows(multiply(action[i], elements[x], ctx));
      queue.push_back(y);
    }
  }
  return elements;
}

std::vector<std::int64_t> centered_column(const ModMatrix& m, std::size_t j, const PadicContext& ctx) {
  std::vector<std::int64_t> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = ctx.centered(m(i, j));
  return v;
}

// Sorts coordinates into torsion-first, nondecreasing order. `exps[i] < 0` marks a free coordinate.
FgModule assemble(const PadicContext& ctx, const GroupPtr& g, const std::vector<int>& exps,
                  const std::vector<ModMatrix>& mats) {
  const std::size_t m = exps.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t i) { return exps[i] < 0 ? ctx.precision() + 1 : exps[i]; };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  std::vector<int> torsion;
  int free_rank = 0;
  for (std::size_t i : order) {
    if (exps[i] < 0)
      ++free_rank;
    else
      torsion.push_back(exps[i]);
  }
  std::vector<ModMatrix> out;
  for (const auto& a : mats) {
    ModMatrix b(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) b(i, j) = a(order[i], order[j]);
    out.push_back(std::move(b));
  }
  return FgModule(ctx, g, std::move(torsion), free_rank, std::move(out));
}

ModMatrix block_diagonal(const ModMatrix& a, const ModMatrix& b) {
  ModMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

ModMatrix minus_identity(const ModMatrix& m, const PadicContext& ctx) {
  return subtract(m, ModMatrix::identity(m.rows()), ctx);
}

void require_same_prime(const GroupPtr& g, const PadicContext& ctx) {
  if (g->p() != 0 && g->p() != ctx.p())
    throw ValidationError("group prime " + std::to_string(g->p()) + " does not match context prime " +
                          std::to_string(ctx.p()));
}

}  // namespace

// ---------------------------------------------------------------- FgModule

FgModule::FgModule(PadicContext ctx, GroupPtr group, std::vector<int> torsion_exponents, int free_rank,
                   std::vector<ModMatrix> action)
    : ctx_(ctx), group_(std::move(group)), torsion_(std::move(torsion_exponents)), free_rank_(free_rank) {
  require_same_prime(group_, ctx_);
  if (free_rank_ < 0) throw ValidationError("negative free rank");
  if (action.size() != group_->generators().size())
    throw ValidationError("expected " + std::to_string(group_->generators().size()) + " action matrices, got " +
                          std::to_string(action.size()));
  const auto m = static_cast<std::size_t>(dim());
  for (auto& a : action) {
    if (a.rows() != m || a.cols() != m)
      throw ValidationError("action matrix has shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            ", expected " + std::to_string(m) + "x" + std::to_string(m));
    action_.push_back(reduce_rows(a.reduced(ctx_)));
  }
  elements_ = std::make_shared<const std::vector<ModMatrix>>(expand_elements(
      *group_, action_, m, [this](const ModMatrix& x) { return reduce_rows(x); }, ctx_));
}

int FgModule::log_order() const { return std::accumulate(torsion_.begin(), torsion_.end(), 0); }

int FgModule::component_exponent(std::size_t i) const {
  return i < torsion_.size() ? torsion_[i] : ctx_.precision();
}

ModMatrix FgModule::relations() const {
  ModMatrix r(static_cast<std::size_t>(dim()), torsion_.size());
  for (std::size_t i = 0; i < torsion_.size(); ++i) r(i, i) = ctx_.pow(torsion_[i]);
  return r;
}

ModMatrix FgModule::relations(int copies) const {
  const auto m = static_cast<std::size_t>(dim());
  const std::size_t k = torsion_.size();
  ModMatrix r(m * copies, k * copies);
  for (int c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < k; ++i) r(c * m + i, c * k + i) = ctx_.pow(torsion_[i]);
  return r;
}

ModMatrix FgModule::reduce_rows(const ModMatrix& m) const {
  ModMatrix out = m;
  for (std::size_t i = 0; i < torsion_.size() && i < out.rows(); ++i) {
    if (torsion_[i] >= ctx_.precision()) continue;
    const Residue q = ctx_.pow(torsion_[i]);
    for (auto& x : out.row(i)) x %= q;
  }
  return out;
}

ModMatrix FgModule::norm_matrix() const {
  ModMatrix n(static_cast<std::size_t>(dim()), static_cast<std::size_t>(dim()));
  for (const auto& m : *elements_) n = add(n, m, ctx_);
  return reduce_rows(n);
}

FgModule FgModule::with_precision(int e) const {
  if (e == ctx_.precision()) return *this;
  if (rebuild_) return (*rebuild_)(e);
  const PadicContext next = ctx_.with_precision(e);
  std::vector<ModMatrix> lifted;
  for (const auto& a : action_) {
    ModMatrix b(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = next.reduce(ctx_.centered(a(i, j)));
    lifted.push_back(std::move(b));
  }
  FgModule out(next, group_, torsion_, free_rank_, std::move(lifted));
  if (e > ctx_.precision() && !is_finite()) {
    const auto problems = validate(out);
    if (!problems.empty())
      throw PrecisionExhausted("module data is only known modulo p^" + std::to_string(ctx_.precision()) +
                               " and does not lift: " + problems.front());
  }
  return out;
}

FgModule FgModule::with_rebuild(std::function<FgModule(int)> rebuild) const {
  FgModule out = *this;
  out.rebuild_ = std::make_shared<const std::function<FgModule(int)>>(std::move(rebuild));
  return out;
}

// ---------------------------------------------------------------- validation and ranks

int minimum_precision(const PGroup& g, int max_exponent) {
  return max_exponent + (g.p() == 0 ? 0 : v_p(g.order(), g.p())) + 2;
}

std::vector<std::string> validate(const FgModule& a) {
  std::vector<std::string> out;
  const auto& t = a.torsion_exponents();
  const int e = a.precision();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 1 || t[i] >= e)
      out.push_back("torsion exponent " + std::to_string(t[i]) + " outside [1, " + std::to_string(e - 1) + "]");
    if (i > 0 && t[i] < t[i - 1]) out.push_back("torsion exponents are not nondecreasing");
  }
  if (e < minimum_precision(*a.group(), a.max_exponent()))
    out.push_back("precision headroom: need e >= " + std::to_string(minimum_precision(*a.group(), a.max_exponent())) +
                  ", have " + std::to_string(e));
  const auto& ctx = a.ctx();
  const auto m = static_cast<std::size_t>(a.dim());
  const auto& gens = a.group()->generators();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const ModMatrix& mat = a.action()[g];
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const Residue x = mat(j, i);
        if (x == 0) continue;
        if (j >= t.size()) {
          out.push_back("well-definedness: generator " + std::to_string(g) + " maps torsion coordinate " +
                        std::to_string(i) + " into free coordinate " + std::to_string(j));
        } else if (ctx.valuation(x) < t[j] - t[i]) {
          out.push_back("well-definedness: generator " + std::to_string(g) + " entry (" + std::to_string(j) + "," +
                        std::to_string(i) + ") is not divisible by p^" + std::to_string(t[j] - t[i]));
        }
      }
    }
  }
  const PGroup& grp = *a.group();
  for (int x = 0; x < grp.order(); ++x) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const ModMatrix prod = a.reduce_rows(multiply(a.action()[g], a.element_action(x), ctx));
      if (!(prod == a.element_action(grp.mul(gens[g], x)))) {
        out.push_back("homomorphism: generator " + std::to_string(g) + " times element " + std::to_string(x) +
                      " disagrees with element " + std::to_string(grp.mul(gens[g], x)));
        return out;
      }
    }
  }
  return out;
}

void require_valid(const FgModule& a) {
  const auto problems = validate(a);
  if (problems.empty()) return;
  std::ostringstream os;
  for (std::size_t i = 0; i < problems.size(); ++i) os << (i ? "; " : "") << problems[i];
  throw ValidationError(os.str());
}

RankReport ranks(const FgModule& a) {
  RankReport r;
  r.d_R = a.dim();
  r.d_K = a.free_rank();
  const auto& ctx = a.ctx();
  const auto m = static_cast<std::size_t>(a.dim());
  std::vector<ModMatrix> blocks;
  for (const auto& g : a.action()) blocks.push_back(minus_identity(g, ctx).reduced(ctx.residue_field()));
  std::vector<const ModMatrix*> ptrs;
  for (const auto& b : blocks) ptrs.push_back(&b);
  const ModMatrix stacked = hstack(ptrs, m);
  r.r_R = r.d_R - static_cast<int>(blocks.empty() ? 0 : rank_fp(stacked, ctx.p()));
  return r;
}

// ---------------------------------------------------------------- constructions

FgModule regular_module(const GroupPtr& g, int d, const PadicContext& ctx) {
  const int n = g->order();
  const auto m = static_cast<std::size_t>(d * n);
  std::vector<ModMatrix> action;
  for (int s : g->generators()) {
    ModMatrix a(m, m);
    for (int b = 0; b < d; ++b)
      for (int x = 0; x < n; ++x) a(static_cast<std::size_t>(b * n + g->mul(s, x)), static_cast<std::size_t>(b * n + x)) = 1;
    action.push_back(std::move(a));
  }
  return FgModule(ctx, g, {}, d * n, std::move(action));
}

FgModule trivial_module(const GroupPtr& g, std::vector<int> torsion_exponents, int free_rank, const PadicContext& ctx) {
  std::sort(torsion_exponents.begin(), torsion_exponents.end());
  const std::size_t m = torsion_exponents.size() + static_cast<std::size_t>(free_rank);
  std::vector<ModMatrix> action(g->generators().size(), ModMatrix::identity(m));
  return FgModule(ctx, g, std::move(torsion_exponents), free_rank, std::move(action));
}

FgModule augmentation_ideal(const GroupPtr& g, const PadicContext& ctx) {
  const int n = g->order();
  const auto m = static_cast<std::size_t>(n - 1);
  std::vector<ModMatrix> action;
  for (int s : g->generators()) {
    ModMatrix a(m, m);
    for (int x = 1; x < n; ++x) {
      // s(x - 1) = (sx - 1) - (s - 1)
      const int sx = g->mul(s, x);
      if (sx != 0) a(static_cast<std::size_t>(sx - 1), static_cast<std::size_t>(x - 1)) = 1;
      if (s != 0) {
        auto& c = a(static_cast<std::size_t>(s - 1), static_cast<std::size_t>(x - 1));
        c = ctx.sub(c, 1);
      }
    }
    action.push_back(std::move(a));
  }
  return FgModule(ctx, g, {}, static_cast<int>(m), std::move(action));
}

FgModule group_ring_mod_augmentation_power(const GroupPtr& g, int n, const PadicContext& ctx) {
  if (n < 1) throw ValidationError("augmentation power must be at least 1");
  const int order = g->order();
  std::set<std::vector<std::int64_t>> current;
  for (int x = 1; x < order; ++x) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(order), 0);
    v[static_cast<std::size_t>(x)] = 1;
    v[0] = -1;
    current.insert(v);
  }
  for (int k = 1; k < n; ++k) {
    std::set<std::vector<std::int64_t>> next;
    for (const auto& v : current) {
      for (int y = 1; y < order; ++y) {
        std::vector<std::int64_t> w(static_cast<std::size_t>(order), 0);
        for (int z = 0; z < order; ++z) {
          w[static_cast<std::size_t>(g->mul(y, z))] += v[static_cast<std::size_t>(z)];
          w[static_cast<std::size_t>(z)] -= v[static_cast<std::size_t>(z)];
        }
        if (std::any_of(w.begin(), w.end(), [](std::int64_t c) { return c != 0; })) next.insert(w);
      }
    }
    current = std::move(next);
  }
  return quotient_module(regular_module(g, 1, ctx), std::vector<std::vector<std::int64_t>>(current.begin(), current.end()));
}

FgModule permutation_module(const Subgroup& h, int k, const PadicContext& ctx) {
  const GroupPtr& g = h.parent();
  std::vector<int> coset(static_cast<std::size_t>(g->order()), -1);
  std::vector<int> reps;
  for (int x = 0; x < g->order(); ++x) {
    if (coset[x] >= 0) continue;
    for (int y : h.elements()) coset[g->mul(x, y)] = static_cast<int>(reps.size());
    reps.push_back(x);
  }
  const std::size_t m = reps.size();
  std::vector<ModMatrix> action;
  for (int s : g->generators()) {
    ModMatrix a(m, m);
    for (std::size_t c = 0; c < m; ++c) a(static_cast<std::size_t>(coset[g->mul(s, reps[c])]), c) = 1;
    action.push_back(std::move(a));
  }
  return FgModule(ctx, g, std::vector<int>(m, k), 0, std::move(action));
}

FgModule direct_sum(const FgModule& a, const FgModule& b) {
  if (!(*a.group() == *b.group())) throw ValidationError("direct sum of modules over different groups");
  if (!(a.ctx() == b.ctx())) throw ValidationError("direct sum of modules at different precisions");
  std::vector<int> exps;
  for (std::size_t i = 0; i < static_cast<std::size_t>(a.dim()); ++i)
    exps.push_back(i < a.torsion_exponents().size() ? a.torsion_exponents()[i] : -1);
  for (std::size_t i = 0; i < static_cast<std::size_t>(b.dim()); ++i)
    exps.push_back(i < b.torsion_exponents().size() ? b.torsion_exponents()[i] : -1);
  std::vector<ModMatrix> mats;
  for (std::size_t g = 0; g < a.action().size(); ++g) mats.push_back(block_diagonal(a.action()[g], b.action()[g]));
  FgModule out = assemble(a.ctx(), a.group(), exps, mats);
  return out.with_rebuild([a, b](int e) { return direct_sum(a.with_precision(e), b.with_precision(e)); });
}

namespace {

// Division by the elementary divisors costs up to their largest exponent in digits; with `refine`
// the quotient is recomputed that much higher and reduced back when the source allows it.
FgModule quotient_at(const FgModule& a, const std::vector<std::vector<std::int64_t>>& generators, bool refine) {
  const auto& ctx = a.ctx();
  const auto m = static_cast<std::size_t>(a.dim());
  const PGroup& g = *a.group();
  ModMatrix gens(m, generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].size() != m) throw ValidationError("quotient generator has the wrong length");
    for (std::size_t i = 0; i < m; ++i) gens(i, j) = ctx.reduce(generators[j][i]);
  }
  const ModMatrix rel = a.relations();
  std::vector<ModMatrix> images{rel};
  for (int x = 0; x < g.order(); ++x) images.push_back(multiply(a.element_action(x), gens, ctx));
  std::vector<const ModMatrix*> ptrs;
  for (const auto& im : images) ptrs.push_back(&im);
  const ModMatrix span = hstack(ptrs, m);
  const SmithForm s = smith(span, ctx, {.want_P = true, .want_Q = false, .want_P_inverse = true});
  std::vector<int> diag(m, ctx.precision());
  for (std::size_t i = 0; i < s.diag.size(); ++i) diag[i] = s.diag[i];
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m; ++i)
    if (diag[i] > 0) kept.push_back(i);
  std::vector<int> torsion;
  int free_rank = 0;
  for (std::size_t i : kept) {
    if (diag[i] < ctx.precision())
      torsion.push_back(diag[i]);
    else
      ++free_rank;
  }
  std::vector<ModMatrix> action;
  for (const auto& mg : a.action()) {
    const ModMatrix y = multiply(multiply(s.P, mg, ctx), s.P_inverse, ctx);
    ModMatrix b(kept.size(), kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
      for (std::size_t j = 0; j < kept.size(); ++j) {
        // Free rows never receive torsion columns; the true entry is zero.
        if (i >= torsion.size() && j < torsion.size()) continue;
        b(i, j) = y(kept[i], kept[j]);
      }
    action.push_back(std::move(b));
  }
  const int loss = torsion.empty() ? 0 : torsion.back();
  if (refine && loss > 0 && ctx.precision() + loss <= PadicContext::max_precision(ctx.p())) {
    std::optional<FgModule> hi;
    try {
      hi = quotient_at(a.with_precision(ctx.precision() + loss), generators, false);
    } catch (const PrecisionExhausted&) {
    } catch (const ValidationError&) {
    }
    if (hi && hi->free_rank() == free_rank && hi->torsion_exponents() == torsion) {
      action.clear();
      for (const auto& mg : hi->action()) action.push_back(mg.reduced(ctx));
    }
  }
  FgModule out(ctx, a.group(), std::move(torsion), free_rank, std::move(action));
  return out;
}

}  // namespace

FgModule quotient_module(const FgModule& a, const std::vector<std::vector<std::int64_t>>& generators) {
  return quotient_at(a, generators, true).with_rebuild(
      [a, generators](int e) { return quotient_at(a.with_precision(e), generators, true); });
}

FgModule quotient_module(const FgModule& a, const ModMatrix& generators) {
  std::vector<std::vector<std::int64_t>> gens;
  for (std::size_t j = 0; j < generators.cols(); ++j) gens.push_back(centered_column(generators, j, a.ctx()));
  return quotient_module(a, gens);
}

Sublattice sublattice_module(const FgModule& a, const ModMatrix& generators) {
  if (a.torsion_rank() != 0) throw ValidationError("sublattice_module requires a torsion-free module");
  const auto& ctx = a.ctx();
  const auto m = static_cast<std::size_t>(a.dim());
  const SmithForm s = smith(generators, ctx, {.want_P = true, .want_Q = false, .want_P_inverse = true});
  if (s.rank() < m) throw ValidationError("sublattice is not of full rank at this precision");
  const int amax = m == 0 ? 0 : *std::max_element(s.diag.begin(), s.diag.begin() + static_cast<std::ptrdiff_t>(m));
  const int e_out = ctx.precision() - amax;
  if (e_out < 1) throw PrecisionExhausted("sublattice index exceeds the working precision");
  const PadicContext out_ctx = ctx.with_precision(e_out);
  std::vector<ModMatrix> action;
  for (const auto& mg : a.action()) {
    const ModMatrix y = multiply(multiply(s.P, mg, ctx), s.P_inverse, ctx);
    ModMatrix b(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const int ai = s.diag[i], aj = s.diag[j];
        Residue v = y(i, j);
        if (aj >= ai) {
          v = ctx.mul(v, ctx.pow(aj - ai));
        } else {
          if (v != 0 && ctx.valuation(v) < ai - aj) throw ValidationError("sublattice is not G-invariant");
          v = ctx.divide_by_power(v, ai - aj);
        }
        b(i, j) = out_ctx.reduce_wide(v);
      }
    action.push_back(std::move(b));
  }
  ModMatrix basis(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) basis(i, j) = ctx.mul(s.P_inverse(i, j), ctx.pow(s.diag[j]));
  std::vector<std::vector<std::int64_t>> gens;
  for (std::size_t j = 0; j < generators.cols(); ++j) gens.push_back(centered_column(generators, j, ctx));
  FgModule mod(out_ctx, a.group(), {}, static_cast<int>(m), std::move(action));
  mod = mod.with_rebuild([a, gens, amax](int e) {
    const FgModule src = a.with_precision(e + amax);
    ModMatrix g(static_cast<std::size_t>(src.dim()), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (std::size_t i = 0; i < gens[j].size(); ++i) g(i, j) = src.ctx().reduce(gens[j][i]);
    return sublattice_module(src, g).module;
  });
  return {std::move(mod), std::move(basis)};
}

TorsionPart torsion_submodule(const FgModule& a) {
  const auto k = static_cast<std::size_t>(a.torsion_rank());
  std::vector<ModMatrix> action;
  for (const auto& mg : a.action()) action.push_back(mg.row_block(0, k).column_block(0, k));
  FgModule t(a.ctx(), a.group(), a.torsion_exponents(), 0, std::move(action));
  t = t.with_rebuild([a](int e) { return torsion_submodule(a.with_precision(e)).module; });
  ModMatrix inc(static_cast<std::size_t>(a.dim()), k);
  for (std::size_t i = 0; i < k; ++i) inc(i, i) = 1;
  return {std::move(t), std::move(inc)};
}

FgModule quotient_by_torsion(const FgModule& a) {
  const auto k = static_cast<std::size_t>(a.torsion_rank());
  const auto r = static_cast<std::size_t>(a.free_rank());
  std::vector<ModMatrix> action;
  for (const auto& mg : a.action()) action.push_back(mg.row_block(k, r).column_block(k, r));
  FgModule f(a.ctx(), a.group(), {}, a.free_rank(), std::move(action));
  return f.with_rebuild([a](int e) { return quotient_by_torsion(a.with_precision(e)); });
}

GeneratedLattice fixed_points(const FgModule& a) {
  const auto& ctx = a.ctx();
  std::vector<ModMatrix> blocks;
  for (const auto& g : a.action()) blocks.push_back(minus_identity(g, ctx));
  if (blocks.empty()) return {ModMatrix::identity(static_cast<std::size_t>(a.dim())), 0};
  std::vector<const ModMatrix*> ptrs;
  for (const auto& b : blocks) ptrs.push_back(&b);
  const ModMatrix stacked = vstack(ptrs, static_cast<std::size_t>(a.dim()));
  return preimage_lattice(stacked, a.relations(static_cast<int>(blocks.size())), ctx);
}

ModMatrix augmentation_submodule(const FgModule& a) {
  const auto& ctx = a.ctx();
  std::vector<ModMatrix> blocks{a.relations()};
  for (const auto& g : a.action()) blocks.push_back(minus_identity(g, ctx));
  std::vector<const ModMatrix*> ptrs;
  for (const auto& b : blocks) ptrs.push_back(&b);
  return hstack(ptrs, static_cast<std::size_t>(a.dim()));
}

FgModule coinvariants(const FgModule& a) {
  const PGroup& g = *a.group();
  int w = std::max(a.precision(), 2 * minimum_precision(g, a.max_exponent()));
  for (int attempt = 0; attempt < 4; ++attempt, w += 4) {
    const FgModule lo = a.with_precision(w), hi = a.with_precision(w + 1);
    const CokernelStructure c1 = cokernel_structure(augmentation_submodule(lo), lo.ctx());
    const CokernelStructure c2 = cokernel_structure(augmentation_submodule(hi), hi.ctx());
    if (c1.exponents != c2.exponents || c1.saturated != c2.saturated) continue;
    const int top = c1.exponents.empty() ? 0 : c1.exponents.back();
    const PadicContext out_ctx = a.ctx().with_precision(std::max(a.precision(), minimum_precision(g, top)));
    return trivial_module(a.group(), c1.exponents, c1.saturated, out_ctx);
  }
  throw PrecisionExhausted("coinvariants did not stabilise");
}

ModMatrix norm_image(const FgModule& a) {
  const ModMatrix n = a.norm_matrix();
  const ModMatrix rel = a.relations();
  return hstack({&n, &rel}, static_cast<std::size_t>(a.dim()));
}

GeneratedLattice norm_kernel(const FgModule& a) { return preimage_lattice(a.norm_matrix(), a.relations(), a.ctx()); }

namespace {

FgModule restrict_to(const FgModule& a, const SubgroupAsGroup& sub) {
  std::vector<ModMatrix> action;
  for (int s : sub.group->generators()) action.push_back(a.element_action(sub.embedding[static_cast<std::size_t>(s)]));
  FgModule out(a.ctx(), sub.group, a.torsion_exponents(), a.free_rank(), std::move(action));
  return out.with_rebuild([a, sub](int e) { return restrict_to(a.with_precision(e), sub); });
}

}  // namespace

FgModule restrict(const FgModule& a, const Subgroup& s) {
  if (!(*s.parent() == *a.group())) throw ValidationError("subgroup of a different group");
  return restrict_to(a, as_group(s));
}

FgModule restrict(const FgModule& a, const SubgroupAsGroup& s) { return restrict_to(a, s); }

// ---------------------------------------------------------------- random modules

namespace {

struct Rng {
  std::mt19937_64 engine;
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine() % n; }
};

FgModule regular_torsion(const GroupPtr& g, int d, int k, const PadicContext& ctx) {
  const FgModule l = regular_module(g, d, ctx);
  return FgModule(ctx, g, std::vector<int>(static_cast<std::size_t>(l.dim()), k), 0, l.action());
}

// Z_p-matrix of the G-map (RG)^d -> (RG)^d sending e_j to sum_i c[j][i] e_i.
ModMatrix group_ring_map(const PGroup& g, const std::vector<std::vector<std::vector<std::int64_t>>>& c,
                         const PadicContext& ctx) {
  const int n = g.order();
  const auto d = c.size();
  ModMatrix m(d * n, d * n);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i)
      for (int y = 0; y < n; ++y) {
        const std::int64_t coef = c[j][i][static_cast<std::size_t>(y)];
        if (coef == 0) continue;
        for (int x = 0; x < n; ++x) {
          auto& entry = m(i * n + static_cast<std::size_t>(g.mul(x, y)), j * n + static_cast<std::size_t>(x));
          entry = ctx.add(entry, ctx.reduce(coef));
        }
      }
  return m;
}

FgModule random_kind(const GroupPtr& g, const PadicContext& ctx, const RandomModuleParams& prm, Rng& rng, bool allow_sum) {
  const int p = ctx.p();
  const int n = g->order();
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(prm.max_exponent)));
  const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(prm.max_rank)));
  const std::uint64_t kinds = allow_sum ? 6 : 5;
  switch (rng.below(kinds)) {
    case 0: {
      // (RG)^d modulo p^k and the G-span of a few random vectors.
      const FgModule l = regular_module(g, d, ctx);
      std::vector<std::vector<std::int64_t>> gens;
      const auto m = static_cast<std::size_t>(l.dim());
      const std::int64_t pk = static_cast<std::int64_t>(ctx.pow(k));
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::int64_t> v(m, 0);
        v[i] = pk;
        gens.push_back(std::move(v));
      }
      const int count = 1 + static_cast<int>(rng.below(2));
      for (int c = 0; c < count; ++c) {
        std::vector<std::int64_t> v(m);
        for (auto& x : v) x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(pk)));
        gens.push_back(std::move(v));
      }
      return quotient_module(l, gens);
    }
    case 1:
      return regular_torsion(g, d, k, ctx);
    case 2: {
      const auto subs = subgroups(g);
      return permutation_module(subs[rng.below(subs.size())], k, ctx);
    }
    case 3: {
      // Cokernel of a random injective endomorphism of (RG)^d; such cokernels are CT.
      const FgModule l = regular_module(g, d, ctx);
      for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<std::vector<std::vector<std::int64_t>>> c(
            static_cast<std::size_t>(d),
            std::vector<std::vector<std::int64_t>>(static_cast<std::size_t>(d), std::vector<std::int64_t>(static_cast<std::size_t>(n))));
        for (auto& row : c)
          for (auto& elt : row)
            for (auto& x : elt) x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p)));
        const ModMatrix phi = group_ring_map(*g, c, ctx);
        const CokernelStructure cs = cokernel_structure(phi, ctx);
        if (cs.saturated != 0 || cs.exponents.empty()) continue;
        if (cs.exponents.back() > prm.max_exponent) continue;
        return quotient_module(l, phi);
      }
      return regular_torsion(g, d, k, ctx);
    }
    case 4: {
      std::vector<int> exps{k};
      if (rng.below(2) == 1) exps.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(prm.max_exponent))));
      return trivial_module(g, exps, 0, ctx);
    }
    default: {
      const FgModule a = random_kind(g, ctx, prm, rng, false);
      const FgModule b = random_kind(g, ctx, prm, rng, false);
      return direct_sum(a, b);
    }
  }
}

}  // namespace

FgModule random_finite_module(const GroupPtr& g, const PadicContext& ctx, const RandomModuleParams& params,
                              std::uint64_t seed) {
  require_same_prime(g, ctx);
  if (params.max_exponent < 1 || params.max_rank < 1) throw ValidationError("random module parameters must be positive");
  if (ctx.precision() < minimum_precision(*g, params.max_exponent))
    throw ValidationError("precision " + std::to_string(ctx.precision()) + " below the headroom required for exponent " +
                          std::to_string(params.max_exponent));
  Rng rng{std::mt19937_64(seed)};
  for (int attempt = 0; attempt < 64; ++attempt) {
    FgModule a = random_kind(g, ctx, params, rng, true);
    if (a.dim() == 0 || !a.is_finite() || a.max_exponent() > params.max_exponent) continue;
    if (!validate(a).empty()) continue;
    return a;
  }
  throw GenerationFailed("no valid random module after 64 attempts (seed " + std::to_string(seed) + ")");
}

// ---------------------------------------------------------------- Schmid module

FgModule build_schmid_module(const GroupPtr& g) {
  if (g->is_abelian()) throw GroupError(GroupErrorKind::Abelian, "the Schmid module is defined for non-abelian groups");
  const Subgroup phi = frattini(g);
  const Subgroup cphi(g, centralizer(g, phi.mask()).mask() & phi.mask());
  const AbelianBasis basis = abelian_basis(g, cphi);
  const QuotientGroup q = quotient(g, phi);
  const PGroup& qg = *q.group;
  const int top = basis.exponents.empty() ? 0 : basis.exponents.back();
  const PadicContext ctx(g->p(), minimum_precision(qg, top) + 2);
  const std::size_t t = basis.basis.size();
  std::vector<ModMatrix> action;
  for (int qgen : qg.generators()) {
    int lift = -1;
    for (int x = 0; x < g->order() && lift < 0; ++x)
      if (q.projection[static_cast<std::size_t>(x)] == qgen) lift = x;
    ModMatrix a(t, t);
    for (std::size_t i = 0; i < t; ++i) {
      const auto& coords = basis.coordinates[static_cast<std::size_t>(g->conjugate(lift, basis.basis[i]))];
      for (std::size_t j = 0; j < t; ++j) a(j, i) = static_cast<Residue>(coords[j]);
    }
    action.push_back(std::move(a));
  }
  return FgModule(ctx, q.group, basis.exponents, 0, std::move(action));
}

}  // namespace ctkit
