#include "ctkit_cli/checks.hpp"

#include <sstream>

#include "ctkit/cohomology.hpp"
#include "ctkit/errors.hpp"
#include "ctkit/jordan.hpp"
#include "ctkit/module.hpp"
#include "ctkit/structure.hpp"
#include "ctkit/zeta.hpp"

namespace ctkit::cli {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed ^ (a * 0x9E3779B97F4A7C15ULL) ^ (b * 0xC2B2AE3D27D4EB4FULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PadicContext random_context(const GroupPtr& g) { return PadicContext(g->p(), minimum_precision(*g, 2) + 2); }

FgModule random_module(const GroupPtr& g, std::uint64_t seed, std::size_t gi, int i) {
  return random_finite_module(g, random_context(g), {}, mix(seed, gi, static_cast<std::uint64_t>(i)));
}

// T (+) (RG)^k, or T (+) M with M the kernel of a minimal presentation of another random module.
FgModule mixed_fixture(const GroupPtr& g, std::uint64_t seed, std::size_t gi, int i) {
  const FgModule t = random_module(g, seed, gi, 2 * i);
  const PadicContext& ctx = t.ctx();
  if (i % 3 == 2) {
    const FgModule other = random_module(g, seed, gi, 2 * i + 1);
    const Presentation pres = minimal_presentation(other);
    if (pres.images.cols() > 0) return direct_sum(t, pres.kernel.with_precision(ctx.precision()));
  }
  return direct_sum(t, regular_module(g, 1 + i % 2, ctx));
}

CheckResult finish(std::string name, int failures, const std::string& detail) {
  return {std::move(name), failures == 0, detail + ", " + std::to_string(failures) + " counterexamples"};
}

}  // namespace

std::vector<GroupPtr> load_catalog(const std::vector<CatalogEntry>& entries) {
  std::vector<GroupPtr> out;
  for (const auto& e : entries) out.push_back(catalog(e.name, e.params));
  return out;
}

CheckResult check_free_triviality(const std::vector<GroupPtr>& groups, int precision) {
  int failures = 0, cells = 0;
  for (const auto& g : groups) {
    const ScanTable t = ct_definition_scan(regular_module(g, 1, PadicContext(g->p(), precision)));
    for (const auto& row : t.cells) cells += static_cast<int>(row.size());
    failures += !t.all_zero();
  }
  return finish("free-module triviality", failures,
                std::to_string(groups.size()) + " groups, " + std::to_string(cells) + " cohomology groups");
}

CheckResult check_gaschutz_uchida(const std::vector<GroupPtr>& groups, int per_group, std::uint64_t seed) {
  int failures = 0, ct = 0, total = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (int i = 0; i < per_group; ++i) {
      const FgModule a = random_module(groups[gi], seed, gi, i);
      const bool h0 = tate(a, 0).is_zero();
      const bool scan = ct_definition_scan(a).all_zero();
      failures += h0 != scan;
      ct += scan;
      ++total;
    }
  return finish("Gaschutz-Uchida", failures, std::to_string(total) + " modules, " + std::to_string(ct) + " CT");
}

CheckResult check_nakayama(const std::vector<GroupPtr>& groups, int per_group, std::uint64_t seed) {
  int failures = 0, ct = 0, total = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (int i = 0; i < per_group; ++i) {
      const FgModule a = mixed_fixture(groups[gi], seed, gi, i);
      const bool low = is_ct(a).ct;
      const bool scan = ct_definition_scan(a).all_zero();
      failures += low != scan;
      ct += scan;
      ++total;
    }
  return finish("Nakayama", failures, std::to_string(total) + " mixed modules, " + std::to_string(ct) + " CT");
}

CheckResult check_torsion_splitting(const std::vector<GroupPtr>& groups, int per_group, std::uint64_t seed) {
  int failures = 0, split = 0, refused = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (int i = 0; i < per_group; ++i) {
      const FgModule a = mixed_fixture(groups[gi], seed, gi, i);
      const SplitResult r = split_theorem_a(a);
      if (!r.splitting) {
        const bool t_ct = ct_definition_scan(torsion_submodule(a).module).all_zero();
        const bool f_ct = ct_definition_scan(quotient_by_torsion(a)).all_zero();
        failures += !r.witness.has_value() || (t_ct && f_ct);
        ++refused;
        continue;
      }
      const Splitting& s = *r.splitting;
      const bool t_ct = ct_definition_scan(s.torsion).all_zero();
      const bool f_ct = ct_definition_scan(s.free_part).all_zero();
      failures += !(s.checked && t_ct && f_ct);
      ++split;
    }
  for (int p : {2, 3})
    for (int n : {2, 3}) {
      const auto g = cyclic_group(p, 1);
      const FgModule a = group_ring_mod_augmentation_power(g, n, PadicContext(p, 8));
      const SplitResult r = split_theorem_a(a);
      const bool ok = !r.splitting && r.witness && r.witness->degree == 0 && !tate(a, 0).is_zero();
      failures += !ok;
      ++refused;
    }
  return finish("torsion splitting", failures,
                std::to_string(split) + " split, " + std::to_string(refused) + " refused with witness");
}

CheckResult check_relation_count(const std::vector<GroupPtr>& groups, int per_group, std::uint64_t seed) {
  int failures = 0, total = 0, ct = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (int i = 0; i < per_group; ++i) {
      const FgModule a = random_module(groups[gi], seed, gi, i);
      const Presentation pres = minimal_presentation(a);
      const Theorem2Report rep = verify_theorem2(a, pres);
      const bool is_ct = is_ct_finite(a).ct;
      const bool corollary = is_ct == (rep.r_R_M == rep.r_R_L);
      failures += !(rep.match && corollary);
      ct += is_ct;
      ++total;
    }
  return finish("relation count and CT criterion", failures, std::to_string(total) + " modules, " + std::to_string(ct) + " CT");
}

CheckResult check_augmentation_ranks(const std::vector<GroupPtr>& groups) {
  int failures = 0;
  for (const auto& g : groups) failures += !augmentation_ideal_rank(g).match;
  return finish("augmentation ideal rank", failures, std::to_string(groups.size()) + " groups");
}

CheckResult check_herbrand(const std::vector<GroupPtr>& cyclic, int per_group, std::uint64_t seed) {
  int failures = 0, total = 0;
  for (std::size_t gi = 0; gi < cyclic.size(); ++gi)
    for (int i = 0; i < per_group; ++i) {
      const FgModule a = random_module(cyclic[gi], seed, gi, i);
      const auto h = tate_degrees(a, whole_group(cyclic[gi]), {-2, -1, 0, 1, 2});
      bool ok = h[2].log_order() == h[1].log_order();
      for (int n = 0; n < 3; ++n) ok = ok && h[n].log_order() == h[n + 2].log_order();
      failures += !ok;
      ++total;
    }
  return finish("Herbrand quotient and periodicity", failures, std::to_string(total) + " modules");
}

CheckResult check_hom_freeness(const std::vector<int>& primes, int max_dim) {
  int failures = 0, total = 0, hom_free = 0;
  for (int p : primes)
    for (int d = 1; d <= max_dim; ++d)
      for (const auto& parts : partitions(d, p)) {
        const HomFreenessCheck c = verify_lemma44({p, 1, parts});
        failures += !c.holds();
        hom_free += c.hom.is_free();
        ++total;
      }
  return finish("free endomorphisms imply free", failures,
                std::to_string(total) + " modules, " + std::to_string(hom_free) + " with free endomorphisms");
}

CheckResult check_tensor_tables(const std::vector<int>& primes) {
  int failures = 0, total = 0;
  for (int p : primes)
    for (int n = 1; n <= 2; ++n) {
      int top = 1;
      for (int k = 0; k < n; ++k) top *= p;
      if (top > 25) continue;
      for (int r = 1; r <= top; ++r)
        for (int s = r; s <= top; ++s) {
          const JordanType a = tensor_decompose(r, s, p, n);
          const JordanType b = tensor_decompose(s, r, p, n);
          failures += !(a == b && a.dim() == r * s);
          ++total;
        }
    }
  return finish("tensor tables", failures, std::to_string(total) + " products");
}

CheckResult check_zeta(int p, int window, int fit_degree, std::size_t budget) {
  const auto g = cyclic_group(p, 1);
  const ZetaSeries big = zeta_coefficients(g, 1, window + 1, budget);
  const ZetaSeries small = zeta_coefficients(g, 1, window, budget);
  int failures = 0;
  failures += big.coefficients.front() != 1;
  failures += big.coefficients != big.basis_counts;
  failures += small.coefficients != small.basis_counts;
  failures += !std::equal(small.coefficients.begin(), small.coefficients.end(), big.coefficients.begin());
  for (int w : {3, 4}) {
    if (w > window) continue;
    const ZetaSeries s = zeta_coefficients(g, 1, w, budget);
    failures += !std::equal(s.coefficients.begin(), s.coefficients.end(), big.coefficients.begin());
  }
  const auto fit = fit_rational(small.coefficients, fit_degree);
  std::ostringstream detail;
  detail << "C_" << p << " c =";
  for (auto c : big.coefficients) detail << ' ' << c;
  if (!fit) {
    ++failures;
    detail << ", no rational form";
  } else {
    const auto e = fit->expand(big.coefficients.size());
    failures += static_cast<int>(fit->denominator.size()) - 1 > fit_degree;
    failures += !(e.back() == Fraction{big.coefficients.back(), 1});
    detail << ", " << fit->to_string() << " predicts c_" << window + 1;
  }
  return finish("zeta coefficients", failures, detail.str());
}

CheckResult check_schmid(const std::vector<GroupPtr>& groups) {
  int failures = 0, total = 0;
  for (const auto& g : groups) {
    if (g->is_abelian()) continue;
    const FgModule z = build_schmid_module(g);
    const bool scan = ct_definition_scan(z).all_zero();
    if (scan != is_ct_finite(z).ct)
      throw InternalContradiction("Schmid module of " + g->name() + ": Ĥ^0 and the full scan disagree");
    failures += scan;
    ++total;
  }
  return finish("Schmid modules not CT", failures, std::to_string(total) + " non-abelian groups");
}

}  // namespace ctkit::cli
