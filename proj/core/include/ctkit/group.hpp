#pragma once

// Finite p-groups as validated Cayley tables, with the subgroup lattice and the characteristic
// subgroups used throughout the toolkit.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ctkit {

/// Element subsets of a group of order at most 64.
using ElementMask = std::uint64_t;

inline constexpr int kMaxSubgroupOrder = 64;
inline constexpr int kMaxGroupOrder = 256;

class PGroup {
 public:
  /// Validates the table (closure, identity, inverses, associativity, prime-power order).
  /// The identity is relabelled to index 0 when necessary. `p` is required only for the trivial group.
  static PGroup from_cayley_table(const std::vector<std::vector<int>>& table,
                                  const std::vector<int>& generators = {}, std::optional<int> p = std::nullopt,
                                  std::string name = {});

  int order() const { return order_; }
  /// The prime; 0 for a trivial group built without one.
  int p() const { return p_; }
  /// log_p of the order.
  int log_order() const { return log_order_; }
  const std::string& name() const { return name_; }
  const std::vector<int>& generators() const { return generators_; }

  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inverse(int a) const { return inverse_[a]; }
  static constexpr int identity() { return 0; }
  int power(int a, long k) const;
  int element_order(int a) const;
  int conjugate(int g, int x) const { return mul(mul(g, x), inverse(g)); }
  bool is_abelian() const;

  std::vector<std::vector<int>> table() const;
  PGroup renamed(std::string name) const;

  friend bool operator==(const PGroup& a, const PGroup& b) { return a.table_ == b.table_; }

 private:
  PGroup() = default;

  int order_ = 0;
  int p_ = 0;
  int log_order_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
  std::string name_;
};

using GroupPtr = std::shared_ptr<const PGroup>;

GroupPtr make_group(PGroup g);

/// An irredundant generating set (of size d(G) for a p-group), chosen deterministically.
std::vector<int> minimal_generators(const PGroup& g);

/// Closure of a set of elements under the group product.
ElementMask closure(const PGroup& g, ElementMask seed);

class Subgroup {
 public:
  Subgroup(GroupPtr parent, ElementMask elements);

  const GroupPtr& parent() const { return parent_; }
  ElementMask mask() const { return mask_; }
  const std::vector<int>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  bool contains(int x) const { return (mask_ >> x) & 1U; }
  bool is_normal() const { return normal_; }
  bool is_central() const { return central_; }
  bool is_trivial() const { return elements_.size() == 1; }
  bool is_whole() const { return order() == parent_->order(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.mask_ == b.mask_; }

 private:
  GroupPtr parent_;
  ElementMask mask_;
  std::vector<int> elements_;
  bool normal_ = false;
  bool central_ = false;
};

/// A subgroup as a group in its own right; `embedding[i]` is the parent index of element i.
struct SubgroupAsGroup {
  GroupPtr group;
  std::vector<int> embedding;
};

SubgroupAsGroup as_group(const Subgroup& s);

Subgroup whole_group(const GroupPtr& g);
Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& elements);

/// Every subgroup exactly once, sorted by order then by element mask.
std::vector<Subgroup> subgroups(const GroupPtr& g);

Subgroup center(const GroupPtr& g);
Subgroup frattini(const GroupPtr& g);
Subgroup commutator_subgroup(const GroupPtr& g);
/// Subgroup generated by p-th powers.
Subgroup power_subgroup(const GroupPtr& g);
/// Centralizer in G of a subset.
Subgroup centralizer(const GroupPtr& g, ElementMask subset);

struct QuotientGroup {
  GroupPtr group;
  std::vector<int> projection;  // parent element -> coset index
};

QuotientGroup quotient(const GroupPtr& g, const Subgroup& normal);

/// Basis of an abelian subgroup: every element is a unique product of powers of `basis`.
struct AbelianBasis {
  std::vector<int> basis;                    // parent element indices
  std::vector<int> exponents;                // basis[i] has order p^{exponents[i]}; nondecreasing
  std::vector<std::vector<int>> coordinates; // per parent element; empty outside the subgroup
};

AbelianBasis abelian_basis(const GroupPtr& g, const Subgroup& h);

/// Invariants of a finite abelian p-group as exponents a_i (factors Z/p^{a_i}), sorted.
std::vector<int> abelian_invariants(const PGroup& g);
/// Invariants of G / [G, G].
std::vector<int> abelianization_invariants(const GroupPtr& g);

/// Catalog constructors. Names: trivial, cyclic(p, n), elementary(p, k), abelian(p, a1, a2, ...),
/// dihedral(order), quaternion(order), semidihedral(order), modular(p, n), heisenberg(p).
GroupPtr catalog(const std::string& name, const std::vector<int>& params);
GroupPtr cyclic_group(int p, int n);
GroupPtr abelian_group(int p, const std::vector<int>& exponents);
GroupPtr direct_product(const PGroup& a, const PGroup& b);

/// Names accepted by `catalog`, with a short parameter hint each.
std::vector<std::pair<std::string, std::string>> catalog_names();

}  // namespace ctkit
