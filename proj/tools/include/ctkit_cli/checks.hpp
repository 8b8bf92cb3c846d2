#pragma once

// Seeded verification sweeps shared by the selftest command and the acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

#include "ctkit/group.hpp"

namespace ctkit::cli {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct CatalogEntry {
  std::string name;
  std::vector<int> params;
};

std::vector<GroupPtr> load_catalog(const std::vector<CatalogEntry>& entries);

CheckResult check_free_triviality(const std::vector<GroupPtr>& groups, int precision);
CheckResult check_gaschutz_uchida(const std::vector<GroupPtr>& groups, int per_group, std::uint64_t seed);
CheckResult check_nakayama(const std::vector<GroupPtr>& groups, int per_group, std::uint64_t seed);
CheckResult check_torsion_splitting(const std::vector<GroupPtr>& groups, int per_group, std::uint64_t seed);
CheckResult check_relation_count(const std::vector<GroupPtr>& groups, int per_group, std::uint64_t seed);
CheckResult check_augmentation_ranks(const std::vector<GroupPtr>& groups);
CheckResult check_herbrand(const std::vector<GroupPtr>& cyclic, int per_group, std::uint64_t seed);
CheckResult check_hom_freeness(const std::vector<int>& primes, int max_dim);
CheckResult check_tensor_tables(const std::vector<int>& primes);
CheckResult check_zeta(int p, int window, int fit_degree, std::size_t budget);
CheckResult check_schmid(const std::vector<GroupPtr>& groups);

}  // namespace ctkit::cli
