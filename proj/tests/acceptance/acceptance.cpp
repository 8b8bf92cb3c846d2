// One line per acceptance criterion: `acceptance --criterion N` prints PASS or FAIL for N.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "ctkit/errors.hpp"
#include "ctkit/group.hpp"
#include "ctkit_cli/checks.hpp"
#include "ctkit_cli/commands.hpp"

using namespace ctkit;
using namespace ctkit::cli;

namespace {

constexpr std::uint64_t kSeed = 20240601;

std::vector<GroupPtr> core_groups() {
  return load_catalog({{"cyclic", {2, 1}}, {"cyclic", {2, 2}}, {"elementary", {2, 2}}, {"dihedral", {8}},
                       {"quaternion", {8}}, {"cyclic", {3, 1}}, {"cyclic", {3, 2}}, {"elementary", {3, 2}}});
}

std::vector<GroupPtr> small_groups() {
  return load_catalog({{"cyclic", {2, 1}}, {"cyclic", {2, 2}}, {"elementary", {2, 2}}, {"cyclic", {3, 1}}});
}

std::vector<GroupPtr> all_catalog_groups() {
  auto g = load_catalog({{"cyclic", {2, 1}},      {"cyclic", {2, 2}},      {"cyclic", {2, 3}},      {"cyclic", {2, 4}},
                         {"cyclic", {3, 1}},      {"cyclic", {3, 2}},      {"cyclic", {3, 3}},      {"cyclic", {5, 1}},
                         {"cyclic", {5, 2}},      {"cyclic", {7, 1}},      {"elementary", {2, 2}},  {"elementary", {2, 3}},
                         {"elementary", {2, 4}},  {"elementary", {3, 2}},  {"elementary", {3, 3}},  {"elementary", {5, 2}},
                         {"abelian", {2, 1, 2}},  {"abelian", {2, 2, 2}},  {"abelian", {2, 1, 3}},  {"abelian", {3, 1, 2}},
                         {"dihedral", {8}},       {"dihedral", {16}},      {"dihedral", {32}},      {"quaternion", {8}},
                         {"quaternion", {16}},    {"quaternion", {32}},    {"semidihedral", {16}},  {"semidihedral", {32}},
                         {"modular", {2, 4}},     {"modular", {2, 5}},     {"modular", {3, 3}},     {"heisenberg", {2}},
                         {"heisenberg", {3}}});
  return g;
}

std::vector<GroupPtr> nonabelian_up_to_32() {
  auto g = load_catalog({{"dihedral", {8}},     {"dihedral", {16}},     {"dihedral", {32}},   {"quaternion", {8}},
                         {"quaternion", {16}},  {"quaternion", {32}},   {"semidihedral", {16}}, {"semidihedral", {32}},
                         {"modular", {2, 4}},   {"modular", {2, 5}},    {"modular", {3, 3}},  {"heisenberg", {2}},
                         {"heisenberg", {3}}});
  const auto c2 = cyclic_group(2, 1), c4 = cyclic_group(2, 2);
  const auto d8 = catalog("dihedral", {8}), q8 = catalog("quaternion", {8});
  g.push_back(direct_product(*d8, *c2));
  g.push_back(direct_product(*q8, *c2));
  g.push_back(direct_product(*d8, *c4));
  g.push_back(direct_product(*q8, *c4));
  g.push_back(direct_product(*direct_product(*d8, *c2), *c2));
  g.push_back(direct_product(*catalog("dihedral", {16}), *c2));
  return g;
}

std::vector<GroupPtr> cyclic_groups() {
  return load_catalog({{"cyclic", {2, 1}}, {"cyclic", {2, 2}}, {"cyclic", {2, 3}}, {"cyclic", {3, 1}},
                       {"cyclic", {3, 2}}, {"cyclic", {5, 1}}});
}

CheckResult both(const CheckResult& a, const CheckResult& b) {
  return {a.name + " and " + b.name, a.pass && b.pass, a.detail + "; " + b.detail};
}

std::string run_selftest(int& status) {
  const std::string cmd = std::string(CTKIT_BINARY) + " selftest --seed 11 --format record";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) {
    status = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, f)) > 0;) out.append(buf, n);
  status = pclose(f);
  return out;
}

CheckResult reproducibility() {
  int s1 = 0, s2 = 0;
  const std::string a = run_selftest(s1);
  const std::string b = run_selftest(s2);
  const bool pass = s1 == 0 && s2 == 0 && !a.empty() && a == b;
  return {"selftest reproducibility", pass,
          std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different") + ", exit " +
              std::to_string(s1) + "/" + std::to_string(s2)};
}

CheckResult criterion(int n) {
  switch (n) {
    case 1: return check_free_triviality(core_groups(), 8);
    case 2: return check_gaschutz_uchida(core_groups(), 200, kSeed);
    case 3: return check_nakayama(core_groups(), 60, kSeed);
    case 4: return check_torsion_splitting(core_groups(), 40, kSeed);
    case 5: return both(check_relation_count(small_groups(), 100, kSeed), check_augmentation_ranks(all_catalog_groups()));
    case 6: return check_herbrand(cyclic_groups(), 200, kSeed);
    case 7: return both(check_hom_freeness({2, 3, 5}, 12), check_tensor_tables({2, 3, 5}));
    case 8: return both(check_zeta(2, 8, 4, default_budget()), check_zeta(3, 8, 4, default_budget()));
    case 9: return check_schmid(nonabelian_up_to_32());
    case 10: return reproducibility();
    default: throw std::invalid_argument("criteria are numbered 1..10");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3 || std::string(argv[1]) != "--criterion") {
    std::cerr << "usage: acceptance --criterion N\n";
    return 1;
  }
  const int n = std::atoi(argv[2]);
  try {
    const CheckResult r = criterion(n);
    std::cout << "criterion " << n << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << std::endl;
    return r.pass ? 0 : 4;
  } catch (const std::exception& e) {
    std::cout << "criterion " << n << ": FAIL " << e.what() << std::endl;
    return exit_code(e);
  }
}
