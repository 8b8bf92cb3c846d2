#pragma once

// The ctkit commands, independent of argument parsing so tests can drive them directly.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ctkit::cli {

enum class Format { Table, Csv, Record };

std::optional<Format> parse_format(const std::string& s);

struct RunConfig {
  std::string command;
  std::string group_path;
  std::string catalog;  // "dihedral 8", used when no group file is given
  std::string module_path;
  std::optional<int> p;
  std::optional<int> e;
  std::optional<int> n;  // cyclic exponent for tensor
  std::optional<int> r;
  std::optional<int> s;
  int rank = 1;
  int degree_lo = -2;
  int degree_hi = 2;
  bool all_subgroups = false;
  int window = 3;
  int fit_degree = 4;
  std::optional<std::size_t> budget;
  std::uint64_t seed = 0;
  std::string cache_path;
  std::string out_path;
  Format format = Format::Table;
};

/// A command's result. `meta` identifies the run, `fields` are scalar results, `rows` a table.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool failed = false;  // set by selftest when a check fails
  /// Written next to a CSV output as a record (the zeta fit).
  std::vector<std::pair<std::string, std::string>> companion;
};

std::string render(const Report& r, Format f);

/// "2..." budget from CTKIT_BUDGET, else the library default.
std::size_t default_budget();

std::string sha256_hex(const std::string& bytes);

Report run(const RunConfig& config);

/// 1 usage or parse, 2 budget, 3 precision, 4 internal contradiction.
int exit_code(const std::exception& e);

/// Parses "LO..HI"; throws std::invalid_argument.
std::pair<int, int> parse_degree_window(const std::string& s);

}  // namespace ctkit::cli
