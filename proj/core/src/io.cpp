#include "ctkit/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "ctkit/errors.hpp"

namespace ctkit {

namespace {

struct Line {
  int number;
  std::string text;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Line> logical_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string t = trim(raw);
    if (!t.empty()) out.push_back({number, std::move(t)});
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return pos_ >= lines_.size(); }
  int line() const { return done() ? (lines_.empty() ? 1 : lines_.back().number + 1) : lines_[pos_].number; }

  std::optional<std::string> peek_key() const {
    if (done()) return std::nullopt;
    const auto& t = lines_[pos_].text;
    const auto colon = t.find(':');
    if (colon == std::string::npos) return std::nullopt;
    return trim(t.substr(0, colon));
  }

  std::string value(const std::string& key) {
    if (peek_key() != key) throw ParseError(line(), "expected '" + key + ":'");
    const auto& t = lines_[pos_].text;
    ++pos_;
    return trim(t.substr(t.find(':') + 1));
  }

  std::optional<std::string> optional_value(const std::string& key) {
    if (peek_key() != key) return std::nullopt;
    return value(key);
  }

  std::vector<std::int64_t> row(std::size_t expected) {
    if (done()) throw ParseError(line(), "expected a row of " + std::to_string(expected) + " integers");
    const int n = line();
    auto v = integers(lines_[pos_].text, n);
    if (v.size() != expected)
      throw ParseError(n, "expected " + std::to_string(expected) + " integers, found " + std::to_string(v.size()));
    ++pos_;
    return v;
  }

  static std::vector<std::int64_t> integers(const std::string& s, int line) {
    std::vector<std::int64_t> out;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] == ' ' || s[i] == '\t' || s[i] == ',') {
        ++i;
        continue;
      }
      std::int64_t x = 0;
      const auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), x);
      if (ec != std::errc() || ptr == s.data() + i) throw ParseError(line, "not an integer: '" + s.substr(i) + "'");
      out.push_back(x);
      i = static_cast<std::size_t>(ptr - s.data());
    }
    return out;
  }

  static int integer(const std::string& s, int line) {
    const auto v = integers(s, line);
    if (v.size() != 1) throw ParseError(line, "expected one integer");
    return static_cast<int>(v.front());
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

void expect_format(Cursor& c) {
  const int n = c.line();
  if (c.value("format") != "1") throw ParseError(n, "unsupported format version");
}

// order, name, generators, table: the shared tail of group files and inline module groups.
GroupPtr parse_group_body(Cursor& c, std::optional<int> p) {
  int n = c.line();
  const int order = Cursor::integer(c.value("order"), n);
  if (order < 1) throw ParseError(n, "order must be positive");
  std::string name = c.optional_value("name").value_or("");
  std::vector<int> gens;
  n = c.line();
  if (auto g = c.optional_value("generators"))
    for (auto x : Cursor::integers(*g, n)) gens.push_back(static_cast<int>(x));
  n = c.line();
  if (!c.value("table").empty()) throw ParseError(n, "table rows start on the next line");
  std::vector<std::vector<int>> table;
  for (int i = 0; i < order; ++i) {
    std::vector<int> row;
    for (auto x : c.row(static_cast<std::size_t>(order))) row.push_back(static_cast<int>(x));
    table.push_back(std::move(row));
  }
  return make_group(PGroup::from_cayley_table(table, gens, p, name));
}

void write_group_body(std::ostream& os, const PGroup& g) {
  os << "order: " << g.order() << '\n';
  if (!g.name().empty()) os << "name: " << g.name() << '\n';
  os << "generators:";
  for (int x : g.generators()) os << ' ' << x;
  os << "\ntable:\n";
  for (const auto& row : g.table()) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << '\n';
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GroupPtr parse_group(std::string_view text) {
  Cursor c(logical_lines(text));
  expect_format(c);
  std::optional<int> p;
  const int n = c.line();
  if (auto v = c.optional_value("p")) p = Cursor::integer(*v, n);
  auto g = parse_group_body(c, p);
  if (!c.done()) throw ParseError(c.line(), "unexpected trailing content");
  return g;
}

std::string serialize_group(const PGroup& g) {
  std::ostringstream os;
  os << "format: 1\np: " << g.p() << '\n';
  write_group_body(os, g);
  return os.str();
}

GroupPtr read_group_file(const std::filesystem::path& path) { return parse_group(read_text_file(path)); }

GroupPtr resolve_group_reference(const std::string& reference, const std::filesystem::path& base) {
  std::istringstream in(reference);
  std::string kind;
  in >> kind;
  if (kind == "file") {
    std::string rest;
    std::getline(in, rest);
    std::filesystem::path path = trim(rest);
    if (path.is_relative() && !base.empty()) path = base / path;
    return read_group_file(path);
  }
  if (kind == "catalog") {
    std::string name;
    in >> name;
    std::vector<int> params;
    std::string tok;
    while (in >> tok) {
      try {
        params.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw GroupError(GroupErrorKind::UnknownName, "bad catalog parameter '" + tok + "'");
      }
    }
    return catalog(name, params);
  }
  throw GroupError(GroupErrorKind::UnknownName, "group reference must start with 'catalog' or 'file': " + reference);
}

FgModule parse_module(std::string_view text, const std::filesystem::path& base) {
  Cursor c(logical_lines(text));
  expect_format(c);
  int n = c.line();
  const int p = Cursor::integer(c.value("p"), n);
  n = c.line();
  const int e = Cursor::integer(c.value("e"), n);
  if (!is_prime(p)) throw ParseError(n - 1, "p is not prime");
  if (e < 1 || e > PadicContext::max_precision(p)) throw ParseError(n, "precision out of range");
  const PadicContext ctx(p, e);
  n = c.line();
  const std::string ref = c.value("group");
  GroupPtr g;
  try {
    g = ref == "inline" ? parse_group_body(c, p) : resolve_group_reference(ref, base);
  } catch (const ParseError&) {
    throw;
  } catch (const GroupError& err) {
    if (err.kind() == GroupErrorKind::UnknownName) throw ParseError(n, err.what());
    throw;
  }
  if (g->order() > 1 && g->p() != p) throw ParseError(n, "group is not a " + std::to_string(p) + "-group");
  n = c.line();
  std::vector<int> torsion;
  for (auto x : Cursor::integers(c.value("torsion"), n)) torsion.push_back(static_cast<int>(x));
  n = c.line();
  const int free_rank = Cursor::integer(c.value("free_rank"), n);
  if (free_rank < 0) throw ParseError(n, "free_rank must be nonnegative");
  n = c.line();
  if (!c.value("action").empty()) throw ParseError(n, "matrix rows start on the next line");
  const auto dim = torsion.size() + static_cast<std::size_t>(free_rank);
  std::vector<ModMatrix> action;
  for (std::size_t k = 0; k < g->generators().size(); ++k) {
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t i = 0; i < dim; ++i) rows.push_back(c.row(dim));
    action.push_back(dim == 0 ? ModMatrix(0, 0) : ModMatrix::from_rows(rows, ctx));
  }
  if (!c.done()) throw ParseError(c.line(), "unexpected trailing content");
  FgModule a(ctx, g, torsion, free_rank, std::move(action));
  require_valid(a);
  return a;
}

std::string serialize_module(const FgModule& a) {
  std::ostringstream os;
  os << "format: 1\np: " << a.p() << "\ne: " << a.precision() << "\ngroup: inline\n";
  write_group_body(os, *a.group());
  os << "torsion:";
  for (int x : a.torsion_exponents()) os << ' ' << x;
  os << "\nfree_rank: " << a.free_rank() << "\naction:\n";
  for (const auto& m : a.action())
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
      os << '\n';
    }
  return os.str();
}

FgModule read_module_file(const std::filesystem::path& path) {
  return parse_module(read_text_file(path), path.parent_path());
}

}  // namespace ctkit
