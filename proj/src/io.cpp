#include "localsolve/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "localsolve/error.hpp"

namespace localsolve {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string_view strip_comment(std::string_view line, char marker) {
  const auto pos = line.find(marker);
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

long long parse_integer(std::string_view token, std::size_t line_no) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw Error(ErrorCode::ParseError, where(line_no) + "expected an integer, got '" +
                                           std::string(token) + "'");
  return value;
}

double parse_real(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw Error(ErrorCode::ParseError,
                where(line_no) + "expected a number, got '" + std::string(token) + "'");
  return value;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return in;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

RegularGraph load_edge_list(std::istream& in, std::optional<std::size_t> n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  long long max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split(strip_comment(line, '#'));
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw Error(ErrorCode::ParseError, where(line_no) + "expected 'u v'");
    const long long a = parse_integer(tokens[0], line_no);
    const long long b = parse_integer(tokens[1], line_no);
    if (a < 0 || b < 0 || a > 0xffffffffLL || b > 0xffffffffLL ||
        (n && (static_cast<std::size_t>(a) >= *n || static_cast<std::size_t>(b) >= *n)))
      throw Error(ErrorCode::BadVertexId, where(line_no) + "vertex id out of range");
    max_id = std::max({max_id, a, b});
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  const std::size_t count = n ? *n : static_cast<std::size_t>(max_id + 1);
  return RegularGraph::from_edges(count, edges);
}

SddMatrix load_sdd_matrix(std::istream& in, Validation validation) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty matrix file");
  ++line_no;
  const auto header = split(line);
  if (header.size() < 5 || lower(header[0]) != "%%matrixmarket" || lower(header[1]) != "matrix" ||
      lower(header[2]) != "coordinate")
    throw Error(ErrorCode::ParseError, "expected a MatrixMarket coordinate header");
  const std::string field = lower(header[3]);
  const std::string symmetry = lower(header[4]);
  if (field != "real" && field != "integer" && field != "double")
    throw Error(ErrorCode::ParseError, "unsupported field '" + field + "'");
  if (symmetry != "symmetric" && symmetry != "general")
    throw Error(ErrorCode::ParseError, "unsupported symmetry '" + symmetry + "'");
  const bool general = symmetry == "general";

  std::size_t rows = 0, nnz = 0;
  bool have_size = false;
  std::map<std::pair<Vertex, Vertex>, double> seen;
  std::size_t read = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    const auto tokens = split(line);
    if (tokens.empty()) continue;
    if (!have_size) {
      if (tokens.size() != 3) throw Error(ErrorCode::ParseError, where(line_no) + "bad size line");
      const long long r = parse_integer(tokens[0], line_no);
      const long long c = parse_integer(tokens[1], line_no);
      const long long z = parse_integer(tokens[2], line_no);
      if (r < 0 || r != c || z < 0)
        throw Error(ErrorCode::ParseError, where(line_no) + "matrix must be square");
      rows = static_cast<std::size_t>(r);
      nnz = static_cast<std::size_t>(z);
      have_size = true;
      continue;
    }
    if (tokens.size() != 3)
      throw Error(ErrorCode::ParseError, where(line_no) + "expected 'i j value'");
    const long long i = parse_integer(tokens[0], line_no);
    const long long j = parse_integer(tokens[1], line_no);
    const double v = parse_real(tokens[2], line_no);
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > rows || static_cast<std::size_t>(j) > rows)
      throw Error(ErrorCode::ParseError, where(line_no) + "index outside the declared size");
    const auto key = std::make_pair(static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1));
    if (!seen.emplace(key, v).second)
      throw Error(ErrorCode::ParseError, where(line_no) + "entry listed twice");
    ++read;
  }
  if (!have_size) throw Error(ErrorCode::ParseError, "missing size line");
  if (read != nnz)
    throw Error(ErrorCode::ParseError, "declared " + std::to_string(nnz) + " entries, found " +
                                           std::to_string(read));

  std::vector<Triplet> triplets;
  triplets.reserve(seen.size());
  for (const auto& [key, v] : seen) {
    const auto [i, j] = key;
    if (i == j) {
      triplets.push_back({i, j, v});
      continue;
    }
    const auto mirror = seen.find({j, i});
    if (mirror != seen.end()) {
      if (mirror->second != v)
        throw Error(ErrorCode::NotSymmetric,
                    "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") and its mirror differ",
                    i);
      if (i < j) triplets.push_back({i, j, v});
    } else {
      if (general)
        throw Error(ErrorCode::NotSymmetric,
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") has no mirror",
                    i);
      triplets.push_back({i, j, v});
    }
  }
  return SddMatrix::from_triplets(rows, triplets, validation);
}

VectorOracle load_vector(std::istream& in, std::size_t n) {
  std::vector<std::pair<std::size_t, double>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split(strip_comment(line, '#'));
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw Error(ErrorCode::ParseError, where(line_no) + "expected 'index value'");
    const long long i = parse_integer(tokens[0], line_no);
    const double v = parse_real(tokens[1], line_no);
    if (i < 0 || static_cast<std::size_t>(i) >= n)
      throw Error(ErrorCode::IndexOutOfRange,
                  where(line_no) + "index outside length " + std::to_string(n),
                  static_cast<std::size_t>(std::max(i, 0LL)));
    entries.emplace_back(static_cast<std::size_t>(i), v);
  }
  return VectorOracle(n, std::move(entries));
}

RegularGraph load_edge_list_file(const std::filesystem::path& path,
                                 std::optional<std::size_t> n) {
  auto in = open(path);
  return load_edge_list(in, n);
}

SddMatrix load_sdd_matrix_file(const std::filesystem::path& path, Validation validation) {
  auto in = open(path);
  return load_sdd_matrix(in, validation);
}

VectorOracle load_vector_file(const std::filesystem::path& path, std::size_t n) {
  auto in = open(path);
  return load_vector(in, n);
}

namespace {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_edge_list(std::ostream& out, const RegularGraph& g) {
  out << "# n " << g.n() << " d " << g.degree() << '\n';
  for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

void write_matrix_market(std::ostream& out, const SddMatrix& s) {
  const auto t = s.triplets();
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << s.n() << ' ' << s.n() << ' ' << t.size() << '\n';
  for (const auto& e : t)
    out << e.col + 1 << ' ' << e.row + 1 << ' ' << format_real(e.value) << '\n';
}

void write_vector(std::ostream& out, std::span<const double> values) {
  out << "# length " << values.size() << '\n';
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != 0.0) out << i << ' ' << format_real(values[i]) << '\n';
}

}  // namespace localsolve
