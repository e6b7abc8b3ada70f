#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "pamc/graph.hpp"

namespace pamc {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename Int>
Int parse_int(std::string_view field, std::size_t line, const char* what) {
  Int value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && field.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw GraphError(std::string("invalid ") + what + " '" + std::string(field) + "'", line);
  }
  return value;
}

// Yields non-blank lines together with their 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string_view>& fields) {
    while (std::getline(in_, buffer_)) {
      ++line_;
      fields = split_fields(buffer_);
      if (!fields.empty()) return true;
    }
    return false;
  }
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
};

std::pair<std::size_t, std::size_t> parse_header(LineReader& reader) {
  std::vector<std::string_view> fields;
  if (!reader.next(fields)) throw GraphError("empty input: missing 'n m' header", 1);
  if (fields.size() != 2) throw GraphError("malformed header: expected 'n m'", reader.line());
  const auto n = parse_int<std::int64_t>(fields[0], reader.line(), "node count");
  const auto m = parse_int<std::int64_t>(fields[1], reader.line(), "edge count");
  if (n <= 0) throw GraphError("malformed header: node count must be positive", reader.line());
  if (m < 0) throw GraphError("malformed header: edge count must be non-negative", reader.line());
  return {static_cast<std::size_t>(n), static_cast<std::size_t>(m)};
}

}  // namespace

std::pair<std::size_t, std::size_t> read_gset_header(std::istream& in) {
  LineReader reader(in);
  return parse_header(reader);
}

Graph parse_gset(std::istream& in) {
  LineReader reader(in);
  const auto [n, m] = parse_header(reader);

  std::vector<Edge> edges;
  edges.reserve(m);
  std::unordered_map<std::uint64_t, std::size_t> first_seen;
  first_seen.reserve(m * 2);
  std::vector<std::string_view> fields;
  while (reader.next(fields)) {
    const std::size_t line = reader.line();
    if (edges.size() == m) {
      throw GraphError("edge count mismatch: header declares " + std::to_string(m) +
                           " edges but more lines follow",
                       line);
    }
    if (fields.size() != 3) throw GraphError("expected 'u v w'", line);
    const auto u = parse_int<std::int64_t>(fields[0], line, "endpoint");
    const auto v = parse_int<std::int64_t>(fields[1], line, "endpoint");
    const auto w = parse_int<Weight>(fields[2], line, "weight");
    for (auto endpoint : {u, v}) {
      if (endpoint < 1 || endpoint > static_cast<std::int64_t>(n)) {
        throw GraphError("endpoint " + std::to_string(endpoint) + " out of range [1, " +
                             std::to_string(n) + "]",
                         line);
      }
    }
    if (u == v) throw GraphError("self-loop on node " + std::to_string(u), line);
    const auto a = static_cast<NodeIndex>(std::min(u, v) - 1);
    const auto b = static_cast<NodeIndex>(std::max(u, v) - 1);
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    if (auto [it, inserted] = first_seen.emplace(key, line); !inserted) {
      throw GraphError("duplicate edge " + std::to_string(u) + " " + std::to_string(v) +
                           " (first on line " + std::to_string(it->second) + ")",
                       line);
    }
    edges.push_back({a, b, w});
  }
  if (edges.size() != m) {
    throw GraphError("edge count mismatch: header declares " + std::to_string(m) +
                         " edges, found " + std::to_string(edges.size()),
                     reader.line() + 1);
  }
  return Graph(n, std::move(edges));
}

Graph parse_gset(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_gset(in);
}

Graph load_gset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  return parse_gset(in);
}

void write_gset(std::ostream& out, const Graph& g) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w << '\n';
}

std::string to_gset(const Graph& g) {
  std::ostringstream out;
  write_gset(out, g);
  return out.str();
}

}  // namespace pamc
