#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pamc {

class SpinConfiguration;

using NodeIndex = std::uint32_t;
using Weight = std::int32_t;
// Energies and cut values are accumulated in 64 bits so that no G-set sized
// instance can overflow.
using Energy = std::int64_t;

struct Edge {
  NodeIndex u;
  NodeIndex v;
  Weight w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Thrown for structurally invalid graphs and malformed G-set text. When the
/// error comes from parsing, line() is the 1-based line number, otherwise 0.
class GraphError : public std::runtime_error {
 public:
  GraphError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable weighted undirected graph.
///
/// Edges are kept both as a list (u < v, 0-based) and in a compressed
/// offsets-plus-neighbors adjacency where every edge appears under both
/// endpoints. Construction rejects self-loops, duplicate edges and endpoints
/// outside [0, n).
class Graph {
 public:
  Graph(std::size_t num_nodes, std::vector<Edge> edges);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  Energy total_weight() const noexcept { return total_weight_; }

  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const NodeIndex> neighbors(NodeIndex i) const noexcept {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }
  std::span<const Weight> neighbor_weights(NodeIndex i) const noexcept {
    return {weights_.data() + offsets_[i], weights_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeIndex i) const noexcept { return offsets_[i + 1] - offsets_[i]; }

  /// Largest Σ|w| over the edges incident to a single node. Bounds |ΔH| / 2.
  Energy max_abs_strength() const noexcept { return max_abs_strength_; }

  /// Same node count and the same set of weighted edges, in any order.
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t num_nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeIndex> neighbors_;
  std::vector<Weight> weights_;
  Energy total_weight_ = 0;
  Energy max_abs_strength_ = 0;
};

// G-set text: header "n m" followed by m lines "u v w" with 1-based endpoints.
Graph parse_gset(std::istream& in);
Graph parse_gset(std::string_view text);
Graph load_gset(const std::filesystem::path& path);
void write_gset(std::ostream& out, const Graph& g);
std::string to_gset(const Graph& g);

/// Reads only the "n m" header line.
std::pair<std::size_t, std::size_t> read_gset_header(std::istream& in);

Energy cut_value(const Graph& g, const SpinConfiguration& s);

/// H(s) = Σ_{(i,j)} w_ij s_i s_j. Satisfies 2 * cut_value + H = total_weight.
Energy ising_energy(const Graph& g, const SpinConfiguration& s);

/// Σ_j w_ij s_j over the neighbors of i.
Energy local_field(const Graph& g, const SpinConfiguration& s, NodeIndex i);

/// H(s with spin i flipped) - H(s). Does not modify s.
Energy flip_delta(const Graph& g, const SpinConfiguration& s, NodeIndex i);

/// (total_weight - h) / 2; throws std::domain_error if the difference is odd.
Energy cut_from_energy(const Graph& g, Energy h);
Energy cut_from_energy(Energy total_weight, Energy h);

}  // namespace pamc
