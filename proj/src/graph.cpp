#include "pamc/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "pamc/spins.hpp"

namespace pamc {

namespace {

std::string with_line(const std::string& what, std::size_t line) {
  return line == 0 ? what : "line " + std::to_string(line) + ": " + what;
}

std::uint64_t edge_key(NodeIndex u, NodeIndex v) {
  return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
}

void require_size(const Graph& g, const SpinConfiguration& s) {
  if (s.size() != g.num_nodes()) {
    throw std::invalid_argument("configuration has " + std::to_string(s.size()) +
                                " spins but graph has " + std::to_string(g.num_nodes()) +
                                " nodes");
  }
}

}  // namespace

GraphError::GraphError(const std::string& what, std::size_t line)
    : std::runtime_error(with_line(what, line)), line_(line) {}

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (num_nodes_ == 0) throw GraphError("graph must have at least one node");
  if (num_nodes_ > std::numeric_limits<NodeIndex>::max()) throw GraphError("too many nodes");

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  std::vector<std::size_t> degree(num_nodes_, 0);
  std::vector<Energy> strength(num_nodes_, 0);
  for (auto& e : edges_) {
    if (e.u >= num_nodes_ || e.v >= num_nodes_) {
      throw GraphError("edge endpoint out of range: " + std::to_string(e.u) + " " +
                       std::to_string(e.v));
    }
    if (e.u == e.v) throw GraphError("self-loop on node " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert(edge_key(e.u, e.v)).second) {
      throw GraphError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    ++degree[e.u];
    ++degree[e.v];
    strength[e.u] += std::abs(static_cast<Energy>(e.w));
    strength[e.v] += std::abs(static_cast<Energy>(e.w));
    total_weight_ += e.w;
  }

  offsets_.assign(num_nodes_ + 1, 0);
  for (std::size_t i = 0; i < num_nodes_; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  neighbors_.resize(offsets_.back());
  weights_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    neighbors_[cursor[e.u]] = e.v;
    weights_[cursor[e.u]++] = e.w;
    neighbors_[cursor[e.v]] = e.u;
    weights_[cursor[e.v]++] = e.w;
  }
  max_abs_strength_ = *std::max_element(strength.begin(), strength.end());
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.num_nodes_ != b.num_nodes_ || a.edges_.size() != b.edges_.size()) return false;
  auto sorted = [](std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
      return std::tie(x.u, x.v, x.w) < std::tie(y.u, y.v, y.w);
    });
    return edges;
  };
  return sorted(a.edges_) == sorted(b.edges_);
}

Energy cut_value(const Graph& g, const SpinConfiguration& s) {
  require_size(g, s);
  Energy cut = 0;
  for (const auto& e : g.edges()) {
    if (s[e.u] != s[e.v]) cut += e.w;
  }
  return cut;
}

Energy ising_energy(const Graph& g, const SpinConfiguration& s) {
  require_size(g, s);
  Energy h = 0;
  for (const auto& e : g.edges()) h += static_cast<Energy>(e.w) * s[e.u] * s[e.v];
  return h;
}

Energy local_field(const Graph& g, const SpinConfiguration& s, NodeIndex i) {
  require_size(g, s);
  if (i >= g.num_nodes()) throw std::out_of_range("node index " + std::to_string(i));
  const auto nbrs = g.neighbors(i);
  const auto wts = g.neighbor_weights(i);
  Energy field = 0;
  for (std::size_t k = 0; k < nbrs.size(); ++k) field += static_cast<Energy>(wts[k]) * s[nbrs[k]];
  return field;
}

Energy flip_delta(const Graph& g, const SpinConfiguration& s, NodeIndex i) {
  return -2 * s.at(i) * local_field(g, s, i);
}

Energy cut_from_energy(Energy total_weight, Energy h) {
  const Energy diff = total_weight - h;
  if (diff % 2 != 0) {
    throw std::domain_error("energy " + std::to_string(h) + " is inconsistent with total weight " +
                            std::to_string(total_weight));
  }
  return diff / 2;
}

Energy cut_from_energy(const Graph& g, Energy h) { return cut_from_energy(g.total_weight(), h); }

}  // namespace pamc
