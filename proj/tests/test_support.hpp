#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// work from the raw edge list and never call the library's energy routines.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "pamc/catalog.hpp"
#include "pamc/graph.hpp"
#include "pamc/rng.hpp"
#include "pamc/spins.hpp"

namespace pamc::testing {

inline Graph triangle() { return Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

/// G(n, p) with weights +1, or uniformly ±1 when `signed_weights`.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed, bool signed_weights) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) {
        const Weight w = signed_weights ? (rng.coin() ? 1 : -1) : 1;
        edges.push_back({u, v, w});
      }
    }
  }
  if (edges.empty()) edges.push_back({0, 1, 1});
  return Graph(n, std::move(edges));
}

/// Spin i of state `bits` is +1 when bit i is set.
inline SpinConfiguration config_from_bits(std::size_t n, std::uint64_t bits) {
  SpinConfiguration s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, (bits >> i) & 1);
  return s;
}

inline std::int64_t oracle_energy(std::span<const Edge> edges, std::uint64_t bits) {
  std::int64_t h = 0;
  for (const auto& e : edges) {
    const int su = ((bits >> e.u) & 1) ? 1 : -1;
    const int sv = ((bits >> e.v) & 1) ? 1 : -1;
    h += static_cast<std::int64_t>(e.w) * su * sv;
  }
  return h;
}

inline std::int64_t oracle_cut(std::span<const Edge> edges, std::uint64_t bits) {
  std::int64_t cut = 0;
  for (const auto& e : edges) {
    if (((bits >> e.u) & 1) != ((bits >> e.v) & 1)) cut += e.w;
  }
  return cut;
}

/// Maximum cut by enumeration with node n-1 pinned to spin -1 (global flip
/// symmetry halves the search to 2^(n-1) states).
inline std::int64_t brute_force_max_cut(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n - 1)); ++bits) {
    best = std::max(best, oracle_cut(g.edges(), bits));
  }
  return best;
}

/// Exact Boltzmann probability of each energy level at inverse temperature beta.
inline std::map<std::int64_t, double> boltzmann_energy_distribution(const Graph& g, double beta) {
  const std::size_t n = g.num_nodes();
  std::map<std::int64_t, std::uint64_t> degeneracy;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    ++degeneracy[oracle_energy(g.edges(), bits)];
  }
  const std::int64_t e_min = degeneracy.begin()->first;
  std::map<std::int64_t, double> p;
  double z = 0.0;
  for (const auto& [e, count] : degeneracy) {
    p[e] = static_cast<double>(count) * std::exp(-beta * static_cast<double>(e - e_min));
    z += p[e];
  }
  for (auto& [e, prob] : p) prob /= z;
  return p;
}

/// Path of a usable G63 file: $PAMC_G63 if set, otherwise the cache entry.
/// With `allow_download` a cache miss triggers one download attempt.
inline std::optional<std::filesystem::path> locate_g63(bool allow_download) {
  if (const char* env = std::getenv("PAMC_G63"); env && *env) return std::filesystem::path(env);
  const auto& catalog = InstanceCatalog::builtin();
  const auto dir = default_cache_dir();
  try {
    if (auto hit = cached_instance(catalog, "G63", dir)) return hit;
    if (!allow_download) return std::nullopt;
    CurlDownloader downloader(60);
    return fetch_instance(catalog, "G63", dir, downloader);
  } catch (const FetchError&) {
    return std::nullopt;
  }
}

}  // namespace pamc::testing

#include <boost/math/distributions/chi_squared.hpp>

namespace pamc::testing {

/// Pearson chi-square goodness of fit of energy counts against exact level
/// probabilities. Adjacent levels are pooled until each bin expects >= 5.
inline double chi_square_p_value(const std::map<std::int64_t, std::uint64_t>& observed,
                                 const std::map<std::int64_t, double>& expected_p) {
  for (const auto& [e, c] : observed) {
    if (!expected_p.contains(e) && c > 0) return 0.0;  // impossible energy
  }
  std::uint64_t total = 0;
  for (const auto& [e, c] : observed) total += c;

  std::vector<std::pair<double, double>> bins;  // (expected, observed)
  double pooled_expected = 0.0;
  double pooled_observed = 0.0;
  for (const auto& [e, p] : expected_p) {
    pooled_expected += p * static_cast<double>(total);
    if (auto it = observed.find(e); it != observed.end()) pooled_observed += static_cast<double>(it->second);
    if (pooled_expected >= 5.0) {
      bins.emplace_back(pooled_expected, pooled_observed);
      pooled_expected = 0.0;
      pooled_observed = 0.0;
    }
  }
  if (!bins.empty()) {
    bins.back().first += pooled_expected;
    bins.back().second += pooled_observed;
  }
  if (bins.size() < 2) return 1.0;
  double chi2 = 0.0;
  for (const auto& [expected, seen] : bins) chi2 += (seen - expected) * (seen - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(bins.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, chi2));
}

}  // namespace pamc::testing
