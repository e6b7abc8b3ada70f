#include "pamc/engine.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "parallel.hpp"

namespace pamc {

namespace {

constexpr double kBisectionPrecision = 1e-6;
// Above this the Metropolis lookup table stops paying for itself.
constexpr Energy kMaxTableStrength = 4096;

Energy field_at(const Graph& g, const SpinConfiguration& s, NodeIndex i) {
  const auto nbrs = g.neighbors(i);
  const auto wts = g.neighbor_weights(i);
  Energy field = 0;
  for (std::size_t k = 0; k < nbrs.size(); ++k) field += static_cast<Energy>(wts[k]) * s[nbrs[k]];
  return field;
}

// dH of flipping i, without bounds checks.
Energy delta_at(const Graph& g, const SpinConfiguration& s, NodeIndex i) {
  return -2 * s[i] * field_at(g, s, i);
}

void check_replica(const Graph& g, const Replica& r, std::size_t index, std::size_t step) {
  const Energy actual = ising_energy(g, r.config);
  if (actual != r.energy) {
    throw std::logic_error("replica " + std::to_string(index) + " at step " +
                           std::to_string(step) + " caches energy " + std::to_string(r.energy) +
                           " but has " + std::to_string(actual));
  }
}

void check_memory(const Graph& g, const EngineConfig& cfg) {
  // Two generations of the population are alive while resampling.
  const double needed = 2.0 * static_cast<double>(cfg.population_size) *
                        static_cast<double>(g.num_nodes()) * sizeof(Spin);
  const long pages = sysconf(_SC_PHYS_PAGES);
  const long page_size = sysconf(_SC_PAGE_SIZE);
  if (pages > 0 && page_size > 0 &&
      needed > static_cast<double>(pages) * static_cast<double>(page_size)) {
    throw ConfigError("population_size " + std::to_string(cfg.population_size) + " with " +
                      std::to_string(g.num_nodes()) + " nodes needs more memory than available");
  }
}

}  // namespace

void EngineConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (population_size == 0) fail("population_size must be positive");
  if (sweeps_per_step == 0) fail("sweeps_per_step must be positive");
  if (!(target_ess_ratio > 0.0 && target_ess_ratio <= 1.0)) fail("target_ess_ratio must be in (0, 1]");
  if (!(beta_start >= 0.0) || !std::isfinite(beta_start)) fail("beta_start must be >= 0");
  if (!(beta_end > beta_start) || !std::isfinite(beta_end)) fail("beta_end must exceed beta_start");
  if (max_steps == 0) fail("max_steps must be positive");
  if (!(kick_fraction >= 0.0 && kick_fraction <= 1.0)) fail("kick_fraction must be in [0, 1]");
  if (!(acceptance_floor >= 0.0 && acceptance_floor < 1.0)) fail("acceptance_floor must be in [0, 1)");
  if (!(min_delta_beta > 0.0) || !std::isfinite(min_delta_beta)) fail("min_delta_beta must be positive");
  if (!(time_limit >= 0.0)) fail("time_limit must be >= 0");
}

std::vector<Energy> Population::energies() const {
  std::vector<Energy> out;
  out.reserve(replicas.size());
  for (const auto& r : replicas) out.push_back(r.energy);
  return out;
}

bool RunResult::same_outcome(const RunResult& o) const {
  return best_config == o.best_config && best_cut == o.best_cut &&
         beta_trajectory == o.beta_trajectory && ess_trajectory == o.ess_trajectory &&
         acceptance_trajectory == o.acceptance_trajectory && steps == o.steps &&
         log_partition_ratio == o.log_partition_ratio && total_sweeps == o.total_sweeps;
}

Population init_population(const Graph& g, const EngineConfig& cfg) {
  cfg.validate();
  Population pop;
  pop.beta = cfg.beta_start;
  pop.replicas.resize(cfg.population_size);
  detail::parallel_for(cfg.population_size, cfg.workers, [&](std::size_t i) {
    Rng rng = Rng::for_stream(cfg.seed, i, 0, StreamPurpose::init);
    Replica& r = pop.replicas[i];
    r.config = random_config(g.num_nodes(), rng);
    r.energy = ising_energy(g, r.config);
  });
  return pop;
}

double metropolis_sweep(const Graph& g, Replica& r, double beta, Rng& rng) {
  const std::size_t n = g.num_nodes();
  if (r.config.size() != n) throw std::invalid_argument("replica size does not match graph");

  // dH = 2k with k in [-S, S]; the table holds exp(-2 beta k) for k >= 0.
  const Energy strength = g.max_abs_strength();
  std::vector<double> table;
  if (strength <= kMaxTableStrength) {
    table.resize(static_cast<std::size_t>(strength) + 1);
    for (std::size_t k = 0; k < table.size(); ++k) table[k] = std::exp(-2.0 * beta * static_cast<double>(k));
  }

  std::size_t accepted = 0;
  for (NodeIndex i = 0; i < n; ++i) {
    const Energy delta = delta_at(g, r.config, i);
    bool accept = delta <= 0;
    if (!accept) {
      const double p = table.empty() ? std::exp(-beta * static_cast<double>(delta))
                                     : table[static_cast<std::size_t>(delta / 2)];
      accept = rng.uniform() < p;
    }
    if (accept) {
      r.config.flip(i);
      r.energy += delta;
      ++accepted;
    }
  }
  return static_cast<double>(accepted) / static_cast<double>(n);
}

namespace {

struct Reweighting {
  std::vector<double> weights;
  // ln of the mean of exp(-delta_beta * E_i).
  double log_mean_factor = 0.0;
};

Reweighting reweight_with_norm(std::span<const Energy> energies, double delta_beta) {
  if (energies.empty()) throw std::invalid_argument("cannot reweight an empty population");
  if (!(delta_beta >= 0.0)) throw std::invalid_argument("delta_beta must be >= 0");
  const Energy e_min = *std::min_element(energies.begin(), energies.end());
  Reweighting out;
  out.weights.resize(energies.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    out.weights[i] = std::exp(-delta_beta * static_cast<double>(energies[i] - e_min));
    sum += out.weights[i];
  }
  for (auto& w : out.weights) w /= sum;
  out.log_mean_factor = -delta_beta * static_cast<double>(e_min) +
                        std::log(sum / static_cast<double>(energies.size()));
  return out;
}

double ess_ratio_at(std::span<const Energy> energies, double delta_beta) {
  const auto w = reweight_with_norm(energies, delta_beta).weights;
  return effective_sample_size(w) / static_cast<double>(energies.size());
}

}  // namespace

std::vector<double> reweight(std::span<const Energy> energies, double delta_beta) {
  return reweight_with_norm(energies, delta_beta).weights;
}

std::vector<double> reweight(const Population& pop, double delta_beta) {
  return reweight(pop.energies(), delta_beta);
}

double effective_sample_size(std::span<const double> weights) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be non-negative");
    sum += w;
    sum_sq += w * w;
  }
  if (sum <= 0.0) throw std::invalid_argument("effective sample size of all-zero weights");
  return sum * sum / sum_sq;
}

double choose_delta_beta(std::span<const Energy> energies, double beta, double target_ess_ratio,
                         double beta_end) {
  if (!(target_ess_ratio > 0.0 && target_ess_ratio <= 1.0)) {
    throw std::invalid_argument("target_ess_ratio must be in (0, 1]");
  }
  const double remaining = beta_end - beta;
  if (remaining <= 0.0) return 0.0;
  const auto [e_lo, e_hi] = std::minmax_element(energies.begin(), energies.end());
  if (e_lo == energies.end() || *e_lo == *e_hi) return remaining;
  if (ess_ratio_at(energies, remaining) >= target_ess_ratio) return remaining;

  // ESS ratio is 1 at delta_beta = 0 and decreases monotonically.
  double lo = 0.0;
  double hi = remaining;
  while (hi - lo > kBisectionPrecision * hi) {
    const double mid = 0.5 * (lo + hi);
    if (ess_ratio_at(energies, mid) >= target_ess_ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double choose_delta_beta(const Population& pop, double target_ess_ratio, double beta_end) {
  return choose_delta_beta(pop.energies(), pop.beta, target_ess_ratio, beta_end);
}

std::vector<std::size_t> systematic_indices(std::span<const double> weights, double offset,
                                            std::size_t draws) {
  const std::size_t count = weights.size();
  if (draws == 0) draws = count;
  if (!(offset >= 0.0 && offset < 1.0)) throw std::invalid_argument("offset must be in [0, 1)");
  std::vector<std::size_t> indices;
  indices.reserve(draws);
  if (count == 0) return indices;
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("resampling weights sum to zero");

  std::size_t i = 0;
  double cumulative = weights[0] / total;
  for (std::size_t k = 0; k < draws; ++k) {
    const double point = (offset + static_cast<double>(k)) / static_cast<double>(draws);
    while (cumulative <= point && i + 1 < count) cumulative += weights[++i] / total;
    // Rounding can leave the last cumulative value a hair under 1; never
    // land on a zero-weight tail.
    std::size_t pick = i;
    while (weights[pick] <= 0.0 && pick > 0) --pick;
    indices.push_back(pick);
  }
  return indices;
}

Population resample(const Population& pop, std::span<const double> weights, Rng& rng) {
  if (weights.size() != pop.size()) throw std::invalid_argument("one weight per replica required");
  const auto indices = systematic_indices(weights, rng.uniform());
  Population out;
  out.beta = pop.beta;
  out.step_index = pop.step_index;
  out.replicas.reserve(indices.size());
  for (std::size_t idx : indices) out.replicas.push_back(pop.replicas[idx]);
  return out;
}

std::vector<NodeIndex> choose_kick_indices(std::size_t n, std::size_t count, Rng& rng) {
  if (count > n) throw std::invalid_argument("cannot choose more indices than nodes");
  std::vector<NodeIndex> pool(n);
  std::iota(pool.begin(), pool.end(), NodeIndex{0});
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
    std::swap(pool[k], pool[j]);
  }
  pool.resize(count);
  return pool;
}

void nonlocal_kick(const Graph& g, Replica& r, double fraction, Rng& rng) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must be in [0, 1]");
  const std::size_t n = g.num_nodes();
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  for (NodeIndex i : choose_kick_indices(n, count, rng)) {
    r.energy += delta_at(g, r.config, i);
    r.config.flip(i);
  }
  greedy_descent(g, r);
}

std::size_t greedy_descent(const Graph& g, Replica& r) {
  const std::size_t n = g.num_nodes();
  std::size_t flips = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeIndex i = 0; i < n; ++i) {
      const Energy delta = delta_at(g, r.config, i);
      if (delta < 0) {
        r.config.flip(i);
        r.energy += delta;
        ++flips;
        changed = true;
      }
    }
  }
  return flips;
}

bool is_one_flip_optimal(const Graph& g, const SpinConfiguration& s) {
  if (s.size() != g.num_nodes()) throw std::invalid_argument("configuration size mismatch");
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
    if (delta_at(g, s, i) < 0) return false;
  }
  return true;
}

RunResult anneal(const Graph& g, const EngineConfig& cfg, const StepObserver& observer) {
  cfg.validate();
  check_memory(g, cfg);
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  Population pop = init_population(g, cfg);
  const std::size_t count = pop.size();

  RunResult result;
  result.best_cut = std::numeric_limits<Energy>::min();
  auto observe_best = [&] {
    std::size_t best_index = count;
    Energy best_energy = std::numeric_limits<Energy>::max();
    for (std::size_t i = 0; i < count; ++i) {
      if (pop.replicas[i].energy < best_energy) {
        best_energy = pop.replicas[i].energy;
        best_index = i;
      }
    }
    const Energy cut = cut_from_energy(g, best_energy);
    if (cut > result.best_cut) {
      result.best_cut = cut;
      result.best_config = pop.replicas[best_index].config;
      return true;
    }
    return false;
  };
  observe_best();

  std::vector<double> acceptance(count);
  bool frozen = false;
  std::size_t since_improvement = 0;

  for (std::size_t step = 1; step <= cfg.max_steps; ++step) {
    StepRecord record;
    record.step = step;
    pop.step_index = step;

    if (!frozen && pop.beta < cfg.beta_end) {
      const auto energies = pop.energies();
      double delta_beta = choose_delta_beta(energies, pop.beta, cfg.target_ess_ratio, cfg.beta_end);
      delta_beta = std::min(std::max(delta_beta, cfg.min_delta_beta), cfg.beta_end - pop.beta);
      const auto rw = reweight_with_norm(energies, delta_beta);
      record.delta_beta = delta_beta;
      record.ess_ratio = effective_sample_size(rw.weights) / static_cast<double>(count);
      result.log_partition_ratio += rw.log_mean_factor;
      if (cfg.resampling) {
        Rng rng = Rng::for_stream(cfg.seed, 0, step, StreamPurpose::resample);
        pop = resample(pop, rw.weights, rng);
      }
      // Snap to the endpoint so that rounding cannot leave beta a hair short.
      pop.beta = delta_beta == cfg.beta_end - pop.beta ? cfg.beta_end : pop.beta + delta_beta;
    }
    record.beta = pop.beta;

    detail::parallel_for(count, cfg.workers, [&](std::size_t i) {
      Rng rng = Rng::for_stream(cfg.seed, i, step, StreamPurpose::sweep);
      double accepted = 0.0;
      for (std::size_t sweep = 0; sweep < cfg.sweeps_per_step; ++sweep) {
        accepted += metropolis_sweep(g, pop.replicas[i], pop.beta, rng);
      }
      acceptance[i] = accepted / static_cast<double>(cfg.sweeps_per_step);
    });
    result.total_sweeps += static_cast<std::uint64_t>(count) * cfg.sweeps_per_step;
    record.acceptance = std::accumulate(acceptance.begin(), acceptance.end(), 0.0) /
                        static_cast<double>(count);

    if (cfg.kick_period > 0 && step % cfg.kick_period == 0) {
      record.kicked = true;
      detail::parallel_for(count, cfg.workers, [&](std::size_t i) {
        Rng rng = Rng::for_stream(cfg.seed, i, step, StreamPurpose::kick);
        Replica& r = pop.replicas[i];
        Replica kicked = r;
        nonlocal_kick(g, kicked, cfg.kick_fraction, rng);
        if (kicked.energy <= r.energy) r = std::move(kicked);
      });
    }

    if (cfg.check_energies) {
      for (std::size_t i = 0; i < count; ++i) check_replica(g, pop.replicas[i], i, step);
    }

    if (!frozen && pop.beta < cfg.beta_end && record.acceptance < cfg.acceptance_floor) {
      frozen = true;
    }

    const bool improved = observe_best();
    Energy min_energy = std::numeric_limits<Energy>::max();
    double energy_sum = 0.0;
    for (const auto& r : pop.replicas) {
      min_energy = std::min(min_energy, r.energy);
      energy_sum += static_cast<double>(r.energy);
    }
    record.min_energy = min_energy;
    record.mean_energy = energy_sum / static_cast<double>(count);
    record.best_cut = result.best_cut;

    result.beta_trajectory.push_back(record.beta);
    result.ess_trajectory.push_back(record.ess_ratio * static_cast<double>(count));
    result.acceptance_trajectory.push_back(record.acceptance);
    result.steps.push_back(record);
    if (observer) observer(record);

    const bool settled = frozen || pop.beta >= cfg.beta_end;
    since_improvement = (improved || !settled) ? 0 : since_improvement + 1;
    if (cfg.patience > 0 && since_improvement >= cfg.patience) break;
    if (cfg.time_limit > 0.0 && elapsed() >= cfg.time_limit) break;
  }

  result.wall_time = elapsed();
  return result;
}

}  // namespace pamc
