#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pamc/graph.hpp"
#include "pamc/rng.hpp"
#include "pamc/spins.hpp"

namespace pamc {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A population member: a configuration and its cached Ising energy.
struct Replica {
  SpinConfiguration config;
  Energy energy = 0;

  friend bool operator==(const Replica&, const Replica&) = default;
};

struct Population {
  std::vector<Replica> replicas;
  double beta = 0.0;
  std::size_t step_index = 0;

  std::size_t size() const noexcept { return replicas.size(); }
  std::vector<Energy> energies() const;
};

/// Solver settings. Field names double as config-file keys and CLI flags.
struct EngineConfig {
  std::size_t population_size = 4096;
  std::size_t sweeps_per_step = 8;
  double target_ess_ratio = 0.9;
  double beta_start = 0.0;
  double beta_end = 5.0;
  // Hard cap on annealing steps. Steps after beta reaches its final value
  // keep sweeping (and kicking) at that temperature.
  std::size_t max_steps = 2000;
  std::size_t kick_period = 20;  // 0 disables non-local moves
  double kick_fraction = 0.05;
  double acceptance_floor = 0.02;
  std::uint64_t seed = 1;
  // Stop after this many steps without improving the best cut, counted once
  // beta has stopped increasing. 0 disables.
  std::size_t patience = 0;
  double min_delta_beta = 1e-4;
  bool resampling = true;
  // Threads used for sweeps and kicks; 0 means hardware concurrency. Results
  // do not depend on it.
  std::size_t workers = 0;
  // Wall-clock budget in seconds, 0 for none. A run cut short by the budget
  // is no longer reproducible from the seed alone.
  double time_limit = 0.0;
  // Recompute every replica energy from scratch after each step and throw
  // std::logic_error on a mismatch.
  bool check_energies = false;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

struct StepRecord {
  std::size_t step = 0;
  double beta = 0.0;
  double delta_beta = 0.0;
  double ess_ratio = 1.0;
  double mean_energy = 0.0;
  Energy min_energy = 0;
  Energy best_cut = 0;
  double acceptance = 0.0;
  bool kicked = false;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct RunResult {
  SpinConfiguration best_config;
  Energy best_cut = 0;
  std::vector<double> beta_trajectory;
  std::vector<double> ess_trajectory;
  std::vector<double> acceptance_trajectory;
  std::vector<StepRecord> steps;
  // Running estimate of ln(Z(beta) / Z(beta_start)) from the mean
  // reweighting factors.
  double log_partition_ratio = 0.0;
  double wall_time = 0.0;
  std::uint64_t total_sweeps = 0;

  /// Equality of everything except wall_time.
  bool same_outcome(const RunResult& other) const;
};

using StepObserver = std::function<void(const StepRecord&)>;

Population init_population(const Graph& g, const EngineConfig& cfg);

/// One Metropolis pass over all nodes in index order, accepting each flip
/// with probability min(1, exp(-beta * dH)). Updates `r` in place and
/// returns the fraction of accepted flips.
double metropolis_sweep(const Graph& g, Replica& r, double beta, Rng& rng);

/// Normalized weights exp(-delta_beta * (E_i - E_min)).
std::vector<double> reweight(std::span<const Energy> energies, double delta_beta);
std::vector<double> reweight(const Population& pop, double delta_beta);

/// (Σw)² / Σw². Throws std::invalid_argument for empty or all-zero weights.
double effective_sample_size(std::span<const double> weights);

/// Largest step in (0, beta_end - beta] whose reweighting keeps
/// ESS / R >= target_ess_ratio, located by bisection to a relative precision
/// of 1e-6. Returns the full remaining step when that already satisfies the
/// target, and 0 when beta >= beta_end.
double choose_delta_beta(std::span<const Energy> energies, double beta, double target_ess_ratio,
                         double beta_end);
double choose_delta_beta(const Population& pop, double target_ess_ratio, double beta_end);

/// Systematic resampling: with offset u in [0, 1), draw k of `draws` selects
/// the index whose cumulative-weight interval contains (u + k) / draws.
/// `draws` defaults to the number of weights.
std::vector<std::size_t> systematic_indices(std::span<const double> weights, double offset,
                                            std::size_t draws = 0);

/// Population of the same size built from systematic_indices with an offset
/// drawn from `rng`. Selected replicas are copied.
Population resample(const Population& pop, std::span<const double> weights, Rng& rng);

/// `count` distinct indices from [0, n), uniformly.
std::vector<NodeIndex> choose_kick_indices(std::size_t n, std::size_t count, Rng& rng);

/// Flips floor(fraction * n) distinct random spins, then runs greedy_descent.
void nonlocal_kick(const Graph& g, Replica& r, double fraction, Rng& rng);

/// Flips, in repeated index-order passes, every spin whose flip strictly
/// lowers the energy until a pass changes nothing. Returns the number of flips.
std::size_t greedy_descent(const Graph& g, Replica& r);

/// True when no single flip lowers the energy.
bool is_one_flip_optimal(const Graph& g, const SpinConfiguration& s);

/// Population annealing from cfg.beta_start toward cfg.beta_end. Deterministic
/// in (g, cfg) unless cfg.time_limit ends the run early.
RunResult anneal(const Graph& g, const EngineConfig& cfg, const StepObserver& observer = {});

}  // namespace pamc
