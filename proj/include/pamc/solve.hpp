#pragma once

#include <filesystem>
#include <string>

#include "pamc/catalog.hpp"
#include "pamc/engine.hpp"
#include "pamc/graph.hpp"
#include "pamc/results.hpp"

namespace pamc {

struct LoadedInstance {
  std::string name;
  Graph graph;
};

/// An existing file path is loaded directly; anything else is looked up in
/// the catalog and fetched through the cache.
LoadedInstance resolve_instance(const std::string& name_or_path, const InstanceCatalog& catalog,
                                const std::filesystem::path& cache_dir, Downloader& downloader);

struct SolveOptions {
  std::filesystem::path results_file;  // empty: do not persist
  StepObserver observer;
};

/// Runs anneal on an instance and appends the outcome to the results file.
ResultRecord run_solve(const LoadedInstance& instance, const EngineConfig& cfg,
                       const SolveOptions& options);

}  // namespace pamc
