#include "pamc/solve.hpp"

namespace pamc {

namespace fs = std::filesystem;

LoadedInstance resolve_instance(const std::string& name_or_path, const InstanceCatalog& catalog,
                                const fs::path& cache_dir, Downloader& downloader) {
  if (fs::is_regular_file(name_or_path)) {
    return {fs::path(name_or_path).filename().string(), load_gset(name_or_path)};
  }
  const fs::path path = fetch_instance(catalog, name_or_path, cache_dir, downloader);
  return {name_or_path, load_gset(path)};
}

ResultRecord run_solve(const LoadedInstance& instance, const EngineConfig& cfg,
                       const SolveOptions& options) {
  const RunResult run = anneal(instance.graph, cfg, options.observer);
  ResultRecord rec = make_result_record(instance.name, instance.graph, cfg, run);
  if (!options.results_file.empty()) append_result(options.results_file, rec);
  return rec;
}

}  // namespace pamc
