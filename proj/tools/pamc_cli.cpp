// pamc: command line front-end for the population annealing Max-Cut solver.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "pamc/pamc.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

fs::path cache_dir_or_default(const std::string& flag) {
  return flag.empty() ? pamc::default_cache_dir() : fs::path(flag);
}

std::string read_text(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Population annealing Monte Carlo solver for Max-Cut on G-set graphs"};
  app.require_subcommand(1);

  std::string cache_dir;
  app.add_option("--cache-dir", cache_dir, "Instance cache (default: $PAMC_CACHE_DIR or ~/.cache/pamc-maxcut)");

  // fetch
  auto* fetch = app.add_subcommand("fetch", "Download a catalog instance into the cache");
  std::string fetch_name;
  std::string fetch_from;
  fetch->add_option("name", fetch_name, "Instance name, e.g. G63")->required();
  fetch->add_option("--from", fetch_from, "Import a local copy instead of downloading");

  // solve
  auto* solve = app.add_subcommand("solve", "Run the annealer on an instance");
  std::string solve_instance;
  std::string config_path;
  std::string results_path = "results.jsonl";
  std::string steps_path;
  solve->add_option("instance", solve_instance, "Catalog name or G-set file")->required();
  solve->add_option("--config", config_path, "File of 'key = value' engine settings");
  solve->add_option("--results", results_path, "Line-delimited results file to append to")
      ->capture_default_str();
  solve->add_option("--steps", steps_path, "Stream per-step diagnostics to this file ('-' for stderr)");
  std::map<std::string, std::string> overrides;
  for (const auto& key : pamc::engine_config_keys()) {
    solve->add_option_function<std::string>(
        "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
        "Override " + key + " (default " + pamc::get_config_value(pamc::EngineConfig{}, key) + ")");
  }

  // verify
  auto* verify = app.add_subcommand("verify", "Check a solution record's claimed cut");
  std::string record_path;
  std::string verify_instance;
  std::optional<long long> claimed_override;
  verify->add_option("--record", record_path, "Record file (default: the shipped G63 record)");
  verify->add_option("--instance", verify_instance, "Catalog name or G-set file (default: the record's instance)");
  verify->add_option("--claimed-cut", claimed_override, "Replace the record's claimed cut");

  // encode / decode
  auto* encode = app.add_subcommand("encode", "Convert one-spin-per-line text to hex");
  std::string encode_input;
  encode->add_option("input", encode_input, "Spin file ('-' or omitted for stdin)");

  auto* decode = app.add_subcommand("decode", "Convert hex to one-spin-per-line text");
  std::string decode_input;
  std::size_t decode_nodes = 0;
  decode->add_option("input", decode_input, "File holding the hex string ('-' or omitted for stdin)");
  decode->add_option("--nodes,-n", decode_nodes, "Number of variables")->required();

  // trace
  auto* trace = app.add_subcommand("trace", "Write per-step columns from a results file");
  std::string trace_input;
  std::string trace_output;
  trace->add_option("results", trace_input, "Results file written by solve")->required();
  trace->add_option("--output,-o", trace_output, "Output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto& catalog = pamc::InstanceCatalog::builtin();

    if (*fetch) {
      const fs::path dir = cache_dir_or_default(cache_dir);
      fs::path path;
      if (!fetch_from.empty()) {
        path = pamc::import_instance(catalog, fetch_name, fetch_from, dir);
      } else {
        pamc::CurlDownloader downloader;
        path = pamc::fetch_instance(catalog, fetch_name, dir, downloader);
      }
      std::cout << path.string() << '\n';
      return 0;
    }

    if (*solve) {
      pamc::EngineConfig cfg;
      if (!config_path.empty()) cfg = pamc::load_config(config_path, cfg);
      for (const auto& [key, value] : overrides) pamc::set_config_value(cfg, key, value);
      cfg.validate();

      pamc::CurlDownloader downloader;
      const auto instance =
          pamc::resolve_instance(solve_instance, catalog, cache_dir_or_default(cache_dir), downloader);

      std::ofstream steps_file;
      std::ostream* steps_out = nullptr;
      if (steps_path == "-") {
        steps_out = &std::cerr;
      } else if (!steps_path.empty()) {
        steps_file.open(steps_path);
        if (!steps_file) throw std::runtime_error("cannot write " + steps_path);
        steps_out = &steps_file;
      }
      pamc::SolveOptions options;
      options.results_file = results_path;
      if (steps_out) {
        options.observer = [steps_out](const pamc::StepRecord& s) {
          *steps_out << pamc::format_step(s) << '\n' << std::flush;
        };
      }
      const auto rec = pamc::run_solve(instance, cfg, options);
      std::cout << "instance: " << rec.instance << '\n'
                << "best cut: " << rec.best_cut << '\n'
                << "steps: " << rec.steps.size() << '\n'
                << "wall time: " << rec.wall_time << " s\n"
                << "hex: " << rec.best_hex << '\n';
      return 0;
    }

    if (*verify) {
      pamc::SolutionRecord rec = pamc::published_g63_record();
      if (!record_path.empty()) {
        std::istringstream in(read_text(record_path));
        rec = pamc::parse_record(in);
      }
      if (claimed_override) rec.claimed_cut = *claimed_override;
      pamc::CurlDownloader downloader;
      const auto instance = pamc::resolve_instance(
          verify_instance.empty() ? rec.instance : verify_instance, catalog,
          cache_dir_or_default(cache_dir), downloader);
      const auto report = pamc::verify_record(rec, instance.graph, catalog);
      pamc::print_report(std::cout, report);
      return report.match ? 0 : kExitMismatch;
    }

    if (*encode) {
      std::istringstream in(read_text(encode_input));
      std::cout << pamc::encode_hex(pamc::read_spin_lines(in)) << '\n';
      return 0;
    }

    if (*decode) {
      std::istringstream in(read_text(decode_input));
      pamc::write_spin_lines(std::cout, pamc::decode_hex(pamc::read_hex_token(in), decode_nodes));
      return 0;
    }

    if (*trace) {
      if (trace_output.empty()) {
        pamc::write_trace(std::cout, pamc::read_results(trace_input));
      } else {
        pamc::emit_trace_plot_data(trace_input, trace_output);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
