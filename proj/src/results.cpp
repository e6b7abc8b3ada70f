#include "pamc/results.hpp"

#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "pamc/config_file.hpp"

namespace pamc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json step_to_json(const StepRecord& s) {
  return json{{"step", s.step},           {"beta", s.beta},
              {"delta_beta", s.delta_beta}, {"ess_ratio", s.ess_ratio},
              {"mean_energy", s.mean_energy}, {"min_energy", s.min_energy},
              {"best_cut", s.best_cut},     {"acceptance", s.acceptance},
              {"kicked", s.kicked}};
}

StepRecord step_from_json(const json& j) {
  StepRecord s;
  s.step = j.at("step").get<std::size_t>();
  s.beta = j.at("beta").get<double>();
  s.delta_beta = j.at("delta_beta").get<double>();
  s.ess_ratio = j.at("ess_ratio").get<double>();
  s.mean_energy = j.at("mean_energy").get<double>();
  s.min_energy = j.at("min_energy").get<Energy>();
  s.best_cut = j.at("best_cut").get<Energy>();
  s.acceptance = j.at("acceptance").get<double>();
  s.kicked = j.at("kicked").get<bool>();
  return s;
}

}  // namespace

ResultRecord make_result_record(const std::string& instance, const Graph& g,
                                const EngineConfig& cfg, const RunResult& run) {
  ResultRecord rec;
  rec.instance = instance;
  rec.nodes = g.num_nodes();
  rec.config = cfg;
  rec.best_cut = run.best_cut;
  rec.best_hex = encode_hex(run.best_config);
  rec.wall_time = run.wall_time;
  rec.total_sweeps = run.total_sweeps;
  rec.log_partition_ratio = run.log_partition_ratio;
  rec.steps = run.steps;
  return rec;
}

std::string to_result_line(const ResultRecord& rec) {
  json config = json::object();
  for (const auto& key : engine_config_keys()) config[key] = get_config_value(rec.config, key);
  json steps = json::array();
  for (const auto& s : rec.steps) steps.push_back(step_to_json(s));
  const json j = {{"instance", rec.instance},
                  {"nodes", rec.nodes},
                  {"seed", rec.config.seed},
                  {"config", std::move(config)},
                  {"best_cut", rec.best_cut},
                  {"best_hex", rec.best_hex},
                  {"wall_time", rec.wall_time},
                  {"total_sweeps", rec.total_sweeps},
                  {"log_partition_ratio", rec.log_partition_ratio},
                  {"steps", std::move(steps)}};
  return j.dump();
}

ResultRecord parse_result_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    ResultRecord rec;
    rec.instance = j.at("instance").get<std::string>();
    rec.nodes = j.at("nodes").get<std::size_t>();
    for (const auto& [key, value] : j.at("config").items()) {
      set_config_value(rec.config, key, value.get<std::string>());
    }
    rec.best_cut = j.at("best_cut").get<Energy>();
    rec.best_hex = j.at("best_hex").get<std::string>();
    rec.wall_time = j.at("wall_time").get<double>();
    rec.total_sweeps = j.at("total_sweeps").get<std::uint64_t>();
    rec.log_partition_ratio = j.at("log_partition_ratio").get<double>();
    for (const auto& s : j.at("steps")) rec.steps.push_back(step_from_json(s));
    return rec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed result record: ") + e.what());
  }
}

void append_result(const fs::path& path, const ResultRecord& rec) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open results file " + path.string());
  out << to_result_line(rec) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("failed writing results file " + path.string());
}

std::vector<ResultRecord> read_results(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results file " + path.string());
  std::vector<ResultRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(parse_result_line(line));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  if (records.empty()) throw std::runtime_error("results file " + path.string() + " has no records");
  return records;
}

std::string format_step(const StepRecord& s) {
  std::ostringstream out;
  out.precision(10);
  out << "step=" << s.step << " beta=" << s.beta << " delta_beta=" << s.delta_beta
      << " ess_ratio=" << s.ess_ratio << " mean_energy=" << s.mean_energy
      << " min_energy=" << s.min_energy << " best_cut=" << s.best_cut
      << " acceptance=" << s.acceptance << " kicked=" << (s.kicked ? "true" : "false");
  return out.str();
}

void write_trace(std::ostream& out, const std::vector<ResultRecord>& runs) {
  out.precision(10);
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (r > 0) out << '\n';
    const auto& run = runs[r];
    out << "# instance=" << run.instance << " seed=" << run.config.seed
        << " best_cut=" << run.best_cut << '\n';
    out << "step\tbeta\tess_ratio\tbest_cut\tacceptance\n";
    for (const auto& s : run.steps) {
      out << s.step << '\t' << s.beta << '\t' << s.ess_ratio << '\t' << s.best_cut << '\t'
          << s.acceptance << '\n';
    }
  }
}

void emit_trace_plot_data(const fs::path& results, const fs::path& out_path) {
  const auto runs = read_results(results);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write trace file " + out_path.string());
  write_trace(out, runs);
}

}  // namespace pamc
