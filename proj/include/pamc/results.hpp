#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pamc/engine.hpp"

namespace pamc {

/// One persisted solver run. Stored as a single JSON object per line.
struct ResultRecord {
  std::string instance;
  std::size_t nodes = 0;
  EngineConfig config;
  Energy best_cut = 0;
  std::string best_hex;
  double wall_time = 0.0;
  std::uint64_t total_sweeps = 0;
  double log_partition_ratio = 0.0;
  std::vector<StepRecord> steps;
};

ResultRecord make_result_record(const std::string& instance, const Graph& g,
                                const EngineConfig& cfg, const RunResult& run);

std::string to_result_line(const ResultRecord& rec);
/// Throws std::invalid_argument on malformed input.
ResultRecord parse_result_line(const std::string& line);

/// Appends one line and flushes. Creates the file if needed.
void append_result(const std::filesystem::path& path, const ResultRecord& rec);

/// Every record in the file, in order. Throws std::runtime_error if the file
/// is missing, holds no records or contains a malformed line.
std::vector<ResultRecord> read_results(const std::filesystem::path& path);

/// "key=value" fields of one step, space separated.
std::string format_step(const StepRecord& step);

/// Tab-separated columns step, beta, ess_ratio, best_cut, acceptance, one
/// block per run preceded by a '#' comment line and separated by a blank line.
void write_trace(std::ostream& out, const std::vector<ResultRecord>& runs);
void emit_trace_plot_data(const std::filesystem::path& results, const std::filesystem::path& out);

}  // namespace pamc
