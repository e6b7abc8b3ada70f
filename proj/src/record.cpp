#include "pamc/record.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "embedded_data.hpp"
#include "pamc/spins.hpp"

namespace pamc {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

SolutionRecord parse_record(std::istream& in) {
  SolutionRecord rec;
  bool has_instance = false;
  bool has_cut = false;
  bool has_hex = false;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("record line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "instance") {
      rec.instance = value;
      has_instance = true;
    } else if (key == "claimed_cut") {
      std::size_t used = 0;
      try {
        rec.claimed_cut = std::stoll(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size()) {
        throw std::invalid_argument("record line " + std::to_string(number) + ": bad claimed_cut");
      }
      has_cut = true;
    } else if (key == "hex") {
      std::istringstream token(value);
      rec.hex = read_hex_token(token);
      has_hex = true;
    } else if (key == "source") {
      rec.source = value;
    } else {
      throw std::invalid_argument("record line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
  }
  if (!has_instance || !has_cut || !has_hex) {
    throw std::invalid_argument("record needs instance, claimed_cut and hex");
  }
  return rec;
}

void write_record(std::ostream& out, const SolutionRecord& rec) {
  out << "instance = " << rec.instance << '\n' << "claimed_cut = " << rec.claimed_cut << '\n';
  if (!rec.source.empty()) out << "source = " << rec.source << '\n';
  out << "hex = " << rec.hex << '\n';
}

const SolutionRecord& published_g63_record() {
  static const SolutionRecord rec = [] {
    std::istringstream in{std::string(detail::kG63RecordText)};
    return parse_record(in);
  }();
  return rec;
}

VerificationReport verify_record(const SolutionRecord& rec, const Graph& g,
                                 const InstanceCatalog& catalog) {
  if (const auto* entry = catalog.find(rec.instance)) {
    if (entry->expected_n != g.num_nodes() || entry->expected_m != g.num_edges()) {
      throw InstanceMismatchError(
          "record is for " + rec.instance + " (" + std::to_string(entry->expected_n) + " nodes, " +
          std::to_string(entry->expected_m) + " edges) but the graph has " +
          std::to_string(g.num_nodes()) + " nodes and " + std::to_string(g.num_edges()) + " edges");
    }
  }
  const SpinConfiguration s = decode_hex(rec.hex, g.num_nodes());
  VerificationReport report;
  report.instance = rec.instance;
  report.nodes = g.num_nodes();
  report.computed_cut = cut_value(g, s);
  report.claimed_cut = rec.claimed_cut;
  report.match = report.computed_cut == report.claimed_cut;
  return report;
}

void print_report(std::ostream& out, const VerificationReport& report) {
  out << "instance: " << report.instance << '\n'
      << "nodes: " << report.nodes << '\n'
      << "computed cut: " << report.computed_cut << '\n'
      << "claimed cut: " << report.claimed_cut << '\n'
      << "status: " << (report.match ? "MATCH" : "MISMATCH") << '\n';
}

}  // namespace pamc
