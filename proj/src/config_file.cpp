#include "pamc/config_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>

namespace pamc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

// Shortest text that parses back to the same double.
std::string format_double(double v) {
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, end);
}

struct Field {
  std::string name;
  std::function<void(EngineConfig&, std::string_view)> set;
  std::function<std::string(const EngineConfig&)> get;
};

template <typename T>
Field make_field(std::string name, T EngineConfig::*member) {
  Field f;
  f.name = name;
  f.set = [name, member](EngineConfig& cfg, std::string_view text) {
    if constexpr (std::is_same_v<T, bool>) {
      cfg.*member = parse_bool(name, text);
    } else {
      cfg.*member = parse_number<T>(name, text);
    }
  };
  f.get = [member](const EngineConfig& cfg) -> std::string {
    if constexpr (std::is_same_v<T, bool>) {
      return cfg.*member ? "true" : "false";
    } else if constexpr (std::is_floating_point_v<T>) {
      return format_double(cfg.*member);
    } else {
      return std::to_string(cfg.*member);
    }
  };
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      make_field("population_size", &EngineConfig::population_size),
      make_field("sweeps_per_step", &EngineConfig::sweeps_per_step),
      make_field("target_ess_ratio", &EngineConfig::target_ess_ratio),
      make_field("beta_start", &EngineConfig::beta_start),
      make_field("beta_end", &EngineConfig::beta_end),
      make_field("max_steps", &EngineConfig::max_steps),
      make_field("kick_period", &EngineConfig::kick_period),
      make_field("kick_fraction", &EngineConfig::kick_fraction),
      make_field("acceptance_floor", &EngineConfig::acceptance_floor),
      make_field("seed", &EngineConfig::seed),
      make_field("patience", &EngineConfig::patience),
      make_field("min_delta_beta", &EngineConfig::min_delta_beta),
      make_field("resampling", &EngineConfig::resampling),
      make_field("workers", &EngineConfig::workers),
      make_field("time_limit", &EngineConfig::time_limit),
      make_field("check_energies", &EngineConfig::check_energies),
  };
  return table;
}

const Field& find_field(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.name == key) return f;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

}  // namespace

const std::vector<std::string>& engine_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.push_back(f.name);
    return out;
  }();
  return keys;
}

void set_config_value(EngineConfig& cfg, std::string_view key, std::string_view value) {
  find_field(key).set(cfg, trim(value));
}

std::string get_config_value(const EngineConfig& cfg, std::string_view key) {
  return find_field(key).get(cfg);
}

void apply_config(EngineConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    try {
      set_config_value(cfg, trim(text.substr(0, eq)), text.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
}

EngineConfig load_config(const std::filesystem::path& path, EngineConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  apply_config(base, in);
  return base;
}

void write_config(std::ostream& out, const EngineConfig& cfg) {
  for (const auto& f : fields()) out << f.name << " = " << f.get(cfg) << '\n';
}

}  // namespace pamc
