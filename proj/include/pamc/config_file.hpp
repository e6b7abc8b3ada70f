#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pamc/engine.hpp"

namespace pamc {

/// Names of every EngineConfig field, in declaration order.
const std::vector<std::string>& engine_config_keys();

/// Assigns one field from its text form. Throws ConfigError for an unknown
/// key or a value that does not parse.
void set_config_value(EngineConfig& cfg, std::string_view key, std::string_view value);

/// Text form of one field, suitable for set_config_value.
std::string get_config_value(const EngineConfig& cfg, std::string_view key);

/// Applies "key = value" lines on top of `cfg`. Blank lines and lines
/// starting with '#' are ignored. Errors carry the line number.
void apply_config(EngineConfig& cfg, std::istream& in);
EngineConfig load_config(const std::filesystem::path& path, EngineConfig base = {});

/// Writes every field as "key = value".
void write_config(std::ostream& out, const EngineConfig& cfg);

}  // namespace pamc
