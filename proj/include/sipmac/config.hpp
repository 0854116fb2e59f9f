#pragma once

// Line-oriented configuration reader. Each line is `key = value [unit]`;
// `#` starts a comment. Keys not mentioned keep their catalog defaults.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sipmac/catalog.hpp"

namespace sipmac {

/// Environment variable naming a config file picked up by `default_config`.
inline constexpr const char* kConfigEnvVar = "SIPMAC_CONFIG";

/// Applies `text` on top of `base`. Throws ConfigError naming the key.
SimConfig load_config(std::string_view text, const SimConfig& base = SimConfig{});

SimConfig load_config_file(const std::filesystem::path& path,
                           const SimConfig& base = SimConfig{});

/// Catalog defaults, overridden by the file in $SIPMAC_CONFIG when set.
SimConfig default_config();

/// Cross-field checks (ranges that involve more than one key).
void validate(const SimConfig& cfg);

struct ConfigKeyInfo {
  std::string key;
  std::string unit;  ///< accepted unit family, empty for plain numbers
  std::string description;
};

/// Every recognised key, in documentation order.
const std::vector<ConfigKeyInfo>& config_keys();

}  // namespace sipmac
