#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "accord/maintenance.hpp"

namespace accord {

/// Toolkit settings shared by every command. Paths are absolute once loaded.
struct ToolkitConfig {
  std::string taxonomy;
  std::string counts;
  std::string common;
  std::string state_dir;
  MaintenancePolicy policy;
  std::size_t peer_count = 10;  // generated peers for `simulate`
  std::uint64_t peer_seed = 7;
};

/// Settings pointing at the bundled fixtures, with state kept under `./accord-state`.
ToolkitConfig default_config();

/// Reads a config document. Relative paths resolve against `base_dir`; omitted keys keep
/// their defaults. Throws ValidationError on unknown keys or out-of-range values.
ToolkitConfig parse_config(std::string_view text, const std::string& base_dir);

/// Reads a config file and checks that the referenced inputs exist.
ToolkitConfig load_config_file(const std::string& path);

}  // namespace accord
