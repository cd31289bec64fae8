#ifndef CFTRACK_CONFIG_HPP
#define CFTRACK_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "cftrack/tracker.hpp"

namespace cftrack {

struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Parses `key = value` lines with `#` comments on top of the defaults.
/// Unknown keys and out-of-range values throw ConfigError naming the key and line.
TrackerConfig parse_config(std::istream& in);
TrackerConfig load_config(const std::filesystem::path& path);

/// Writes every key with its value, in a form parse_config reads back.
void dump_config(std::ostream& out, const TrackerConfig& config);

}  // namespace cftrack

#endif
