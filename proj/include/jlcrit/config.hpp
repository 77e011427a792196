#pragma once

// key=value run configuration. Command-line flags override it; the
// environment is never consulted.

#include <istream>
#include <optional>
#include <string>

namespace jlcrit {

struct RunConfig {
    std::optional<double> tol;
    std::optional<int> samples;  ///< crossing-scan density
    std::optional<std::string> out_dir;
};

/// One `key = value` per line; blank lines and `#` comments are ignored.
/// Unknown keys and malformed values throw DomainError.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace jlcrit
