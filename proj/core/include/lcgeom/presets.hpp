#pragma once

// Named bodies and the sectioned key = value text format used for body
// files and CLI configuration.

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcgeom/geometry.hpp"

namespace lcg {

/// Throws std::invalid_argument for unknown names.
Body preset_body(std::string_view name);
bool is_preset(std::string_view name);
std::vector<std::string> preset_names();

struct ConfigSection {
  std::string name;  // empty for keys before the first [section]
  std::vector<std::pair<std::string, std::string>> entries;

  /// Last value for key, or nullptr.
  [[nodiscard]] const std::string* find(std::string_view key) const;
  [[nodiscard]] std::vector<std::string> all(std::string_view key) const;
};

/// Parses "[name]" headers and "key = value" lines; '#' starts a comment.
/// Throws std::invalid_argument with the offending line number.
std::vector<ConfigSection> parse_config(std::istream& in);

/// Builds a body from a section with kind, dim and vertex / halfspace /
/// center / radius / shape rows.
Body body_from_section(const ConfigSection& section);

/// All bodies of a body file, keyed by section name.
std::map<std::string, Body> load_body_file(const std::string& path);

}  // namespace lcg
