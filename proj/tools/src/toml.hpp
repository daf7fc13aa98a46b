#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace sll::cli {

// Subset of TOML: [table] headers (dotted names allowed), key = value with numbers, booleans,
// "strings" and flat arrays of numbers, # comments.
struct TomlValue {
  std::variant<double, bool, std::string, std::vector<double>> v;
  std::size_t line = 0;
};

using TomlTable = std::map<std::string, TomlValue>;
using TomlDocument = std::map<std::string, TomlTable>;  // "" holds top-level keys

TomlDocument parse_toml(const std::string& text, const std::string& source = "<config>");
TomlDocument read_toml(const std::string& path);

}  // namespace sll::cli
