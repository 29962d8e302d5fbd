#pragma once

#include <string>
#include <vector>

namespace saea {

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

// Flat key=value config file: one assignment per line, '#' starts a comment,
// blank lines ignored. Keys are CLI flag names without the leading dashes.
// Malformed lines raise std::invalid_argument naming the line number; key
// validation is the caller's job (it knows the flag set).
std::vector<ConfigEntry> load_config_file(const std::string& path);

/// Same grammar, parsing from memory; `origin` names the source in errors.
std::vector<ConfigEntry> parse_config(const std::string& text,
                                      const std::string& origin);

}  // namespace saea
