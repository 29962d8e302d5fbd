#include "saea/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace saea {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::vector<ConfigEntry> parse_config(const std::string& text,
                                      const std::string& origin) {
  std::vector<ConfigEntry> entries;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                  ": expected key=value");
    }
    ConfigEntry e;
    e.key = trim(stripped.substr(0, eq));
    e.value = trim(stripped.substr(eq + 1));
    e.line = line;
    if (e.key.empty()) {
      throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                  ": missing key before '='");
    }
    if (e.value.empty()) {
      throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                  ": missing value for key '" + e.key + "'");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<ConfigEntry> load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace saea
