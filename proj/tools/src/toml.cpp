#include "toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sll/errors.hpp"

namespace sll::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Drops a trailing comment that is not inside a string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '"') quoted = !quoted;
    if (s[k] == '#' && !quoted) return s.substr(0, k);
  }
  return s;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  }
  return true;
}

double parse_number(const std::string& s, bool& ok) {
  std::string t;
  for (char c : s) {
    if (c != '_') t += c;
  }
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  ok = !t.empty() && end == t.c_str() + t.size();
  return v;
}

}  // namespace

TomlDocument parse_toml(const std::string& text, const std::string& source) {
  TomlDocument doc;
  std::string table;
  doc[table];
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw ConfigError(source + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) fail("malformed table header");
      table = trim(line.substr(1, line.size() - 2));
      if (!valid_key(table)) fail("invalid table name '" + table + "'");
      if (doc.count(table) && table != "") fail("duplicate table [" + table + "]");
      doc[table];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!valid_key(key)) fail("invalid key '" + key + "'");
    if (val.empty()) fail("missing value for '" + key + "'");
    if (doc[table].count(key)) fail("duplicate key '" + key + "'");

    TomlValue v;
    v.line = lineno;
    if (val.front() == '"') {
      if (val.size() < 2 || val.back() != '"') fail("unterminated string for '" + key + "'");
      v.v = val.substr(1, val.size() - 2);
    } else if (val == "true" || val == "false") {
      v.v = val == "true";
    } else if (val.front() == '[') {
      if (val.back() != ']') fail("unterminated array for '" + key + "'");
      std::vector<double> arr;
      std::stringstream items(val.substr(1, val.size() - 2));
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        bool ok = false;
        arr.push_back(parse_number(item, ok));
        if (!ok) fail("non-numeric array element '" + item + "' for '" + key + "'");
      }
      v.v = std::move(arr);
    } else {
      bool ok = false;
      const double d = parse_number(val, ok);
      if (!ok) fail("cannot parse value '" + val + "' for '" + key + "'");
      v.v = d;
    }
    doc[table][key] = std::move(v);
  }
  return doc;
}

TomlDocument read_toml(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_toml(ss.str(), path);
}

}  // namespace sll::cli
