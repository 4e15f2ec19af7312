#ifndef URNPHYLO_TOOLS_TOML_LITE_HPP
#define URNPHYLO_TOOLS_TOML_LITE_HPP

// Flat key = value subset of TOML: quoted strings, integers, booleans,
// comments with '#'. Enough for campaign configs; parse(serialize(t)) == t.

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "urnphylo/errors.hpp"

namespace toml_lite {

using Table = std::map<std::string, std::string>;

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline Table parse(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string raw = line;
    // strip comments outside quotes
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        raw = raw.substr(0, i);
        break;
      }
    }
    raw = trim(raw);
    if (raw.empty()) continue;
    auto eq = raw.find('=');
    if (eq == std::string::npos)
      throw urnphylo::ParseError("expected key = value", lineno);
    std::string key = trim(raw.substr(0, eq));
    std::string val = trim(raw.substr(eq + 1));
    if (key.empty() || val.empty())
      throw urnphylo::ParseError("empty key or value", lineno);
    if (val.front() == '"') {
      if (val.size() < 2 || val.back() != '"')
        throw urnphylo::ParseError("unterminated string", lineno);
      val = val.substr(1, val.size() - 2);
    } else if (val != "true" && val != "false") {
      for (std::size_t i = 0; i < val.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(val[i])) && !(i == 0 && val[i] == '-'))
          throw urnphylo::ParseError("bare value must be integer or boolean", lineno);
    }
    t[key] = val;
  }
  return t;
}

inline bool is_bare(const std::string& v) {
  if (v == "true" || v == "false") return true;
  if (v.empty()) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(v[i])) && !(i == 0 && v[i] == '-'))
      return false;
  return true;
}

inline std::string serialize(const Table& t) {
  std::ostringstream out;
  for (const auto& [k, v] : t)
    out << k << " = " << (is_bare(v) ? v : '"' + v + '"') << '\n';
  return out.str();
}

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace toml_lite

#endif
