/* Copyright 2026 The qcl3 Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "qcl3/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qcl3/errors.hpp"

namespace qcl3 {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("config: field '" + key + "' is not a number: '" + value + "'");
  return x;
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  std::istringstream is(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": unterminated section header");
      section = trim(stripped.substr(1, stripped.size() - 2));
      if (section.empty())
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty section name");
      continue;
    }
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    cfg.kv_[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

void Config::apply_override(const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
  kv_[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_double(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
  const double x = get_double(key, static_cast<double>(fallback));
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    throw ConfigError("config: field '" + key + "' must be an integer");
  return i;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string v = trim(it->second);
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("config: field '" + key + "' is not an unsigned integer: '" + v + "'");
  return static_cast<std::uint64_t>(x);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string v = trim(it->second);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: field '" + key + "' is not a boolean: '" + v + "'");
}

cplx Config::get_complex(const std::string& key, cplx fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string v = it->second;
  const std::size_t comma = v.find(',');
  if (comma == std::string::npos)
    return cplx(parse_double(key, v), 0.0);
  return cplx(parse_double(key, v.substr(0, comma)), parse_double(key, v.substr(comma + 1)));
}

ThreeLevelSystem system_from_config(const Config& cfg) {
  ThreeLevelSystem base;
  const std::string preset = cfg.get_string("system.preset", "");
  if (preset == "S1" || preset == "s1") {
    base = ThreeLevelSystem::s1();
  } else if (preset == "S2" || preset == "s2") {
    base = ThreeLevelSystem::s2();
  } else if (!preset.empty()) {
    throw ConfigError("config: unknown system.preset '" + preset + "' (use S1 or S2)");
  } else {
    base = ThreeLevelSystem::s2();
  }
  return ThreeLevelSystem(cfg.get_double("system.h1", base.h1), cfg.get_double("system.h2", base.h2),
                          cfg.get_double("system.h3", base.h3),
                          cfg.get_complex("system.v12", base.v12),
                          cfg.get_complex("system.v23", base.v23));
}

Observable observable_from_config(const Config& cfg) {
  return Observable::standard(cfg.get_double("system.lambda", 1.0));
}

InitialState initial_state_from_config(const Config& cfg) {
  return InitialState(cfg.get_int("system.initial", 3));
}

GrapeConfig grape_from_config(const Config& cfg) {
  GrapeConfig g;
  g.l = cfg.get_double("grape.l", g.l);
  g.shift = cfg.get_double("grape.shift", g.shift);
  g.eps = cfg.get_double("grape.eps", g.eps);
  g.k_stop = cfg.get_int("grape.k_stop", g.k_stop);
  g.i_err = cfg.get_double("grape.i_err", g.i_err);
  g.T = cfg.get_double("grape.T", g.T);
  g.D = cfg.get_int("grape.D", g.D);
  g.seed = cfg.get_u64("grape.seed", g.seed);
  g.record_history = cfg.get_bool("grape.record_history", g.record_history);
  g.step_halving = cfg.get_bool("grape.step_halving", g.step_halving);
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: invalid [grape] section: ") + e.what());
  }
  return g;
}

}  // namespace qcl3
