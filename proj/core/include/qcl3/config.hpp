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
#ifndef QCL3_CONFIG_HPP
#define QCL3_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

#include "qcl3/grape.hpp"
#include "qcl3/model.hpp"

namespace qcl3 {

// Flat key = value configuration with [section] headers. Keys are addressed
// as "section.key". Lines starting with '#' or ';' are comments. Complex
// values are written "re,im". All parse failures throw ConfigError with the
// offending line or field.
//
//   [system]
//   preset = S1            # optional: S1 or S2, overridable field by field
//   h1 = 0.0
//   h2 = 1.0
//   h3 = 2.5
//   v12 = 1.0,0.0
//   v23 = 1.7,0.0
//   lambda = 1.0           # observable O = diag(1, -lambda, 0)
//   initial = 3            # basis index of the initial state
//
//   [grape]
//   l = 1.0
//   shift = 0.0
//   eps = 0.1
//   k_stop = 1000
//   i_err = 1e-5
//   T = 10.0
//   D = 200
//   seed = 1
//   runs = 100
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

  // Apply a "section.key=value" override (the CLI --set flag).
  void apply_override(const std::string& assignment);

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  cplx get_complex(const std::string& key, cplx fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

ThreeLevelSystem system_from_config(const Config& cfg);
Observable observable_from_config(const Config& cfg);
InitialState initial_state_from_config(const Config& cfg);
GrapeConfig grape_from_config(const Config& cfg);

}  // namespace qcl3

#endif  // QCL3_CONFIG_HPP
