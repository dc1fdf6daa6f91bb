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
#ifndef QCL3_EXPERIMENTS_HPP
#define QCL3_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "qcl3/config.hpp"
#include "qcl3/grape.hpp"

namespace qcl3 {

// Batch experiment recipes. Each recipe writes CSV artifacts plus a manifest
// JSON recording the resolved configuration, the seed and the library
// version; identical (config, seed) produce byte-identical outputs.
enum class ExperimentName {
  GradTrace,       // per-iteration gradient norm and objective, one run per system
  FailVsL,         // failed-run counts over the init half-width grid, both systems
  FailVsLShifted,  // same for the ladder system with centered and shifted init
  Histograms,      // iteration-count and initial-objective histograms (25 bins)
  StopScatter,     // final objective of every run at selected half-widths
  TrapCert,        // trap-order certificates for both systems and the open case
  FormsTable,      // closed-form reference checks of the simplex forms
};

ExperimentName experiment_name_from_string(const std::string& name);
std::string to_string(ExperimentName name);

struct ExperimentSpec {
  ExperimentName name = ExperimentName::FormsTable;
  Config config;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 0;
};

struct ExperimentResult {
  std::vector<std::string> files;  // artifacts written, manifest excluded
  std::string manifest;            // manifest path
  bool checks_passed = true;       // numerical checks (forms, certificates)
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

// One row of the closed-form reference report.
struct FormsRow {
  std::string name;
  cplx computed;
  cplx expected;
  double abs_diff = 0.0;
  double tolerance = 0.0;  // on abs_diff / max(1, |expected|)
  bool ok = false;
};

std::vector<FormsRow> forms_table();

// Shared writers for batch artifacts (also used by the `batch` command).
void write_batch_csv(const std::string& path, const BatchSummary& summary);
void write_histogram_csv(const std::string& path, const Histogram& histogram);

}  // namespace qcl3

#endif  // QCL3_EXPERIMENTS_HPP
