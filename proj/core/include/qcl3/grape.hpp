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
#ifndef QCL3_GRAPE_HPP
#define QCL3_GRAPE_HPP

#include <cstdint>
#include <vector>

#include "qcl3/dynamics.hpp"
#include "qcl3/model.hpp"

namespace qcl3 {

// Fixed-step gradient ascent over piecewise-constant control amplitudes.
// Initial components are drawn uniformly from [-shift - l, -shift + l];
// shift = 0 gives the centered interval [-l, l]. The loop stops when the
// objective reaches J_stop = lambda1 - i_err or after k_stop iterations.
struct GrapeConfig {
  double l = 1.0;      // half-width of the initialization interval
  double shift = 0.0;  // M: center offset of the initialization interval
  double eps = 0.1;    // ascent step
  int k_stop = 1000;
  double i_err = 1e-5;
  double T = 10.0;
  int D = 200;
  std::uint64_t seed = 1;
  bool record_history = false;
  bool step_halving = false;  // optional fallback, off by default

  void validate() const;
  double j_stop(const Observable& obs) const { return obs.lambda1 - i_err; }
};

struct GrapeRunRecord {
  double initial_objective = 0.0;
  double final_objective = 0.0;
  int iterations = 0;
  bool succeeded = false;
  std::uint64_t seed_used = 0;
  // Histories are populated only when GrapeConfig::record_history is set.
  // objective_history has one entry per visited control (initial included);
  // gradient_norm_history one entry per performed update.
  std::vector<double> objective_history;
  std::vector<double> gradient_norm_history;
  // Soft monotonicity check: number of iterations where the objective
  // decreased (can happen when eps exceeds the local stability threshold).
  int monotonicity_violations = 0;
  PiecewiseControl final_control;
};

GrapeRunRecord grape_run(const ThreeLevelSystem& sys, const Observable& obs,
                         const InitialState& init, const GrapeConfig& cfg);

struct Histogram {
  double lo = 0.0, hi = 0.0;
  std::vector<long> counts;  // 25 equal-width bins

  double bin_left(std::size_t i) const;
  double bin_right(std::size_t i) const;
};

Histogram make_histogram(const std::vector<double>& values, int bins = 25);

struct BatchSummary {
  std::vector<GrapeRunRecord> records;  // indexed by run
  int n_fail = 0;
  Histogram iteration_histogram;         // successful runs only
  Histogram initial_objective_histogram; // all runs
};

// L independent runs; run i uses sub_seed(cfg.seed, i). Runs execute on a
// worker pool (threads = 0 picks the hardware count) but the summary is
// assembled by run index, so results are identical for any thread count.
BatchSummary grape_batch(const ThreeLevelSystem& sys, const Observable& obs,
                         const InitialState& init, const GrapeConfig& cfg, int runs,
                         int threads = 0);

}  // namespace qcl3

#endif  // QCL3_GRAPE_HPP
