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
#include "qcl3/grape.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qcl3/rng.hpp"

namespace qcl3 {

void GrapeConfig::validate() const {
  if (!(l > 0.0)) throw std::invalid_argument("GrapeConfig: l must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("GrapeConfig: eps must be positive");
  if (k_stop < 0) throw std::invalid_argument("GrapeConfig: k_stop must be >= 0");
  if (!(i_err > 0.0 && i_err < 1.0)) throw std::invalid_argument("GrapeConfig: i_err must be in (0,1)");
  if (!(T > 0.0)) throw std::invalid_argument("GrapeConfig: T must be positive");
  if (D < 1) throw std::invalid_argument("GrapeConfig: D must be >= 1");
}

GrapeRunRecord grape_run(const ThreeLevelSystem& sys, const Observable& obs,
                         const InitialState& init, const GrapeConfig& cfg) {
  cfg.validate();
  GrapeRunRecord rec;
  rec.seed_used = cfg.seed;

  CounterRng rng(cfg.seed);
  std::vector<double> c(static_cast<std::size_t>(cfg.D));
  const double lo = -cfg.shift - cfg.l, hi = -cfg.shift + cfg.l;
  for (auto& ck : c) ck = rng.uniform(lo, hi);
  PiecewiseControl control(std::move(c), cfg.T);

  const CMat3 v = sys.interaction();
  const CMat3 o = obs.matrix();
  const CMat3 rho0 = init.density_matrix();
  const double j_stop = cfg.j_stop(obs);

  PropagationTrace trace;
  propagate_into(sys, control, trace);
  double j = objective_from_trace(trace, o, rho0);
  rec.initial_objective = j;
  if (cfg.record_history) rec.objective_history.push_back(j);

  std::vector<double> grad;
  while (j < j_stop && rec.iterations < cfg.k_stop) {
    gradient_from_trace(trace, v, o, rho0, grad);
    if (cfg.record_history) {
      double g2 = 0.0;
      for (double g : grad) g2 += g * g;
      rec.gradient_norm_history.push_back(std::sqrt(g2));
    }

    double step = cfg.eps;
    for (int k = 0; k < cfg.D; ++k)
      control.c[static_cast<std::size_t>(k)] += step * grad[static_cast<std::size_t>(k)];
    propagate_into(sys, control, trace);
    double j_new = objective_from_trace(trace, o, rho0);

    if (cfg.step_halving) {
      while (j_new < j && step > cfg.eps * 0x1p-20) {
        // Retreat half of the current step and re-evaluate.
        const double retreat = 0.5 * step;
        for (int k = 0; k < cfg.D; ++k)
          control.c[static_cast<std::size_t>(k)] -= retreat * grad[static_cast<std::size_t>(k)];
        step = retreat;
        propagate_into(sys, control, trace);
        j_new = objective_from_trace(trace, o, rho0);
      }
    }

    if (j_new < j - 1e-15) ++rec.monotonicity_violations;
    j = j_new;
    ++rec.iterations;
    if (cfg.record_history) rec.objective_history.push_back(j);
  }

  rec.final_objective = j;
  rec.succeeded = j >= j_stop;
  rec.final_control = std::move(control);
  return rec;
}

double Histogram::bin_left(std::size_t i) const {
  const double w = counts.empty() ? 0.0 : (hi - lo) / static_cast<double>(counts.size());
  return lo + w * static_cast<double>(i);
}

double Histogram::bin_right(std::size_t i) const {
  const double w = counts.empty() ? 0.0 : (hi - lo) / static_cast<double>(counts.size());
  return (i + 1 == counts.size()) ? hi : lo + w * static_cast<double>(i + 1);
}

Histogram make_histogram(const std::vector<double>& values, int bins) {
  Histogram h;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  if (values.empty()) return h;
  h.lo = h.hi = values[0];
  for (double x : values) {
    h.lo = std::min(h.lo, x);
    h.hi = std::max(h.hi, x);
  }
  if (h.hi == h.lo) {
    h.counts[0] = static_cast<long>(values.size());
    return h;
  }
  const double w = (h.hi - h.lo) / static_cast<double>(bins);
  for (double x : values) {
    int idx = static_cast<int>((x - h.lo) / w);
    idx = std::min(idx, bins - 1);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

BatchSummary grape_batch(const ThreeLevelSystem& sys, const Observable& obs,
                         const InitialState& init, const GrapeConfig& cfg, int runs,
                         int threads) {
  if (runs < 1) throw std::invalid_argument("grape_batch: runs must be >= 1");
  cfg.validate();

  BatchSummary summary;
  summary.records.resize(static_cast<std::size_t>(runs));

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min(n_threads, static_cast<unsigned>(runs)));

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= runs) return;
      GrapeConfig run_cfg = cfg;
      run_cfg.seed = sub_seed(cfg.seed, static_cast<std::uint64_t>(i));
      summary.records[static_cast<std::size_t>(i)] = grape_run(sys, obs, init, run_cfg);
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<double> iterations_ok, initials;
  initials.reserve(summary.records.size());
  for (const auto& r : summary.records) {
    if (!r.succeeded) ++summary.n_fail;
    else iterations_ok.push_back(static_cast<double>(r.iterations));
    initials.push_back(r.initial_objective);
  }
  summary.iteration_histogram = make_histogram(iterations_ok);
  summary.initial_objective_histogram = make_histogram(initials);
  return summary;
}

}  // namespace qcl3
