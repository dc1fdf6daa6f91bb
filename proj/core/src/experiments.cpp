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
#include "qcl3/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "json.hpp"
#include "qcl3/csv.hpp"
#include "qcl3/dyson.hpp"
#include "qcl3/errors.hpp"
#include "qcl3/landscape.hpp"
#include "qcl3/reference_forms.hpp"
#include "qcl3/rng.hpp"
#include "qcl3/version.hpp"

namespace qcl3 {

ExperimentName experiment_name_from_string(const std::string& name) {
  if (name == "grad_trace") return ExperimentName::GradTrace;
  if (name == "fail_vs_l") return ExperimentName::FailVsL;
  if (name == "fail_vs_l_shifted") return ExperimentName::FailVsLShifted;
  if (name == "histograms") return ExperimentName::Histograms;
  if (name == "stop_scatter") return ExperimentName::StopScatter;
  if (name == "trap_cert") return ExperimentName::TrapCert;
  if (name == "forms_table") return ExperimentName::FormsTable;
  throw ConfigError("unknown experiment '" + name +
                    "' (expected grad_trace, fail_vs_l, fail_vs_l_shifted, histograms, "
                    "stop_scatter, trap_cert or forms_table)");
}

std::string to_string(ExperimentName name) {
  switch (name) {
    case ExperimentName::GradTrace: return "grad_trace";
    case ExperimentName::FailVsL: return "fail_vs_l";
    case ExperimentName::FailVsLShifted: return "fail_vs_l_shifted";
    case ExperimentName::Histograms: return "histograms";
    case ExperimentName::StopScatter: return "stop_scatter";
    case ExperimentName::TrapCert: return "trap_cert";
    case ExperimentName::FormsTable: return "forms_table";
  }
  return "?";
}

void write_batch_csv(const std::string& path, const BatchSummary& summary) {
  CsvWriter csv(path);
  csv.header({"run_index", "seed", "initial_J", "final_J", "iterations", "succeeded"});
  for (std::size_t i = 0; i < summary.records.size(); ++i) {
    const auto& r = summary.records[i];
    csv.row(i, std::to_string(r.seed_used), r.initial_objective, r.final_objective, r.iterations,
            r.succeeded);
  }
}

void write_histogram_csv(const std::string& path, const Histogram& histogram) {
  CsvWriter csv(path);
  csv.header({"bin_left", "bin_right", "count"});
  for (std::size_t i = 0; i < histogram.counts.size(); ++i)
    csv.row(histogram.bin_left(i), histogram.bin_right(i), histogram.counts[i]);
}

namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

struct Recipe {
  const ExperimentSpec& spec;
  std::vector<std::string> files;
  bool checks_passed = true;
  std::uint64_t next_point = 0;  // stable enumeration of batch points

  std::string path(const std::string& name) {
    fs::create_directories(spec.out_dir);
    const std::string p = (fs::path(spec.out_dir) / name).string();
    files.push_back(p);
    return p;
  }

  std::uint64_t point_seed() { return sub_seed(spec.seed, next_point++); }

  GrapeConfig base_grape() const {
    GrapeConfig g = grape_from_config(spec.config);
    // Figure-caption regime unless the config says otherwise.
    g.k_stop = spec.config.get_int("grape.k_stop", 1000);
    g.i_err = spec.config.get_double("grape.i_err", 1e-5);
    g.T = spec.config.get_double("grape.T", 10.0);
    g.D = spec.config.get_int("grape.D", 200);
    return g;
  }

  int runs(int fallback) const { return spec.config.get_int("experiment.runs", fallback); }
};

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  const int n = static_cast<int>(std::round((hi - lo) / step));
  for (int k = 0; k <= n; ++k) out.push_back(lo + step * static_cast<double>(k));
  return out;
}

struct SystemRecipe {
  std::string tag;  // used in file names
  std::string key;  // used in config keys ("experiment.<key>_...")
  ThreeLevelSystem sys;
  double eps;
  double l_default;
};

std::vector<SystemRecipe> both_systems(const Config& cfg) {
  return {{"S1", "s1", ThreeLevelSystem::s1(), cfg.get_double("experiment.s1_eps", 0.1), 1.0},
          {"S2", "s2", ThreeLevelSystem::s2(), cfg.get_double("experiment.s2_eps", 0.2), 4.0}};
}

void run_grad_trace(Recipe& r) {
  const Observable obs = observable_from_config(r.spec.config);
  const InitialState init = initial_state_from_config(r.spec.config);
  for (const auto& sr : both_systems(r.spec.config)) {
    GrapeConfig cfg = r.base_grape();
    cfg.l = r.spec.config.get_double("experiment." + sr.key + "_l", sr.l_default);
    cfg.eps = sr.eps;
    cfg.record_history = true;
    cfg.seed = r.point_seed();
    const GrapeRunRecord rec = grape_run(sr.sys, obs, init, cfg);
    CsvWriter csv(r.path("grad_trace_" + sr.tag + ".csv"));
    csv.header({"iteration", "gradient_norm", "objective"});
    for (std::size_t i = 0; i < rec.gradient_norm_history.size(); ++i)
      csv.row(i, rec.gradient_norm_history[i], rec.objective_history[i]);
  }
}

void run_fail_vs_l(Recipe& r) {
  const Observable obs = observable_from_config(r.spec.config);
  const InitialState init = initial_state_from_config(r.spec.config);
  const int L = r.runs(100);
  for (const auto& sr : both_systems(r.spec.config)) {
    const auto ls = grid(r.spec.config.get_double("experiment." + sr.key + "_l_min", 0.1),
                         r.spec.config.get_double("experiment." + sr.key + "_l_max", sr.l_default),
                         r.spec.config.get_double("experiment.l_step", 0.1));
    CsvWriter csv(r.path("fail_vs_l_" + sr.tag + ".csv"));
    csv.header({"l", "n_fail"});
    for (double l : ls) {
      GrapeConfig cfg = r.base_grape();
      cfg.l = l;
      cfg.eps = sr.eps;
      cfg.seed = r.point_seed();
      const BatchSummary batch = grape_batch(sr.sys, obs, init, cfg, L, r.spec.threads);
      csv.row(l, batch.n_fail);
    }
  }
}

void run_fail_vs_l_shifted(Recipe& r) {
  const Observable obs = observable_from_config(r.spec.config);
  const InitialState init = initial_state_from_config(r.spec.config);
  const int L = r.runs(100);
  const double shift = r.spec.config.get_double("experiment.shift", 3.0);
  const ThreeLevelSystem sys = ThreeLevelSystem::s2();
  const double eps = r.spec.config.get_double("experiment.s2_eps", 0.2);
  const auto ls = grid(r.spec.config.get_double("experiment.s2_l_min", 0.1),
                       r.spec.config.get_double("experiment.s2_l_max", 4.0),
                       r.spec.config.get_double("experiment.l_step", 0.1));
  CsvWriter csv(r.path("fail_vs_l_shifted_S2.csv"));
  csv.header({"l", "n_fail_centered", "n_fail_shifted"});
  for (double l : ls) {
    GrapeConfig cfg = r.base_grape();
    cfg.l = l;
    cfg.eps = eps;
    cfg.shift = 0.0;
    cfg.seed = r.point_seed();
    const BatchSummary centered = grape_batch(sys, obs, init, cfg, L, r.spec.threads);
    cfg.shift = shift;
    cfg.seed = r.point_seed();
    const BatchSummary shifted = grape_batch(sys, obs, init, cfg, L, r.spec.threads);
    csv.row(l, centered.n_fail, shifted.n_fail);
  }
}

void run_histograms(Recipe& r) {
  const Observable obs = observable_from_config(r.spec.config);
  const InitialState init = initial_state_from_config(r.spec.config);
  const int L = r.spec.config.get_int("experiment.hist_runs", 1000);
  const std::vector<SystemRecipe> systems = {
      {"S1", "s1", ThreeLevelSystem::s1(), r.spec.config.get_double("experiment.s1_eps", 0.1),
       r.spec.config.get_double("experiment.s1_l", 1.0)},
      {"S2", "s2", ThreeLevelSystem::s2(), r.spec.config.get_double("experiment.s2_eps", 0.2),
       r.spec.config.get_double("experiment.s2_l", 3.0)}};
  for (const auto& sr : systems) {
    GrapeConfig cfg = r.base_grape();
    cfg.l = sr.l_default;
    cfg.eps = sr.eps;
    cfg.seed = r.point_seed();
    const BatchSummary batch = grape_batch(sr.sys, obs, init, cfg, L, r.spec.threads);
    write_histogram_csv(r.path("histogram_iterations_" + sr.tag + ".csv"),
                        batch.iteration_histogram);
    write_histogram_csv(r.path("histogram_initial_objective_" + sr.tag + ".csv"),
                        batch.initial_objective_histogram);
  }
}

void run_stop_scatter(Recipe& r) {
  const Observable obs = observable_from_config(r.spec.config);
  const InitialState init = initial_state_from_config(r.spec.config);
  const int L = r.runs(100);
  const double shift = r.spec.config.get_double("experiment.shift", 3.0);
  CsvWriter csv(r.path("stop_scatter.csv"));
  csv.header({"system", "l", "mode", "run_index", "final_J"});
  const std::vector<SystemRecipe> systems = both_systems(r.spec.config);
  const std::vector<std::vector<double>> l_sets = {{0.1, 0.5}, {0.6, 3.7}};
  for (std::size_t s = 0; s < systems.size(); ++s) {
    for (double l : l_sets[s]) {
      for (double m : {0.0, shift}) {
        GrapeConfig cfg = r.base_grape();
        cfg.l = l;
        cfg.eps = systems[s].eps;
        cfg.shift = m;
        cfg.seed = r.point_seed();
        const BatchSummary batch = grape_batch(systems[s].sys, obs, init, cfg, L, r.spec.threads);
        const std::string mode = m == 0.0 ? "centered" : "shifted";
        for (std::size_t i = 0; i < batch.records.size(); ++i)
          csv.row(systems[s].tag, l, mode, i, batch.records[i].final_objective);
      }
    }
  }
}

void run_trap_cert(Recipe& r) {
  const Observable obs = observable_from_config(r.spec.config);
  const int n_dirs = r.spec.config.get_int("experiment.n_dirs", 100);
  struct Case {
    std::string tag;
    ThreeLevelSystem sys;
  };
  ThreeLevelSystem s2_open = ThreeLevelSystem::s2();
  s2_open.v23 = s2_open.v12;  // equal dipole moduli: the open case
  const std::vector<Case> cases = {{"S1", ThreeLevelSystem::s1()},
                                   {"S2", ThreeLevelSystem::s2()},
                                   {"S2_equal_dipoles", s2_open}};
  for (const auto& c : cases) {
    const TrapCertificate cert = certify_trap_order(c.sys, obs, n_dirs, r.point_seed(), 0.0, r.spec.threads);
    if (!cert.open_case) r.checks_passed = r.checks_passed && cert.consistent;
    std::ofstream(r.path("trap_cert_" + c.tag + ".json")) << certificate_to_json(cert) << "\n";
    std::ofstream(r.path("trap_cert_" + c.tag + ".txt")) << certificate_to_text(cert);
  }
}

void run_forms_table(Recipe& r) {
  const auto rows = forms_table();
  CsvWriter csv(r.path("forms.csv"));
  csv.header({"name", "computed_re", "computed_im", "expected_re", "expected_im", "abs_diff",
              "tolerance", "ok"});
  for (const auto& row : rows) {
    csv.row(row.name, row.computed.real(), row.computed.imag(), row.expected.real(),
            row.expected.imag(), row.abs_diff, row.tolerance, row.ok);
    r.checks_passed = r.checks_passed && row.ok;
  }
}

}  // namespace

std::vector<FormsRow> forms_table() {
  std::vector<FormsRow> rows;
  const cplx v12(0.8, -0.3), v23(1.1, 0.6);
  SimplexOptions precise;
  precise.extended_precision = true;

  auto add = [&rows](const std::string& name, cplx computed, cplx expected, double tol) {
    FormsRow row;
    row.name = name;
    row.computed = computed;
    row.expected = expected;
    row.abs_diff = std::abs(computed - expected);
    row.tolerance = tol;
    row.ok = row.abs_diff <= tol * std::max(1.0, std::abs(expected));
    rows.push_back(row);
  };

  {  // order-2 form of the box control when the upper transition is resonant
    const double w1 = 1.3, T = 5.0;
    const ThreeLevelSystem sys(0.0, w1, w1, v12, v23);
    add("A2_13_f1_w2_zero", form_A(sys, 1, 3, 2, AnalyticControl::constant(1.0, T)),
        reference::a2_13_const_w2_zero(v12, v23, w1, T), 1e-10);
  }
  {  // box control over one period, non-integer frequency ratio
    const double r = 0.6;
    const ThreeLevelSystem sys(0.0, r, r + 1.0, v12, v23);
    add("A2_13_f2_w1_noninteger", form_A(sys, 1, 3, 2, AnalyticControl::constant(1.0, 2.0 * kPi)),
        reference::a2_13_box_nonresonant(v12, v23, r), 1e-10);
  }
  {
    const ThreeLevelSystem sys(0.0, 0.0, 1.0, v12, v23);
    add("A2_13_f2_w1_zero", form_A(sys, 1, 3, 2, AnalyticControl::constant(1.0, 2.0 * kPi)),
        reference::a2_13_box_w1_zero(v12, v23), 1e-10);
  }
  {
    const ThreeLevelSystem sys(0.0, -1.0, 0.0, v12, v23);
    add("A2_13_f2_w1_minus_one", form_A(sys, 1, 3, 2, AnalyticControl::constant(1.0, 2.0 * kPi)),
        reference::a2_13_box_w1_minus_one(v12, v23), 1e-10);
  }
  {  // resonant cosine at n = 2
    const double A = 0.7, B = -0.4;
    const ThreeLevelSystem sys(0.0, 2.0, 3.0, v12, v23);
    const AnalyticControl f =
        AnalyticControl::trig_poly(2.0 * kPi, 1.0, {0.0, 0.0, A}, {0.0, 0.0, B});
    add("A2_13_f3_n2", form_A(sys, 1, 3, 2, f), reference::a2_13_resonant_cosine(v12, v23, 2, A, B),
        1e-10);
  }
  {  // resonant cosine at n = -3: cos(-3t) = cos 3t, sin(-3t) = -sin 3t
    const double A = 0.5, B = 0.9;
    const ThreeLevelSystem sys(0.0, -3.0, -2.0, v12, v23);
    const AnalyticControl f =
        AnalyticControl::trig_poly(2.0 * kPi, 1.0, {0.0, 0.0, 0.0, A}, {0.0, 0.0, 0.0, -B});
    add("A2_13_f3_n_minus3", form_A(sys, 1, 3, 2, f),
        reference::a2_13_resonant_cosine(v12, v23, -3, A, B), 1e-10);
  }
  {  // closed form of the cubic form on the trigonometric family
    for (const auto& abc : std::vector<std::array<double, 3>>{{1.0, 0.0, 0.0}, {1.3, -0.7, 2.1}}) {
      const AnalyticControl f = AnalyticControl::special_family(abc[0], abc[1], abc[2]);
      const auto [k3, r3] = forms_K3_R3(f, precise);
      const std::string suffix = abc[1] == 0.0 && abc[2] == 0.0 ? "const" : "generic";
      add("K3_closed_form_" + suffix, k3, reference::k3_special_family(abc[0], abc[1], abc[2]),
          1e-10);
      add("R3_plus_2K3_" + suffix, r3 + 2.0 * k3, 0.0, 1e-10);
    }
  }
  {  // the canonical family member zeroes both cubic forms
    const CubicSystemSolution sol = canonical_special_solution();
    const AnalyticControl f4 = AnalyticControl::special_family(sol.A, sol.B, sol.C);
    const auto [k3, r3] = forms_K3_R3(f4, precise);
    add("K3_f4", k3, 0.0, 1e-10);
    add("R3_f4", r3, 0.0, 1e-10);
    const auto [k4, r4] = forms_K4_R4(f4, precise);
    add("K4_f4", k4, reference::k4_canonical_member(), 1e-9);
    add("R4_plus_K4_f4", r4 + k4, 0.0, 1e-9);
  }
  {  // all forms vanish on the zero control
    const ThreeLevelSystem sys = ThreeLevelSystem::s2();
    const AnalyticControl zero = AnalyticControl::zero(2.0 * kPi);
    cplx acc = 0.0;
    for (int n = 1; n <= 4; ++n) {
      acc += form_A(sys, 2, 3, n, zero);
      acc += form_A(sys, 1, 3, n, zero);
    }
    add("A_forms_zero_control", acc, 0.0, 1e-12);
  }
  return rows;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  Recipe recipe{spec, {}, true, 0};
  switch (spec.name) {
    case ExperimentName::GradTrace: run_grad_trace(recipe); break;
    case ExperimentName::FailVsL: run_fail_vs_l(recipe); break;
    case ExperimentName::FailVsLShifted: run_fail_vs_l_shifted(recipe); break;
    case ExperimentName::Histograms: run_histograms(recipe); break;
    case ExperimentName::StopScatter: run_stop_scatter(recipe); break;
    case ExperimentName::TrapCert: run_trap_cert(recipe); break;
    case ExperimentName::FormsTable: run_forms_table(recipe); break;
  }

  nlohmann::json manifest;
  manifest["experiment"] = to_string(spec.name);
  manifest["version"] = kVersion;
  manifest["seed"] = spec.seed;
  manifest["threads"] = spec.threads;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : spec.config.entries()) cfg[k] = v;
  manifest["config"] = cfg;
  manifest["files"] = recipe.files;
  manifest["checks_passed"] = recipe.checks_passed;

  ExperimentResult result;
  result.files = recipe.files;
  result.checks_passed = recipe.checks_passed;
  std::filesystem::create_directories(spec.out_dir);
  const std::string mpath =
      (std::filesystem::path(spec.out_dir) / (to_string(spec.name) + "_manifest.json")).string();
  std::ofstream(mpath) << manifest.dump(2) << "\n";
  result.manifest = mpath;
  return result;
}

}  // namespace qcl3
