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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcl3/config.hpp"
#include "qcl3/csv.hpp"
#include "qcl3/errors.hpp"
#include "qcl3/experiments.hpp"
#include "qcl3/landscape.hpp"
#include "qcl3/version.hpp"

namespace {

using namespace qcl3;

int default_threads() {
  if (const char* env = std::getenv("QCL3_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;  // grape_batch picks the hardware count
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
  std::vector<std::string> overrides;

  Config resolve() const {
    Config cfg;
    if (!config_path.empty()) cfg = Config::parse_file(config_path);
    for (const auto& o : overrides) cfg.apply_override(o);
    if (seed_given) cfg.set("grape.seed", std::to_string(seed));
    return cfg;
  }
};

int cmd_classify(const CommonArgs& args) {
  const Config cfg = args.resolve();
  const ThreeLevelSystem sys = system_from_config(cfg);
  const ControllabilityVerdict v = classify_controllability(sys, cfg.get_double("system.freq_tol", 0.0));
  const auto [w1, w2] = bohr_frequencies(sys);
  std::string cls;
  switch (v.cls) {
    case ControllabilityClass::Controllable: cls = "controllable"; break;
    case ControllabilityClass::UncontrollableSymmetric: cls = "uncontrollable_symmetric"; break;
    case ControllabilityClass::ConditionalOnDipoles: cls = "conditional_on_dipoles"; break;
  }
  std::string rank = "null";
  try {
    rank = std::to_string(lie_closure_rank(sys));
  } catch (const ToleranceAmbiguous&) {
    // leave null; the structural verdict still stands
  }
  std::cout << "{\n"
            << "  \"omega1\": " << csv_double(w1) << ",\n"
            << "  \"omega2\": " << csv_double(w2) << ",\n"
            << "  \"class\": \"" << cls << "\",\n"
            << "  \"controllable\": " << (v.controllable ? "true" : "false") << ",\n"
            << "  \"degenerate_spectrum\": " << (v.degenerate_spectrum ? "true" : "false") << ",\n"
            << "  \"lie_rank\": " << rank << "\n"
            << "}\n";
  return 0;
}

int cmd_grape(const CommonArgs& args, bool write_trace) {
  const Config cfg = args.resolve();
  const ThreeLevelSystem sys = system_from_config(cfg);
  const Observable obs = observable_from_config(cfg);
  const InitialState init = initial_state_from_config(cfg);
  GrapeConfig gc = grape_from_config(cfg);
  gc.record_history = gc.record_history || write_trace;
  const GrapeRunRecord rec = grape_run(sys, obs, init, gc);
  std::cout << "initial objective : " << csv_double(rec.initial_objective) << "\n"
            << "final objective   : " << csv_double(rec.final_objective) << "\n"
            << "iterations        : " << rec.iterations << "\n"
            << "succeeded         : " << (rec.succeeded ? "yes" : "no") << "\n"
            << "seed              : " << rec.seed_used << "\n";
  if (write_trace) {
    std::filesystem::create_directories(args.out_dir);
    const std::string path = (std::filesystem::path(args.out_dir) / "grape_trace.csv").string();
    CsvWriter csv(path);
    csv.header({"iteration", "gradient_norm", "objective"});
    for (std::size_t i = 0; i < rec.gradient_norm_history.size(); ++i)
      csv.row(i, rec.gradient_norm_history[i], rec.objective_history[i]);
    std::cout << "trace             : " << path << "\n";
  }
  return 0;
}

int cmd_batch(const CommonArgs& args) {
  const Config cfg = args.resolve();
  const ThreeLevelSystem sys = system_from_config(cfg);
  const Observable obs = observable_from_config(cfg);
  const InitialState init = initial_state_from_config(cfg);
  const GrapeConfig gc = grape_from_config(cfg);
  const int runs = cfg.get_int("grape.runs", 100);
  const BatchSummary summary = grape_batch(sys, obs, init, gc, runs, args.threads);

  std::filesystem::create_directories(args.out_dir);
  const auto path = [&](const std::string& n) {
    return (std::filesystem::path(args.out_dir) / n).string();
  };
  write_batch_csv(path("batch_records.csv"), summary);
  write_histogram_csv(path("batch_iterations_hist.csv"), summary.iteration_histogram);
  write_histogram_csv(path("batch_initial_objective_hist.csv"), summary.initial_objective_histogram);
  std::ofstream manifest(path("batch_manifest.json"));
  manifest << "{\n  \"version\": \"" << kVersion << "\",\n  \"runs\": " << runs
           << ",\n  \"n_fail\": " << summary.n_fail << ",\n  \"seed\": " << gc.seed << "\n}\n";
  std::cout << "runs   : " << runs << "\n"
            << "n_fail : " << summary.n_fail << "\n"
            << "out    : " << args.out_dir << "\n";
  return 0;
}

int cmd_certify(const CommonArgs& args) {
  const Config cfg = args.resolve();
  const ThreeLevelSystem sys = system_from_config(cfg);
  const Observable obs = observable_from_config(cfg);
  const int n_dirs = cfg.get_int("certify.n_dirs", 100);
  const std::uint64_t seed = cfg.get_u64("grape.seed", 1);
  const double horizon = cfg.get_double("certify.T", 0.0);
  const TrapCertificate cert = certify_trap_order(sys, obs, n_dirs, seed, horizon, args.threads);
  std::cout << certificate_to_text(cert);
  std::filesystem::create_directories(args.out_dir);
  const std::string jpath = (std::filesystem::path(args.out_dir) / "certificate.json").string();
  std::ofstream(jpath) << certificate_to_json(cert) << "\n";
  std::cout << "written      : " << jpath << "\n";
  if (!cert.open_case && !cert.consistent) return 3;
  return 0;
}

int cmd_forms(const CommonArgs& args) {
  const auto rows = forms_table();
  bool all_ok = true;
  for (const auto& row : rows) {
    all_ok = all_ok && row.ok;
    std::cout << (row.ok ? "ok   " : "FAIL ") << row.name << "  |diff| = " << csv_double(row.abs_diff)
              << "\n";
  }
  std::filesystem::create_directories(args.out_dir);
  ExperimentSpec spec;
  spec.name = ExperimentName::FormsTable;
  spec.config = args.resolve();
  spec.out_dir = args.out_dir;
  spec.seed = args.seed_given ? args.seed : 1;
  spec.threads = args.threads;
  const ExperimentResult result = run_experiment(spec);
  std::cout << "written: " << result.files.front() << "\n";
  return all_ok ? 0 : 3;
}

int cmd_experiment(const CommonArgs& args, const std::string& name) {
  ExperimentSpec spec;
  spec.name = experiment_name_from_string(name);
  spec.config = args.resolve();
  spec.out_dir = args.out_dir;
  spec.seed = args.seed_given ? args.seed : spec.config.get_u64("experiment.seed", 1);
  spec.threads = args.threads;
  const ExperimentResult result = run_experiment(spec);
  for (const auto& f : result.files) std::cout << "written: " << f << "\n";
  std::cout << "manifest: " << result.manifest << "\n";
  return result.checks_passed ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("qcl3 ") + qcl3::kVersion +
               ": GRAPE optimization and landscape analysis of driven three-level systems"};
  app.require_subcommand(1);

  CommonArgs args;
  args.threads = default_threads();
  app.add_option("--config", args.config_path, "Configuration file (key = value with [sections])");
  app.add_option("--seed", args.seed, "Override the RNG seed")->each([&](const std::string&) {
    args.seed_given = true;
  });
  app.add_option("--out", args.out_dir, "Output directory")->capture_default_str();
  app.add_option("--threads", args.threads, "Worker threads (0 = hardware)");
  app.add_option("--set", args.overrides, "Override a config field, e.g. --set grape.l=2.5");
  app.fallthrough();

  auto* classify = app.add_subcommand("classify", "Report the controllability classification");
  auto* grape = app.add_subcommand("grape", "Run a single gradient-ascent optimization");
  bool grape_trace = false;
  grape->add_flag("--trace", grape_trace, "Write the per-iteration trace CSV");
  auto* batch = app.add_subcommand("batch", "Run a batch of optimizations and export statistics");
  auto* certify = app.add_subcommand("certify", "Certify the trap order at the zero control");
  auto* forms = app.add_subcommand("forms", "Check the simplex forms against their closed forms");
  auto* experiment = app.add_subcommand("experiment", "Run a named experiment recipe");
  std::string experiment_name;
  experiment->add_option("name", experiment_name, "Recipe name")->required();

  try {
    app.parse(argc, argv);
    if (classify->parsed()) return cmd_classify(args);
    if (grape->parsed()) return cmd_grape(args, grape_trace);
    if (batch->parsed()) return cmd_batch(args);
    if (certify->parsed()) return cmd_certify(args);
    if (forms->parsed()) return cmd_forms(args);
    if (experiment->parsed()) return cmd_experiment(args, experiment_name);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const qcl3::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
