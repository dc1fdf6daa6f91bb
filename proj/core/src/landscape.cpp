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
#include "qcl3/landscape.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qcl3/dynamics.hpp"
#include "qcl3/errors.hpp"
#include "qcl3/rng.hpp"

namespace qcl3 {

namespace {

constexpr double kPi = std::numbers::pi;

double two_re_cross(cplx a, cplx b) { return 2.0 * (a * std::conj(b)).real(); }

}  // namespace

VariationReport variation(const ThreeLevelSystem& sys, const Observable& obs,
                          const AnalyticControl& direction, const SimplexOptions& opts) {
  VariationReport r;
  r.direction = direction;

  r.A1_23 = form_A(sys, 2, 3, 1, direction, opts);
  r.A2_13 = form_A(sys, 1, 3, 2, direction, opts);
  r.A3_23 = form_A(sys, 2, 3, 3, direction, opts);
  r.A4_13 = form_A(sys, 1, 3, 4, direction, opts);
  r.A5_23 = form_A(sys, 2, 3, 5, direction, opts);
  r.A6_13 = form_A(sys, 1, 3, 6, direction, opts);
  r.A7_23 = form_A(sys, 2, 3, 7, direction, opts);

  // Shift the observable so lambda3 = 0; the landscape is unchanged.
  const double lam1 = obs.lambda1 - obs.lambda3;
  const double lam2 = obs.lambda2 - obs.lambda3;

  r.J2 = lam2 * std::norm(r.A1_23);
  r.J4 = lam1 * std::norm(r.A2_13) - lam2 * two_re_cross(r.A1_23, r.A3_23);
  r.J6 = lam2 * (std::norm(r.A3_23) + two_re_cross(r.A1_23, r.A5_23)) -
         lam1 * two_re_cross(r.A2_13, r.A4_13);
  r.J8 = lam1 * (std::norm(r.A4_13) + two_re_cross(r.A2_13, r.A6_13)) -
         lam2 * (two_re_cross(r.A1_23, r.A7_23) + two_re_cross(r.A3_23, r.A5_23));

  const double action = direction.sup_norm_estimate() * direction.horizon();
  const double v12 = std::abs(sys.v12), v23 = std::abs(sys.v23);
  const double scale1 = std::max(v23 * action, 1e-300);
  const double scale3 = std::max((v12 * v12 + v23 * v23) * v23 * action * action * action / 6.0, 1e-300);
  r.membership_scale = scale1;
  r.in_H1 = std::abs(r.A1_23) <= 1e-9 * scale1;
  r.in_H3 = r.in_H1 && std::abs(r.A3_23) <= 1e-9 * scale3;
  return r;
}

AnalyticControl project_H1(const ThreeLevelSystem& sys, const AnalyticControl& f) {
  const double w2 = sys.omega2();
  const double T = f.horizon();
  if (!(T > 0.0)) throw std::invalid_argument("project_H1: control has empty support");

  // Moment of f against exp(-i w2 t), from the order-1 form.
  const cplx moment = form_A(sys, 2, 3, 1, f) / sys.v23;

  if (std::abs(w2) <= 1e-12) {
    // Single constraint: zero mean.
    return f.with_added_terms({ExpTerm{-moment.real() / T, 0.0, 0}});
  }

  const double cf = moment.real();        // <f, cos(w2 t)>
  const double sf = -moment.imag();       // <f, sin(w2 t)>
  const double s2 = std::sin(2.0 * w2 * T), s1 = std::sin(w2 * T);
  const double gcc = 0.5 * T + s2 / (4.0 * w2);
  const double gss = 0.5 * T - s2 / (4.0 * w2);
  const double gcs = s1 * s1 / (2.0 * w2);
  const double det = gcc * gss - gcs * gcs;
  const double alpha = (gss * cf - gcs * sf) / det;
  const double beta = (gcc * sf - gcs * cf) / det;

  const cplx iu(0.0, 1.0);
  const cplx plus = 0.5 * (-alpha + iu * beta);
  const cplx minus = 0.5 * (-alpha - iu * beta);
  return f.with_added_terms({ExpTerm{plus, iu * w2, 0}, ExpTerm{minus, -iu * w2, 0}});
}

AnalyticControl witness_anharmonic(const ThreeLevelSystem& sys) {
  const double w1 = sys.omega1(), w2 = sys.omega2();
  if (w1 == w2) throw NotAnharmonic("witness_anharmonic: omega1 == omega2");

  if (w2 == 0.0) {
    // Half-frequency cosine over one period of |w1|: zero mean, and the
    // self-product resonates with exp(-i w1 t), so the order-2 form survives.
    const double T = 2.0 * kPi / std::abs(w1);
    return AnalyticControl::trig_poly(T, 0.5 * std::abs(w1), {0.0, 1.0}, {});
  }

  const double T = 2.0 * kPi / std::abs(w2);
  const double ratio = w1 / w2;
  const double rounded = std::round(ratio);
  const bool integer_like = std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, std::abs(ratio));
  if (integer_like && std::abs(rounded) >= 2.0) {
    // Resonant cosine at the integer multiple.
    return AnalyticControl::trig_poly(T, std::abs(w2),
                                      [&] {
                                        std::vector<double> cc(static_cast<std::size_t>(std::abs(rounded)) + 1, 0.0);
                                        cc.back() = 1.0;
                                        return cc;
                                      }(),
                                      {});
  }
  // Characteristic function of one period. Covers non-integer ratios and the
  // ratios 0 and -1.
  return AnalyticControl::constant(1.0, T);
}

namespace {

double cubic_res1(double a, double b, double c) {
  return 384.0 * a * a * a - 64.0 * a * b * b + c * (20.0 * b * b - 48.0 * a * a) -
         24.0 * a * c * c + 3.0 * c * c * c;
}

double cubic_res2(double a, double b, double c) {
  return 48.0 * a * a * b + 6.0 * a * b * c - 8.0 * b * b * b - 3.0 * b * c * c;
}

// Real roots of x^3 + p2 x^2 + p1 x + p0.
std::vector<double> cubic_real_roots(double p2, double p1, double p0) {
  const double q = p2 / 3.0;
  const double p = p1 - p2 * p2 / 3.0;
  const double r = p0 - p1 * p2 / 3.0 + 2.0 * p2 * p2 * p2 / 27.0;
  std::vector<double> roots;
  const double disc = r * r / 4.0 + p * p * p / 27.0;
  if (disc > 1e-30) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-r / 2.0 + s);
    const double v = std::cbrt(-r / 2.0 - s);
    roots.push_back(u + v - q);
  } else {
    const double m = 2.0 * std::sqrt(std::max(0.0, -p / 3.0));
    if (m == 0.0) {
      roots.push_back(-q);
    } else {
      const double arg = std::clamp(3.0 * r / (p * m), -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k)
        roots.push_back(m * std::cos(phi - 2.0 * kPi * static_cast<double>(k) / 3.0) - q);
    }
  }
  // Newton polish.
  for (double& x : roots) {
    for (int it = 0; it < 4; ++it) {
      const double fx = ((x + p2) * x + p1) * x + p0;
      const double dfx = (3.0 * x + 2.0 * p2) * x + p1;
      if (dfx == 0.0) break;
      x -= fx / dfx;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

void polish_solution(CubicSystemSolution& s) {
  for (int it = 0; it < 8; ++it) {
    const double f1 = cubic_res1(s.A, s.B, s.C);
    const double f2 = cubic_res2(s.A, s.B, s.C);
    if (std::abs(f1) + std::abs(f2) < 1e-13) break;
    if (std::abs(s.B) < 1e-8) {
      // B = 0 branch: res2 vanishes identically, polish C on res1 alone.
      const double d1c = 20.0 * s.B * s.B - 48.0 * s.A * s.A - 48.0 * s.A * s.C + 9.0 * s.C * s.C;
      if (d1c == 0.0) break;
      s.C -= f1 / d1c;
    } else {
      const double d1b = -128.0 * s.A * s.B + 40.0 * s.B * s.C;
      const double d1c = 20.0 * s.B * s.B - 48.0 * s.A * s.A - 48.0 * s.A * s.C + 9.0 * s.C * s.C;
      const double d2b = 48.0 * s.A * s.A + 6.0 * s.A * s.C - 24.0 * s.B * s.B - 3.0 * s.C * s.C;
      const double d2c = 6.0 * s.A * s.B - 6.0 * s.B * s.C;
      const double det = d1b * d2c - d1c * d2b;
      if (det == 0.0) break;
      s.B -= (d2c * f1 - d1c * f2) / det;
      s.C -= (-d2b * f1 + d1b * f2) / det;
    }
  }
  s.residual1 = cubic_res1(s.A, s.B, s.C);
  s.residual2 = cubic_res2(s.A, s.B, s.C);
}

}  // namespace

std::vector<CubicSystemSolution> solve_special_cubics() {
  std::vector<CubicSystemSolution> out;

  // B = 0: the first equation reduces to 3C^3 - 24C^2 - 48C + 384 = 0.
  for (double c : cubic_real_roots(-8.0, -16.0, 128.0)) {
    CubicSystemSolution s;
    s.B = 0.0;
    s.C = c;
    polish_solution(s);
    out.push_back(s);
  }

  // B != 0: the second equation gives B^2 = (48 + 6C - 3C^2)/8; substituting
  // into the first leaves C (4.5 C^2 - 15 C - 24) = 0.
  std::vector<double> cs = {0.0};
  const double disc = 15.0 * 15.0 + 4.0 * 4.5 * 24.0;  // 657 = 9 * 73
  cs.push_back((15.0 + std::sqrt(disc)) / 9.0);
  cs.push_back((15.0 - std::sqrt(disc)) / 9.0);
  for (double c : cs) {
    const double b2 = (48.0 + 6.0 * c - 3.0 * c * c) / 8.0;
    if (b2 <= 0.0) continue;
    for (double sign : {1.0, -1.0}) {
      CubicSystemSolution s;
      s.B = sign * std::sqrt(b2);
      s.C = c;
      polish_solution(s);
      out.push_back(s);
    }
  }
  return out;
}

CubicSystemSolution canonical_special_solution() {
  CubicSystemSolution s;
  s.B = std::sqrt((19.0 - std::sqrt(73.0)) / 6.0);
  s.C = (5.0 + std::sqrt(73.0)) / 3.0;
  polish_solution(s);
  return s;
}

namespace {

AnalyticControl random_trig_poly(CounterRng& rng, double T, int degree) {
  std::vector<double> cc(static_cast<std::size_t>(degree) + 1);
  std::vector<double> ss(static_cast<std::size_t>(degree) + 1);
  for (auto& x : cc) x = rng.uniform(-1.0, 1.0);
  ss[0] = 0.0;
  for (std::size_t k = 1; k < ss.size(); ++k) ss[k] = rng.uniform(-1.0, 1.0);
  return AnalyticControl::trig_poly(T, 2.0 * kPi / T, cc, ss);
}

const char* class_name(TrapSystemClass c) {
  switch (c) {
    case TrapSystemClass::Anharmonic: return "anharmonic";
    case TrapSystemClass::HarmonicControllable: return "harmonic_controllable";
    case TrapSystemClass::HarmonicUncontrollable: return "harmonic_uncontrollable";
    case TrapSystemClass::SymmetricUncontrollable: return "symmetric_uncontrollable";
  }
  return "?";
}

TrapEvidenceRow make_row(int id, bool projected, const VariationReport& vr) {
  TrapEvidenceRow row;
  row.direction_id = id;
  row.projected = projected;
  row.J2 = vr.J2;
  row.J4 = vr.J4;
  row.J6 = vr.J6;
  row.J8 = vr.J8;
  row.in_H1 = vr.in_H1;
  row.in_H3 = vr.in_H3;
  return row;
}

}  // namespace

TrapCertificate certify_trap_order(const ThreeLevelSystem& sys, const Observable& obs,
                                   int n_dirs, std::uint64_t seed, double T, int threads) {
  const double w1 = sys.omega1(), w2 = sys.omega2();
  TrapCertificate cert;
  cert.seed = seed;
  cert.n_dirs = n_dirs;

  if (w1 == w2) {
    if (w1 == 0.0) {
      cert.system_class = TrapSystemClass::HarmonicUncontrollable;
      cert.open_case = true;
      cert.consistent = true;
      cert.notes = "fully degenerate spectrum (omega1 = omega2 = 0); outside the certified classes";
      return cert;
    }
    if (std::abs(sys.v12) == std::abs(sys.v23)) {
      cert.system_class = TrapSystemClass::HarmonicUncontrollable;
      cert.open_case = true;
      cert.consistent = true;
      cert.notes = "equidistant ladder with equal dipole moduli: no certificate; order unknown";
      return cert;
    }
    cert.system_class = TrapSystemClass::HarmonicControllable;
  } else if (w1 == -w2) {
    cert.system_class = TrapSystemClass::SymmetricUncontrollable;
  } else {
    cert.system_class = TrapSystemClass::Anharmonic;
  }

  const bool harmonic = cert.system_class == TrapSystemClass::HarmonicControllable;
  const double wbase = (std::abs(w2) > 0.0) ? std::abs(w2) : std::abs(w1);
  const double t0 = 2.0 * kPi / wbase;
  if (T == 0.0) T = t0;
  if (T < t0 - 1e-12)
    throw HorizonTooShort("certify_trap_order: horizon below one period of the slow transition");

  if (std::abs(w2) > 0.0) {
    const double ratio = w1 / w2;
    const double rounded = std::round(ratio);
    const double miss = std::abs(ratio - rounded);
    if (miss > 0.0 && miss <= 1e-9 * std::max(1.0, std::abs(ratio)))
      cert.notes += "frequency ratio within 1e-9 of an integer; treated as resonant for witness selection; ";
  }

  // Directions are drawn sequentially so the certificate depends only on the
  // seed; the variation evaluations fan out to a worker pool and land in
  // indexed slots.
  CounterRng rng(seed);
  std::vector<AnalyticControl> raw_dirs, proj_dirs;
  raw_dirs.reserve(static_cast<std::size_t>(n_dirs));
  proj_dirs.reserve(static_cast<std::size_t>(n_dirs));
  for (int i = 0; i < n_dirs; ++i) {
    raw_dirs.push_back(random_trig_poly(rng, T, 6));
    proj_dirs.push_back(project_H1(sys, raw_dirs.back()));
  }
  std::vector<VariationReport> raw_reports(static_cast<std::size_t>(n_dirs));
  std::vector<VariationReport> proj_reports(static_cast<std::size_t>(n_dirs));
  {
    unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    n_threads = std::max(1u, std::min(n_threads, static_cast<unsigned>(std::max(n_dirs, 1))));
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n_dirs) return;
        raw_reports[static_cast<std::size_t>(i)] = variation(sys, obs, raw_dirs[static_cast<std::size_t>(i)]);
        proj_reports[static_cast<std::size_t>(i)] = variation(sys, obs, proj_dirs[static_cast<std::size_t>(i)]);
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
  }

  bool ok = true;
  for (int i = 0; i < n_dirs; ++i) {
    const VariationReport& vr = raw_reports[static_cast<std::size_t>(i)];
    cert.evidence.push_back(make_row(i, false, vr));
    // J2 = lam2 |A1|^2 <= 0 always; strictly negative off H1.
    ok = ok && vr.J2 <= 0.0;
    if (!vr.in_H1) ok = ok && vr.J2 < 0.0;

    const VariationReport& vp = proj_reports[static_cast<std::size_t>(i)];
    cert.evidence.push_back(make_row(i, true, vp));
    ok = ok && vp.in_H1;
    const double a1_tol = 1e-9 * vp.membership_scale;
    ok = ok && std::abs(vp.J2) <= std::abs(obs.lambda2 - obs.lambda3) * a1_tol * a1_tol;
    if (harmonic) {
      // On H1 the order-4 term vanishes identically and the order-6 term is
      // non-positive, strictly negative off H3.
      const AnalyticControl& proj = proj_dirs[static_cast<std::size_t>(i)];
      const double s = proj.sup_norm_estimate() * proj.horizon();
      const double v = std::abs(sys.v12) * std::abs(sys.v23);
      const double j4_scale = (obs.lambda1 - obs.lambda3) * 0.25 * v * v * s * s * s * s;
      ok = ok && std::abs(vp.J4) <= 1e-10 * std::max(j4_scale, 1e-300);
      ok = ok && vp.J6 <= 0.0;
      if (!vp.in_H3) ok = ok && vp.J6 < 0.0;
    } else {
      ok = ok && vp.J4 >= 0.0;
    }
  }

  SimplexOptions precise;
  precise.extended_precision = true;
  if (harmonic) {
    const CubicSystemSolution sol = canonical_special_solution();
    cert.witness = AnalyticControl::special_family(sol.A, sol.B, sol.C, wbase);
    const VariationReport vw = variation(sys, obs, cert.witness, precise);
    cert.evidence.push_back(make_row(-1, false, vw));
    ok = ok && vw.in_H1 && vw.in_H3;
    ok = ok && vw.J8 > 0.0;
    cert.order = 7;
    cert.witness_order = 8;
    cert.witness_value = vw.J8;
  } else {
    cert.witness = witness_anharmonic(sys);
    const VariationReport vw = variation(sys, obs, cert.witness, precise);
    cert.evidence.push_back(make_row(-1, false, vw));
    ok = ok && vw.in_H1;
    ok = ok && vw.J4 > 0.0;
    cert.order = 3;
    cert.witness_order = 4;
    cert.witness_value = vw.J4;
  }
  cert.consistent = ok;
  return cert;
}

std::string certificate_to_json(const TrapCertificate& cert) {
  nlohmann::json j;
  j["class"] = class_name(cert.system_class);
  j["open_case"] = cert.open_case;
  j["order"] = cert.order;
  j["witness_order"] = cert.witness_order;
  j["witness_value"] = cert.witness_value;
  j["seed"] = cert.seed;
  j["n_dirs"] = cert.n_dirs;
  j["consistent"] = cert.consistent;
  j["notes"] = cert.notes;
  nlohmann::json wit = nlohmann::json::array();
  for (const auto& piece : cert.witness.pieces()) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : piece.terms)
      terms.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}},
                       {"mu", {t.mu.real(), t.mu.imag()}},
                       {"degree", t.degree}});
    wit.push_back({{"a", piece.a}, {"b", piece.b}, {"terms", terms}});
  }
  j["witness"] = wit;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : cert.evidence)
    rows.push_back({{"direction_id", row.direction_id},
                    {"projected", row.projected},
                    {"J2", row.J2},
                    {"J4", row.J4},
                    {"J6", row.J6},
                    {"J8", row.J8},
                    {"in_H1", row.in_H1},
                    {"in_H3", row.in_H3}});
  j["evidence"] = rows;
  return j.dump(2);
}

std::string certificate_to_text(const TrapCertificate& cert) {
  std::ostringstream os;
  os.precision(12);
  os << "trap certificate\n";
  os << "  system class : " << class_name(cert.system_class) << "\n";
  if (cert.open_case) {
    os << "  verdict      : open (no certificate)\n";
    if (!cert.notes.empty()) os << "  notes        : " << cert.notes << "\n";
    return os.str();
  }
  os << "  trap order   : " << cert.order << "\n";
  os << "  witness      : J" << cert.witness_order << " = " << cert.witness_value
     << " > 0 along the witness direction\n";
  os << "  directions   : " << cert.n_dirs << " sampled (seed " << cert.seed << ")\n";
  os << "  all checks   : " << (cert.consistent ? "passed" : "FAILED") << "\n";
  if (!cert.notes.empty()) os << "  notes        : " << cert.notes << "\n";
  return os.str();
}

ScalingCheck directional_scaling_check(const ThreeLevelSystem& sys, const Observable& obs,
                                       const AnalyticControl& direction, int order_n,
                                       const std::vector<double>& eps_grid, int d_base) {
  if (order_n < 2 || order_n > 8)
    throw std::invalid_argument("directional_scaling_check: order must be in [2, 8]");
  SimplexOptions precise;
  precise.extended_precision = true;
  const VariationReport vr = variation(sys, obs, direction, precise);

  const InitialState init(3);
  const CMat3 o = obs.matrix();
  const CMat3 rho0 = init.density_matrix();
  const double j0 = obs.lambda3;  // objective at the zero control

  ScalingCheck check;
  check.d_base = d_base;
  check.eps = eps_grid;

  auto discrete_objective = [&](const AnalyticControl& f, int d) {
    const PiecewiseControl pc = discretize_midpoint(f, d);
    const PropagationTrace trace = propagate(sys, pc);
    return objective_from_trace(trace, o, rho0);
  };

  for (double eps : eps_grid) {
    const AnalyticControl scaled = direction.scaled(eps);
    const double jd = discrete_objective(scaled, d_base);
    const double j2d = discrete_objective(scaled, 2 * d_base);
    const double j4d = discrete_objective(scaled, 4 * d_base);
    const double r1 = (4.0 * j2d - jd) / 3.0;
    const double r1b = (4.0 * j4d - j2d) / 3.0;
    const double jr = (8.0 * r1b - r1) / 7.0;

    double taylor = 0.0;
    if (order_n >= 2) taylor += std::pow(eps, 2) * vr.J2;
    if (order_n >= 4) taylor += std::pow(eps, 4) * vr.J4;
    if (order_n >= 6) taylor += std::pow(eps, 6) * vr.J6;
    if (order_n >= 8) taylor += std::pow(eps, 8) * vr.J8;

    const double resid = std::abs(jr - j0 - taylor);
    const double floor = std::max(std::abs(r1b - r1) / 7.0, 1e-13 * (1.0 + std::abs(jr)));
    check.residual.push_back(resid);
    check.noise_floor.push_back(floor);
    check.refinement_gap.push_back(std::abs(j2d - jd));
    check.used.push_back(resid > 3.0 * floor);
  }

  // Least-squares slope of log residual vs log eps over the usable points.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (std::size_t i = 0; i < check.eps.size(); ++i) {
    if (!check.used[i]) continue;
    const double x = std::log(check.eps[i]);
    const double y = std::log(check.residual[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2)
    throw ResolutionInsufficient(
        "directional_scaling_check: discretization/rounding floor dominates the residuals");
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  check.slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
  return check;
}

}  // namespace qcl3
