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
#ifndef QCL3_LANDSCAPE_HPP
#define QCL3_LANDSCAPE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qcl3/dyson.hpp"

namespace qcl3 {

// Directional Taylor data of the objective at the zero control along a fixed
// direction: the even variations J2..J8 (odd ones vanish structurally), the
// constituent simplex forms, and membership in the critical subspaces
//   H1 = {f : A^1_23<f> = 0},   H3 = {f in H1 : A^3_23<f> = 0}.
// Values are computed with the observable shifted so lambda3 = 0; the
// landscape is unchanged by that shift.
struct VariationReport {
  AnalyticControl direction;
  double J2 = 0.0, J4 = 0.0, J6 = 0.0, J8 = 0.0;
  bool in_H1 = false, in_H3 = false;
  cplx A1_23, A2_13, A3_23, A4_13, A5_23, A6_13, A7_23;
  bool odd_variations_zero = true;  // structural property of the chain coupling
  double membership_scale = 0.0;    // tolerance scale used for the flags
};

VariationReport variation(const ThreeLevelSystem& sys, const Observable& obs,
                          const AnalyticControl& direction, const SimplexOptions& opts = {});

// Remove the components of f along cos(w2 t), sin(w2 t) on [0, T] so that
// A^1_23 of the result vanishes (subtract the mean when w2 = 0).
AnalyticControl project_H1(const ThreeLevelSystem& sys, const AnalyticControl& f);

// A direction in H1 with A^2_13 != 0, for systems with omega1 != omega2.
// Selection over the frequency ratio r = omega1/omega2 (after rescaling time
// so |omega2| = 1 and the horizon is one period):
//   - w2 = 0:            cos(w1 t / 2) on [0, 2 pi / |w1|]
//   - r integer, |r|>=2: cos(r |w2| t) on [0, 2 pi / |w2|]
//   - otherwise:         the characteristic function of [0, 2 pi / |w2|]
AnalyticControl witness_anharmonic(const ThreeLevelSystem& sys);

// Real solution of the pair of homogeneous cubics that cuts out the special
// control family (A = 1 normalization), with the residuals of both equations.
struct CubicSystemSolution {
  double A = 1.0, B = 0.0, C = 0.0;
  double residual1 = 0.0, residual2 = 0.0;
};

// All real solutions with A = 1: the B = 0 branch (cubic in C) and the
// B^2 = (48 + 6C - 3C^2)/8 branch (quadratic in C after substitution, plus
// C = 0), nine in total.
std::vector<CubicSystemSolution> solve_special_cubics();

// Coefficients used when picking one canonical member of the family:
// B = sqrt((19 - sqrt(73))/6), C = (5 + sqrt(73))/3.
CubicSystemSolution canonical_special_solution();

enum class TrapSystemClass {
  Anharmonic,
  HarmonicControllable,
  HarmonicUncontrollable,
  SymmetricUncontrollable,
};

struct TrapEvidenceRow {
  int direction_id = 0;
  bool projected = false;  // true when the row is the H1-projected direction
  double J2 = 0.0, J4 = 0.0, J6 = 0.0, J8 = 0.0;
  bool in_H1 = false, in_H3 = false;
};

struct TrapCertificate {
  TrapSystemClass system_class = TrapSystemClass::Anharmonic;
  bool open_case = false;  // no certificate (uncontrollable equidistant ladder)
  int order = 0;           // 3 or 7 when certified
  AnalyticControl witness;
  int witness_order = 0;      // order of the strictly positive differential
  double witness_value = 0.0; // that differential's value
  std::vector<TrapEvidenceRow> evidence;
  std::uint64_t seed = 0;
  int n_dirs = 0;
  bool consistent = false;  // every sampled sign/vanishing check passed
  std::string notes;
};

// Sample n_dirs random trig-polynomial directions (raw and H1-projected),
// check the sign pattern of the variations required for the claimed trap
// order, and attach a growth witness. T = 0 picks the natural horizon
// (one period of the slow frequency); smaller T throws HorizonTooShort.
// Per-direction evaluations fan out to a worker pool (threads = 0 picks the
// hardware count); assembly is by direction index, so the certificate is
// identical for any thread count.
TrapCertificate certify_trap_order(const ThreeLevelSystem& sys, const Observable& obs,
                                   int n_dirs = 100, std::uint64_t seed = 1, double T = 0.0,
                                   int threads = 0);

std::string certificate_to_json(const TrapCertificate& cert);
std::string certificate_to_text(const TrapCertificate& cert);

// Validation of the Taylor orders against the exact propagator: evaluates
//   J(eps f) - J(0) - sum_{j<=n} eps^j V_j
// on a grid of eps and fits the log-log slope over the points whose residual
// clears the numerical floor (discretization gap from D-refinement plus
// rounding). Residual decay of order >= n+1 confirms the expansion.
struct ScalingCheck {
  std::vector<double> eps;
  std::vector<double> residual;       // |residual| at each eps
  std::vector<double> noise_floor;    // estimated floor at each eps
  std::vector<bool> used;             // points entering the fit
  std::vector<double> refinement_gap; // |J_2D - J_D| per eps (D-refinement)
  double slope = 0.0;
  int d_base = 0;
};

ScalingCheck directional_scaling_check(const ThreeLevelSystem& sys, const Observable& obs,
                                       const AnalyticControl& direction, int order_n,
                                       const std::vector<double>& eps_grid, int d_base = 2048);

}  // namespace qcl3

#endif  // QCL3_LANDSCAPE_HPP
