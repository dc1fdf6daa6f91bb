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
#ifndef QCL3_DYSON_HPP
#define QCL3_DYSON_HPP

#include <utility>
#include <vector>

#include "qcl3/analytic_control.hpp"
#include "qcl3/model.hpp"

namespace qcl3 {

// Interaction-picture matrix element <l| V_{t_1} ... V_{t_n} |k| expanded
// over walks on the coupling chain 1-2-3:
//   <l| V_{t_1} ... V_{t_n} |k> = sum_paths amplitude * exp(i sum_m a_m t_m),
// amplitude the product of dipole entries along the walk and a_m the energy
// difference h_{j_{m-1}} - h_{j_m} of step m. Walks 2->3 have odd length and
// 1->3 even length, so the opposite parities expand to nothing.
struct PathExpansion {
  struct Path {
    cplx amplitude;
    std::vector<double> exponents;  // a_1 .. a_n
  };
  int l = 0, k = 0, n = 0;  // 1-based indices, order
  std::vector<Path> paths;
};

PathExpansion expand_paths(const ThreeLevelSystem& sys, int l, int k, int n);

struct SimplexOptions {
  // Combined exponents with |mu| below zero_snap (relative to the magnitudes
  // entering the sum) are treated as exactly zero; this is the branch the
  // equidistant-spectrum cases live on.
  double zero_snap = 1e-9;
  // |mu| * t below this bound evaluates the antiderivative by a truncated
  // series instead of the closed form, avoiding cancellation in 1/mu^k.
  double series_band = 0.5;
  // Evaluate in long double; worthwhile for forms of order >= 6.
  bool extended_precision = false;
  int max_order = 8;
};

// Exact nested simplex integral
//   int_0^T dt_1 ... int_0^{t_{n-1}} dt_n  prod_m f(t_m) exp(i a_m t_m)
// by closed-form antiderivatives within the polynomial-exponential class.
cplx simplex_phase_integral(const std::vector<double>& phase_exponents, const AnalyticControl& f,
                            const SimplexOptions& opts = {});

// Sum of simplex_phase_integral over the expansion's paths, weighted by the
// path amplitudes.
cplx simplex_integral(const PathExpansion& expansion, const AnalyticControl& f,
                      const SimplexOptions& opts = {});

// A^n_{lk}<f> = expand_paths + simplex_integral.
cplx form_A(const ThreeLevelSystem& sys, int l, int k, int n, const AnalyticControl& f,
            const SimplexOptions& opts = {});

// Cubic simplex forms with phases (t1 - t2 - t3) and (-t1 + t2 - t3); the
// normalized-frequency (w = 1) objects entering the third-order form of the
// equidistant ladder. Requires f supported in [0, T] with T >= 2 pi.
std::pair<cplx, cplx> forms_K3_R3(const AnalyticControl& f, const SimplexOptions& opts = {});

// Quartic analogues with phases (-t1 + t2 - t3 - t4) and (-t1 - t2 + t3 - t4).
std::pair<cplx, cplx> forms_K4_R4(const AnalyticControl& f, const SimplexOptions& opts = {});

// Independent verification path: iterated one-dimensional cumulative Simpson
// quadrature over the simplex, refined until successive grids agree to
// rel_tol. Recommended for n <= 4. Throws NoConvergence when refinement
// stalls.
cplx quadrature_phase_integral(const std::vector<double>& phase_exponents, const AnalyticControl& f,
                               double rel_tol);

cplx quadrature_oracle(const PathExpansion& expansion, const AnalyticControl& f, double rel_tol);

}  // namespace qcl3

#endif  // QCL3_DYSON_HPP
