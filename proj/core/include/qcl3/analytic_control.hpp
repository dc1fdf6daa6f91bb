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
#ifndef QCL3_ANALYTIC_CONTROL_HPP
#define QCL3_ANALYTIC_CONTROL_HPP

#include <vector>

#include "qcl3/cmat3.hpp"
#include "qcl3/model.hpp"

namespace qcl3 {

// One summand coeff * t^degree * exp(mu * t).
struct ExpTerm {
  cplx coeff;
  cplx mu;
  int degree = 0;
};

// Terms live on a closed interval [a, b].
struct ControlPiece {
  double a = 0.0, b = 0.0;
  std::vector<ExpTerm> terms;
};

// Control expressed as a finite sum of polynomial-times-exponential terms on
// a partition of [0, T]. The class is closed under the products and
// antiderivatives needed by the time-ordered simplex integrals, so constants,
// characteristic functions and trigonometric polynomials are all exact.
class AnalyticControl {
 public:
  AnalyticControl() = default;
  AnalyticControl(std::vector<ControlPiece> pieces, bool realness = true);

  const std::vector<ControlPiece>& pieces() const { return pieces_; }
  bool realness() const { return realness_; }
  double horizon() const { return pieces_.empty() ? 0.0 : pieces_.back().b; }

  cplx value_complex(double t) const;
  double value(double t) const { return value_complex(t).real(); }

  // Max |f| over a sampling grid; used for tolerance scaling.
  double sup_norm_estimate(int samples_per_piece = 257) const;

  AnalyticControl scaled(double s) const;
  // Extend the partition with a zero piece up to a larger horizon.
  AnalyticControl with_horizon(double T) const;
  // Add the same terms to every piece (e.g. subtracting a global mode).
  AnalyticControl with_added_terms(const std::vector<ExpTerm>& terms) const;

  static AnalyticControl zero(double T);
  // value * chi_[0, T]
  static AnalyticControl constant(double value, double T);
  // sum_k cos_coeffs[k] cos(k w t) + sum_k sin_coeffs[k] sin(k w t) on [0, T]
  // (index 0 of sin_coeffs is ignored).
  static AnalyticControl trig_poly(double T, double w, const std::vector<double>& cos_coeffs,
                                   const std::vector<double>& sin_coeffs);
  // (A + B sin(2wt) + C cos(3wt)) chi_[0, 2pi/w], w > 0 defaulting to 1.
  static AnalyticControl special_family(double A, double B, double C, double w = 1.0);

 private:
  std::vector<ControlPiece> pieces_;
  bool realness_ = true;
};

// Piecewise-constant sampling at interval midpoints, c_k = f((k - 1/2) T/d).
PiecewiseControl discretize_midpoint(const AnalyticControl& f, int d);

}  // namespace qcl3

#endif  // QCL3_ANALYTIC_CONTROL_HPP
