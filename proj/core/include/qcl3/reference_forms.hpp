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
#ifndef QCL3_REFERENCE_FORMS_HPP
#define QCL3_REFERENCE_FORMS_HPP

#include <cmath>
#include <numbers>

#include "qcl3/cmat3.hpp"

// Closed-form values of selected simplex forms, obtained by hand integration.
// They are independent of the recursive integrator and serve as its reference
// set (and as the rows of the `forms` report).

namespace qcl3::reference {

inline constexpr double pi = std::numbers::pi;

// A^2_13 of the characteristic function of [0, T] when omega2 = 0:
//   v12 v23 (-1 + e^{-i w1 T}(1 + i w1 T)) / w1^2.
inline cplx a2_13_const_w2_zero(cplx v12, cplx v23, double w1, double T) {
  const cplx i(0.0, 1.0);
  return v12 * v23 * (-1.0 + std::exp(-i * w1 * T) * (1.0 + i * w1 * T)) / (w1 * w1);
}

// A^2_13 of chi_[0, 2pi] with omega2 = 1 and omega1 = r not an integer:
//   -v12 v23 (2 sin^2(pi r) + i sin(2 pi r)) / (r (r + 1)).
inline cplx a2_13_box_nonresonant(cplx v12, cplx v23, double r) {
  const double s = std::sin(pi * r);
  return -v12 * v23 * cplx(2.0 * s * s, std::sin(2.0 * pi * r)) / (r * (r + 1.0));
}

// Same control, the two resonant edge frequencies.
inline cplx a2_13_box_w1_zero(cplx v12, cplx v23) { return cplx(0.0, -2.0 * pi) * v12 * v23; }
inline cplx a2_13_box_w1_minus_one(cplx v12, cplx v23) { return cplx(0.0, 2.0 * pi) * v12 * v23; }

// A^2_13 of (A cos(nt) + B sin(nt)) chi_[0, 2pi] with omega2 = 1,
// omega1 = n integer, |n| >= 2:
//   v12 v23 (iA + B)(A - iBn) pi / (n^2 - 1).
inline cplx a2_13_resonant_cosine(cplx v12, cplx v23, int n, double A, double B) {
  const cplx ia(0.0, A);
  const cplx ibn(0.0, B * static_cast<double>(n));
  return v12 * v23 * (ia + B) * (A - ibn) * pi / (static_cast<double>(n) * n - 1.0);
}

// The cubic form with phase (t1 - t2 - t3) of (A + B sin 2t + C cos 3t) on
// [0, 2pi], expanded in closed form:
//   (pi/576) (12C(-12A^2 + 8iAB + 5B^2) + 64(3A + 2iB)(6A^2 - B^2)
//             - 24C^2 (3A + 2iB) + 9C^3).
inline cplx k3_special_family(double A, double B, double C) {
  const cplx iu(0.0, 1.0);
  const cplx t1 = 12.0 * C * (-12.0 * A * A + 8.0 * iu * A * B + 5.0 * B * B);
  const cplx t2 = 64.0 * (3.0 * A + 2.0 * iu * B) * (6.0 * A * A - B * B);
  const cplx t3 = -24.0 * C * C * (3.0 * A + 2.0 * iu * B);
  const cplx t4 = cplx(9.0 * C * C * C, 0.0);
  return pi / 576.0 * (t1 + t2 + t3 + t4);
}

// The quartic form with phase (-t1 + t2 - t3 - t4) evaluated on the member
// of the family with B = sqrt((19 - sqrt 73)/6), C = (5 + sqrt 73)/3:
//   pi (24 sqrt6 (5 sqrt73 + 121) sqrt(19 - sqrt73) - i(887 sqrt73 + 4603)) / 10368.
inline cplx k4_canonical_member() {
  const double s73 = std::sqrt(73.0);
  const double re = 24.0 * std::sqrt(6.0) * (5.0 * s73 + 121.0) * std::sqrt(19.0 - s73);
  const double im = -(887.0 * s73 + 4603.0);
  return pi / 10368.0 * cplx(re, im);
}

}  // namespace qcl3::reference

#endif  // QCL3_REFERENCE_FORMS_HPP
