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
#ifndef QCL3_DYNAMICS_HPP
#define QCL3_DYNAMICS_HPP

#include <string>
#include <vector>

#include "qcl3/model.hpp"

namespace qcl3 {

// Step propagators U_n = exp(-i (H0 + c_n V) dt) and their ordered prefix
// products W_k = U_k ... U_1. W_D is the full evolution over [0, T].
struct PropagationTrace {
  std::vector<CMat3> step_unitaries;   // U_1 .. U_D
  std::vector<CMat3> prefix_products;  // W_1 .. W_D
  double dt = 0.0;

  const CMat3& final_unitary() const { return prefix_products.back(); }
};

PropagationTrace propagate(const ThreeLevelSystem& sys, const PiecewiseControl& control);

// In-place variant reusing the trace's storage (hot path for the optimizer).
void propagate_into(const ThreeLevelSystem& sys, const PiecewiseControl& control,
                    PropagationTrace& trace);

// J = Tr[W_D rho0 W_D^dagger O]. Throws NonRealObjective if the imaginary
// residue of the trace exceeds 1e-10.
double objective(const ThreeLevelSystem& sys, const Observable& obs, const InitialState& init,
                 const PiecewiseControl& control);

double objective_from_trace(const PropagationTrace& trace, const CMat3& o, const CMat3& rho0);

// Gradient of the discretized objective, component k:
//   2 dt Im(Tr[W_k^dagger V W_k rho0 W_D^dagger O W_D]).
// This is the first-order-in-dt expression; its bias against the exact
// derivative of the discrete objective shrinks linearly with dt (see the
// finite-difference utilities below).
std::vector<double> gradient(const ThreeLevelSystem& sys, const Observable& obs,
                             const InitialState& init, const PiecewiseControl& control);

void gradient_from_trace(const PropagationTrace& trace, const CMat3& v, const CMat3& o,
                         const CMat3& rho0, std::vector<double>& grad);

// Central finite differences with one Richardson refinement; step is scaled
// per component by max(1, |c_k|). Independent check of the analytic gradient.
std::vector<double> finite_difference_gradient(const ThreeLevelSystem& sys, const Observable& obs,
                                               const InitialState& init,
                                               const PiecewiseControl& control,
                                               double step = 1e-5);

// JSON layout for traces: arrays of [re, im] pairs per matrix, row-major.
std::string trace_to_json(const PropagationTrace& trace);

}  // namespace qcl3

#endif  // QCL3_DYNAMICS_HPP
