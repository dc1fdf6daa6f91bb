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
#include "qcl3/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "qcl3/errors.hpp"

namespace qcl3 {

void propagate_into(const ThreeLevelSystem& sys, const PiecewiseControl& control,
                    PropagationTrace& trace) {
  const int d = control.D();
  const double dt = control.dt();
  trace.dt = dt;
  trace.step_unitaries.resize(static_cast<std::size_t>(d));
  trace.prefix_products.resize(static_cast<std::size_t>(d));

  const CMat3 h0 = sys.free_hamiltonian();
  const CMat3 v = sys.interaction();
  CMat3 h;
  for (int n = 0; n < d; ++n) {
    const double cn = control.c[static_cast<std::size_t>(n)];
    h = h0;
    h += cn * v;
    CMat3& u = trace.step_unitaries[static_cast<std::size_t>(n)];
    u = expm_unitary(h, dt);
    CMat3& w = trace.prefix_products[static_cast<std::size_t>(n)];
    if (n == 0) {
      w = u;
    } else {
      mul_into(w, u, trace.prefix_products[static_cast<std::size_t>(n - 1)]);
    }
  }
}

PropagationTrace propagate(const ThreeLevelSystem& sys, const PiecewiseControl& control) {
  PropagationTrace trace;
  propagate_into(sys, control, trace);
  return trace;
}

double objective_from_trace(const PropagationTrace& trace, const CMat3& o, const CMat3& rho0) {
  const CMat3& w = trace.final_unitary();
  CMat3 a, b;
  mul_into(a, w, rho0);
  mul_into(b, a, w.adjoint());
  const cplx j = trace_product(b, o);
  if (std::abs(j.imag()) > 1e-10)
    throw NonRealObjective("objective: imaginary residue above 1e-10");
  return j.real();
}

double objective(const ThreeLevelSystem& sys, const Observable& obs, const InitialState& init,
                 const PiecewiseControl& control) {
  const PropagationTrace trace = propagate(sys, control);
  return objective_from_trace(trace, obs.matrix(), init.density_matrix());
}

void gradient_from_trace(const PropagationTrace& trace, const CMat3& v, const CMat3& o,
                         const CMat3& rho0, std::vector<double>& grad) {
  const int d = static_cast<int>(trace.step_unitaries.size());
  grad.resize(static_cast<std::size_t>(d));
  const CMat3& wd = trace.final_unitary();

  // B = W_D^dagger O W_D, P = rho0 B, both fixed across components.
  CMat3 tmp, b, p;
  mul_into(tmp, wd.adjoint(), o);
  mul_into(b, tmp, wd);
  mul_into(p, rho0, b);

  CMat3 vw, pwd;
  for (int k = 0; k < d; ++k) {
    const CMat3& wk = trace.prefix_products[static_cast<std::size_t>(k)];
    // Tr[W_k^dag V W_k rho0 B] = Tr[(V W_k) (P W_k^dag)]
    mul_into(vw, v, wk);
    mul_into(pwd, p, wk.adjoint());
    const cplx t = trace_product(vw, pwd);
    grad[static_cast<std::size_t>(k)] = 2.0 * trace.dt * t.imag();
  }
}

std::vector<double> gradient(const ThreeLevelSystem& sys, const Observable& obs,
                             const InitialState& init, const PiecewiseControl& control) {
  const PropagationTrace trace = propagate(sys, control);
  std::vector<double> g;
  gradient_from_trace(trace, sys.interaction(), obs.matrix(), init.density_matrix(), g);
  return g;
}

std::vector<double> finite_difference_gradient(const ThreeLevelSystem& sys, const Observable& obs,
                                               const InitialState& init,
                                               const PiecewiseControl& control, double step) {
  const int d = control.D();
  std::vector<double> g(static_cast<std::size_t>(d));
  PiecewiseControl work = control;
  for (int k = 0; k < d; ++k) {
    const double ck = control.c[static_cast<std::size_t>(k)];
    const double h = step * std::max(1.0, std::abs(ck));
    auto central = [&](double hh) {
      work.c[static_cast<std::size_t>(k)] = ck + hh;
      const double jp = objective(sys, obs, init, work);
      work.c[static_cast<std::size_t>(k)] = ck - hh;
      const double jm = objective(sys, obs, init, work);
      work.c[static_cast<std::size_t>(k)] = ck;
      return (jp - jm) / (2.0 * hh);
    };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    g[static_cast<std::size_t>(k)] = (4.0 * d2 - d1) / 3.0;  // Richardson
  }
  return g;
}

namespace {

void append_matrix(std::ostringstream& os, const CMat3& m) {
  os << "[";
  for (int i = 0; i < 9; ++i) {
    const cplx z = m.data()[static_cast<std::size_t>(i)];
    if (i) os << ",";
    os << "[" << z.real() << "," << z.imag() << "]";
  }
  os << "]";
}

}  // namespace

std::string trace_to_json(const PropagationTrace& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"dt\":" << trace.dt << ",\"step_unitaries\":[";
  for (std::size_t n = 0; n < trace.step_unitaries.size(); ++n) {
    if (n) os << ",";
    append_matrix(os, trace.step_unitaries[n]);
  }
  os << "],\"prefix_products\":[";
  for (std::size_t n = 0; n < trace.prefix_products.size(); ++n) {
    if (n) os << ",";
    append_matrix(os, trace.prefix_products[n]);
  }
  os << "]}";
  return os.str();
}

}  // namespace qcl3
