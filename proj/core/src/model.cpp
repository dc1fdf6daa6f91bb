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
#include "qcl3/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcl3/errors.hpp"

namespace qcl3 {

ThreeLevelSystem::ThreeLevelSystem(double h1_, double h2_, double h3_, cplx v12_, cplx v23_)
    : h1(h1_), h2(h2_), h3(h3_), v12(v12_), v23(v23_) {
  if (std::abs(v12) == 0.0 || std::abs(v23) == 0.0)
    throw std::invalid_argument("ThreeLevelSystem: both dipole couplings must be nonzero");
  if (!std::isfinite(h1) || !std::isfinite(h2) || !std::isfinite(h3))
    throw std::invalid_argument("ThreeLevelSystem: energies must be finite");
}

CMat3 ThreeLevelSystem::free_hamiltonian() const { return CMat3::diag(h1, h2, h3); }

CMat3 ThreeLevelSystem::interaction() const {
  CMat3 v;
  v(0, 1) = v12;
  v(1, 0) = std::conj(v12);
  v(1, 2) = v23;
  v(2, 1) = std::conj(v23);
  // (1,3) entry stays zero: the forbidden transition.
  return v;
}

ThreeLevelSystem ThreeLevelSystem::s1() { return {0.0, 1.0, 2.5, 1.0, 1.7}; }
ThreeLevelSystem ThreeLevelSystem::s2() { return {0.0, 1.0, 2.0, 1.0, 1.7}; }

Observable::Observable(double l1, double l2, double l3) : lambda1(l1), lambda2(l2), lambda3(l3) {
  if (!(lambda1 > lambda3 && lambda3 > lambda2))
    throw std::invalid_argument("Observable: eigenvalues must satisfy lambda1 > lambda3 > lambda2");
}

Observable Observable::standard(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Observable::standard: lambda must be positive");
  return Observable(1.0, -lambda, 0.0);
}

InitialState::InitialState(int basis_index) : state_(basis_index) {
  if (basis_index < 1 || basis_index > 3)
    throw std::invalid_argument("InitialState: basis index must be in {1,2,3}");
}

InitialState::InitialState(const CMat3& rho) : state_(rho) {
  if (!rho.is_hermitian(1e-12)) throw std::invalid_argument("InitialState: density matrix not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("InitialState: density matrix trace must be 1");
  const HermEig3 e = herm_eig(rho);
  if (e.eigenvalues[0] < -1e-12)
    throw std::invalid_argument("InitialState: density matrix must be positive semidefinite");
}

CMat3 InitialState::density_matrix() const {
  if (std::holds_alternative<int>(state_)) return CMat3::basis_projector(std::get<int>(state_));
  return std::get<CMat3>(state_);
}

std::optional<int> InitialState::basis_index() const {
  if (std::holds_alternative<int>(state_)) return std::get<int>(state_);
  return std::nullopt;
}

PiecewiseControl::PiecewiseControl(std::vector<double> coeffs, double horizon)
    : c(std::move(coeffs)), T(horizon) {
  if (c.empty()) throw std::invalid_argument("PiecewiseControl: needs at least one component");
  if (!(T > 0.0)) throw std::invalid_argument("PiecewiseControl: horizon must be positive");
}

double PiecewiseControl::value(double t) const {
  if (t < 0.0 || t > T) return 0.0;
  const double step = dt();
  int k = static_cast<int>(t / step);
  k = std::min(k, D() - 1);
  return c[static_cast<std::size_t>(k)];
}

std::pair<double, double> bohr_frequencies(const ThreeLevelSystem& sys) {
  return {sys.omega1(), sys.omega2()};
}

namespace {

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

ControllabilityVerdict classify_controllability(const ThreeLevelSystem& sys, double tol) {
  const auto [w1, w2] = bohr_frequencies(sys);
  ControllabilityVerdict v;
  if (!close(std::abs(w1), std::abs(w2), tol)) {
    v.cls = ControllabilityClass::Controllable;
    v.controllable = true;
    return v;
  }
  if (close(w1, 0.0, tol) && close(w2, 0.0, tol)) {
    // Fully degenerate spectrum; outside the frequency classification above.
    v.cls = ControllabilityClass::ConditionalOnDipoles;
    v.controllable = false;
    v.degenerate_spectrum = true;
    return v;
  }
  if (close(w1, -w2, tol)) {
    v.cls = ControllabilityClass::UncontrollableSymmetric;
    v.controllable = false;
    return v;
  }
  // omega1 == omega2 != 0: equidistant ladder.
  v.cls = ControllabilityClass::ConditionalOnDipoles;
  v.controllable = !close(std::abs(sys.v12), std::abs(sys.v23), tol);
  return v;
}

namespace {

// Anti-Hermitian 3x3 matrices form a 9-dimensional real vector space;
// coordinates: imaginary diagonal plus re/im of the upper triangle.
using Vec9 = std::array<double, 9>;

Vec9 to_vec(const CMat3& m) {
  return {m(0, 0).imag(), m(1, 1).imag(), m(2, 2).imag(),
          m(0, 1).real(), m(0, 1).imag(), m(0, 2).real(),
          m(0, 2).imag(), m(1, 2).real(), m(1, 2).imag()};
}

double dot(const Vec9& a, const Vec9& b) {
  double s = 0.0;
  for (int i = 0; i < 9; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  return s;
}

double norm(const Vec9& a) { return std::sqrt(dot(a, a)); }

CMat3 commutator(const CMat3& x, const CMat3& y) {
  CMat3 a, b;
  mul_into(a, x, y);
  mul_into(b, y, x);
  return a - b;
}

}  // namespace

int lie_closure_rank(const ThreeLevelSystem& sys, int max_depth, double tol) {
  const cplx mi(0.0, -1.0);
  std::vector<CMat3> basis_mats;   // orthonormalized generators, as matrices
  std::vector<Vec9> basis_vecs;    // same elements, as real 9-vectors

  auto try_add = [&](const CMat3& m) -> bool {
    Vec9 v = to_vec(m);
    const double n0 = norm(v);
    if (n0 <= 1e-300) return false;
    // Two-pass modified Gram-Schmidt.
    CMat3 residual = m;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < basis_vecs.size(); ++k) {
        const double coeff = dot(to_vec(residual), basis_vecs[k]);
        residual -= coeff * basis_mats[k];
      }
    }
    Vec9 rv = to_vec(residual);
    const double rn = norm(rv);
    const double rel = rn / n0;
    if (rel > tol / 10.0 && rel < tol * 10.0)
      throw ToleranceAmbiguous("lie_closure_rank: residual within a decade of tol");
    if (rel <= tol) return false;
    const double inv = 1.0 / rn;
    CMat3 unit = residual;
    unit *= cplx(inv, 0.0);
    basis_mats.push_back(unit);
    basis_vecs.push_back(to_vec(unit));
    return true;
  };

  try_add(mi * sys.free_hamiltonian());
  try_add(mi * sys.interaction());

  std::size_t processed = 0;
  for (int depth = 0; depth < max_depth; ++depth) {
    const std::size_t old_size = basis_mats.size();
    bool grew = false;
    // Bracket new elements against everything seen so far.
    for (std::size_t i = processed; i < old_size; ++i) {
      for (std::size_t j = 0; j < old_size; ++j) {
        if (i == j) continue;
        if (try_add(commutator(basis_mats[i], basis_mats[j]))) grew = true;
        if (basis_mats.size() >= 9) return 9;
      }
    }
    processed = old_size;
    if (!grew) break;
  }
  return static_cast<int>(basis_mats.size());
}

AssembledModel assemble(const ThreeLevelSystem& sys, const Observable& obs, const InitialState& init) {
  AssembledModel m;
  m.h0 = sys.free_hamiltonian();
  m.v = sys.interaction();
  m.o = obs.matrix();
  m.rho0 = init.density_matrix();
  return m;
}

}  // namespace qcl3
