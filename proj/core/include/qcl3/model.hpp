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
#ifndef QCL3_MODEL_HPP
#define QCL3_MODEL_HPP

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qcl3/cmat3.hpp"

namespace qcl3 {

// Three-level system with one forbidden transition (between levels 1 and 3).
// Energies h1..h3 are in angular-frequency units (hbar = 1); the dipole
// couplings v12, v23 must be nonzero.
struct ThreeLevelSystem {
  double h1 = 0.0, h2 = 0.0, h3 = 0.0;
  cplx v12{1.0, 0.0};
  cplx v23{1.0, 0.0};

  ThreeLevelSystem() = default;
  ThreeLevelSystem(double h1_, double h2_, double h3_, cplx v12_, cplx v23_);

  double omega1() const { return h2 - h1; }
  double omega2() const { return h3 - h2; }

  CMat3 free_hamiltonian() const;
  CMat3 interaction() const;

  // The two worked examples used throughout: an anharmonic system with
  // levels (0, 1, 2.5) and an equidistant ladder with levels (0, 1, 2),
  // both with couplings v12 = 1, v23 = 1.7.
  static ThreeLevelSystem s1();
  static ThreeLevelSystem s2();
};

// Diagonal observable O = diag(lambda1, lambda2, lambda3) with the ordering
// lambda1 > lambda3 > lambda2 enforced at construction.
struct Observable {
  double lambda1 = 1.0, lambda2 = -1.0, lambda3 = 0.0;

  Observable() = default;
  Observable(double l1, double l2, double l3);

  // O = |1><1| - lambda |2><2|, lambda > 0.
  static Observable standard(double lambda = 1.0);

  CMat3 matrix() const { return CMat3::diag(lambda1, lambda2, lambda3); }
};

// Initial state: either a pure basis state |k><k| or a full density matrix
// (positive semidefinite, unit trace to 1e-12).
class InitialState {
 public:
  InitialState() : state_(3) {}
  explicit InitialState(int basis_index);
  explicit InitialState(const CMat3& rho);

  CMat3 density_matrix() const;
  std::optional<int> basis_index() const;

 private:
  std::variant<int, CMat3> state_;
};

// Piecewise-constant control on [0, T]: f(t) = sum_k c_k chi_[t_k, t_{k+1}],
// t_k = dt (k-1), dt = T / D.
struct PiecewiseControl {
  std::vector<double> c;
  double T = 0.0;

  PiecewiseControl() = default;
  PiecewiseControl(std::vector<double> coeffs, double horizon);

  int D() const { return static_cast<int>(c.size()); }
  double dt() const { return T / static_cast<double>(c.size()); }
  double value(double t) const;
};

enum class ControllabilityClass {
  Controllable,             // |omega1| != |omega2|
  UncontrollableSymmetric,  // omega1 == -omega2 != 0
  ConditionalOnDipoles,     // omega1 == omega2 (controllable iff |v12| != |v23|)
};

struct ControllabilityVerdict {
  ControllabilityClass cls = ControllabilityClass::Controllable;
  bool controllable = false;
  bool degenerate_spectrum = false;  // omega1 == omega2 == 0
  std::optional<int> lie_rank;       // filled by callers that also run the oracle
};

std::pair<double, double> bohr_frequencies(const ThreeLevelSystem& sys);

// Structural classification of operator controllability. Comparisons use
// |x - y| <= tol; tol = 0 gives exact arithmetic on the supplied reals.
ControllabilityVerdict classify_controllability(const ThreeLevelSystem& sys, double tol = 0.0);

// Independent oracle: dimension of the real Lie algebra generated by
// {iH0, iV} under commutators, by iterated bracketing with Gram-Schmidt rank
// detection at tolerance tol. Controllable systems give rank >= 8 (su(3) up
// to phase); uncontrollable strictly less. Throws ToleranceAmbiguous when a
// candidate direction's relative residual falls within a decade of tol.
int lie_closure_rank(const ThreeLevelSystem& sys, int max_depth = 6, double tol = 1e-9);

struct AssembledModel {
  CMat3 h0, v, o, rho0;
};

AssembledModel assemble(const ThreeLevelSystem& sys, const Observable& obs, const InitialState& init);

}  // namespace qcl3

#endif  // QCL3_MODEL_HPP
