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
#ifndef QCL3_CMAT3_HPP
#define QCL3_CMAT3_HPP

#include <array>
#include <cmath>
#include <complex>

namespace qcl3 {

using cplx = std::complex<double>;

// Dense 3x3 complex matrix with value semantics. Row-major storage.
// Everything here is sized for the three-level problem; no dynamic memory.
class CMat3 {
 public:
  CMat3() : m_{} {}

  static CMat3 identity() {
    CMat3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
  }

  static CMat3 diag(double a, double b, double c) {
    CMat3 r;
    r(0, 0) = a;
    r(1, 1) = b;
    r(2, 2) = c;
    return r;
  }

  static CMat3 diag(cplx a, cplx b, cplx c) {
    CMat3 r;
    r(0, 0) = a;
    r(1, 1) = b;
    r(2, 2) = c;
    return r;
  }

  // Projector |k><k| for a 1-based basis index.
  static CMat3 basis_projector(int k);

  cplx& operator()(int r, int c) { return m_[static_cast<std::size_t>(3 * r + c)]; }
  const cplx& operator()(int r, int c) const { return m_[static_cast<std::size_t>(3 * r + c)]; }

  std::array<cplx, 9>& data() { return m_; }
  const std::array<cplx, 9>& data() const { return m_; }

  CMat3 adjoint() const;
  cplx trace() const { return m_[0] + m_[4] + m_[8]; }
  cplx det() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_finite() const;
  bool is_hermitian(double tol = 1e-12) const;  // relative to max(1, ||A||_F)

  CMat3& operator+=(const CMat3& o);
  CMat3& operator-=(const CMat3& o);
  CMat3& operator*=(cplx s);

  friend CMat3 operator+(CMat3 a, const CMat3& b) { return a += b; }
  friend CMat3 operator-(CMat3 a, const CMat3& b) { return a -= b; }
  friend CMat3 operator*(CMat3 a, cplx s) { return a *= s; }
  friend CMat3 operator*(cplx s, CMat3 a) { return a *= s; }

 private:
  std::array<cplx, 9> m_;
};

CMat3 operator*(const CMat3& a, const CMat3& b);

// c = a * b without temporaries; c must not alias a or b.
void mul_into(CMat3& c, const CMat3& a, const CMat3& b);

cplx trace_product(const CMat3& a, const CMat3& b);  // Tr[a b]

// Eigendecomposition of a Hermitian matrix: H = Q diag(eigenvalues) Q^dagger,
// eigenvalues ascending, Q unitary with eigenvectors as columns.
struct HermEig3 {
  std::array<double, 3> eigenvalues;
  CMat3 eigenvectors;
};

// Cyclic complex Jacobi to machine precision. Robust for degenerate
// spectra. Throws NotHermitian if ||H - H^dagger||_F > tol * max(1, ||H||_F).
HermEig3 herm_eig(const CMat3& h, double tol = 1e-12);

// exp(-i H t) for Hermitian H, via the eigendecomposition. Unitary to 1e-12.
CMat3 expm_unitary(const CMat3& h, double t, double tol = 1e-12);

}  // namespace qcl3

#endif  // QCL3_CMAT3_HPP
