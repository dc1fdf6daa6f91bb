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
#include "qcl3/cmat3.hpp"

#include <algorithm>
#include <stdexcept>

#include "qcl3/errors.hpp"

namespace qcl3 {

CMat3 CMat3::basis_projector(int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("basis index must be in {1,2,3}");
  CMat3 r;
  r(k - 1, k - 1) = 1.0;
  return r;
}

CMat3 CMat3::adjoint() const {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx CMat3::det() const {
  const auto& a = *this;
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

double CMat3::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : m_) s += std::norm(z);
  return std::sqrt(s);
}

double CMat3::max_abs() const {
  double s = 0.0;
  for (const auto& z : m_) s = std::max(s, std::abs(z));
  return s;
}

bool CMat3::is_finite() const {
  for (const auto& z : m_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool CMat3::is_hermitian(double tol) const {
  double dev = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) dev += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
  return std::sqrt(dev) <= tol * std::max(1.0, frobenius_norm());
}

CMat3& CMat3::operator+=(const CMat3& o) {
  for (int i = 0; i < 9; ++i) m_[static_cast<std::size_t>(i)] += o.m_[static_cast<std::size_t>(i)];
  return *this;
}

CMat3& CMat3::operator-=(const CMat3& o) {
  for (int i = 0; i < 9; ++i) m_[static_cast<std::size_t>(i)] -= o.m_[static_cast<std::size_t>(i)];
  return *this;
}

CMat3& CMat3::operator*=(cplx s) {
  for (auto& z : m_) z *= s;
  return *this;
}

void mul_into(CMat3& c, const CMat3& a, const CMat3& b) {
  for (int i = 0; i < 3; ++i) {
    const cplx a0 = a(i, 0), a1 = a(i, 1), a2 = a(i, 2);
    for (int j = 0; j < 3; ++j) {
      c(i, j) = a0 * b(0, j) + a1 * b(1, j) + a2 * b(2, j);
    }
  }
}

CMat3 operator*(const CMat3& a, const CMat3& b) {
  CMat3 c;
  mul_into(c, a, b);
  return c;
}

cplx trace_product(const CMat3& a, const CMat3& b) {
  cplx s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, i);
  return s;
}

namespace {

inline double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

HermEig3 herm_eig(const CMat3& h, double tol) {
  if (!h.is_finite()) throw NotHermitian("herm_eig: matrix has non-finite entries");
  if (!h.is_hermitian(tol)) throw NotHermitian("herm_eig: matrix is not Hermitian within tolerance");

  // Symmetrize so the iteration works on an exactly Hermitian matrix.
  CMat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

  CMat3 q = CMat3::identity();
  const double scale = std::max(1.0, a.frobenius_norm());
  const double off_target = 1e-15 * scale;

  static constexpr int kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = std::sqrt(std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2)));
    if (off <= off_target) break;
    for (const auto& pq : kPairs) {
      const int p = pq[0], r = pq[1];
      const double apq = std::abs(a(p, r));
      if (apq <= 1e-300) continue;
      const cplx u = a(p, r) / apq;  // phase of the pivot
      const double theta = (a(r, r).real() - a(p, p).real()) / (2.0 * apq);
      const double t = sgn(theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;

      const double app = a(p, p).real(), arr = a(r, r).real();
      a(p, p) = app - t * apq;
      a(r, r) = arr + t * apq;
      a(p, r) = 0.0;
      a(r, p) = 0.0;
      const int m = 3 - p - r;  // the remaining index
      const cplx amp = a(m, p), amr = a(m, r);
      a(m, p) = c * amp - s * std::conj(u) * amr;
      a(m, r) = s * u * amp + c * amr;
      a(p, m) = std::conj(a(m, p));
      a(r, m) = std::conj(a(m, r));
      for (int i = 0; i < 3; ++i) {
        const cplx qip = q(i, p), qir = q(i, r);
        q(i, p) = c * qip - s * std::conj(u) * qir;
        q(i, r) = s * u * qip + c * qir;
      }
    }
  }

  HermEig3 out;
  std::array<int, 3> order = {0, 1, 2};
  const std::array<double, 3> ev = {a(0, 0).real(), a(1, 1).real(), a(2, 2).real()};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return ev[static_cast<std::size_t>(i)] < ev[static_cast<std::size_t>(j)]; });
  for (int j = 0; j < 3; ++j) {
    out.eigenvalues[static_cast<std::size_t>(j)] = ev[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    for (int i = 0; i < 3; ++i) out.eigenvectors(i, j) = q(i, order[static_cast<std::size_t>(j)]);
  }
  return out;
}

CMat3 expm_unitary(const CMat3& h, double t, double tol) {
  const HermEig3 e = herm_eig(h, tol);
  const CMat3& q = e.eigenvectors;
  CMat3 out;
  cplx phase[3];
  for (int k = 0; k < 3; ++k) {
    const double ang = -e.eigenvalues[static_cast<std::size_t>(k)] * t;
    phase[k] = cplx(std::cos(ang), std::sin(ang));
  }
  // out = q * diag(phase) * q^dagger
  for (int i = 0; i < 3; ++i) {
    const cplx w0 = q(i, 0) * phase[0], w1 = q(i, 1) * phase[1], w2 = q(i, 2) * phase[2];
    for (int j = 0; j < 3; ++j) {
      out(i, j) = w0 * std::conj(q(j, 0)) + w1 * std::conj(q(j, 1)) + w2 * std::conj(q(j, 2));
    }
  }
  return out;
}

}  // namespace qcl3
