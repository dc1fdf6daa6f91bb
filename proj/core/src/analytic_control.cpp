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
#include "qcl3/analytic_control.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcl3 {

AnalyticControl::AnalyticControl(std::vector<ControlPiece> pieces, bool realness)
    : pieces_(std::move(pieces)), realness_(realness) {
  if (pieces_.empty()) throw std::invalid_argument("AnalyticControl: needs at least one piece");
  if (std::abs(pieces_.front().a) > 1e-15)
    throw std::invalid_argument("AnalyticControl: partition must start at 0");
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    if (!(pieces_[j].b > pieces_[j].a))
      throw std::invalid_argument("AnalyticControl: pieces must have positive length");
    if (j > 0 && std::abs(pieces_[j].a - pieces_[j - 1].b) > 1e-12)
      throw std::invalid_argument("AnalyticControl: pieces must partition [0, T] contiguously");
  }
}

cplx AnalyticControl::value_complex(double t) const {
  if (pieces_.empty() || t < 0.0 || t > horizon()) return 0.0;
  // Pieces are few; linear scan.
  for (const auto& p : pieces_) {
    if (t <= p.b || &p == &pieces_.back()) {
      cplx s = 0.0;
      for (const auto& term : p.terms)
        s += term.coeff * std::pow(t, term.degree) * std::exp(term.mu * t);
      return s;
    }
  }
  return 0.0;
}

double AnalyticControl::sup_norm_estimate(int samples_per_piece) const {
  double m = 0.0;
  for (const auto& p : pieces_) {
    for (int i = 0; i < samples_per_piece; ++i) {
      const double t = p.a + (p.b - p.a) * static_cast<double>(i) / static_cast<double>(samples_per_piece - 1);
      m = std::max(m, std::abs(value_complex(t)));
    }
  }
  return m;
}

AnalyticControl AnalyticControl::scaled(double s) const {
  AnalyticControl out = *this;
  for (auto& p : out.pieces_)
    for (auto& t : p.terms) t.coeff *= s;
  return out;
}

AnalyticControl AnalyticControl::with_horizon(double T) const {
  if (T < horizon() - 1e-12)
    throw std::invalid_argument("AnalyticControl::with_horizon: cannot shrink the support");
  AnalyticControl out = *this;
  if (T > horizon() + 1e-12) out.pieces_.push_back(ControlPiece{horizon(), T, {}});
  return out;
}

AnalyticControl AnalyticControl::with_added_terms(const std::vector<ExpTerm>& terms) const {
  AnalyticControl out = *this;
  for (auto& p : out.pieces_)
    for (const auto& t : terms) p.terms.push_back(t);
  return out;
}

AnalyticControl AnalyticControl::zero(double T) {
  return AnalyticControl({ControlPiece{0.0, T, {}}});
}

AnalyticControl AnalyticControl::constant(double value, double T) {
  return AnalyticControl({ControlPiece{0.0, T, {ExpTerm{value, 0.0, 0}}}});
}

AnalyticControl AnalyticControl::trig_poly(double T, double w, const std::vector<double>& cos_coeffs,
                                           const std::vector<double>& sin_coeffs) {
  std::vector<ExpTerm> terms;
  const cplx i_unit(0.0, 1.0);
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
    const double a = cos_coeffs[k];
    if (a == 0.0) continue;
    if (k == 0) {
      terms.push_back(ExpTerm{a, 0.0, 0});
    } else {
      const cplx mu = i_unit * (w * static_cast<double>(k));
      terms.push_back(ExpTerm{0.5 * a, mu, 0});
      terms.push_back(ExpTerm{0.5 * a, -mu, 0});
    }
  }
  for (std::size_t k = 1; k < sin_coeffs.size(); ++k) {
    const double b = sin_coeffs[k];
    if (b == 0.0) continue;
    const cplx mu = i_unit * (w * static_cast<double>(k));
    terms.push_back(ExpTerm{cplx(0.0, -0.5) * b, mu, 0});
    terms.push_back(ExpTerm{cplx(0.0, 0.5) * b, -mu, 0});
  }
  return AnalyticControl({ControlPiece{0.0, T, std::move(terms)}});
}

AnalyticControl AnalyticControl::special_family(double A, double B, double C, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("special_family: w must be positive");
  const double T = 2.0 * std::numbers::pi / w;
  return trig_poly(T, w, {A, 0.0, 0.0, C}, {0.0, 0.0, B, 0.0});
}

PiecewiseControl discretize_midpoint(const AnalyticControl& f, int d) {
  if (d < 1) throw std::invalid_argument("discretize_midpoint: d must be >= 1");
  const double T = f.horizon();
  const double dt = T / static_cast<double>(d);
  std::vector<double> c(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(k)] = f.value((static_cast<double>(k) + 0.5) * dt);
  return PiecewiseControl(std::move(c), T);
}

}  // namespace qcl3
