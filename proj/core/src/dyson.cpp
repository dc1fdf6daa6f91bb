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
#include "qcl3/dyson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qcl3/errors.hpp"

namespace qcl3 {

PathExpansion expand_paths(const ThreeLevelSystem& sys, int l, int k, int n) {
  if (l < 1 || l > 3 || k < 1 || k > 3)
    throw std::invalid_argument("expand_paths: indices must be in {1,2,3}");
  if (n < 1) throw std::invalid_argument("expand_paths: order must be >= 1");

  const CMat3 v = sys.interaction();
  const double h[3] = {sys.h1, sys.h2, sys.h3};

  PathExpansion out;
  out.l = l;
  out.k = k;
  out.n = n;

  std::vector<double> exps(static_cast<std::size_t>(n));
  auto walk = [&](auto&& self, int pos, int node, cplx amp) -> void {
    if (pos == n) {
      if (node == k - 1) out.paths.push_back({amp, exps});
      return;
    }
    for (int next : {node - 1, node + 1}) {
      if (next < 0 || next > 2) continue;
      exps[static_cast<std::size_t>(pos)] = h[node] - h[next];
      self(self, pos + 1, next, amp * v(node, next));
    }
  };
  walk(walk, 0, l - 1, cplx(1.0, 0.0));
  return out;
}

namespace {

// Internal term algebra over a configurable real type; long double is used
// for the extended-precision mode.
template <typename Real>
struct Term {
  std::complex<Real> coeff;
  std::complex<Real> mu;
  int degree = 0;
};

template <typename Real>
using TermList = std::vector<Term<Real>>;

template <typename Real>
Real ipow(Real t, int d) {
  Real r = 1;
  for (int i = 0; i < d; ++i) r *= t;
  return r;
}

template <typename Real>
std::complex<Real> eval_terms(const TermList<Real>& terms, Real t) {
  std::complex<Real> s = 0;
  for (const auto& term : terms) s += term.coeff * ipow(t, term.degree) * std::exp(term.mu * t);
  return s;
}

template <typename Real>
void merge_terms(TermList<Real>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term<Real>& x, const Term<Real>& y) {
    if (x.degree != y.degree) return x.degree < y.degree;
    if (x.mu.real() != y.mu.real()) return x.mu.real() < y.mu.real();
    return x.mu.imag() < y.mu.imag();
  });
  TermList<Real> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().degree == t.degree &&
        std::abs(out.back().mu - t.mu) <= Real(1e-12) * (Real(1) + std::abs(t.mu))) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(t);
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term<Real>& t) { return std::abs(t.coeff) == Real(0); }),
            out.end());
  terms = std::move(out);
}

// Append terms of an antiderivative of `term` (constant offset arbitrary).
// t_max bounds |t| on the piece and selects the series branch that avoids
// cancellation in 1/mu^k when |mu t| is small.
template <typename Real>
void append_antiderivative(const Term<Real>& term, Real t_max, const SimplexOptions& opts,
                           TermList<Real>& out) {
  const Real amu = std::abs(term.mu);
  if (amu == Real(0)) {
    out.push_back({term.coeff / Real(term.degree + 1), std::complex<Real>(0), term.degree + 1});
    return;
  }
  if (amu * t_max <= Real(opts.series_band)) {
    std::complex<Real> c = term.coeff;  // coeff * mu^m / m!
    Real tail = 1;
    for (int m = 0; m <= 48; ++m) {
      out.push_back({c / Real(term.degree + m + 1), std::complex<Real>(0), term.degree + m + 1});
      c *= term.mu / Real(m + 1);
      tail *= amu * t_max / Real(m + 1);
      if (tail <= std::numeric_limits<Real>::epsilon() * Real(0.01)) break;
    }
    return;
  }
  std::complex<Real> factor = term.coeff / term.mu;
  for (int j = 0; j <= term.degree; ++j) {
    out.push_back({factor, term.mu, term.degree - j});
    factor *= -Real(term.degree - j) / term.mu;
  }
}

template <typename Real>
struct EnginePiece {
  Real a = 0, b = 0;
  TermList<Real> f_terms;
};

template <typename Real>
std::complex<Real> run_simplex(const std::vector<double>& phases,
                               const std::vector<EnginePiece<Real>>& pieces,
                               const SimplexOptions& opts) {
  const int n = static_cast<int>(phases.size());
  std::vector<TermList<Real>> g(pieces.size(),
                                TermList<Real>{Term<Real>{std::complex<Real>(1), std::complex<Real>(0), 0}});
  std::complex<Real> carry = 0;

  // Innermost integration variable first (exponent phases[n-1]).
  for (int level = n - 1; level >= 0; --level) {
    const std::complex<Real> phase_mu(0, Real(phases[static_cast<std::size_t>(level)]));
    carry = 0;
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      const EnginePiece<Real>& piece = pieces[j];
      TermList<Real> integrand;
      integrand.reserve(piece.f_terms.size() * g[j].size());
      for (const auto& ft : piece.f_terms) {
        for (const auto& gt : g[j]) {
          Term<Real> t;
          t.coeff = ft.coeff * gt.coeff;
          t.degree = ft.degree + gt.degree;
          t.mu = ft.mu + gt.mu + phase_mu;
          const Real scale =
              std::max(Real(1), std::abs(ft.mu) + std::abs(gt.mu) + std::abs(phase_mu));
          if (std::abs(t.mu) <= Real(opts.zero_snap) * scale) t.mu = 0;
          integrand.push_back(t);
        }
      }
      merge_terms(integrand);

      TermList<Real> anti;
      anti.reserve(integrand.size() * 2);
      for (const auto& t : integrand) append_antiderivative(t, piece.b, opts, anti);
      merge_terms(anti);

      const std::complex<Real> at_a = eval_terms(anti, piece.a);
      const std::complex<Real> at_b = eval_terms(anti, piece.b);
      anti.push_back({carry - at_a, std::complex<Real>(0), 0});
      merge_terms(anti);
      g[j] = std::move(anti);
      carry += at_b - at_a;
    }
  }
  return carry;
}

template <typename Real>
std::vector<EnginePiece<Real>> convert_pieces(const AnalyticControl& f) {
  std::vector<EnginePiece<Real>> out;
  out.reserve(f.pieces().size());
  for (const auto& p : f.pieces()) {
    EnginePiece<Real> ep;
    ep.a = Real(p.a);
    ep.b = Real(p.b);
    ep.f_terms.reserve(p.terms.size());
    for (const auto& t : p.terms)
      ep.f_terms.push_back({std::complex<Real>(t.coeff.real(), t.coeff.imag()),
                            std::complex<Real>(t.mu.real(), t.mu.imag()), t.degree});
    out.push_back(std::move(ep));
  }
  return out;
}

}  // namespace

cplx simplex_phase_integral(const std::vector<double>& phase_exponents, const AnalyticControl& f,
                            const SimplexOptions& opts) {
  if (phase_exponents.empty())
    throw std::invalid_argument("simplex_phase_integral: needs at least one level");
  if (static_cast<int>(phase_exponents.size()) > opts.max_order)
    throw DepthOverflow("simplex_phase_integral: order exceeds the configured maximum");
  if (opts.extended_precision) {
    const auto v = run_simplex<long double>(phase_exponents, convert_pieces<long double>(f), opts);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  const auto v = run_simplex<double>(phase_exponents, convert_pieces<double>(f), opts);
  return {v.real(), v.imag()};
}

cplx simplex_integral(const PathExpansion& expansion, const AnalyticControl& f,
                      const SimplexOptions& opts) {
  if (expansion.n > opts.max_order)
    throw DepthOverflow("simplex_integral: order exceeds the configured maximum");
  cplx total = 0.0;
  for (const auto& path : expansion.paths)
    total += path.amplitude * simplex_phase_integral(path.exponents, f, opts);
  return total;
}

cplx form_A(const ThreeLevelSystem& sys, int l, int k, int n, const AnalyticControl& f,
            const SimplexOptions& opts) {
  return simplex_integral(expand_paths(sys, l, k, n), f, opts);
}

namespace {

void require_period(const AnalyticControl& f) {
  if (f.horizon() < 2.0 * std::numbers::pi - 1e-9)
    throw HorizonTooShort("forms_K/R: control must be supported in [0, T] with T >= 2 pi");
}

}  // namespace

std::pair<cplx, cplx> forms_K3_R3(const AnalyticControl& f, const SimplexOptions& opts) {
  require_period(f);
  return {simplex_phase_integral({1.0, -1.0, -1.0}, f, opts),
          simplex_phase_integral({-1.0, 1.0, -1.0}, f, opts)};
}

std::pair<cplx, cplx> forms_K4_R4(const AnalyticControl& f, const SimplexOptions& opts) {
  require_period(f);
  return {simplex_phase_integral({-1.0, 1.0, -1.0, -1.0}, f, opts),
          simplex_phase_integral({-1.0, -1.0, 1.0, -1.0}, f, opts)};
}

namespace {

// Cumulative Simpson over one piece: values h_0..h_N on a uniform grid with
// spacing delta, running integral written into out_0..out_N starting at c0.
void cumulative_simpson(const std::vector<cplx>& h, double delta, cplx c0, std::vector<cplx>& out) {
  const std::size_t n = h.size() - 1;
  out[0] = c0;
  for (std::size_t i = 0; i + 2 <= n; i += 2) {
    out[i + 1] = out[i] + delta / 12.0 * (5.0 * h[i] + 8.0 * h[i + 1] - h[i + 2]);
    out[i + 2] = out[i] + delta / 3.0 * (h[i] + 4.0 * h[i + 1] + h[i + 2]);
  }
}

cplx quadrature_pass(const std::vector<double>& phases, const AnalyticControl& f, int n_intervals) {
  const auto& pieces = f.pieces();
  const std::size_t np = pieces.size();
  const std::size_t nn = static_cast<std::size_t>(n_intervals);

  std::vector<std::vector<cplx>> fv(np), g(np), h(np), gnew(np);
  std::vector<double> delta(np);
  for (std::size_t j = 0; j < np; ++j) {
    delta[j] = (pieces[j].b - pieces[j].a) / static_cast<double>(nn);
    fv[j].resize(nn + 1);
    g[j].assign(nn + 1, cplx(1.0, 0.0));
    h[j].resize(nn + 1);
    gnew[j].resize(nn + 1);
    for (std::size_t i = 0; i <= nn; ++i)
      fv[j][i] = f.value_complex(pieces[j].a + delta[j] * static_cast<double>(i));
  }

  cplx carry = 0.0;
  for (int level = static_cast<int>(phases.size()) - 1; level >= 0; --level) {
    const double a = phases[static_cast<std::size_t>(level)];
    carry = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      for (std::size_t i = 0; i <= nn; ++i) {
        const double t = pieces[j].a + delta[j] * static_cast<double>(i);
        h[j][i] = fv[j][i] * std::polar(1.0, a * t) * g[j][i];
      }
      cumulative_simpson(h[j], delta[j], carry, gnew[j]);
      carry = gnew[j][nn];
    }
    std::swap(g, gnew);
  }
  return carry;
}

}  // namespace

cplx quadrature_phase_integral(const std::vector<double>& phase_exponents, const AnalyticControl& f,
                               double rel_tol) {
  if (phase_exponents.empty())
    throw std::invalid_argument("quadrature_phase_integral: needs at least one level");
  cplx prev = 0.0;
  bool have_prev = false;
  for (int n = 256; n <= (1 << 17); n *= 2) {
    const cplx val = quadrature_pass(phase_exponents, f, n);
    if (have_prev && std::abs(val - prev) <= rel_tol * (1.0 + std::abs(val))) return val;
    prev = val;
    have_prev = true;
  }
  throw NoConvergence("quadrature_phase_integral: grid refinement did not reach rel_tol");
}

cplx quadrature_oracle(const PathExpansion& expansion, const AnalyticControl& f, double rel_tol) {
  cplx total = 0.0;
  for (const auto& path : expansion.paths)
    total += path.amplitude * quadrature_phase_integral(path.exponents, f, rel_tol);
  return total;
}

}  // namespace qcl3
