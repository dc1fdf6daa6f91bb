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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qcl3/dynamics.hpp"
#include "qcl3/errors.hpp"
#include "qcl3/landscape.hpp"

using namespace qcl3;

namespace {

constexpr double kPi = std::numbers::pi;

AnalyticControl random_trig(CounterRng& rng, double T, int degree) {
  std::vector<double> cc(static_cast<std::size_t>(degree) + 1), ss(static_cast<std::size_t>(degree) + 1);
  for (auto& x : cc) x = rng.uniform(-1.0, 1.0);
  ss[0] = 0.0;
  for (std::size_t k = 1; k < ss.size(); ++k) ss[k] = rng.uniform(-1.0, 1.0);
  return AnalyticControl::trig_poly(T, 2.0 * kPi / T, cc, ss);
}

}  // namespace

TEST_CASE("projection removes the excluded mode entirely") {
  const ThreeLevelSystem s1 = ThreeLevelSystem::s1();  // w2 = 1.5
  const double T = 2.0 * kPi / 1.5;
  const AnalyticControl f = AnalyticControl::trig_poly(T, 1.5, {0.0, 1.0}, {});
  const AnalyticControl p = project_H1(s1, f);
  for (double t : {0.1, 0.5, 1.7, 3.0}) CHECK(std::abs(p.value(t)) < 1e-12);
}

TEST_CASE("projection lands in H1 for random directions") {
  CounterRng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const ThreeLevelSystem sys = oracles::random_system(rng);
    const AnalyticControl f = random_trig(rng, rng.uniform(3.0, 9.0), 5);
    const AnalyticControl p = project_H1(sys, f);
    const double scale = std::abs(sys.v23) * std::max(1.0, f.sup_norm_estimate()) * f.horizon();
    CHECK(std::abs(form_A(sys, 2, 3, 1, p)) <= 1e-12 * scale);
  }
}

TEST_CASE("projection subtracts the mean when the slow transition is static") {
  const ThreeLevelSystem sys(0.0, 1.0, 1.0, 1.0, 1.7);  // w2 = 0
  const AnalyticControl f = AnalyticControl::constant(2.0, 5.0);
  const AnalyticControl p = project_H1(sys, f);
  CHECK(std::abs(form_A(sys, 2, 3, 1, p)) < 1e-12);
  CHECK(std::abs(p.value(1.0)) < 1e-12);
}

TEST_CASE("the trigonometric family lies in H1") {
  const ThreeLevelSystem s2 = ThreeLevelSystem::s2();
  const CubicSystemSolution sol = canonical_special_solution();
  const AnalyticControl f4 = AnalyticControl::special_family(sol.A, sol.B, sol.C);
  const VariationReport vr = variation(s2, Observable::standard(), f4);
  CHECK(vr.in_H1);
  // Projection of an H1 control is a no-op up to rounding.
  const AnalyticControl p = project_H1(s2, f4);
  for (double t : {0.3, 1.1, 2.9, 5.5}) CHECK(p.value(t) == doctest::Approx(f4.value(t)).epsilon(1e-10));
}

TEST_CASE("variation of the canonical witness on the equidistant ladder") {
  const ThreeLevelSystem s2 = ThreeLevelSystem::s2();
  const Observable obs = Observable::standard(1.0);
  const CubicSystemSolution sol = canonical_special_solution();
  const AnalyticControl f4 = AnalyticControl::special_family(sol.A, sol.B, sol.C);
  SimplexOptions precise;
  precise.extended_precision = true;
  const VariationReport vr = variation(s2, obs, f4, precise);
  CHECK(vr.in_H1);
  CHECK(vr.in_H3);
  CHECK(std::abs(vr.J2) < 1e-10);
  CHECK(std::abs(vr.J4) < 1e-10);
  CHECK(std::abs(vr.J6) < 1e-8);
  CHECK(vr.J8 > 0.0);
  // The eighth variation reduces to lam1 |A4|^2 on this direction.
  CHECK(vr.J8 == doctest::Approx((obs.lambda1 - obs.lambda3) * std::norm(vr.A4_13)).epsilon(1e-6));
}

TEST_CASE("variation of the projected box control on the anharmonic system") {
  const ThreeLevelSystem s1 = ThreeLevelSystem::s1();
  const Observable obs = Observable::standard(1.0);
  const AnalyticControl f2 = project_H1(s1, AnalyticControl::constant(1.0, 2.0 * kPi));
  const VariationReport vr = variation(s1, obs, f2);
  CHECK(vr.in_H1);
  CHECK(std::abs(vr.J2) < 1e-12);
  CHECK(vr.J4 > 0.0);
  CHECK(vr.J4 == doctest::Approx(obs.lambda1 * std::norm(vr.A2_13)).epsilon(1e-9));
}

TEST_CASE("second variation is negative off H1") {
  CounterRng rng(7);
  const Observable obs = Observable::standard(1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const ThreeLevelSystem sys = oracles::random_system(rng);
    const AnalyticControl f = random_trig(rng, rng.uniform(3.0, 8.0), 4);
    const VariationReport vr = variation(sys, obs, f);
    if (!vr.in_H1) CHECK(vr.J2 < 0.0);
  }
}

TEST_CASE("fourth variation vanishes on H1 for the harmonic system") {
  CounterRng rng(11);
  const ThreeLevelSystem s2 = ThreeLevelSystem::s2();
  const Observable obs = Observable::standard(1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const AnalyticControl f = project_H1(s2, random_trig(rng, 2.0 * kPi, 6));
    const VariationReport vr = variation(s2, obs, f);
    REQUIRE(vr.in_H1);
    const double s = f.sup_norm_estimate() * f.horizon();
    const double v = std::abs(s2.v12) * std::abs(s2.v23);
    const double j4_scale = std::max(obs.lambda1 * 0.25 * v * v * s * s * s * s, 1e-300);
    CHECK(std::abs(vr.J4) <= 1e-10 * j4_scale);
    CHECK(vr.J6 <= 0.0);
    if (!vr.in_H3) CHECK(vr.J6 < 0.0);
  }
}

TEST_CASE("lambda3 shift leaves variations unchanged and shifts the objective") {
  const ThreeLevelSystem s1 = ThreeLevelSystem::s1();
  const Observable base = Observable::standard(1.0);  // (1, -1, 0)
  const Observable shifted(1.5, -0.5, 0.5);           // base + 0.5 I
  CounterRng rng(13);
  const AnalyticControl f = random_trig(rng, 2.0 * kPi / 1.5, 4);
  const VariationReport a = variation(s1, base, f);
  const VariationReport b = variation(s1, shifted, f);
  CHECK(a.J2 == doctest::Approx(b.J2).epsilon(1e-12));
  CHECK(a.J4 == doctest::Approx(b.J4).epsilon(1e-12));
  CHECK(a.J6 == doctest::Approx(b.J6).epsilon(1e-12));
  CHECK(a.J8 == doctest::Approx(b.J8).epsilon(1e-12));
  const PiecewiseControl zero(std::vector<double>(10, 0.0), 1.0);
  const double j_base = objective(s1, base, InitialState(3), zero);
  const double j_shift = objective(s1, shifted, InitialState(3), zero);
  CHECK(j_shift - j_base == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("anharmonic witnesses cover the frequency-ratio cases") {
  const Observable obs = Observable::standard(1.0);
  SUBCASE("generic ratio uses one period of the slow transition") {
    const ThreeLevelSystem s1 = ThreeLevelSystem::s1();
    const AnalyticControl w = witness_anharmonic(s1);
    CHECK(w.horizon() == doctest::Approx(2.0 * kPi / 1.5));
    const VariationReport vr = variation(s1, obs, w);
    CHECK(vr.in_H1);
    CHECK(std::abs(vr.A2_13) > 0.1);
  }
  SUBCASE("static slow transition") {
    const ThreeLevelSystem sys(0.0, 1.3, 1.3, 1.0, 1.7);  // w1 = 1.3, w2 = 0
    const AnalyticControl w = witness_anharmonic(sys);
    const VariationReport vr = variation(sys, obs, w);
    CHECK(vr.in_H1);
    CHECK(std::abs(vr.A2_13) > 0.1);
    // Expected value -i v12 v23 T / (2 w1) for the half-frequency cosine.
    const double T = 2.0 * kPi / 1.3;
    const cplx want = cplx(0.0, -1.0) * 1.0 * 1.7 * T / (2.0 * 1.3);
    CHECK(std::abs(vr.A2_13 - want) <= 1e-10 * std::abs(want));
  }
  SUBCASE("integer ratio uses the resonant cosine") {
    const ThreeLevelSystem sys(0.0, 2.0, 3.0, 1.0, 1.7);  // ratio 2
    const AnalyticControl w = witness_anharmonic(sys);
    const VariationReport vr = variation(sys, obs, w);
    CHECK(vr.in_H1);
    CHECK(std::abs(vr.A2_13) > 0.1);
    // (iA + B)(A - iBn) pi / (n^2 - 1) with A = 1, B = 0, n = 2.
    const cplx want = cplx(0.0, 1.0) * 1.0 * 1.7 * kPi / 3.0;
    CHECK(std::abs(vr.A2_13 - want) <= 1e-10 * std::abs(want));
  }
  SUBCASE("ratio -1 falls back to the box control") {
    const ThreeLevelSystem sys(0.0, 1.0, 0.0, 1.0, 1.7);
    const AnalyticControl w = witness_anharmonic(sys);
    const VariationReport vr = variation(sys, obs, w);
    CHECK(vr.in_H1);
    CHECK(std::abs(vr.A2_13) > 0.1);
  }
  SUBCASE("harmonic systems are rejected") {
    CHECK_THROWS_AS(witness_anharmonic(ThreeLevelSystem::s2()), NotAnharmonic);
  }
}

TEST_CASE("the cubic system has nine real solutions including the canonical one") {
  const auto sols = solve_special_cubics();
  CHECK(sols.size() == 9);
  for (const auto& s : sols) {
    CHECK(std::abs(s.residual1) <= 1e-12);
    CHECK(std::abs(s.residual2) <= 1e-12);
  }
  const double b_want = std::sqrt((19.0 - std::sqrt(73.0)) / 6.0);
  const double c_want = (5.0 + std::sqrt(73.0)) / 3.0;
  bool found = false;
  for (const auto& s : sols)
    found = found || (std::abs(s.B - b_want) < 1e-10 && std::abs(s.C - c_want) < 1e-10);
  CHECK(found);
  // The B = 0 branch has roots 8, 4, -4.
  int b_zero = 0;
  for (const auto& s : sols)
    if (s.B == 0.0) {
      ++b_zero;
      CHECK((std::abs(s.C - 8.0) < 1e-12 || std::abs(s.C - 4.0) < 1e-12 || std::abs(s.C + 4.0) < 1e-12));
    }
  CHECK(b_zero == 3);
}

TEST_CASE("every cubic solution zeroes the cubic forms") {
  SimplexOptions precise;
  precise.extended_precision = true;
  for (const auto& s : solve_special_cubics()) {
    const AnalyticControl f = AnalyticControl::special_family(s.A, s.B, s.C);
    const auto [k3, r3] = forms_K3_R3(f, precise);
    CHECK(std::abs(k3) <= 1e-10);
    CHECK(std::abs(r3) <= 1e-10);
  }
}

TEST_CASE("trap certificates for the worked systems") {
  const Observable obs = Observable::standard(1.0);
  SUBCASE("anharmonic: third order") {
    const TrapCertificate cert = certify_trap_order(ThreeLevelSystem::s1(), obs, 20, 5);
    CHECK_FALSE(cert.open_case);
    CHECK(cert.order == 3);
    CHECK(cert.witness_order == 4);
    CHECK(cert.witness_value > 0.0);
    CHECK(cert.consistent);
  }
  SUBCASE("controllable equidistant ladder: seventh order") {
    const TrapCertificate cert = certify_trap_order(ThreeLevelSystem::s2(), obs, 20, 5);
    CHECK_FALSE(cert.open_case);
    CHECK(cert.order == 7);
    CHECK(cert.witness_order == 8);
    CHECK(cert.witness_value > 0.0);
    CHECK(cert.consistent);
  }
  SUBCASE("equal dipole moduli: open") {
    ThreeLevelSystem open_sys = ThreeLevelSystem::s2();
    open_sys.v23 = cplx(0.0, 1.0);
    const TrapCertificate cert = certify_trap_order(open_sys, obs, 5, 5);
    CHECK(cert.open_case);
    CHECK(cert.order == 0);
  }
  SUBCASE("opposite frequencies: third order") {
    const ThreeLevelSystem sym(0.0, 1.0, 0.0, 1.0, 1.7);
    const TrapCertificate cert = certify_trap_order(sym, obs, 20, 5);
    CHECK(cert.system_class == TrapSystemClass::SymmetricUncontrollable);
    CHECK(cert.order == 3);
    CHECK(cert.consistent);
  }
  SUBCASE("horizon below one period is rejected") {
    CHECK_THROWS_AS(certify_trap_order(ThreeLevelSystem::s1(), obs, 5, 5, 1.0), HorizonTooShort);
  }
  SUBCASE("serialization carries the verdict") {
    const TrapCertificate cert = certify_trap_order(ThreeLevelSystem::s1(), obs, 3, 5);
    const std::string j = certificate_to_json(cert);
    CHECK(j.find("\"order\": 3") != std::string::npos);
    CHECK(j.find("anharmonic") != std::string::npos);
    const std::string t = certificate_to_text(cert);
    CHECK(t.find("trap order   : 3") != std::string::npos);
  }
}

TEST_CASE("odd orders vanish: the objective is even along every direction") {
  CounterRng rng(17);
  const ThreeLevelSystem s1 = ThreeLevelSystem::s1();
  const Observable obs = Observable::standard(1.0);
  const InitialState init(3);
  const CMat3 o = obs.matrix(), rho0 = init.density_matrix();
  for (int trial = 0; trial < 5; ++trial) {
    const AnalyticControl f = random_trig(rng, 2.0 * kPi / 1.5, 4);
    for (double eps : {0.3, 0.1, 0.03}) {
      const PiecewiseControl plus = discretize_midpoint(f.scaled(eps), 800);
      const PiecewiseControl minus = discretize_midpoint(f.scaled(-eps), 800);
      const double jp = objective_from_trace(propagate(s1, plus), o, rho0);
      const double jm = objective_from_trace(propagate(s1, minus), o, rho0);
      CHECK(std::abs(jp - jm) / 2.0 <= 1e-12 * (1.0 + std::abs(jp)));
    }
  }
}

TEST_CASE("scaling check recovers the expansion order") {
  const Observable obs = Observable::standard(1.0);
  SUBCASE("order 2 residual for a direction off H1") {
    const ThreeLevelSystem s1 = ThreeLevelSystem::s1();
    const AnalyticControl f = AnalyticControl::trig_poly(2.0 * kPi / 1.5, 1.5, {0.4, 0.8}, {});
    const std::vector<double> eps = {0.1, 0.056, 0.032, 0.018, 0.01};
    const ScalingCheck check = directional_scaling_check(s1, obs, f, 2, eps, 512);
    CHECK(check.slope >= 2.7);
    // The objective decreases along this direction for small eps.
    const double j = objective(s1, obs, InitialState(3), discretize_midpoint(f.scaled(0.05), 2048));
    CHECK(j < obs.lambda3);
  }
  SUBCASE("order 4 residual for the anharmonic witness") {
    const ThreeLevelSystem s1 = ThreeLevelSystem::s1();
    const AnalyticControl w = witness_anharmonic(s1);
    const std::vector<double> eps = {0.1, 0.056, 0.032, 0.018};
    const ScalingCheck check = directional_scaling_check(s1, obs, w, 4, eps, 1024);
    CHECK(check.slope >= 4.7);
  }
}

TEST_CASE("scaling check refuses a grid drowned in the numerical floor") {
  const Observable obs = Observable::standard(1.0);
  const CubicSystemSolution sol = canonical_special_solution();
  const AnalyticControl f4 = AnalyticControl::special_family(sol.A, sol.B, sol.C);
  // At these amplitudes the order-8 residual sits far below the
  // discretization floor, so no point survives the filter.
  const std::vector<double> eps = {3e-3, 1e-3};
  CHECK_THROWS_AS(directional_scaling_check(ThreeLevelSystem::s2(), obs, f4, 8, eps, 512),
                  ResolutionInsufficient);
}
