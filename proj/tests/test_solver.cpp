// Copyright 2026 The gnse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gnse/errors.hpp"
#include "gnse/paraproduct.hpp"
#include "gnse/solver.hpp"
#include "gnse/spectral_ops.hpp"
#include "oracles.hpp"

using namespace gnse;

namespace {

SolverParams deterministic(bool nonlinear = true) {
  SolverParams p;
  p.noise_enabled = false;
  p.nonlinear_enabled = nonlinear;
  return p;
}

SpectralField field_with_norm(const TorusGrid& g, double target, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto f = oracle::solenoidal(g, rng, 2.0);
  return (target / l2_norm(f)) * f;
}

}  // namespace

TEST(Phi1, SeriesAndClosedFormAgree) {
  EXPECT_EQ(phi1(0.0), 1.0);
  for (double z : {-1e-5, 5e-5, -9.9e-5, 1.01e-4, -0.3, -20.0}) {
    const long double zl = z;
    const long double ref = std::expm1(zl) / zl;
    EXPECT_NEAR(phi1(z), double(ref), 1e-15) << z;
  }
}

TEST(SolverInit, ZeroInputGivesUnitCutoff) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  const auto s = init(SolverParams{}, SpectralField(g, Rank::vector), 1);
  EXPECT_EQ(s.lambda, 1.0);
  EXPECT_EQ(s.stop_index, 0);
  EXPECT_EQ(s.t, 0.0);
  EXPECT_EQ(max_abs_coeff(s.Y), 0.0);
  EXPECT_EQ(max_abs_coeff(s.Q), 0.0);
  EXPECT_FALSE(s.projected_input);
}

TEST(SolverInit, CutoffFromCeilingOfNorm) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  const auto s = init(SolverParams{}, field_with_norm(g, 1.2, 3), 1);
  EXPECT_EQ(s.stop_index, 2);
  EXPECT_NEAR(s.lambda, std::pow(3.0, 40.0 / 13.0), 1e-12);
}

TEST(SolverInit, ProjectsAndRejectsNaN) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  const Complex amp[] = {1.0, 0.0, 0.0};
  auto u = single_mode(g, Rank::vector, {1, 0, 0}, amp);
  u.at(0, {0, 0, 0}) = 0.5;
  const auto s = init(SolverParams{}, u, 1);
  EXPECT_TRUE(s.projected_input);
  EXPECT_EQ(max_abs_coeff(s.w), 0.0);
  u.at(1, {1, 1, 0}) = Complex(std::nan(""), 0.0);
  EXPECT_THROW(init(SolverParams{}, u, 1), InvalidArgument);
}

TEST(SolverStep, ZeroIsEquilibrium) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  auto s = init(deterministic(), SpectralField(g, Rank::vector), 1);
  for (int i = 0; i < 10; ++i) step(s, 0.01);
  EXPECT_EQ(max_abs_coeff(s.u()), 0.0);
  EXPECT_NEAR(s.t, 0.1, 1e-15);
  EXPECT_THROW(step(s, 0.0), InvalidArgument);
}

TEST(SolverStep, LinearSingleModeDecay) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  const Complex amp[] = {0.0, Complex(0.4, -0.2), 0.0};
  const auto u0 = single_mode(g, Rank::vector, {2, 0, 0}, amp);
  auto s = init(deterministic(false), u0, 1);
  const double dt = 0.02;
  for (int i = 0; i < 25; ++i) step(s, dt);
  const double f = std::exp(-std::pow(2.0, 2.5) * 0.5);
  EXPECT_LE(max_abs_coeff(s.w - f * u0), 1e-10);
}

// w*(t) = cos(t)V with V solenoidal on |k| ≤ 2; the residual of the w
// equation is fed back as forcing.
TEST(SolverStep, ManufacturedSolutionFirstOrder) {
  const auto g = make_grid(16, DealiasRule::two_thirds);
  std::mt19937_64 rng(17);
  auto V = oracle::solenoidal(g, rng, 2.0);
  V = (0.2 / l2_norm(V)) * V;
  const auto LV = apply_multiplier(V, MultiplierSpec::fractional_laplacian(2.5));
  const auto divVV = leray_project(divergence(multiply(V, V)));
  const Forcing forcing = [&](const SolverState&, double t) {
    return -std::sin(t) * V + std::cos(t) * LV + std::cos(t) * std::cos(t) * divVV;
  };
  const double T = 0.4;
  std::vector<double> err;
  for (int nsteps : {20, 40, 80}) {
    auto s = init(deterministic(), V, 1);
    for (int i = 0; i < nsteps; ++i) step(s, T / nsteps, forcing);
    err.push_back(l2_norm(s.w - std::cos(T) * V));
  }
  const double r1 = err[0] / err[1], r2 = err[1] / err[2];
  EXPECT_NEAR(r1, 2.0, 0.2) << err[0] << " " << err[1];
  EXPECT_NEAR(r2, 2.0, 0.2) << err[1] << " " << err[2];
}

TEST(SolverStep, DeterministicEnergyNonincreasing) {
  const auto g = make_grid(16, DealiasRule::two_thirds);
  auto s = init(deterministic(), field_with_norm(g, 3.0, 21), 1);
  const double dt = 1e-3;
  double e0 = std::pow(l2_norm(s.u()), 2);
  for (int i = 0; i < 40; ++i) {
    step(s, dt);
    const double e1 = std::pow(l2_norm(s.u()), 2);
    EXPECT_LE((e1 - e0) / dt, 1e-8) << i;
    e0 = e1;
  }
}

TEST(SolverStep, StochasticStepKeepsInvariants) {
  const auto g = make_grid(16, DealiasRule::two_thirds);
  auto s = init(SolverParams{}, field_with_norm(g, 0.5, 22), 5);
  for (int i = 0; i < 10; ++i) {
    step(s, 2e-3);
    EXPECT_LT(divergence_residual(s.w), 1e-12);
    EXPECT_LT(divergence_residual(s.Y), 1e-12);
    for (int c = 0; c < 3; ++c) EXPECT_EQ(s.w.at(c, {0, 0, 0}), Complex(0.0));
    EXPECT_EQ(hermitian_defect(s.w), 0.0);
  }
  EXPECT_NEAR(s.noise.t(), s.t, 1e-15);
  EXPECT_GT(max_abs_coeff(s.Y), 0.0);
  EXPECT_GT(max_abs_coeff(s.Q), 0.0);
}

TEST(SolverStep, CflRejectionCarriesAdmissibleDt) {
  const auto g = make_grid(16, DealiasRule::two_thirds);
  auto s = init(deterministic(), field_with_norm(g, 50.0, 23), 1);
  try {
    step(s, 1.0);
    FAIL() << "expected StepRejected";
  } catch (const StepRejected& e) {
    EXPECT_GT(e.admissible_dt(), 0.0);
    EXPECT_LT(e.admissible_dt(), 1.0);
    EXPECT_EQ(s.t, 0.0);
    EXPECT_NO_THROW(step(s, 0.9 * e.admissible_dt()));
  }
}

// Piecewise-constant X makes the ETD1 update for Q exact; the Duhamel
// integral is summed mode by mode in extended precision.
TEST(SolverStep, QMatchesDuhamelForFrozenNoise) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  auto s = init(SolverParams{.nonlinear_enabled = false}, SpectralField(g, Rank::vector), 31);
  const double dt = 0.01;
  const int nsteps = 30;
  std::vector<SpectralField> Xs;
  for (int i = 0; i < nsteps; ++i) {
    Xs.push_back(s.X());
    step(s, dt);
  }
  double err = 0.0;
  for (std::size_t idx = 0; idx < g.mode_count(); ++idx) {
    const long double a = std::pow((long double)norm(g.wavevector(idx)), 2.5L);
    for (int c = 0; c < 3; ++c) {
      std::complex<long double> q = 0.0L;
      for (int i = 0; i < nsteps; ++i) {
        const long double w = a == 0 ? (long double)dt : -std::expm1(-a * dt) / a;
        const long double decay = std::exp(-a * dt * (nsteps - 1 - i));
        const Complex x = Xs[std::size_t(i)].component(c)[idx];
        q += decay * w * 2.0L * std::complex<long double>(x.real(), x.imag());
      }
      if (idx == g.index({0, 0, 0})) q = 0.0L;
      err = std::max(err, double(std::abs(q - std::complex<long double>(s.Q.component(c)[idx]))));
    }
  }
  EXPECT_LE(err, 1e-13 * std::max(1.0, max_abs_coeff(s.Q)));
}

TEST(UpdateCutoff, StaysBelowThreshold) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  auto s = init(SolverParams{}, field_with_norm(g, 1.5, 4), 1);
  const double lam = s.lambda;
  s.w = field_with_norm(g, 1.9, 4);
  update_cutoff(s);
  EXPECT_EQ(s.lambda, lam);
  EXPECT_EQ(s.stop_index, 2);
  EXPECT_TRUE(s.stop_times.empty());
}

TEST(UpdateCutoff, CrossesOneThreshold) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  auto s = init(SolverParams{}, field_with_norm(g, 1.5, 4), 1);
  s.t = 0.25;
  s.w = field_with_norm(g, 3.1, 4);
  update_cutoff(s);
  EXPECT_EQ(s.stop_index, 3);
  ASSERT_EQ(s.stop_times.size(), 1u);
  EXPECT_EQ(s.stop_times[0], 0.25);
  EXPECT_NEAR(s.lambda, std::pow(1.0 + l2_norm(s.w), 40.0 / 13.0), 1e-12 * s.lambda);
}

TEST(UpdateCutoff, JumpsTwoThresholds) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  auto s = init(SolverParams{}, field_with_norm(g, 0.5, 4), 1);
  s.w = field_with_norm(g, 3.5, 4);
  update_cutoff(s);
  EXPECT_EQ(s.stop_index, 3);
  EXPECT_EQ(s.stop_times.size(), 2u);
}

TEST(SplitHighLow, ZeroQAndLargeCutoff) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  const auto part = build_partition(g);
  auto s = init(SolverParams{}, field_with_norm(g, 1.0, 5), 1);
  auto [wh, wl] = split_high_low(s, part);
  EXPECT_EQ(max_abs_coeff(wh), 0.0);
  EXPECT_EQ(max_abs_coeff(wl - s.w), 0.0);
  std::mt19937_64 rng(6);
  s.Q = oracle::solenoidal(g, rng, 3.0);
  s.lambda = 4.0 * g.max_wavenumber();
  std::tie(wh, wl) = split_high_low(s, part);
  EXPECT_EQ(max_abs_coeff(wh), 0.0);
}

TEST(SplitHighLow, MatchesRecomposition) {
  const auto g = make_grid(16, DealiasRule::two_thirds);
  const auto part = build_partition(g);
  auto s = init(SolverParams{}, field_with_norm(g, 1.0, 7), 1);
  std::mt19937_64 rng(8);
  s.Q = oracle::solenoidal(g, rng, 5.0);
  s.lambda = 2.0;
  const auto [wh, wl] = split_high_low(s, part);
  // A coefficient can only miss exactness when no double pair summing to
  // w(k) exists, which needs w_H(k) or w_L(k) in a higher binade than w(k).
  int inexact = 0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < g.mode_count(); ++i) {
      const Complex f = s.w.component(c)[i], a = wh.component(c)[i], b = wl.component(c)[i];
      for (const auto& [fr, ar, br] : {std::array{f.real(), a.real(), b.real()},
                                       std::array{f.imag(), a.imag(), b.imag()}}) {
        if (ar + br == fr) continue;
        ++inexact;
        EXPECT_GT(std::max(std::abs(ar), std::abs(br)), std::abs(fr));
        EXPECT_LE(std::abs(ar + br - fr), std::ldexp(1.0, std::ilogb(std::max(std::abs(ar), std::abs(br))) - 52));
      }
    }
  RecordProperty("inexact_coefficients", inexact);
  const auto ref = leray_project(
      -1.0 * divergence(para(s.w, freq_split(s.Q, s.lambda).high, {ParaKind::lt, TensorKind::symmetric}, part)));
  EXPECT_LE(oracle::rel_err(wh, ref), 1e-14);
  EXPECT_GT(l2_norm(wh), 0.0);
  EXPECT_LT(divergence_residual(wh), 1e-13);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(wh.at(c, {0, 0, 0}), Complex(0.0));
}

TEST(QuadForm, SpecialCases) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  auto s = init(deterministic(), field_with_norm(g, 1.0, 9), 1);
  EXPECT_NEAR(quad_form_A(s.w, s, 0.0), -0.5 * std::pow(hdot_norm(s.w, 1.25), 2), 1e-14);
  EXPECT_EQ(quad_form_A(SpectralField(g, Rank::vector), s, 3.0), 0.0);
}

TEST(QuadForm, MatchesIndependentAssembly) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  SolverParams p;
  p.nu = 0.7;
  auto s = init(p, field_with_norm(g, 1.0, 10), 11);
  evolve_X(s.noise, 0.3);
  s.lambda = 3.0;
  const double r = 0.37;
  const double got = quad_form_A(s.w, s, r);

  // X_λ, then A_ij = (i/2)(k_i X_j + k_j X_i), then Σ_ij ⟨w_i, A_ij * w_j⟩.
  const auto& F = s.noise.F();
  std::array<SpectralField, 3> X{SpectralField(g, Rank::scalar), SpectralField(g, Rank::scalar),
                                 SpectralField(g, Rank::scalar)};
  for (std::size_t idx = 0; idx < g.mode_count(); ++idx) {
    const auto k = g.wavevector(idx);
    const double k2 = norm2(k);
    if (k2 == 0.0) continue;
    Complex kf = 0.0;
    for (int c = 0; c < 3; ++c) kf += double(k[c]) * F.component(c)[idx];
    const double l = 1.0 - double(oracle::cutoff_h(norm(k) / 3.0L));
    for (int c = 0; c < 3; ++c)
      X[std::size_t(c)].component(0)[idx] = (F.component(c)[idx] - double(k[c]) * kf / k2) * l;
  }
  long double expect = 0.0L;
  for (std::size_t idx = 0; idx < g.mode_count(); ++idx) {
    const long double ka = std::pow((long double)norm(g.wavevector(idx)), 2.5L);
    for (int c = 0; c < 3; ++c) {
      const long double m2 = std::norm(s.w.component(c)[idx]);
      expect += -0.5L * p.nu * ka * m2 - r * m2;
    }
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      SpectralField A(g, Rank::scalar), wj(g, Rank::scalar), wi(g, Rank::scalar);
      for (std::size_t idx = 0; idx < g.mode_count(); ++idx) {
        const auto k = g.wavevector(idx);
        A.component(0)[idx] = Complex(0.0, 0.5) * (double(k[i]) * X[std::size_t(j)].component(0)[idx] +
                                                  double(k[j]) * X[std::size_t(i)].component(0)[idx]);
        wj.component(0)[idx] = s.w.component(j)[idx];
        wi.component(0)[idx] = s.w.component(i)[idx];
      }
      const auto Aw = oracle::convolve(A, wj);
      for (std::size_t idx = 0; idx < g.mode_count(); ++idx)
        expect -= (std::conj(wi.component(0)[idx]) * Aw.component(0)[idx]).real();
    }
  EXPECT_LE(std::abs(got - double(expect)), 1e-12 * std::abs(double(expect)));
}

TEST(EnergyReport, ZeroStateAndSingleMode) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  const auto part = build_partition(g);
  auto z = init(deterministic(), SpectralField(g, Rank::vector), 1);
  const auto r0 = energy_report(z, part);
  EXPECT_EQ(r0.w_l2, 0.0);
  EXPECT_EQ(r0.wL_l2, 0.0);
  EXPECT_EQ(r0.wL_h54, 0.0);
  EXPECT_EQ(r0.quad_form, 0.0);

  const double a = 0.3;
  const Complex amp[] = {0.0, 0.0, a};
  auto s = init(deterministic(), single_mode(g, Rank::vector, {2, 0, 0}, amp), 1);
  const auto r = energy_report(s, part);
  // the pair ±k contributes two modes of modulus a
  EXPECT_NEAR(r.wL_h54, a * std::pow(2.0, 1.25) * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(r.w_l2, a * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(r.r_lambda, 0.0);
}

TEST(EnergyReport, HistoryTimesIncrease) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  const auto part = build_partition(g);
  auto s = init(SolverParams{}, field_with_norm(g, 0.5, 12), 3);
  for (int i = 0; i < 4; ++i) {
    step(s, 5e-3);
    const auto rec = energy_report(s, part);
    EXPECT_GT(rec.r_lambda, 0.0);
    EXPECT_GE(rec.wL_h54, 0.0);
  }
  ASSERT_EQ(s.history.size(), 4u);
  for (std::size_t i = 1; i < s.history.size(); ++i) EXPECT_GT(s.history[i].t, s.history[i - 1].t);
}

TEST(Checkpoint, ResumeIsBitExact) {
  const auto g = make_grid(8, DealiasRule::two_thirds);
  auto s = init(SolverParams{}, field_with_norm(g, 0.8, 13), 9);
  for (int i = 0; i < 3; ++i) step(s, 5e-3);
  std::stringstream buf;
  save_checkpoint(buf, s);
  auto r = load_checkpoint(buf);
  for (int i = 0; i < 3; ++i) {
    step(s, 5e-3);
    step(r, 5e-3);
  }
  EXPECT_EQ(max_abs_coeff(s.w - r.w), 0.0);
  EXPECT_EQ(max_abs_coeff(s.Y - r.Y), 0.0);
  EXPECT_EQ(max_abs_coeff(s.Q - r.Q), 0.0);
  EXPECT_EQ(s.t, r.t);
  EXPECT_EQ(s.lambda, r.lambda);
  std::stringstream bad("NOTACKPT");
  EXPECT_THROW(load_checkpoint(bad), InvalidArgument);
}
