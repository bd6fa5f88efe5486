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

#include "gnse/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <random>
#include <sstream>

#include "gnse/anderson.hpp"
#include "gnse/errors.hpp"
#include "gnse/littlewood_paley.hpp"
#include "gnse/noise.hpp"
#include "gnse/paraproduct.hpp"
#include "gnse/renormalization.hpp"
#include "gnse/solver.hpp"
#include "gnse/spectral_ops.hpp"

namespace gnse {
namespace {

using Check = std::function<void(std::vector<CheckResult>&)>;

CheckResult le(std::string suite, std::string name, double measured, double tol) {
  CheckResult r{std::move(suite), std::move(name), measured, tol,
                measured <= tol ? Verdict::pass : Verdict::fail, {}};
  if (!std::isfinite(measured)) r.verdict = Verdict::fail;
  return r;
}

double rel(const SpectralField& a, const SpectralField& b) {
  const double d = l2_norm(a - b);
  const double s = l2_norm(b);
  return s == 0.0 ? d : d / s;
}

SpectralField random_solenoidal(const TorusGrid& g, std::mt19937_64& rng, double radius) {
  return leray_project(random_field(g, Rank::vector, rng, radius));
}

// ---------------------------------------------------------------- algebra
void algebra(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const std::string S = "algebra";
  const auto g = make_grid(std::min(cfg.n_per_dim, 16), DealiasRule::two_thirds);
  const auto part = build_partition(g);
  std::mt19937_64 rng(cfg.seed);
  const double band = g.dealias_radius();

  double bony = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto f = random_field(g, Rank::scalar, rng, band);
    const auto h = random_field(g, Rank::scalar, rng, band);
    const auto sum = para(f, h, {ParaKind::lt}, part) + para(f, h, {ParaKind::gt}, part) +
                     para(f, h, {ParaKind::res}, part);
    bony = std::max(bony, rel(sum, multiply(f, h)));
  }
  out.push_back(le(S, "bony_reconstruction", bony, 1e-12));

  double idem = 0.0, divres = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto u = random_field(g, Rank::vector, rng, g.max_wavenumber());
    const auto p = leray_project(u);
    idem = std::max(idem, rel(leray_project(p), p));
    divres = std::max(divres, divergence_residual(p));
  }
  out.push_back(le(S, "leray_idempotence", idem, 1e-12));
  out.push_back(le(S, "leray_divergence_residual", divres, 1e-12));

  double pu = 0.0;
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    double s = 0.0;
    for (int j = -1; j <= part.j_max(); ++j) s += part.weights(j)[i];
    pu = std::max(pu, std::abs(s - 1.0));
  }
  out.push_back(le(S, "partition_of_unity", pu, 1e-10));

  const auto ga = g.with_convention(Convention::angular);
  const auto pa = build_partition(ga);
  double comm = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto f = random_field(ga, Rank::scalar, rng, 3.0);
    const auto h = random_field(ga, Rank::scalar, rng, 3.0);
    const auto c = -1.0 * lambda_commutator(f, h, 2.0, CommutatorProduct::full, pa);
    const auto ref = 2.0 * dot(gradient(f), gradient(h));
    comm = std::max(comm, rel(c, ref));
  }
  out.push_back(le(S, "laplacian_commutator", comm, 1e-10));

  double herm = 0.0;
  {
    const auto u = random_field(g, Rank::vector, rng, band);
    const auto v = random_field(g, Rank::vector, rng, band);
    herm = hermitian_defect(multiply(u, v, TensorKind::symmetric));
  }
  out.push_back(le(S, "product_hermitian", herm, 1e-12));

  double sig = 0.0;
  {
    const Wavevector k{2, 1, 0};
    const Complex one[] = {1.0};
    const auto e = single_mode(g, Rank::scalar, k, one);
    const double a = 3.0;
    const auto d = apply_multiplier(e, MultiplierSpec::sigma_a(a)) -
                   apply_multiplier(e, MultiplierSpec::sigma());
    const double expect = MultiplierSpec::sigma_a(a).symbol_at(g, k) -
                          MultiplierSpec::sigma().symbol_at(g, k);
    sig = std::abs(d.at(0, k) - expect);
  }
  out.push_back(le(S, "sigma_multiplier_algebra", sig, 1e-15));
}

// ------------------------------------------------------------------ noise
void noise(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const std::string S = "noise";
  const auto g = make_grid(8, DealiasRule::two_thirds);
  const int M = cfg.ensemble_size;
  const double t = cfg.renorm_t > 0 ? cfg.renorm_t : 1.0;
  const std::vector<Wavevector> ks{{1, 0, 0}, {0, 2, 0}, {2, 2, 1}};
  std::vector<std::vector<double>> samples(ks.size());
  double herm = 0.0, div = 0.0;
  for (int m = 0; m < M; ++m) {
    NoiseState st(g, cfg.nu, split_seed(cfg.seed, std::uint64_t(m)));
    evolve_X(st, t);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const Complex z = st.F().at(0, ks[i]);
      samples[i].push_back(z.real());
      samples[i].push_back(z.imag());
    }
    if (m == 0) {
      const auto X = assemble_X(st);
      herm = hermitian_defect(X);
      div = divergence_residual(X);
    }
  }
  out.push_back(le(S, "X_hermitian", herm, 1e-14));
  out.push_back(le(S, "X_divergence_free", div, 1e-12));
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double a = cfg.nu * std::pow(norm(ks[i]), 2.5);
    const double expect = -std::expm1(-2.0 * a * t) / (4.0 * a);
    const auto& s = samples[i];
    const double n = double(s.size());
    double m2 = 0.0, m4 = 0.0;
    for (double x : s) {
      m2 += x * x;
      m4 += x * x * x * x;
    }
    m2 /= n;
    m4 /= n;
    const double se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
    const double z = se > 0 ? std::abs(m2 - expect) / se : 0.0;
    std::ostringstream name;
    name << "ou_variance_k" << ks[i][0] << ks[i][1] << ks[i][2];
    auto r = le(S, name.str(), z, 3.0);
    std::ostringstream d;
    d << "empirical " << m2 << " expected " << expect << " (z-score)";
    r.detail = d.str();
    if (M < 100) {
      r.verdict = Verdict::underpowered;
      r.detail += "; ensemble_size below 100";
    }
    out.push_back(r);
  }
}

// ----------------------------------------------------------------- renorm
void renorm(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const std::string S = "renorm";
  double sym = 0.0;
  for (double lam : cfg.lambda_list) {
    const auto r = renorm_constants(lam, cfg.renorm_t, cfg.nu, lam);
    for (double r2 : r.r2) sym = std::max(sym, std::abs(r2 - r.r1 / 3.0) / std::max(r.r1, 1e-300));
  }
  out.push_back(le(S, "r2_equals_r1_over_3", sym, 1e-12));

  std::vector<double> inc;
  for (double lam = 32; lam <= 128; lam *= 2)
    inc.push_back(renorm_constants(2 * lam, 1.0, cfg.nu, 2 * lam).trace_sum() -
                  renorm_constants(lam, 1.0, cfg.nu, lam).trace_sum());
  const auto [lo, hi] = std::minmax_element(inc.begin(), inc.end());
  out.push_back(le(S, "log_growth_increment_spread", (*hi - *lo) / *hi, 0.10));

  const int M = std::max(cfg.ensemble_size, 1);
  const auto g = make_grid(16, DealiasRule::two_thirds);
  try {
    if (M < 100) {
      CheckResult r{S, "calibration_factor", 0.0, 1.0, Verdict::underpowered,
                    "ensemble_size below 100"};
      out.push_back(r);
      return;
    }
    const auto c = calibrate_normalization(g, M, std::min(cfg.calib_lambda, 8.0), 1.0,
                                           cfg.nu, cfg.seed);
    CheckResult r{S, "calibration_factor", double(c.factor), 1.0,
                  c.factor == 1 ? Verdict::pass : Verdict::fail, {}};
    std::ostringstream d;
    d << "residual_1 " << c.residual_1 << " residual_4 " << c.residual_4 << " noise "
      << c.noise_level;
    r.detail = d.str();
    out.push_back(r);
  } catch (const CalibrationInconclusive& e) {
    out.push_back({S, "calibration_factor", 0.0, 1.0, Verdict::underpowered, e.what()});
  }
}

// ----------------------------------------------------------------- solver
void solver(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const std::string S = "solver";
  const auto g = make_grid(8, DealiasRule::two_thirds);
  const auto part = build_partition(g);
  SolverParams p;
  p.nu = cfg.nu;
  p.tau = cfg.tau;

  {
    SolverParams q = p;
    q.noise_enabled = false;
    auto s = init(q, SpectralField(g, Rank::vector), cfg.seed);
    for (int i = 0; i < 5; ++i) step(s, 1e-2);
    out.push_back(le(S, "zero_equilibrium", max_abs_coeff(s.u()), 0.0));
  }
  {
    SolverParams q = p;
    q.noise_enabled = false;
    q.nonlinear_enabled = false;
    const Wavevector k{2, 0, 0};
    const Complex amp[] = {0.0, Complex(0.3, 0.1), 0.0};
    const auto u0 = single_mode(g, Rank::vector, k, amp);
    auto s = init(q, u0, cfg.seed);
    const int nsteps = 10;
    const double dt = 0.01;
    for (int i = 0; i < nsteps; ++i) step(s, dt);
    const double f = std::exp(-q.nu * std::pow(2.0, 2.5) * dt * nsteps);
    out.push_back(le(S, "linear_mode_decay", rel(s.w, f * u0), 1e-10));
  }
  {
    std::mt19937_64 rng(cfg.seed);
    auto s = init(p, 0.5 * random_solenoidal(g, rng, 2.0), cfg.seed);
    double div = 0.0, mean = 0.0;
    for (int i = 0; i < 4; ++i) {
      step(s, 5e-3);
      div = std::max(div, divergence_residual(s.w));
      mean = std::max(mean, std::abs(s.w.at(0, {0, 0, 0})) + std::abs(s.w.at(1, {0, 0, 0})) +
                                std::abs(s.w.at(2, {0, 0, 0})));
    }
    out.push_back(le(S, "w_divergence_free", div, 1e-12));
    out.push_back(le(S, "w_mean_zero", mean, 0.0));
    const auto [wh, wl] = split_high_low(s, part);
    out.push_back(le(S, "split_reconstruction", max_abs_coeff(wh + wl - s.w), 0.0));

    std::stringstream buf;
    save_checkpoint(buf, s);
    auto r = load_checkpoint(buf);
    step(s, 5e-3);
    step(r, 5e-3);
    out.push_back(le(S, "checkpoint_resume_bitexact", max_abs_coeff(s.w - r.w), 0.0));
  }
  {
    SolverParams q = p;
    q.noise_enabled = false;
    std::mt19937_64 rng(cfg.seed + 1);
    auto s = init(q, random_solenoidal(g, rng, 2.0), cfg.seed);
    const double dt = 1e-3;
    double worst = 0.0;
    double e0 = std::pow(l2_norm(s.w), 2);
    for (int i = 0; i < 50; ++i) {
      step(s, dt);
      const double e1 = std::pow(l2_norm(s.w), 2);
      worst = std::max(worst, (e1 - e0) / dt);
      e0 = e1;
    }
    out.push_back(le(S, "energy_nonincreasing", worst, 1e-8));
  }
}

// Column j of a real operator's complex-linear extension. A lone basis vector
// is not Hermitian, so it is split into its cosine and sine parts.
template <class Op>
std::vector<Complex> dense_column(const TorusGrid& g, std::size_t j, Op op) {
  const auto k = g.wavevector(j);
  const Wavevector mk{-k[0], -k[1], -k[2]};
  const Complex one[] = {1.0};
  if (k == mk) {
    const auto r = op(single_mode(g, Rank::scalar, k, one));
    return {r.coeffs().begin(), r.coeffs().end()};
  }
  const Complex unit_i[] = {Complex(0.0, 1.0)};
  const auto c = op(single_mode(g, Rank::scalar, k, one));     // e_k + e_{−k}
  const auto s = op(single_mode(g, Rank::scalar, k, unit_i));  // i(e_k − e_{−k})
  std::vector<Complex> out(g.mode_count());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = 0.5 * c.coeffs()[i] - Complex(0.0, 0.5) * s.coeffs()[i];
  return out;
}

// --------------------------------------------------------------- anderson
void anderson(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const std::string S = "anderson";
  const auto g = make_grid(8, DealiasRule::none);
  std::mt19937_64 rng(cfg.seed);
  auto eta = random_field(g, Rank::scalar, rng, 2.0, 0.0, true);
  {
    double sup = 0.0;
    for (double v : to_physical(eta)) sup = std::max(sup, std::abs(v));
    eta *= 1.0 / sup;
  }
  const auto f = random_field(g, Rank::scalar, rng, 3.0);
  const auto h = random_field(g, Rank::scalar, rng, 3.0);
  const double lhs = inner(apply_H(f, eta), h), rhs = inner(f, apply_H(h, eta));
  out.push_back(le(S, "H_symmetric", std::abs(lhs - rhs) / std::abs(lhs), 1e-12));

  {
    ResolventProblem p{SpectralField(g, Rank::scalar), h, 50.0, 1e-14, 5};
    const auto r = resolvent_solve(p);
    const auto exact = apply_multiplier(h, MultiplierSpec::shifted_inverse(50.0, 2.5));
    out.push_back(le(S, "free_resolvent_exact", rel(r.f, exact), 1e-14));
    out.push_back(le(S, "free_resolvent_iterations", double(r.iters), 1.0));
  }

  ResolventProblem p{eta, h, 50.0, cfg.anderson_tol, cfg.anderson_max_iter};
  const auto r = resolvent_solve(p);
  out.push_back(le(S, "resolvent_residual", r.residual, cfg.anderson_tol));

  // Dense reference: columns of (Λ^{5/2} + η + a) on the mode basis.
  const std::size_t n = g.mode_count();
  Eigen::MatrixXcd A(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto col = dense_column(g, j, [&](const SpectralField& v) {
      return apply_shifted(v, eta, 0.0);
    });
    for (std::size_t i = 0; i < n; ++i) A(Eigen::Index(i), Eigen::Index(j)) = col[i];
  }
  Eigen::VectorXcd rhs_v(n);
  for (std::size_t i = 0; i < n; ++i) rhs_v(Eigen::Index(i)) = h.coeffs()[i];
  Eigen::MatrixXcd shifted = A + 50.0 * Eigen::MatrixXcd::Identity(Eigen::Index(n), Eigen::Index(n));
  const Eigen::VectorXcd x = shifted.partialPivLu().solve(rhs_v);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += std::norm(r.f.coeffs()[i] - x(Eigen::Index(i)));
    den += std::norm(x(Eigen::Index(i)));
  }
  out.push_back(le(S, "resolvent_matches_dense", std::sqrt(num / den), 1e-6));

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (A + A.adjoint()), Eigen::EigenvaluesOnly);
  const auto probe = ground_energy_probe(eta, 50.0, cfg.probe_iters);
  out.push_back(le(S, "ground_energy_matches_dense",
                   std::abs(probe.e_bottom - es.eigenvalues()(0)), 1e-4));

  int prev = std::numeric_limits<int>::max();
  bool mono = true;
  for (double a = 6.25; a <= 100.0; a *= 2) {
    ResolventProblem q{eta, h, a, 1e-10, 200};
    const int it = resolvent_solve(q).iters;
    mono = mono && it <= prev;
    prev = it;
  }
  out.push_back({S, "iterations_monotone_in_a", mono ? 1.0 : 0.0, 1.0,
                 mono ? Verdict::pass : Verdict::fail, {}});
}

void emit(std::ostream& os, const CheckResult& r) {
  nlohmann::json j;
  j["record"] = "verdict";
  j["suite"] = r.suite;
  j["check"] = r.name;
  j["measured"] = r.measured;
  j["tolerance"] = r.tolerance;
  j["verdict"] = to_string(r.verdict);
  if (!r.detail.empty()) j["detail"] = r.detail;
  os << j.dump() << '\n';
  os.flush();
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::underpowered: return "underpowered";
    case Verdict::error: return "error";
  }
  return "unknown";
}

int VerifyReport::exit_code() const {
  bool fail = false, under = false, err = false;
  for (const auto& c : checks) {
    fail |= c.verdict == Verdict::fail;
    under |= c.verdict == Verdict::underpowered;
    err |= c.verdict == Verdict::error;
  }
  if (err) return 3;
  if (fail) return 1;
  if (under) return 4;
  return 0;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"algebra", "noise", "renorm", "solver", "anderson",
                                          "all"};
  return s;
}

VerifyReport run_verify(const std::string& suite, const RunConfig& cfg, std::ostream& os) {
  using Runner = void (*)(const RunConfig&, std::vector<CheckResult>&);
  const std::vector<std::pair<std::string, Runner>> table{
      {"algebra", algebra}, {"noise", noise},       {"renorm", renorm},
      {"solver", solver},   {"anderson", anderson},
  };
  if (std::find(verify_suites().begin(), verify_suites().end(), suite) == verify_suites().end())
    throw InvalidArgument("unknown verify suite '" + suite + "'");
  VerifyReport rep;
  for (const auto& [name, run] : table) {
    if (suite != "all" && suite != name) continue;
    std::vector<CheckResult> got;
    try {
      run(cfg, got);
    } catch (const std::exception& e) {
      got.push_back({name, "suite_aborted", 0.0, 0.0, Verdict::error, e.what()});
    }
    for (const auto& c : got) {
      emit(os, c);
      rep.checks.push_back(c);
    }
  }
  return rep;
}

}  // namespace gnse
