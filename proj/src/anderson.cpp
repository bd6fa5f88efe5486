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

#include "gnse/anderson.hpp"

#include <cmath>
#include <random>

#include "gnse/errors.hpp"
#include "gnse/spectral_ops.hpp"

namespace gnse {
namespace {

constexpr int kGrowthWindow = 10;
constexpr double kDriftTol = 1e-10;

void require_scalar_pair(const SpectralField& f, const SpectralField& eta, const char* op) {
  require_rank(f, Rank::scalar, op);
  require_rank(eta, Rank::scalar, op);
  require_compatible(f, eta);
}

}  // namespace

SpectralField apply_H(const SpectralField& f, const SpectralField& eta) {
  require_scalar_pair(f, eta, "apply_H");
  SpectralField out = apply_multiplier(f, MultiplierSpec::fractional_laplacian(2.5));
  out += multiply(eta, f);
  out *= -1.0;
  return out;
}

SpectralField apply_shifted(const SpectralField& f, const SpectralField& eta, double a) {
  SpectralField out = apply_H(f, eta);
  out *= -1.0;
  out += a * f;
  return out;
}

ResolventResult resolvent_solve(const ResolventProblem& p) {
  require_scalar_pair(p.g, p.eta, "resolvent_solve");
  if (!(p.a > 0.0)) throw InvalidArgument("resolvent_solve: a must be > 0");
  if (!(p.tol > 0.0)) throw InvalidArgument("resolvent_solve: tol must be > 0");
  if (p.max_iter <= 0) throw InvalidArgument("resolvent_solve: max_iter must be > 0");
  ResolventResult r;
  r.f = SpectralField(p.g.grid(), Rank::scalar);
  const double gnorm = l2_norm(p.g);
  if (gnorm == 0.0) {
    r.converged = true;
    return r;
  }
  const auto sigma = MultiplierSpec::sigma_tilde_a(p.a);
  double prev = 1.0;  // residual of f = 0
  int growth = 0;
  for (int it = 1; it <= p.max_iter; ++it) {
    r.f = apply_multiplier(multiply(r.f, p.eta) - p.g, sigma);
    r.iters = it;
    r.residual = l2_norm(apply_shifted(r.f, p.eta, p.a) - p.g) / gnorm;
    if (!std::isfinite(r.residual))
      throw NoContraction("resolvent_solve: iteration diverged; increase a", 2.0 * p.a);
    if (r.residual <= p.tol) {
      r.converged = true;
      return r;
    }
    growth = r.residual > prev ? growth + 1 : 0;
    if (growth >= kGrowthWindow)
      throw NoContraction("resolvent_solve: residual grew for 10 consecutive iterations; "
                          "increase a",
                          2.0 * p.a);
    prev = r.residual;
  }
  return r;
}

GroundEnergy ground_energy_probe(const SpectralField& eta, double a, int iters) {
  require_rank(eta, Rank::scalar, "ground_energy_probe");
  if (iters <= 0) throw InvalidArgument("ground_energy_probe: iters must be > 0");
  const auto& g = eta.grid();
  std::mt19937_64 rng(0x5eedULL);
  SpectralField v = random_field(g, Rank::scalar, rng, g.dealias_radius(), 0.0, true);
  v += constant_scalar(g, 1.0);
  v *= 1.0 / l2_norm(v);

  ResolventProblem p{eta, SpectralField{}, a, 1e-12, 400};
  GroundEnergy out;
  double mu_prev = 0.0;
  for (int it = 1; it <= iters; ++it) {
    p.g = v;
    const auto rs = resolvent_solve(p);
    const double mu = inner(v, rs.f);
    out.mu_top = mu;
    out.iters = it;
    out.residual = l2_norm(rs.f - mu * v);
    const double nrm = l2_norm(rs.f);
    if (nrm == 0.0) throw DegenerateData("ground_energy_probe: resolvent annihilated iterate");
    v = rs.f;
    v *= 1.0 / nrm;
    if (it > 1 && std::abs(mu - mu_prev) <= kDriftTol * std::abs(mu)) {
      out.converged = true;
      break;
    }
    mu_prev = mu;
  }
  out.e_bottom = 1.0 / out.mu_top - a;
  return out;
}

}  // namespace gnse
