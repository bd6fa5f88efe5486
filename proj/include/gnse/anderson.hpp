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

#pragma once

#include "gnse/field.hpp"

namespace gnse {

struct ResolventProblem {
  SpectralField eta;  ///< scalar potential
  SpectralField g;    ///< scalar right-hand side
  double a = 1.0;
  double tol = 1e-10;
  int max_iter = 100;
};

struct ResolventResult {
  SpectralField f;
  double residual = 0.0;  ///< ‖Λ^{5/2}f + ηf + af − g‖ / ‖g‖
  int iters = 0;
  bool converged = false;
};

/// 𝓗f = −Λ^{5/2}f − ηf, product dealiased per the grid rule.
SpectralField apply_H(const SpectralField& f, const SpectralField& eta);

/// (−𝓗 + a) f = Λ^{5/2}f + ηf + af.
SpectralField apply_shifted(const SpectralField& f, const SpectralField& eta, double a);

/// Fixed point f ← σ̃_a(D)(fη − g) from f = 0. Throws NoContraction when the
/// residual grows for 10 consecutive iterations.
ResolventResult resolvent_solve(const ResolventProblem& p);

struct GroundEnergy {
  double mu_top = 0.0;
  double e_bottom = 0.0;     ///< 1/μ_top − a, the bottom of the spectrum of Λ^{5/2} + η
  double residual = 0.0;     ///< ‖G_a v − μ v‖ for the final unit iterate
  int iters = 0;
  bool converged = false;    ///< Rayleigh quotient drift ≤ 1e−10
};

/// Power iteration on G_a = (−𝓗 + a)^{−1}, one resolvent solve per application.
GroundEnergy ground_energy_probe(const SpectralField& eta, double a, int iters);

}  // namespace gnse
