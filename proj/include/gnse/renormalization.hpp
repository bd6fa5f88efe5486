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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gnse/littlewood_paley.hpp"
#include "gnse/noise.hpp"

namespace gnse {

/// Renormalisation constants at (λ, t, ν):
///   r¹_λ     = Σ_{k≠0} ¼ 𝔩(|k|/λ)² (1 − e^{−2ν|k|^{5/2}t})/(2ν|k|^{1/2}) (1 + ν|k|^{5/2}/2)^{−1}
///   r^{2,m}_λ = same summand × k_m²/|k|².
/// The subtracted matrix is diag(r¹ + r^{2,m}); `trace_sum` is the scalar
/// reading r¹ + Σ_m r^{2,m}.
struct RenormResult {
  double r1 = 0.0;
  std::array<double, 3> r2{};
  double lambda = 0.0;
  double t = 0.0;
  double nu = 0.0;
  double K = 0.0;
  double tail_estimate = 0.0;

  std::array<double, 3> diagonal() const { return {r1 + r2[0], r1 + r2[1], r1 + r2[2]}; }
  double trace_sum() const { return r1 + r2[0] + r2[1] + r2[2]; }
};

/// Direct lattice sum over 0 < |k| ≤ K. 𝔩(|k|/λ) vanishes for |k| ≥ λ, so
/// the sum is exact once K ≥ λ; K < λ throws IncompleteSum.
RenormResult renorm_constants(double lambda, double t, double nu, double K);

struct EnhancedNoise {
  SpectralField A;  ///< ∇_sym 𝓛_λ X
  SpectralField P;  ///< (1 + νΛ^{5/2}/2)^{−1} A
  SpectralField B;  ///< A ∘ P − diag(r¹ + r^{2,m}) / normalization
  RenormResult renorm;
  std::array<double, 3> subtracted{};  ///< diagonal actually removed from A ∘ P
};

/// The resonant product uses matrix contraction (A ∘ P)_{ij} = Σ_l A_{il} ∘ P_{lj}.
EnhancedNoise enhanced_noise(const NoiseState& state, double lambda,
                             const DyadicPartition& part, double normalization = 1.0);

/// Spatial mean of every entry of A ∘ P (row-major 3x3).
std::array<double, 9> resonant_mean(const EnhancedNoise& en);

struct CalibrationResult {
  int factor = 1;
  double residual_1 = 0.0;   ///< ‖mean − r Id‖_F
  double residual_4 = 0.0;   ///< ‖mean − (r/4) Id‖_F
  double noise_level = 0.0;  ///< Frobenius norm of the entrywise standard errors
  std::array<double, 9> mean{};
  std::array<double, 9> std_err{};
};

/// Picks c ∈ {1, 4} minimising ‖mean(samples) − diag(r)/c‖_F. Throws
/// CalibrationInconclusive when both residuals are within 3 × noise_level.
CalibrationResult calibrate_from_samples(std::span<const std::array<double, 9>> samples,
                                         const std::array<double, 3>& r_diag);

/// Samples `ensemble_size` independent trajectories (seeds split from
/// `seed`), evolves each exactly to time t and calibrates on the spatial
/// means of ∇_sym𝓛_λX ∘ P^λ. Requires ensemble_size ≥ 100.
CalibrationResult calibrate_normalization(const TorusGrid& grid, int ensemble_size,
                                          double lambda, double t, double nu,
                                          std::uint64_t seed);

/// Ensemble average of ‖Δ_m B_{1,1}‖²_{L²} over matrix fields B.
double block_second_moment(std::span<const SpectralField> ensemble, int m,
                           const DyadicPartition& part);

}  // namespace gnse
