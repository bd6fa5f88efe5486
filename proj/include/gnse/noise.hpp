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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>

#include "gnse/field.hpp"

namespace gnse {

/// SplitMix64 finaliser applied to (master, stream): seed of trajectory
/// `stream` under master seed `master`.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);

/// Per-mode Ornstein-Uhlenbeck coefficients F(t, k) of the stochastic
/// convolution X, driven by complex Brownian motions β(k) with
/// β(−k) = conj β(k) and E|dβ_j(k)|² = dt.
///
/// F is stored unprojected (one complex value per component and k ≠ 0);
/// the Leray factor of e_k is applied in assemble_X. The OU rate of mode k is
/// ν|k|^{5/2} with |k| scaled by the grid convention.
class NoiseState {
 public:
  NoiseState() = default;
  NoiseState(const TorusGrid& grid, double nu, std::uint64_t seed);

  const TorusGrid& grid() const { return F_.grid(); }
  double t() const { return t_; }
  double nu() const { return nu_; }
  const SpectralField& F() const { return F_; }

  /// Replace the OU coefficients (synthetic states in tests); must be a
  /// Hermitian vector field on the same grid with zero mean mode.
  void set_F(SpectralField F, double t);

  std::mt19937_64& rng() { return rng_; }
  /// Standard normal draw from the state's stream.
  double normal() { return normal_(rng_); }

  /// OU decay rate ν|k|^{5/2} of mode k.
  double rate(const Wavevector& k) const;

  void advance_time(double dt) { t_ += dt; }

  void save(std::ostream& os) const;
  static NoiseState load(std::istream& is);

 private:
  SpectralField F_;
  double t_ = 0.0;
  double nu_ = 1.0;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Complex increments dβ(k) over a step of length dt: vector field with
/// independent real and imaginary parts of variance dt/2 on one
/// representative of each ±k pair, conjugated on the partner. Advances the
/// state's random stream but not its time. Throws InvalidArgument for dt ≤ 0.
SpectralField sample_increments(NoiseState& state, double dt);

/// Exact OU update F ← e^{−a dt}F + η with Var(Re η) = Var(Im η) =
/// (1 − e^{−2a dt})/(4a), a = ν|k|^{5/2}. No time-discretisation error.
void evolve_X(NoiseState& state, double dt);

/// X = Σ_{k≠0} e_k F(k), optionally with F replaced by 𝔩(|k|/λ)F (= 𝓛_λX).
SpectralField assemble_X(const NoiseState& state,
                         std::optional<double> lambda = std::nullopt);

}  // namespace gnse
