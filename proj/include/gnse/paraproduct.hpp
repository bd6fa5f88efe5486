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

#include "gnse/littlewood_paley.hpp"
#include "gnse/spectral_ops.hpp"

namespace gnse {

/// Bony decomposition fg = f ≺ g + f ≻ g + f ∘ g with
///   f ≺ g = Σ_i S_{i−1}f Δ_i g,  f ≻ g = g ≺ f,  f ∘ g = Σ_{|i−j|≤1} Δ_i f Δ_j g.
enum class ParaKind { lt, gt, res };

struct ParaMode {
  ParaKind kind = ParaKind::lt;
  /// `symmetric` on two vectors gives the ⊗_s variants:
  /// (f ≺_s g)_{ab} = ½(f_a ≺ g_b + f_b ≺ g_a).
  TensorKind tensor = TensorKind::plain;
};

/// Component layout follows `multiply`; block products are formed on the
/// padded grid and the sum is restricted to the dealiased band, so
/// lt + gt + res reproduces `multiply` to rounding.
SpectralField para(const SpectralField& f, const SpectralField& g, ParaMode mode,
                   const DyadicPartition& part);

enum class CommutatorProduct { full, para_lt_sym };

/// Λ^γ(f□g) − (Λ^γ f)□g − f□(Λ^γ g). For `para_lt_sym`, □ is ≺_s on two
/// vectors and plain ≺ otherwise. Throws InvalidArgument for γ ≤ 0.
SpectralField lambda_commutator(const SpectralField& f, const SpectralField& g,
                                double gamma, CommutatorProduct product,
                                const DyadicPartition& part);

/// 𝒞^{≺_s}(w, Q) = (∂_t w + νΛ^{5/2} w) ≺_s Q + ν[Λ^{5/2}(w ≺_s Q) − Λ^{5/2}w ≺_s Q − w ≺_s Λ^{5/2}Q],
/// the time-derivative-free form of the heat commutator.
SpectralField heat_commutator(const SpectralField& dtw_plus_diss, const SpectralField& w,
                              const SpectralField& q, double nu,
                              const DyadicPartition& part);

/// ℛ(f, g, h) = (f ≺ g) ∘ h − f (g ∘ h), scalar fields only.
SpectralField trilinear_R(const SpectralField& f, const SpectralField& g,
                          const SpectralField& h, const DyadicPartition& part);

/// 𝒞(f, g) = σ(D)(f ≺ g) − f ≺ σ(D)g for a smoothing multiplier σ.
SpectralField sigma_commutator(const SpectralField& f, const SpectralField& g,
                               const MultiplierSpec& m, const DyadicPartition& part);

}  // namespace gnse
