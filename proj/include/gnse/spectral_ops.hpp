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

#include <optional>
#include <vector>

#include "gnse/field.hpp"

namespace gnse {

/// Radial real Fourier symbol. |k| below means the convention-scaled modulus
/// (|k| or 2π|k|).
struct MultiplierSpec {
  enum class Kind {
    fractional_laplacian,  ///< |k|^γ
    heat,                  ///< exp(−ν |k|^γ t), γ = 5/2 by default
    shifted_inverse,       ///< (c + ν |k|^γ)^{-1}
    sigma,                 ///< −(1 + |k|^{5/2})^{-1}
    sigma_a,               ///< −(1 + a + |k|^{5/2})^{-1}
    sigma_tilde_a,         ///< −(a + |k|^{5/2})^{-1}
  };

  Kind kind = Kind::fractional_laplacian;
  double gamma = 2.5;
  double nu = 1.0;
  double t = 0.0;
  double c = 1.0;
  double a = 1.0;
  /// Falls back to the field's grid convention when unset.
  std::optional<Convention> convention;

  static MultiplierSpec fractional_laplacian(double gamma);
  static MultiplierSpec heat(double nu, double t, double gamma = 2.5);
  static MultiplierSpec shifted_inverse(double c, double gamma, double nu = 1.0);
  static MultiplierSpec sigma();
  static MultiplierSpec sigma_a(double a);
  static MultiplierSpec sigma_tilde_a(double a);

  MultiplierSpec with(Convention conv) const {
    MultiplierSpec m = *this;
    m.convention = conv;
    return m;
  }

  /// Symbol value at a scaled modulus; infinite where the symbol is singular.
  double symbol(double modulus) const;
  double symbol_at(const TorusGrid& g, const Wavevector& k) const;
};

/// coeffs'(k) = symbol(k) coeffs(k) on every component. Throws DivisionByZero
/// if the symbol is singular on a populated mode.
SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m);

/// P_t = exp(−νΛ^{5/2} t). Throws InvalidArgument for t < 0.
SpectralField heat_propagate(const SpectralField& f, double t, double nu);

/// Id − k⊗k/|k|² on every k ≠ 0; the mean mode is annihilated.
SpectralField leray_project(const SpectralField& u);
SpectralField project_mean_zero(const SpectralField& f);

/// ½(∂_i u_j + ∂_j u_i) with ∂_j ↦ i s k_j, s the convention scale.
SpectralField sym_gradient(const SpectralField& u);
/// Scalar → vector (∂_i f).
SpectralField gradient(const SpectralField& f);
/// Matrix → vector (div T)_i = Σ_j ∂_j T_{ji}; vector → scalar Σ_j ∂_j u_j.
SpectralField divergence(const SpectralField& t);

/// How the components of two operands combine in a bilinear product.
///   scalar·X, X·scalar    componentwise scaling
///   vector⊗vector         outer product (plain) or ½(u⊗v + v⊗u) (symmetric)
///   matrix·vector         matrix-vector contraction
///   vector·matrix         vᵀA
///   matrix·matrix         (AB)_{ij} = Σ_l A_{il} B_{lj}
enum class TensorKind { plain, symmetric };

struct BilinearTerm {
  int out;
  int lhs;
  int rhs;
  double weight;
};

struct BilinearLayout {
  Rank out_rank;
  std::vector<BilinearTerm> terms;
};

/// Throws InvalidArgument for unsupported rank combinations.
BilinearLayout bilinear_layout(Rank lhs, Rank rhs, TensorKind kind);

/// Pointwise product computed exactly on the padded grid, then restricted to
/// the grid's dealiased band.
SpectralField multiply(const SpectralField& f, const SpectralField& g,
                       TensorKind kind = TensorKind::plain);
/// Σ_l u_l v_l.
SpectralField dot(const SpectralField& u, const SpectralField& v);

/// max_k |k·û(k)| / ‖u‖ (scaled by convention), 0 for the zero field.
double divergence_residual(const SpectralField& u);

}  // namespace gnse
