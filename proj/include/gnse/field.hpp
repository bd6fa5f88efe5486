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

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "gnse/grid.hpp"

namespace gnse {

using Complex = std::complex<double>;

enum class Rank { scalar, vector, matrix };

constexpr int component_count(Rank r) {
  return r == Rank::scalar ? 1 : (r == Rank::vector ? 3 : 9);
}
std::string_view to_string(Rank r);

/// Row-major index of matrix entry (i, j).
constexpr int matrix_component(int i, int j) { return 3 * i + j; }

/// Truncated Fourier series of a real scalar, vector or 3x3 matrix field on
/// the unit torus: f(x) = Σ_k f̂(k) e^{i2πk·x}. Coefficients are stored for
/// every k of the grid's symmetric cube, component-major. Realness of f is
/// the invariant f̂(−k) = conj f̂(k), which every library operation preserves.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const TorusGrid& grid, Rank rank);

  const TorusGrid& grid() const { return grid_; }
  Rank rank() const { return rank_; }
  int components() const { return component_count(rank_); }

  std::span<Complex> component(int c);
  std::span<const Complex> component(int c) const;
  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  Complex& at(int c, const Wavevector& k) {
    return coeffs_[std::size_t(c) * grid_.mode_count() + grid_.index(k)];
  }
  const Complex& at(int c, const Wavevector& k) const {
    return coeffs_[std::size_t(c) * grid_.mode_count() + grid_.index(k)];
  }

  /// Scalar field holding component c.
  SpectralField extract(int c) const;
  void assign(int c, const SpectralField& scalar);

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);

  bool empty() const { return coeffs_.empty(); }

 private:
  TorusGrid grid_;
  Rank rank_ = Rank::scalar;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);
SpectralField operator-(SpectralField a);

/// Throws InvalidArgument unless both fields share a grid (and rank, if asked).
void require_compatible(const SpectralField& a, const SpectralField& b,
                        bool same_rank = true);
void require_rank(const SpectralField& f, Rank r, const char* op);

/// L² norm on the unit torus (Parseval): sqrt(Σ_k Σ_c |f̂_c(k)|²).
double l2_norm(const SpectralField& f);
/// Real L² inner product Σ Re(conj f̂ ĝ).
double inner(const SpectralField& f, const SpectralField& g);
double max_abs_coeff(const SpectralField& f);
/// max |f̂(−k) − conj f̂(k)| over all components.
double hermitian_defect(const SpectralField& f);
void enforce_hermitian(SpectralField& f);
bool has_nan(const SpectralField& f);

SpectralField transpose(const SpectralField& m);

/// Splits f into (a, b) with a ≈ part and a + b reproducing f bit for bit:
/// b = f − part, a = f − b.
std::pair<SpectralField, SpectralField> split_exact(const SpectralField& f,
                                                    const SpectralField& part);
/// 3x3 identity matrix field scaled by diag[i] (constant in space).
SpectralField constant_diagonal(const TorusGrid& g, const std::array<double, 3>& diag);
SpectralField constant_scalar(const TorusGrid& g, double value);

/// Real field supported on the pair ±k with f̂_c(k) = amp[c].
SpectralField single_mode(const TorusGrid& g, Rank rank, const Wavevector& k,
                          std::span<const Complex> amp);

/// Random real field with independent Gaussian coefficients on resolved modes
/// 0 < |k| ≤ radius, amplitude decaying like (1+|k|)^{-decay}.
SpectralField random_field(const TorusGrid& g, Rank rank, std::mt19937_64& rng,
                           double radius, double decay = 0.0,
                           bool include_mean = false);

}  // namespace gnse
