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

#include <span>
#include <string>
#include <vector>

#include "gnse/fft.hpp"
#include "gnse/field.hpp"

namespace gnse {

/// h(r) = 0 for r ≤ ½, 1 for r ≥ 1, quintic smoothstep in between; l = 1 − h.
struct SmoothCutoff {
  double h(double r) const;
  double l(double r) const { return 1.0 - h(r); }
};

/// Smooth dyadic partition of unity on the lattice: χ(ξ) + Σ_{j≥0} ρ(2^{-j}ξ) = 1.
///
/// Built from a C^∞ radial plateau φ with φ = 1 on [0, 2/3] and φ = 0 on
/// [5/4, ∞): χ = φ and ρ(ξ) = φ(ξ/2) − φ(ξ). The telescoping sum makes the
/// partition identity exact up to rounding, ρ_j is supported in
/// 2^j·[2/3, 5/2], and blocks with |i − j| ≥ 2 have disjoint supports.
/// Block −1 is χ. Moduli are lattice |k| regardless of grid convention.
class DyadicPartition {
 public:
  DyadicPartition() = default;
  explicit DyadicPartition(const TorusGrid& grid);

  const TorusGrid& grid() const { return grid_; }
  /// ⌈log₂ max|k|⌉ + 1.
  int j_max() const { return j_max_; }

  static double plateau(double r);
  /// Radial profile of block j ≥ −1 at lattice modulus r.
  static double profile(int j, double r);
  /// Weights of block j on the grid cube, in storage order.
  std::span<const double> weights(int j) const;

  std::string profile_spec() const;

 private:
  TorusGrid grid_;
  int j_max_ = 0;
  std::vector<std::vector<double>> weights_;  // index j + 1
};

DyadicPartition build_partition(const TorusGrid& grid);

/// Δ_j f; throws InvalidArgument for j ∉ [−1, j_max].
SpectralField lp_block(const SpectralField& f, int j, const DyadicPartition& p);
/// S_i f = Σ_{−1 ≤ j ≤ i−1} Δ_j f (zero for i ≤ −1).
SpectralField low_cut(const SpectralField& f, int i, const DyadicPartition& p);

/// L^p norm of sampled values on the unit torus (mean-based quadrature); for
/// multi-component inputs the pointwise Euclidean magnitude is used.
double lp_norm(std::span<const RealArray> components, double p);
/// L^p norm of a field evaluated on the padded physical grid.
double lp_norm(const SpectralField& f, double p);

/// ‖(2^{sm} ‖Δ_m f‖_{L^p})_m‖_{ℓ^q}; p, q may be +∞.
double besov_norm(const SpectralField& f, double s, double p, double q,
                  const DyadicPartition& part);

struct BlockNormRow {
  int j;
  double block_norm;
  double weighted;
};
std::vector<BlockNormRow> besov_table(const SpectralField& f, double s, double p,
                                      const DyadicPartition& part);

struct FrequencySplit {
  SpectralField low;
  SpectralField high;
};

/// 𝓗_λ f = h(|k|/λ) f̂, 𝓛_λ f = f − 𝓗_λ f.
FrequencySplit freq_split(const SpectralField& f, double lambda,
                          const SmoothCutoff& c = {});

struct RegularityEstimate {
  double slope;
  double std_err;
  std::vector<double> log2_block_sup;  // per j in range
};

/// Least-squares slope of log₂(mean ‖Δ_j f‖_{L^∞}) against j on [j_lo, j_hi].
/// A field with ‖Δ_j f‖ ~ 2^{-sj} has slope −s.
RegularityEstimate estimate_regularity(std::span<const SpectralField> samples,
                                       int j_lo, int j_hi,
                                       const DyadicPartition& part);

struct LineFit {
  double slope;
  double intercept;
  double slope_stderr;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace gnse
