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
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

namespace gnse {

/// How a lattice wavevector k maps to the symbol of Λ and of ∂_j.
/// `lattice`: |Λ| symbol |k|, ∂_j ↦ i k_j.  `angular`: 2π|k| and i 2π k_j.
/// Both make Λ² = −Σ∂_j² hold exactly.
enum class Convention { lattice, angular };

/// `two_thirds` truncates quadratic products to max_j |k_j| ≤ n/3.
enum class DealiasRule { two_thirds, none };

std::string_view to_string(Convention c);
std::string_view to_string(DealiasRule r);
Convention parse_convention(std::string_view s);
DealiasRule parse_dealias_rule(std::string_view s);

using Wavevector = std::array<int, 3>;

inline double norm2(const Wavevector& k) {
  return double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
}
inline double norm(const Wavevector& k) { return std::sqrt(norm2(k)); }

/// Periodic grid on the unit torus. Coefficients live on the symmetric cube
/// k_j ∈ [-n/2, n/2]; physical-space work uses a 2n-point padded grid so that
/// quadratic products are computed without aliasing.
class TorusGrid {
 public:
  TorusGrid() = default;

  int n_per_dim() const { return n_; }
  int half() const { return n_ / 2; }
  /// Modes per axis in coefficient storage (n + 1).
  int side() const { return n_ + 1; }
  std::size_t mode_count() const {
    return std::size_t(side()) * side() * side();
  }
  /// Points per axis of the padded physical grid.
  int physical_side() const { return 2 * n_; }
  std::size_t physical_count() const {
    return std::size_t(physical_side()) * physical_side() * physical_side();
  }

  DealiasRule dealias_rule() const { return rule_; }
  Convention convention() const { return convention_; }
  /// +∞ when the rule is `none`.
  double dealias_radius() const;

  std::size_t index(const Wavevector& k) const {
    const int h = half(), s = side();
    return (std::size_t(k[0] + h) * s + std::size_t(k[1] + h)) * s +
           std::size_t(k[2] + h);
  }
  Wavevector wavevector(std::size_t idx) const {
    const int s = side(), h = half();
    const int k2 = int(idx % s);
    const int k1 = int((idx / s) % s);
    const int k0 = int(idx / (std::size_t(s) * s));
    return {k0 - h, k1 - h, k2 - h};
  }
  bool resolves(const Wavevector& k) const {
    const int h = half();
    return std::abs(k[0]) <= h && std::abs(k[1]) <= h && std::abs(k[2]) <= h;
  }
  bool in_dealiased_band(const Wavevector& k) const;

  /// 1 or 2π depending on the convention.
  double wavenumber_scale() const;
  /// Largest resolved |k| scaled by the convention.
  double max_wavenumber() const;

  /// Same lattice, different convention or dealias rule.
  TorusGrid with_convention(Convention c) const;
  TorusGrid with_dealias_rule(DealiasRule r) const;

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  friend TorusGrid make_grid(int, DealiasRule, Convention);
  int n_ = 0;
  DealiasRule rule_ = DealiasRule::two_thirds;
  Convention convention_ = Convention::lattice;
};

/// Throws InvalidArgument for odd n or n < 4.
TorusGrid make_grid(int n_per_dim, DealiasRule rule,
                    Convention convention = Convention::lattice);

}  // namespace gnse
