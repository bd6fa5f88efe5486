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

#include "gnse/grid.hpp"

#include <limits>
#include <numbers>

#include "gnse/errors.hpp"

namespace gnse {

std::string_view to_string(Convention c) {
  return c == Convention::lattice ? "lattice" : "angular";
}

std::string_view to_string(DealiasRule r) {
  return r == DealiasRule::two_thirds ? "two_thirds" : "none";
}

Convention parse_convention(std::string_view s) {
  if (s == "lattice") return Convention::lattice;
  if (s == "angular") return Convention::angular;
  throw InvalidArgument("unknown convention '" + std::string(s) + "'");
}

DealiasRule parse_dealias_rule(std::string_view s) {
  if (s == "two_thirds") return DealiasRule::two_thirds;
  if (s == "none") return DealiasRule::none;
  throw InvalidArgument("unknown dealias rule '" + std::string(s) + "'");
}

double TorusGrid::dealias_radius() const {
  if (rule_ == DealiasRule::none) return std::numeric_limits<double>::infinity();
  return double(n_) / 3.0;
}

bool TorusGrid::in_dealiased_band(const Wavevector& k) const {
  if (!resolves(k)) return false;
  if (rule_ == DealiasRule::none) return true;
  const double r = dealias_radius();
  return std::abs(k[0]) <= r && std::abs(k[1]) <= r && std::abs(k[2]) <= r;
}

double TorusGrid::wavenumber_scale() const {
  return convention_ == Convention::angular ? 2.0 * std::numbers::pi : 1.0;
}

double TorusGrid::max_wavenumber() const {
  return wavenumber_scale() * half() * std::sqrt(3.0);
}

TorusGrid TorusGrid::with_convention(Convention c) const {
  TorusGrid g = *this;
  g.convention_ = c;
  return g;
}

TorusGrid TorusGrid::with_dealias_rule(DealiasRule r) const {
  TorusGrid g = *this;
  g.rule_ = r;
  return g;
}

TorusGrid make_grid(int n_per_dim, DealiasRule rule, Convention convention) {
  if (n_per_dim < 4 || n_per_dim % 2 != 0)
    throw InvalidArgument("n_per_dim must be even and >= 4, got " +
                          std::to_string(n_per_dim));
  TorusGrid g;
  g.n_ = n_per_dim;
  g.rule_ = rule;
  g.convention_ = convention;
  return g;
}

}  // namespace gnse
