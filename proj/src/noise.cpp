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

#include "gnse/noise.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "gnse/errors.hpp"
#include "gnse/field_io.hpp"
#include "gnse/littlewood_paley.hpp"

namespace gnse {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  return mix(master ^ mix(stream));
}

NoiseState::NoiseState(const TorusGrid& grid, double nu, std::uint64_t seed)
    : F_(grid, Rank::vector), nu_(nu), rng_(seed) {
  if (!(nu > 0.0)) throw InvalidArgument("NoiseState: nu must be > 0");
}

void NoiseState::set_F(SpectralField F, double t) {
  require_rank(F, Rank::vector, "NoiseState::set_F");
  if (!(F.grid() == F_.grid())) throw InvalidArgument("NoiseState::set_F: grid mismatch");
  F_ = std::move(F);
  t_ = t;
}

double NoiseState::rate(const Wavevector& k) const {
  const double r = grid().wavenumber_scale() * norm(k);
  return nu_ * std::pow(r, 2.5);
}

namespace {

// Calls fn(i, j) for every representative i of a ±k pair (k ≠ 0), j = index(−k).
template <class Fn>
void for_each_pair(const TorusGrid& g, Fn&& fn) {
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const auto k = g.wavevector(i);
    const auto j = g.index({-k[0], -k[1], -k[2]});
    if (j <= i) continue;
    fn(i, j, k);
  }
}

}  // namespace

SpectralField sample_increments(NoiseState& state, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("sample_increments: dt must be > 0");
  const auto& g = state.grid();
  SpectralField out(g, Rank::vector);
  const double sd = std::sqrt(0.5 * dt);
  for_each_pair(g, [&](std::size_t i, std::size_t j, const Wavevector&) {
    for (int c = 0; c < 3; ++c) {
      const double re = sd * state.normal();
      const double im = sd * state.normal();
      out.component(c)[i] = Complex(re, im);
      out.component(c)[j] = Complex(re, -im);
    }
  });
  return out;
}

void evolve_X(NoiseState& state, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("evolve_X: dt must be > 0");
  const auto& g = state.grid();
  SpectralField F = state.F();
  for_each_pair(g, [&](std::size_t i, std::size_t j, const Wavevector& k) {
    const double a = state.rate(k);
    const double decay = std::exp(-a * dt);
    const double sd = std::sqrt(-std::expm1(-2.0 * a * dt) / (4.0 * a));
    for (int c = 0; c < 3; ++c) {
      const Complex eta(sd * state.normal(), sd * state.normal());
      const Complex v = decay * F.component(c)[i] + eta;
      F.component(c)[i] = v;
      F.component(c)[j] = std::conj(v);
    }
  });
  const double t = state.t() + dt;
  state.set_F(std::move(F), t);
}

SpectralField assemble_X(const NoiseState& state, std::optional<double> lambda) {
  const auto& g = state.grid();
  SpectralField X(g, Rank::vector);
  const SmoothCutoff cut;
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const auto k = g.wavevector(i);
    const double k2 = norm2(k);
    if (k2 == 0.0) continue;
    const double w = lambda ? cut.l(std::sqrt(k2) / *lambda) : 1.0;
    if (w == 0.0) continue;
    Complex kf(0.0, 0.0);
    for (int c = 0; c < 3; ++c) kf += double(k[c]) * state.F().component(c)[i];
    for (int c = 0; c < 3; ++c)
      X.component(c)[i] = w * (state.F().component(c)[i] - (double(k[c]) / k2) * kf);
  }
  return X;
}

void NoiseState::save(std::ostream& os) const {
  write_field(os, F_);
  io::write_pod(os, t_);
  io::write_pod(os, nu_);
  std::ostringstream eng;
  eng << rng_ << ' ' << normal_;
  io::write_string(os, eng.str());
}

NoiseState NoiseState::load(std::istream& is) {
  NoiseState s;
  s.F_ = read_field(is);
  s.t_ = io::read_pod<double>(is);
  s.nu_ = io::read_pod<double>(is);
  std::istringstream eng(io::read_string(is));
  eng >> s.rng_ >> s.normal_;
  if (!eng) throw InvalidArgument("NoiseState::load: corrupt generator state");
  return s;
}

}  // namespace gnse
