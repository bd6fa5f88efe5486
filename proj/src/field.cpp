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

#include "gnse/field.hpp"

#include <algorithm>
#include <cmath>

#include "gnse/errors.hpp"

namespace gnse {

std::string_view to_string(Rank r) {
  switch (r) {
    case Rank::scalar: return "scalar";
    case Rank::vector: return "vector";
    case Rank::matrix: return "matrix";
  }
  return "?";
}

SpectralField::SpectralField(const TorusGrid& grid, Rank rank)
    : grid_(grid), rank_(rank),
      coeffs_(std::size_t(component_count(rank)) * grid.mode_count()) {}

std::span<Complex> SpectralField::component(int c) {
  const auto m = grid_.mode_count();
  return std::span<Complex>(coeffs_).subspan(std::size_t(c) * m, m);
}

std::span<const Complex> SpectralField::component(int c) const {
  const auto m = grid_.mode_count();
  return std::span<const Complex>(coeffs_).subspan(std::size_t(c) * m, m);
}

SpectralField SpectralField::extract(int c) const {
  if (c < 0 || c >= components()) throw InvalidArgument("component out of range");
  SpectralField out(grid_, Rank::scalar);
  std::ranges::copy(component(c), out.coeffs_.begin());
  return out;
}

void SpectralField::assign(int c, const SpectralField& scalar) {
  require_rank(scalar, Rank::scalar, "assign");
  if (!(scalar.grid() == grid_)) throw InvalidArgument("assign: grid mismatch");
  std::ranges::copy(scalar.coeffs_, component(c).begin());
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }
SpectralField operator-(SpectralField a) { return a *= -1.0; }

void require_compatible(const SpectralField& a, const SpectralField& b,
                        bool same_rank) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("fields live on different grids");
  if (same_rank && a.rank() != b.rank())
    throw InvalidArgument("rank mismatch: " + std::string(to_string(a.rank())) +
                          " vs " + std::string(to_string(b.rank())));
}

void require_rank(const SpectralField& f, Rank r, const char* op) {
  if (f.rank() != r)
    throw InvalidArgument(std::string(op) + ": expected " +
                          std::string(to_string(r)) + " field, got " +
                          std::string(to_string(f.rank())));
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

double inner(const SpectralField& f, const SpectralField& g) {
  require_compatible(f, g);
  double s = 0.0;
  auto a = f.coeffs();
  auto b = g.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) s += (std::conj(a[i]) * b[i]).real();
  return s;
}

double max_abs_coeff(const SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

double hermitian_defect(const SpectralField& f) {
  const auto& g = f.grid();
  double d = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto comp = f.component(c);
    for (std::size_t i = 0; i < g.mode_count(); ++i) {
      const auto k = g.wavevector(i);
      const auto j = g.index({-k[0], -k[1], -k[2]});
      d = std::max(d, std::abs(comp[j] - std::conj(comp[i])));
    }
  }
  return d;
}

void enforce_hermitian(SpectralField& f) {
  const auto& g = f.grid();
  for (int c = 0; c < f.components(); ++c) {
    auto comp = f.component(c);
    for (std::size_t i = 0; i < g.mode_count(); ++i) {
      const auto k = g.wavevector(i);
      const auto j = g.index({-k[0], -k[1], -k[2]});
      if (j < i) continue;
      const Complex avg = 0.5 * (comp[i] + std::conj(comp[j]));
      comp[i] = avg;
      comp[j] = std::conj(avg);
    }
  }
}

bool has_nan(const SpectralField& f) {
  return std::ranges::any_of(f.coeffs(), [](const Complex& c) {
    return !std::isfinite(c.real()) || !std::isfinite(c.imag());
  });
}

SpectralField transpose(const SpectralField& m) {
  require_rank(m, Rank::matrix, "transpose");
  SpectralField out(m.grid(), Rank::matrix);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      std::ranges::copy(m.component(matrix_component(j, i)),
                        out.component(matrix_component(i, j)).begin());
  return out;
}

SpectralField constant_diagonal(const TorusGrid& g, const std::array<double, 3>& diag) {
  SpectralField out(g, Rank::matrix);
  for (int i = 0; i < 3; ++i) out.at(matrix_component(i, i), {0, 0, 0}) = diag[i];
  return out;
}

SpectralField constant_scalar(const TorusGrid& g, double value) {
  SpectralField out(g, Rank::scalar);
  out.at(0, {0, 0, 0}) = value;
  return out;
}

SpectralField single_mode(const TorusGrid& g, Rank rank, const Wavevector& k,
                          std::span<const Complex> amp) {
  if (!g.resolves(k)) throw InvalidArgument("single_mode: wavevector not resolved");
  SpectralField out(g, rank);
  if (int(amp.size()) != out.components())
    throw InvalidArgument("single_mode: amplitude count does not match rank");
  const Wavevector mk{-k[0], -k[1], -k[2]};
  for (int c = 0; c < out.components(); ++c) {
    if (k == mk) {
      out.at(c, k) = amp[c].real();
    } else {
      out.at(c, k) = amp[c];
      out.at(c, mk) = std::conj(amp[c]);
    }
  }
  return out;
}

namespace {

// Rounds p onto the spacing of f so that f − a is exact; falls back to the
// plain difference when no exact pair near p exists.
std::pair<double, double> split_real(double f, double p) {
  if (f == 0.0) return {p, -p};
  const double q = std::ldexp(1.0, std::ilogb(f) - 52);
  if (std::abs(p / q) < 0x1p53) {
    const double a = std::nearbyint(p / q) * q;
    const double b = f - a;
    if (a + b == f && f - b == a) return {a, b};
  }
  const double b = f - p;
  return {f - b, b};
}

}  // namespace

std::pair<SpectralField, SpectralField> split_exact(const SpectralField& f,
                                                    const SpectralField& part) {
  require_compatible(f, part);
  SpectralField a(f.grid(), f.rank()), b(f.grid(), f.rank());
  for (int c = 0; c < f.components(); ++c) {
    const auto fc = f.component(c);
    const auto pc = part.component(c);
    auto ac = a.component(c);
    auto bc = b.component(c);
    for (std::size_t i = 0; i < fc.size(); ++i) {
      const auto [ar, br] = split_real(fc[i].real(), pc[i].real());
      const auto [ai, bi] = split_real(fc[i].imag(), pc[i].imag());
      ac[i] = Complex(ar, ai);
      bc[i] = Complex(br, bi);
    }
  }
  return {std::move(a), std::move(b)};
}

SpectralField random_field(const TorusGrid& g, Rank rank, std::mt19937_64& rng,
                           double radius, double decay, bool include_mean) {
  SpectralField out(g, rank);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int c = 0; c < out.components(); ++c) {
    auto comp = out.component(c);
    for (std::size_t i = 0; i < g.mode_count(); ++i) {
      const auto k = g.wavevector(i);
      const double kn = norm(k);
      if (kn > radius) continue;
      const auto j = g.index({-k[0], -k[1], -k[2]});
      if (j < i) continue;
      const double scale = std::pow(1.0 + kn, -decay);
      if (j == i) {
        if (include_mean) comp[i] = scale * normal(rng);
        continue;
      }
      const Complex z(normal(rng), normal(rng));
      comp[i] = scale * z;
      comp[j] = std::conj(comp[i]);
    }
  }
  return out;
}

}  // namespace gnse
