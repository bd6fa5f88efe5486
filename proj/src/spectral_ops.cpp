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

#include "gnse/spectral_ops.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "gnse/errors.hpp"
#include "gnse/fft.hpp"

namespace gnse {

MultiplierSpec MultiplierSpec::fractional_laplacian(double gamma) {
  MultiplierSpec m;
  m.kind = Kind::fractional_laplacian;
  m.gamma = gamma;
  return m;
}

MultiplierSpec MultiplierSpec::heat(double nu, double t, double gamma) {
  MultiplierSpec m;
  m.kind = Kind::heat;
  m.nu = nu;
  m.t = t;
  m.gamma = gamma;
  return m;
}

MultiplierSpec MultiplierSpec::shifted_inverse(double c, double gamma, double nu) {
  MultiplierSpec m;
  m.kind = Kind::shifted_inverse;
  m.c = c;
  m.gamma = gamma;
  m.nu = nu;
  return m;
}

MultiplierSpec MultiplierSpec::sigma() {
  MultiplierSpec m;
  m.kind = Kind::sigma;
  return m;
}

MultiplierSpec MultiplierSpec::sigma_a(double a) {
  MultiplierSpec m;
  m.kind = Kind::sigma_a;
  m.a = a;
  return m;
}

MultiplierSpec MultiplierSpec::sigma_tilde_a(double a) {
  MultiplierSpec m;
  m.kind = Kind::sigma_tilde_a;
  m.a = a;
  return m;
}

double MultiplierSpec::symbol(double r) const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double p52 = std::pow(r, 2.5);
  switch (kind) {
    case Kind::fractional_laplacian:
      return r == 0.0 ? (gamma == 0.0 ? 1.0 : 0.0) : std::pow(r, gamma);
    case Kind::heat:
      return std::exp(-nu * (r == 0.0 ? 0.0 : std::pow(r, gamma)) * t);
    case Kind::shifted_inverse: {
      const double d = c + nu * (r == 0.0 ? 0.0 : std::pow(r, gamma));
      return d == 0.0 ? kInf : 1.0 / d;
    }
    case Kind::sigma:
      return -1.0 / (1.0 + p52);
    case Kind::sigma_a:
      return -1.0 / (1.0 + a + p52);
    case Kind::sigma_tilde_a: {
      const double d = a + p52;
      return d == 0.0 ? -kInf : -1.0 / d;
    }
  }
  return 0.0;
}

double MultiplierSpec::symbol_at(const TorusGrid& g, const Wavevector& k) const {
  const double scale = (convention.value_or(g.convention()) == Convention::angular)
                           ? 2.0 * std::numbers::pi
                           : 1.0;
  return symbol(scale * norm(k));
}

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m) {
  const auto& g = f.grid();
  // Radial symbol: evaluate once per distinct |k|².
  std::map<int, double> cache;
  std::vector<double> sym(g.mode_count());
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const auto k = g.wavevector(i);
    const int r2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    auto it = cache.find(r2);
    if (it == cache.end()) it = cache.emplace(r2, m.symbol_at(g, k)).first;
    sym[i] = it->second;
  }
  SpectralField out(g, f.rank());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < g.mode_count(); ++i) {
      if (src[i] == Complex(0.0, 0.0)) continue;
      if (!std::isfinite(sym[i]))
        throw DivisionByZero("multiplier symbol is singular on a populated mode");
      dst[i] = sym[i] * src[i];
    }
  }
  return out;
}

SpectralField heat_propagate(const SpectralField& f, double t, double nu) {
  if (!(t >= 0.0)) throw InvalidArgument("heat_propagate: t must be >= 0");
  if (t == 0.0) return f;
  return apply_multiplier(f, MultiplierSpec::heat(nu, t));
}

SpectralField leray_project(const SpectralField& u) {
  require_rank(u, Rank::vector, "leray_project");
  const auto& g = u.grid();
  SpectralField out(g, Rank::vector);
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const auto k = g.wavevector(i);
    const double k2 = norm2(k);
    if (k2 == 0.0) continue;
    Complex dotk(0.0, 0.0);
    for (int j = 0; j < 3; ++j) dotk += double(k[j]) * u.component(j)[i];
    for (int j = 0; j < 3; ++j)
      out.component(j)[i] = u.component(j)[i] - (double(k[j]) / k2) * dotk;
  }
  return out;
}

SpectralField project_mean_zero(const SpectralField& f) {
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) out.at(c, {0, 0, 0}) = 0.0;
  return out;
}

namespace {

// i s k_j
inline Complex derivative_symbol(const TorusGrid& g, const Wavevector& k, int j) {
  return Complex(0.0, g.wavenumber_scale() * k[j]);
}

}  // namespace

SpectralField sym_gradient(const SpectralField& u) {
  require_rank(u, Rank::vector, "sym_gradient");
  const auto& g = u.grid();
  SpectralField out(g, Rank::matrix);
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const auto k = g.wavevector(i);
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) {
        const Complex v = 0.5 * (derivative_symbol(g, k, a) * u.component(b)[i] +
                                 derivative_symbol(g, k, b) * u.component(a)[i]);
        out.component(matrix_component(a, b))[i] = v;
        out.component(matrix_component(b, a))[i] = v;
      }
  }
  return out;
}

SpectralField gradient(const SpectralField& f) {
  require_rank(f, Rank::scalar, "gradient");
  const auto& g = f.grid();
  SpectralField out(g, Rank::vector);
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const auto k = g.wavevector(i);
    for (int j = 0; j < 3; ++j)
      out.component(j)[i] = derivative_symbol(g, k, j) * f.component(0)[i];
  }
  return out;
}

SpectralField divergence(const SpectralField& t) {
  const auto& g = t.grid();
  if (t.rank() == Rank::scalar)
    throw InvalidArgument("divergence: scalar input has no divergence");
  if (t.rank() == Rank::vector) {
    SpectralField out(g, Rank::scalar);
    for (std::size_t i = 0; i < g.mode_count(); ++i) {
      const auto k = g.wavevector(i);
      Complex s(0.0, 0.0);
      for (int j = 0; j < 3; ++j) s += derivative_symbol(g, k, j) * t.component(j)[i];
      out.component(0)[i] = s;
    }
    return out;
  }
  SpectralField out(g, Rank::vector);
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const auto k = g.wavevector(i);
    for (int r = 0; r < 3; ++r) {
      Complex s(0.0, 0.0);
      for (int j = 0; j < 3; ++j)
        s += derivative_symbol(g, k, j) * t.component(matrix_component(j, r))[i];
      out.component(r)[i] = s;
    }
  }
  return out;
}

BilinearLayout bilinear_layout(Rank lhs, Rank rhs, TensorKind kind) {
  BilinearLayout L;
  if (lhs == Rank::scalar || rhs == Rank::scalar) {
    const bool left_scalar = lhs == Rank::scalar;
    L.out_rank = left_scalar ? rhs : lhs;
    for (int c = 0; c < component_count(L.out_rank); ++c)
      L.terms.push_back(left_scalar ? BilinearTerm{c, 0, c, 1.0} : BilinearTerm{c, c, 0, 1.0});
    return L;
  }
  if (lhs == Rank::vector && rhs == Rank::vector) {
    L.out_rank = Rank::matrix;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (kind == TensorKind::plain) {
          L.terms.push_back({matrix_component(i, j), i, j, 1.0});
        } else {
          L.terms.push_back({matrix_component(i, j), i, j, 0.5});
          L.terms.push_back({matrix_component(i, j), j, i, 0.5});
        }
      }
    return L;
  }
  if (kind == TensorKind::symmetric)
    throw InvalidArgument("symmetric tensor product needs two vector operands");
  if (lhs == Rank::matrix && rhs == Rank::vector) {
    L.out_rank = Rank::vector;
    for (int i = 0; i < 3; ++i)
      for (int l = 0; l < 3; ++l) L.terms.push_back({i, matrix_component(i, l), l, 1.0});
    return L;
  }
  if (lhs == Rank::vector && rhs == Rank::matrix) {
    L.out_rank = Rank::vector;
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) L.terms.push_back({j, l, matrix_component(l, j), 1.0});
    return L;
  }
  L.out_rank = Rank::matrix;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        L.terms.push_back({matrix_component(i, j), matrix_component(i, l),
                           matrix_component(l, j), 1.0});
  return L;
}

SpectralField multiply(const SpectralField& f, const SpectralField& g, TensorKind kind) {
  require_compatible(f, g, false);
  const auto layout = bilinear_layout(f.rank(), g.rank(), kind);
  const auto& grid = f.grid();
  std::vector<RealArray> fp(f.components()), gp(g.components());
  std::vector<RealArray> acc(component_count(layout.out_rank));
  for (const auto& t : layout.terms) {
    if (fp[t.lhs].empty()) fp[t.lhs] = to_physical(f, t.lhs);
    if (gp[t.rhs].empty()) gp[t.rhs] = to_physical(g, t.rhs);
    auto& a = acc[t.out];
    if (a.empty()) a.assign(grid.physical_count(), 0.0);
    const auto& x = fp[t.lhs];
    const auto& y = gp[t.rhs];
    for (std::size_t p = 0; p < a.size(); ++p) a[p] += t.weight * x[p] * y[p];
  }
  SpectralField out(grid, layout.out_rank);
  for (int c = 0; c < out.components(); ++c)
    if (!acc[c].empty()) from_physical(grid, acc[c], out.component(c), true);
  return out;
}

SpectralField dot(const SpectralField& u, const SpectralField& v) {
  require_rank(u, Rank::vector, "dot");
  require_rank(v, Rank::vector, "dot");
  SpectralField out(u.grid(), Rank::scalar);
  for (int l = 0; l < 3; ++l) out += multiply(u.extract(l), v.extract(l));
  return out;
}

double divergence_residual(const SpectralField& u) {
  const double n = l2_norm(u);
  if (n == 0.0) return 0.0;
  return max_abs_coeff(divergence(u)) / (u.grid().wavenumber_scale() * n);
}

}  // namespace gnse
