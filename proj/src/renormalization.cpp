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

#include "gnse/renormalization.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "gnse/errors.hpp"
#include "gnse/paraproduct.hpp"
#include "gnse/spectral_ops.hpp"

namespace gnse {
namespace {

// Lattice shells |k|² = m: point counts and Σ k_d² per axis.
struct ShellTable {
  std::vector<std::int64_t> count;
  std::array<std::vector<std::int64_t>, 3> second;
};

std::shared_ptr<const ShellTable> shells_up_to(std::int64_t m_max) {
  static std::mutex mu;
  static std::shared_ptr<const ShellTable> table = std::make_shared<ShellTable>();
  std::lock_guard lock(mu);
  if (std::int64_t(table->count.size()) > m_max) return table;
  const std::int64_t cap = std::max<std::int64_t>(m_max, 2 * std::int64_t(table->count.size()));
  ShellTable t;
  t.count.assign(std::size_t(cap + 1), 0);
  for (auto& v : t.second) v.assign(std::size_t(cap + 1), 0);
  const std::int64_t kb = std::int64_t(std::floor(std::sqrt(double(cap))));
  for (std::int64_t a = -kb; a <= kb; ++a)
    for (std::int64_t b = -kb; b <= kb; ++b) {
      const std::int64_t ab = a * a + b * b;
      if (ab > cap) continue;
      for (std::int64_t c = -kb; c <= kb; ++c) {
        const std::int64_t m = ab + c * c;
        if (m > cap) continue;
        const auto i = std::size_t(m);
        ++t.count[i];
        t.second[0][i] += a * a;
        t.second[1][i] += b * b;
        t.second[2][i] += c * c;
      }
    }
  table = std::make_shared<const ShellTable>(std::move(t));
  return table;
}

}  // namespace

RenormResult renorm_constants(double lambda, double t, double nu, double K) {
  if (!(lambda >= 1.0)) throw InvalidArgument("renorm_constants: lambda must be >= 1");
  if (!(t >= 0.0)) throw InvalidArgument("renorm_constants: t must be >= 0");
  if (!(nu > 0.0)) throw InvalidArgument("renorm_constants: nu must be > 0");
  if (K < lambda)
    throw IncompleteSum("renorm_constants: truncation radius K below lambda");
  RenormResult r;
  r.lambda = lambda;
  r.t = t;
  r.nu = nu;
  r.K = K;
  if (t == 0.0) return r;
  const auto table = shells_up_to(std::int64_t(std::floor(K * K)));
  const ShellTable& sh = *table;
  const SmoothCutoff cut;
  const std::int64_t m_max = std::min<std::int64_t>(std::int64_t(std::floor(K * K)),
                                                    std::int64_t(sh.count.size()) - 1);
  for (std::int64_t m = 1; m <= m_max; ++m) {
    if (sh.count[std::size_t(m)] == 0) continue;
    const double kn = std::sqrt(double(m));
    const double l = cut.l(kn / lambda);
    if (l == 0.0) continue;
    const double p52 = std::pow(kn, 2.5);
    const double s = 0.25 * l * l * (-std::expm1(-2.0 * nu * p52 * t)) /
                     (2.0 * nu * std::sqrt(kn)) / (1.0 + 0.5 * nu * p52);
    r.r1 += s * double(sh.count[std::size_t(m)]);
    for (int d = 0; d < 3; ++d)
      r.r2[std::size_t(d)] += s * double(sh.second[std::size_t(d)][std::size_t(m)]) / double(m);
  }
  return r;
}

EnhancedNoise enhanced_noise(const NoiseState& state, double lambda,
                             const DyadicPartition& part, double normalization) {
  if (!(normalization > 0.0)) throw InvalidArgument("enhanced_noise: normalization must be > 0");
  const auto& g = state.grid();
  EnhancedNoise en;
  en.A = sym_gradient(assemble_X(state, lambda));
  en.P = apply_multiplier(en.A, MultiplierSpec::shifted_inverse(1.0, 2.5, 0.5 * state.nu()));
  en.renorm = renorm_constants(lambda, state.t(), state.nu(), std::max(lambda, 1.0));
  auto d = en.renorm.diagonal();
  for (auto& v : d) v /= normalization;
  en.subtracted = d;
  en.B = para(en.A, en.P, {ParaKind::res}, part);
  en.B -= constant_diagonal(g, d);
  return en;
}

std::array<double, 9> resonant_mean(const EnhancedNoise& en) {
  std::array<double, 9> m{};
  for (int c = 0; c < 9; ++c) m[c] = en.B.at(c, {0, 0, 0}).real();
  for (int i = 0; i < 3; ++i) m[matrix_component(i, i)] += en.subtracted[i];
  return m;
}

CalibrationResult calibrate_from_samples(std::span<const std::array<double, 9>> samples,
                                         const std::array<double, 3>& r_diag) {
  if (samples.empty()) throw InvalidArgument("calibrate: no samples");
  CalibrationResult res;
  const double n = double(samples.size());
  for (const auto& s : samples)
    for (int c = 0; c < 9; ++c) res.mean[c] += s[c] / n;
  if (samples.size() > 1) {
    for (int c = 0; c < 9; ++c) {
      double v = 0.0;
      for (const auto& s : samples) v += (s[c] - res.mean[c]) * (s[c] - res.mean[c]);
      res.std_err[c] = std::sqrt(v / (n - 1.0) / n);
    }
  }
  auto residual = [&](double factor) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double target = i == j ? r_diag[i] / factor : 0.0;
        const double d = res.mean[matrix_component(i, j)] - target;
        acc += d * d;
      }
    return std::sqrt(acc);
  };
  res.residual_1 = residual(1.0);
  res.residual_4 = residual(4.0);
  double nl = 0.0;
  for (double s : res.std_err) nl += s * s;
  res.noise_level = std::sqrt(nl);
  res.factor = res.residual_1 <= res.residual_4 ? 1 : 4;
  if (res.residual_1 <= 3.0 * res.noise_level && res.residual_4 <= 3.0 * res.noise_level)
    throw CalibrationInconclusive(
        "calibration inconclusive: both candidate factors fit within Monte Carlo noise; "
        "increase the ensemble size");
  return res;
}

CalibrationResult calibrate_normalization(const TorusGrid& grid, int ensemble_size,
                                          double lambda, double t, double nu,
                                          std::uint64_t seed) {
  if (ensemble_size < 100)
    throw InvalidArgument("calibrate_normalization: ensemble_size must be >= 100");
  if (!(t > 0.0)) throw InvalidArgument("calibrate_normalization: t must be > 0");
  const auto part = build_partition(grid);
  std::vector<std::array<double, 9>> samples;
  samples.reserve(std::size_t(ensemble_size));
  RenormResult rr{};
  for (int m = 0; m < ensemble_size; ++m) {
    NoiseState st(grid, nu, split_seed(seed, std::uint64_t(m)));
    evolve_X(st, t);
    const auto en = enhanced_noise(st, lambda, part);
    rr = en.renorm;
    samples.push_back(resonant_mean(en));
  }
  return calibrate_from_samples(samples, rr.diagonal());
}

double block_second_moment(std::span<const SpectralField> ensemble, int m,
                           const DyadicPartition& part) {
  if (ensemble.empty()) throw InvalidArgument("block_second_moment: empty ensemble");
  double acc = 0.0;
  for (const auto& b : ensemble) {
    require_rank(b, Rank::matrix, "block_second_moment");
    const double n = l2_norm(lp_block(b.extract(matrix_component(0, 0)), m, part));
    acc += n * n;
  }
  return acc / double(ensemble.size());
}

}  // namespace gnse
