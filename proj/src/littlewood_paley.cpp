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

#include "gnse/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gnse/errors.hpp"

namespace gnse {

namespace {

constexpr double kPlateauInner = 2.0 / 3.0;
constexpr double kPlateauOuter = 5.0 / 4.0;

// C^∞ step: 0 for t ≤ 0, 1 for t ≥ 1.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace

double SmoothCutoff::h(double r) const {
  if (r <= 0.5) return 0.0;
  if (r >= 1.0) return 1.0;
  const double t = 2.0 * (r - 0.5);
  return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

double DyadicPartition::plateau(double r) {
  return 1.0 - smooth_step((r - kPlateauInner) / (kPlateauOuter - kPlateauInner));
}

double DyadicPartition::profile(int j, double r) {
  if (j < 0) return plateau(r);
  const double scale = std::ldexp(1.0, j);
  return plateau(r / (2.0 * scale)) - plateau(r / scale);
}

DyadicPartition::DyadicPartition(const TorusGrid& grid) : grid_(grid) {
  const double kmax = grid.half() * std::sqrt(3.0);
  j_max_ = int(std::ceil(std::log2(kmax))) + 1;
  weights_.resize(std::size_t(j_max_) + 2);
  std::map<int, std::vector<double>> by_radius;
  for (std::size_t i = 0; i < grid.mode_count(); ++i) {
    const auto k = grid.wavevector(i);
    const int r2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    auto it = by_radius.find(r2);
    if (it == by_radius.end()) {
      std::vector<double> w(weights_.size());
      for (int j = -1; j <= j_max_; ++j) w[std::size_t(j + 1)] = profile(j, std::sqrt(double(r2)));
      it = by_radius.emplace(r2, std::move(w)).first;
    }
    for (std::size_t b = 0; b < weights_.size(); ++b) {
      if (weights_[b].empty()) weights_[b].resize(grid.mode_count());
      weights_[b][i] = it->second[b];
    }
  }
}

std::span<const double> DyadicPartition::weights(int j) const {
  if (j < -1 || j > j_max_)
    throw InvalidArgument("block index " + std::to_string(j) + " outside [-1, " +
                          std::to_string(j_max_) + "]");
  return weights_[std::size_t(j + 1)];
}

std::string DyadicPartition::profile_spec() const {
  return "plateau phi=1 on [0,2/3], 0 on [5/4,inf), exp-smooth step; "
         "chi=phi, rho(r)=phi(r/2)-phi(r)";
}

DyadicPartition build_partition(const TorusGrid& grid) { return DyadicPartition(grid); }

namespace {

SpectralField scale_modes(const SpectralField& f, std::span<const double> w) {
  SpectralField out(f.grid(), f.rank());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < w.size(); ++i) dst[i] = w[i] * src[i];
  }
  return out;
}

}  // namespace

SpectralField lp_block(const SpectralField& f, int j, const DyadicPartition& p) {
  if (!(f.grid() == p.grid())) throw InvalidArgument("lp_block: partition built for another grid");
  return scale_modes(f, p.weights(j));
}

SpectralField low_cut(const SpectralField& f, int i, const DyadicPartition& p) {
  if (!(f.grid() == p.grid())) throw InvalidArgument("low_cut: partition built for another grid");
  SpectralField out(f.grid(), f.rank());
  const int top = std::min(i - 1, p.j_max());
  if (top < -1) return out;
  std::vector<double> w(f.grid().mode_count(), 0.0);
  for (int j = -1; j <= top; ++j) {
    auto wj = p.weights(j);
    for (std::size_t m = 0; m < w.size(); ++m) w[m] += wj[m];
  }
  return scale_modes(f, w);
}

double lp_norm(std::span<const RealArray> comps, double p) {
  if (comps.empty()) return 0.0;
  const std::size_t n = comps[0].size();
  const bool inf = std::isinf(p);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double m2 = 0.0;
    for (const auto& c : comps) m2 += c[i] * c[i];
    const double m = std::sqrt(m2);
    if (inf)
      acc = std::max(acc, m);
    else
      acc += std::pow(m, p);
  }
  return inf ? acc : std::pow(acc / double(n), 1.0 / p);
}

double lp_norm(const SpectralField& f, double p) {
  if (p == 2.0) return l2_norm(f);
  std::vector<RealArray> comps;
  for (int c = 0; c < f.components(); ++c) comps.push_back(to_physical(f, c));
  return lp_norm(comps, p);
}

std::vector<BlockNormRow> besov_table(const SpectralField& f, double s, double p,
                                      const DyadicPartition& part) {
  if (p < 1.0) throw InvalidArgument("besov: p must be >= 1");
  std::vector<BlockNormRow> rows;
  for (int j = -1; j <= part.j_max(); ++j) {
    const double bn = lp_norm(lp_block(f, j, part), p);
    rows.push_back({j, bn, std::exp2(s * j) * bn});
  }
  return rows;
}

double besov_norm(const SpectralField& f, double s, double p, double q,
                  const DyadicPartition& part) {
  if (p < 1.0 || q < 1.0) throw InvalidArgument("besov: p and q must be >= 1");
  const auto rows = besov_table(f, s, p, part);
  double acc = 0.0;
  for (const auto& r : rows) {
    if (std::isinf(q))
      acc = std::max(acc, r.weighted);
    else
      acc += std::pow(r.weighted, q);
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

FrequencySplit freq_split(const SpectralField& f, double lambda, const SmoothCutoff& c) {
  if (!(lambda > 0.0)) throw InvalidArgument("freq_split: lambda must be > 0");
  const auto& g = f.grid();
  std::vector<double> hw(g.mode_count());
  for (std::size_t i = 0; i < hw.size(); ++i) hw[i] = c.h(norm(g.wavevector(i)) / lambda);
  auto [high, low] = split_exact(f, scale_modes(f, hw));
  return {std::move(low), std::move(high)};
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DegenerateData("line fit needs >= 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DegenerateData("line fit: abscissae coincide");
  LineFit fit{sxy / sxx, 0.0, 0.0};
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / double(n - 2) / sxx);
  }
  return fit;
}

RegularityEstimate estimate_regularity(std::span<const SpectralField> samples,
                                       int j_lo, int j_hi, const DyadicPartition& part) {
  if (samples.empty()) throw InvalidArgument("estimate_regularity: no samples");
  if (j_hi - j_lo < 1) throw InvalidArgument("estimate_regularity: need >= 2 blocks");
  std::vector<double> xs, ys;
  for (int j = j_lo; j <= j_hi; ++j) {
    double mean = 0.0;
    for (const auto& f : samples) mean += lp_norm(lp_block(f, j, part), INFINITY);
    mean /= double(samples.size());
    if (!(mean > 0.0))
      throw DegenerateData("estimate_regularity: block " + std::to_string(j) + " is zero");
    xs.push_back(j);
    ys.push_back(std::log2(mean));
  }
  const auto fit = fit_line(xs, ys);
  return {fit.slope, fit.slope_stderr, ys};
}

}  // namespace gnse
