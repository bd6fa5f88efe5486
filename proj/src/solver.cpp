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

#include "gnse/solver.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "gnse/errors.hpp"
#include "gnse/fft.hpp"
#include "gnse/field_io.hpp"
#include "gnse/paraproduct.hpp"
#include "gnse/renormalization.hpp"
#include "gnse/spectral_ops.hpp"

namespace gnse {
namespace {

constexpr char kCheckpointMagic[] = "GNSECKP1";

double sup_norm(const SpectralField& f) {
  double m = 0.0;
  std::vector<RealArray> comps;
  for (int c = 0; c < f.components(); ++c) comps.push_back(to_physical(f, c));
  const std::size_t n = f.grid().physical_count();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& a : comps) s += a[i] * a[i];
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

double cutoff_for(double norm, double tau) { return std::pow(1.0 + norm, tau); }

// f ← E f + φ₁ dt N, with E = e^{−νΛ^{5/2}dt}; mean mode zeroed.
void etd1(SpectralField& f, const SpectralField& N, double nu, double dt) {
  const auto& g = f.grid();
  const double scale = g.wavenumber_scale();
  const std::size_t modes = g.mode_count();
  for (std::size_t idx = 0; idx < modes; ++idx) {
    const auto k = g.wavevector(idx);
    const double z = -nu * std::pow(scale * norm(k), 2.5) * dt;
    const double e = std::exp(z);
    const double w = phi1(z) * dt;
    for (int c = 0; c < f.components(); ++c) {
      auto& v = f.component(c)[idx];
      v = e * v + w * N.component(c)[idx];
    }
  }
  for (int c = 0; c < f.components(); ++c) f.at(c, {0, 0, 0}) = 0.0;
}

SpectralField minus_proj_div(const SpectralField& m) { return -leray_project(divergence(m)); }

}  // namespace

double phi1(double z) {
  if (std::abs(z) < 1e-4) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return std::expm1(z) / z;
}

SpectralField SolverState::X() const {
  if (!params.noise_enabled) return SpectralField(grid(), Rank::vector);
  return assemble_X(noise);
}

SpectralField SolverState::u() const { return X() + Y + w; }

SolverState init(const SolverParams& params, const SpectralField& u_in, std::uint64_t seed) {
  require_rank(u_in, Rank::vector, "init");
  if (has_nan(u_in)) throw InvalidArgument("init: u_in contains NaN");
  if (!(params.nu > 0.0)) throw InvalidArgument("init: nu must be > 0");
  if (!(params.tau > 0.0)) throw InvalidArgument("init: tau must be > 0");
  if (!(params.cfl_limit > 0.0)) throw InvalidArgument("init: cfl_limit must be > 0");
  const auto& g = u_in.grid();
  SolverState s;
  s.params = params;
  s.noise = NoiseState(g, params.nu, seed);
  s.Y = SpectralField(g, Rank::vector);
  s.Q = SpectralField(g, Rank::vector);
  s.w = leray_project(u_in);
  s.projected_input = max_abs_coeff(s.w - u_in) > 1e-14 * std::max(1.0, max_abs_coeff(u_in));
  const double norm_in = l2_norm(u_in);
  const double c = std::ceil(norm_in);
  s.stop_index = int(c);
  s.lambda = cutoff_for(c, params.tau);
  return s;
}

void step(SolverState& s, double dt, const Forcing& forcing) {
  if (!(dt > 0.0)) throw InvalidArgument("step: dt must be > 0");
  const auto& g = s.grid();
  const SpectralField X = s.X();
  if (s.params.nonlinear_enabled) {
    const double speed = sup_norm(X + s.Y + s.w) * g.max_wavenumber();
    const double cfl = dt * speed;
    if (cfl > s.params.cfl_limit)
      throw StepRejected("step: CFL limit exceeded", s.params.cfl_limit / speed);
    s.last_cfl = cfl / s.params.cfl_limit;
  } else {
    s.last_cfl = 0.0;
  }

  SpectralField NQ = 2.0 * X;
  SpectralField NY(g, Rank::vector), Nw(g, Rank::vector);
  if (s.params.nonlinear_enabled) {
    const SpectralField D = 2.0 * (X + s.Y);
    if (s.params.noise_enabled) {
      NY = minus_proj_div(2.0 * multiply(X, s.Y, TensorKind::symmetric) + multiply(X, X));
    }
    SpectralField m = multiply(s.w, s.w);
    m += multiply(D, s.w, TensorKind::symmetric);
    m += multiply(s.Y, s.Y);
    Nw = minus_proj_div(m);
  }
  if (forcing) {
    SpectralField f = forcing(s, s.t);
    require_compatible(f, s.w);
    Nw += leray_project(f);
  }

  etd1(s.Q, NQ, s.params.nu, dt);
  etd1(s.Y, NY, s.params.nu, dt);
  etd1(s.w, Nw, s.params.nu, dt);
  if (s.params.noise_enabled) {
    evolve_X(s.noise, dt);
  } else {
    s.noise.advance_time(dt);
  }
  s.t += dt;
  update_cutoff(s);
}

void update_cutoff(SolverState& s) {
  const double n = l2_norm(s.w);
  bool moved = false;
  while (n >= double(s.stop_index + 1)) {
    ++s.stop_index;
    s.stop_times.push_back(s.t);
    moved = true;
  }
  if (moved) s.lambda = cutoff_for(n, s.params.tau);
}

std::pair<SpectralField, SpectralField> split_high_low(const SolverState& s,
                                                       const DyadicPartition& part) {
  const auto qh = freq_split(s.Q, s.lambda).high;
  return split_exact(s.w, minus_proj_div(para(s.w, qh, {ParaKind::lt, TensorKind::symmetric}, part)));
}

double hdot_norm(const SpectralField& f, double sm) {
  return l2_norm(apply_multiplier(f, MultiplierSpec::fractional_laplacian(sm)));
}

double quad_form_A(const SpectralField& w, const SolverState& s, double r) {
  require_rank(w, Rank::vector, "quad_form_A");
  const double h = hdot_norm(w, 1.25);
  const double l2 = l2_norm(w);
  double value = -0.5 * s.params.nu * h * h - r * l2 * l2;
  if (s.params.noise_enabled) {
    const SpectralField A = sym_gradient(assemble_X(s.noise, s.lambda));
    value -= inner(w, multiply(A, w));
  }
  return value;
}

DiagnosticRecord energy_report(SolverState& s, const DyadicPartition& part) {
  DiagnosticRecord rec;
  rec.t = s.t;
  rec.w_l2 = l2_norm(s.w);
  const auto [wh, wl] = split_high_low(s, part);
  rec.wL_l2 = l2_norm(wl);
  rec.wL_h54 = hdot_norm(wl, 1.25);
  rec.lambda = s.lambda;
  if (s.params.noise_enabled) {
    const auto rr = renorm_constants(std::max(1.0, s.lambda), s.noise.t(), s.params.nu,
                                     std::max(1.0, s.lambda));
    rec.r_lambda = rr.diagonal()[0];
  }
  rec.quad_form = quad_form_A(s.w, s, rec.r_lambda);
  rec.cfl = s.last_cfl;
  s.history.push_back(rec);
  return rec;
}

void save_checkpoint(std::ostream& os, const SolverState& s) {
  os.write(kCheckpointMagic, 8);
  io::write_pod(os, s.params.nu);
  io::write_pod(os, s.params.tau);
  io::write_pod(os, s.params.cfl_limit);
  io::write_pod(os, std::uint8_t(s.params.noise_enabled));
  io::write_pod(os, std::uint8_t(s.params.nonlinear_enabled));
  io::write_pod(os, s.t);
  io::write_pod(os, s.lambda);
  io::write_pod(os, std::int32_t(s.stop_index));
  io::write_pod(os, std::uint8_t(s.projected_input));
  io::write_pod(os, s.last_cfl);
  io::write_pod(os, std::uint64_t(s.stop_times.size()));
  for (double v : s.stop_times) io::write_pod(os, v);
  write_field(os, s.Y);
  write_field(os, s.Q);
  write_field(os, s.w);
  s.noise.save(os);
}

SolverState load_checkpoint(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::string(magic, 8) != kCheckpointMagic)
    throw InvalidArgument("load_checkpoint: not a checkpoint stream");
  SolverState s;
  s.params.nu = io::read_pod<double>(is);
  s.params.tau = io::read_pod<double>(is);
  s.params.cfl_limit = io::read_pod<double>(is);
  s.params.noise_enabled = io::read_pod<std::uint8_t>(is) != 0;
  s.params.nonlinear_enabled = io::read_pod<std::uint8_t>(is) != 0;
  s.t = io::read_pod<double>(is);
  s.lambda = io::read_pod<double>(is);
  s.stop_index = io::read_pod<std::int32_t>(is);
  s.projected_input = io::read_pod<std::uint8_t>(is) != 0;
  s.last_cfl = io::read_pod<double>(is);
  const auto n = io::read_pod<std::uint64_t>(is);
  for (std::uint64_t i = 0; i < n; ++i) s.stop_times.push_back(io::read_pod<double>(is));
  s.Y = read_field(is);
  s.Q = read_field(is);
  s.w = read_field(is);
  s.noise = NoiseState::load(is);
  return s;
}

}  // namespace gnse
