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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "gnse/littlewood_paley.hpp"
#include "gnse/noise.hpp"

namespace gnse {

struct SolverParams {
  double nu = 1.0;
  double tau = 40.0 / 13.0;
  double cfl_limit = 1.0;
  bool noise_enabled = true;
  bool nonlinear_enabled = true;
};

struct DiagnosticRecord {
  double t = 0.0;
  double w_l2 = 0.0;
  double wL_l2 = 0.0;
  double wL_h54 = 0.0;
  double lambda = 1.0;
  double r_lambda = 0.0;
  double quad_form = 0.0;
  double cfl = 0.0;  ///< dt·‖u‖_∞·k_max / cfl_limit for the last accepted step
};

struct SolverState {
  SolverParams params;
  double t = 0.0;
  NoiseState noise;
  SpectralField Y, Q, w;
  double lambda = 1.0;
  int stop_index = 0;
  std::vector<double> stop_times;  ///< T_i for every increment of stop_index
  bool projected_input = false;    ///< u_in needed projection at init
  double last_cfl = 0.0;
  std::vector<DiagnosticRecord> history;

  const TorusGrid& grid() const { return w.grid(); }
  SpectralField X() const;
  SpectralField u() const;  ///< X + Y + w
};

/// Extra right-hand side for the w equation, evaluated at the start of each step.
using Forcing = std::function<SpectralField(const SolverState&, double t)>;

/// φ₁(z) = (e^z − 1)/z with a series branch near 0.
double phi1(double z);

SolverState init(const SolverParams& params, const SpectralField& u_in, std::uint64_t seed);

/// One ETD1 step. Throws StepRejected when dt·‖u‖_∞·k_max exceeds the CFL
/// limit (checked only with the nonlinearity on). Calls update_cutoff.
void step(SolverState& s, double dt, const Forcing& forcing = {});

/// Post-step stopping-time update.
void update_cutoff(SolverState& s);

/// (w_H, w_L) with w_H = −P_L div(w ≺_s 𝓗_λ Q) and w_L = w − w_H.
std::pair<SpectralField, SpectralField> split_high_low(const SolverState& s,
                                                       const DyadicPartition& part);

/// ⟨w, 𝒜 w⟩ = −(ν/2)‖w‖²_{Ḣ^{5/4}} − ⟨w, (∇_sym𝓛_λX) w⟩ − r‖w‖².
double quad_form_A(const SpectralField& w, const SolverState& s, double r);

double hdot_norm(const SpectralField& f, double s);

DiagnosticRecord energy_report(SolverState& s, const DyadicPartition& part);

void save_checkpoint(std::ostream& os, const SolverState& s);
SolverState load_checkpoint(std::istream& is);

}  // namespace gnse
