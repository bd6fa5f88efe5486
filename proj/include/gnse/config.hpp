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
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gnse/grid.hpp"
#include "gnse/solver.hpp"

namespace gnse {

/// Flat `key = value` run configuration. Lists are comma separated and `#`
/// starts a comment. Unknown keys are rejected.
struct RunConfig {
  int n_per_dim = 16;
  double nu = 1.0;
  double dt = 1e-3;
  double t_end = 0.1;
  std::uint64_t seed = 1;
  double tau = 40.0 / 13.0;
  double kappa = 1.0 / 256.0;
  double cfl_limit = 1.0;
  bool noise = true;
  bool nonlinear = true;
  double u_in_amplitude = 0.0;  ///< L² norm of the random initial datum
  double report_interval = 0.01;
  double checkpoint_interval = 0.0;  ///< 0 writes only the final checkpoint
  std::vector<double> lambda_list{2, 4, 8, 16, 32, 64, 128};
  double renorm_t = 1.0;
  int ensemble_size = 200;
  double calib_lambda = 8.0;
  std::vector<double> a_list{6.25, 12.5, 25, 50, 100};
  double eta_amplitude = 1.0;
  int anderson_max_iter = 100;
  double anderson_tol = 1e-8;
  int probe_iters = 2000;
  Convention convention = Convention::lattice;
  DealiasRule dealias = DealiasRule::two_thirds;
  std::string out_dir = ".";

  void validate() const;
  TorusGrid grid() const;
  SolverParams solver_params() const;
  /// Every key with its resolved value, in a fixed order.
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

/// Throws InvalidArgument with the offending line on any parse or validation error.
RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::string& path);
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

std::string format_double(double v);

}  // namespace gnse
