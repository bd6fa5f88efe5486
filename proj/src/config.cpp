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

#include "gnse/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "gnse/errors.hpp"

namespace gnse {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw InvalidArgument("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

template <class Int = std::int64_t>
Int to_int(const std::string& key, const std::string& v) {
  Int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw InvalidArgument("config: '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw InvalidArgument("config: '" + key + "' expects true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw InvalidArgument("config: '" + key + "' expects a non-empty list");
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument("config: " + msg);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "n_per_dim") c.n_per_dim = int(to_int(key, v));
  else if (key == "nu") c.nu = to_double(key, v);
  else if (key == "dt") c.dt = to_double(key, v);
  else if (key == "t_end") c.t_end = to_double(key, v);
  else if (key == "seed") c.seed = to_int<std::uint64_t>(key, v);
  else if (key == "tau") c.tau = to_double(key, v);
  else if (key == "kappa") c.kappa = to_double(key, v);
  else if (key == "cfl_limit") c.cfl_limit = to_double(key, v);
  else if (key == "noise") c.noise = to_bool(key, v);
  else if (key == "nonlinear") c.nonlinear = to_bool(key, v);
  else if (key == "u_in_amplitude") c.u_in_amplitude = to_double(key, v);
  else if (key == "report_interval") c.report_interval = to_double(key, v);
  else if (key == "checkpoint_interval") c.checkpoint_interval = to_double(key, v);
  else if (key == "lambda_list") c.lambda_list = to_list(key, v);
  else if (key == "renorm_t") c.renorm_t = to_double(key, v);
  else if (key == "ensemble_size") c.ensemble_size = int(to_int(key, v));
  else if (key == "calib_lambda") c.calib_lambda = to_double(key, v);
  else if (key == "a_list") c.a_list = to_list(key, v);
  else if (key == "eta_amplitude") c.eta_amplitude = to_double(key, v);
  else if (key == "anderson_max_iter") c.anderson_max_iter = int(to_int(key, v));
  else if (key == "anderson_tol") c.anderson_tol = to_double(key, v);
  else if (key == "probe_iters") c.probe_iters = int(to_int(key, v));
  else if (key == "convention") c.convention = parse_convention(v);
  else if (key == "dealias") c.dealias = parse_dealias_rule(v);
  else if (key == "out_dir") c.out_dir = v;
  else throw InvalidArgument("config: unknown key '" + key + "'");
}

void RunConfig::validate() const {
  require(n_per_dim >= 4 && n_per_dim % 2 == 0, "n_per_dim must be even and >= 4");
  require(nu > 0, "nu must be > 0");
  require(dt > 0, "dt must be > 0");
  require(t_end >= 0, "t_end must be >= 0");
  require(tau > 0, "tau must be > 0");
  require(kappa > 0 && kappa <= 1.0 / 200.0, "kappa must lie in (0, 1/200]");
  require(cfl_limit > 0, "cfl_limit must be > 0");
  require(u_in_amplitude >= 0, "u_in_amplitude must be >= 0");
  require(report_interval > 0, "report_interval must be > 0");
  require(checkpoint_interval >= 0, "checkpoint_interval must be >= 0");
  for (double l : lambda_list) require(l >= 1, "lambda_list entries must be >= 1");
  require(renorm_t >= 0, "renorm_t must be >= 0");
  require(ensemble_size > 0, "ensemble_size must be > 0");
  require(calib_lambda >= 1, "calib_lambda must be >= 1");
  for (double a : a_list) require(a > 0, "a_list entries must be > 0");
  require(eta_amplitude >= 0, "eta_amplitude must be >= 0");
  require(anderson_max_iter > 0, "anderson_max_iter must be > 0");
  require(anderson_tol > 0, "anderson_tol must be > 0");
  require(probe_iters > 0, "probe_iters must be > 0");
}

TorusGrid RunConfig::grid() const { return make_grid(n_per_dim, dealias, convention); }

SolverParams RunConfig::solver_params() const {
  SolverParams p;
  p.nu = nu;
  p.tau = tau;
  p.cfl_limit = cfl_limit;
  p.noise_enabled = noise;
  p.nonlinear_enabled = nonlinear;
  return p;
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      {"n_per_dim", std::to_string(n_per_dim)},
      {"nu", format_double(nu)},
      {"dt", format_double(dt)},
      {"t_end", format_double(t_end)},
      {"seed", std::to_string(seed)},
      {"tau", format_double(tau)},
      {"kappa", format_double(kappa)},
      {"cfl_limit", format_double(cfl_limit)},
      {"noise", b(noise)},
      {"nonlinear", b(nonlinear)},
      {"u_in_amplitude", format_double(u_in_amplitude)},
      {"report_interval", format_double(report_interval)},
      {"checkpoint_interval", format_double(checkpoint_interval)},
      {"lambda_list", join(lambda_list)},
      {"renorm_t", format_double(renorm_t)},
      {"ensemble_size", std::to_string(ensemble_size)},
      {"calib_lambda", format_double(calib_lambda)},
      {"a_list", join(a_list)},
      {"eta_amplitude", format_double(eta_amplitude)},
      {"anderson_max_iter", std::to_string(anderson_max_iter)},
      {"anderson_tol", format_double(anderson_tol)},
      {"probe_iters", std::to_string(probe_iters)},
      {"convention", std::string(to_string(convention))},
      {"dealias", std::string(to_string(dealias))},
      {"out_dir", out_dir},
  };
}

RunConfig parse_config(std::istream& is) {
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      apply_setting(c, key, value);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("config: cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace gnse
