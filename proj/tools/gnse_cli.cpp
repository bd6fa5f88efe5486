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

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "gnse/anderson.hpp"
#include "gnse/config.hpp"
#include "gnse/errors.hpp"
#include "gnse/fft.hpp"
#include "gnse/renormalization.hpp"
#include "gnse/solver.hpp"
#include "gnse/spectral_ops.hpp"
#include "gnse/verify.hpp"

namespace fs = std::filesystem;
using namespace gnse;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

RunConfig resolve(const Common& c) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (!c.out.empty()) cfg.out_dir = c.out;
  cfg.validate();
  return cfg;
}

nlohmann::json header_record(const RunConfig& cfg, const std::string& command) {
  nlohmann::json j;
  j["record"] = "header";
  j["command"] = command;
  j["version"] = GNSE_VERSION_TAG;
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [k, v] : cfg.resolved()) c[k] = v;
  j["config"] = c;
  return j;
}

void csv_header(std::ostream& os, const RunConfig& cfg, const std::string& command) {
  os << "# gnse " << GNSE_VERSION_TAG << ' ' << command << '\n';
  for (const auto& [k, v] : cfg.resolved()) os << "# " << k << " = " << v << '\n';
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  std::ofstream os(fs::path(cfg.out_dir) / name, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write to '" + (fs::path(cfg.out_dir) / name).string() + "'");
  return os;
}

SpectralField initial_datum(const RunConfig& cfg, const TorusGrid& g) {
  SpectralField u(g, Rank::vector);
  if (cfg.u_in_amplitude == 0.0) return u;
  std::mt19937_64 rng(split_seed(cfg.seed, 0x11));
  u = leray_project(random_field(g, Rank::vector, rng, std::min(g.dealias_radius(), 3.0), 1.0));
  u *= cfg.u_in_amplitude / l2_norm(u);
  return u;
}

nlohmann::json record_json(const DiagnosticRecord& r, int stop_index) {
  nlohmann::json j;
  j["record"] = "diagnostic";
  j["t"] = r.t;
  j["w_l2"] = r.w_l2;
  j["wL_l2"] = r.wL_l2;
  j["wL_h54"] = r.wL_h54;
  j["lambda"] = r.lambda;
  j["r_lambda"] = r.r_lambda;
  j["quad_form"] = r.quad_form;
  j["cfl"] = r.cfl;
  j["stop_index"] = stop_index;
  return j;
}

// Rows (field, s, j, block_norm, weighted) of the L^∞ Besov table for the final X and w.
void write_besov_table(const RunConfig& cfg, const SolverState& state, const DyadicPartition& part) {
  auto os = open_out(cfg, "besov_table.csv");
  csv_header(os, cfg, "simulate besov-table");
  os << "field,s,j,block_norm,weighted\n";
  os.precision(17);
  const double s = -0.25 - cfg.kappa;
  for (const auto& [name, f] : {std::pair<std::string, SpectralField>{"X", state.X()}, {"w", state.w}})
    for (const auto& row : besov_table(f, s, std::numeric_limits<double>::infinity(), part))
      os << name << ',' << s << ',' << row.j << ',' << row.block_norm << ',' << row.weighted << '\n';
}

int cmd_simulate(const RunConfig& cfg, bool besov) {
  const auto g = cfg.grid();
  const auto part = build_partition(g);
  auto os = open_out(cfg, "diagnostics.ndjson");
  os << header_record(cfg, "simulate").dump() << '\n';
  auto state = init(cfg.solver_params(), initial_datum(cfg, g), cfg.seed);
  if (state.projected_input) {
    nlohmann::json w{{"record", "warning"}, {"message", "initial datum projected"}};
    os << w.dump() << '\n';
  }
  auto report = [&] { os << record_json(energy_report(state, part), state.stop_index).dump() << '\n'; };
  auto checkpoint = [&](const std::string& name) {
    auto ck = open_out(cfg, name);
    save_checkpoint(ck, state);
  };
  report();
  double dt = cfg.dt;
  bool halved = false;
  const double eps = 1e-12 * std::max(1.0, cfg.t_end);
  double next_report = cfg.report_interval;
  double next_ck = cfg.checkpoint_interval;
  int ck_count = 0;
  while (cfg.t_end - state.t > eps) {
    const double h = std::min(dt, cfg.t_end - state.t);
    try {
      step(state, h);
    } catch (const StepRejected& e) {
      if (halved) {
        nlohmann::json j{{"record", "abort"},
                         {"t", state.t},
                         {"reason", e.what()},
                         {"admissible_dt", e.admissible_dt()}};
        os << j.dump() << '\n';
        std::cerr << "simulate: " << e.what() << " at t=" << state.t
                  << " (admissible dt " << e.admissible_dt() << ")\n";
        return kExitNumerical;
      }
      halved = true;
      dt *= 0.5;
      nlohmann::json j{{"record", "warning"}, {"t", state.t}, {"message", "CFL rejection, dt halved"},
                       {"dt", dt}};
      os << j.dump() << '\n';
      continue;
    }
    if (has_nan(state.w)) {
      nlohmann::json j{{"record", "abort"}, {"t", state.t}, {"reason", "non-finite state"}};
      os << j.dump() << '\n';
      return kExitNumerical;
    }
    if (state.t >= next_report - eps || cfg.t_end - state.t <= eps) {
      report();
      while (next_report <= state.t + eps) next_report += cfg.report_interval;
    }
    if (cfg.checkpoint_interval > 0 && state.t >= next_ck - eps) {
      checkpoint("checkpoint_" + std::to_string(++ck_count) + ".bin");
      while (next_ck <= state.t + eps) next_ck += cfg.checkpoint_interval;
    }
  }
  checkpoint("checkpoint.bin");
  if (besov) write_besov_table(cfg, state, part);
  std::cout << "simulate: t=" << state.t << " records=" << state.history.size() << " out="
            << cfg.out_dir << '\n';
  return 0;
}

int cmd_renorm(const RunConfig& cfg) {
  auto lams = cfg.lambda_list;
  std::sort(lams.begin(), lams.end());
  auto os = open_out(cfg, "renorm.csv");
  csv_header(os, cfg, "renorm");
  os << "lambda,t,r1,r2_1,r2_2,r2_3,r_over_ln_lambda\n";
  os.precision(17);
  for (double lam : lams) {
    const auto r = renorm_constants(lam, cfg.renorm_t, cfg.nu, lam);
    const double diag = r.diagonal()[0];
    const double ratio = diag == 0.0 ? 0.0 : diag / std::log(lam);
    os << lam << ',' << cfg.renorm_t << ',' << r.r1 << ',' << r.r2[0] << ',' << r.r2[1] << ','
       << r.r2[2] << ',' << ratio << '\n';
  }
  std::cout << "renorm: " << lams.size() << " rows -> " << (fs::path(cfg.out_dir) / "renorm.csv").string()
            << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  auto os = open_out(cfg, "verify.ndjson");
  const auto head = header_record(cfg, "verify " + suite).dump();
  os << head << '\n';
  std::cout << head << '\n';
  std::stringstream buf;
  const auto rep = run_verify(suite, cfg, buf);
  os << buf.str();
  std::cout << buf.str();
  return rep.exit_code();
}

int cmd_anderson(const RunConfig& cfg) {
  const auto g = make_grid(cfg.n_per_dim, DealiasRule::none, cfg.convention);
  std::mt19937_64 rng(cfg.seed);
  auto eta = random_field(g, Rank::scalar, rng, 2.0, 0.0, true);
  double sup = 0.0;
  for (double v : to_physical(eta)) sup = std::max(sup, std::abs(v));
  if (sup > 0) eta *= cfg.eta_amplitude / sup;
  const auto rhs = random_field(g, Rank::scalar, rng, 3.0);
  auto os = open_out(cfg, "anderson.csv");
  csv_header(os, cfg, "anderson");
  os << "a,iters,residual,e_bottom,status\n";
  os.precision(17);
  int code = 0;
  for (double a : cfg.a_list) {
    try {
      const auto r = resolvent_solve({eta, rhs, a, cfg.anderson_tol, cfg.anderson_max_iter});
      const auto ge = ground_energy_probe(eta, a, cfg.probe_iters);
      os << a << ',' << r.iters << ',' << r.residual << ',' << ge.e_bottom << ','
         << (r.converged ? "converged" : "max_iter") << '\n';
    } catch (const NoContraction& e) {
      os << a << ",,,,no_contraction(suggested_a=" << e.suggested_shift() << ")\n";
      code = kExitNumerical;
    }
  }
  std::cout << "anderson: " << cfg.a_list.size() << " rows -> "
            << (fs::path(cfg.out_dir) / "anderson.csv").string() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral toolkit for the stochastic generalized Navier-Stokes system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(GNSE_VERSION_TAG));

  Common common;
  std::string suite = "all";
  bool besov = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "flat key = value configuration file");
    sub->add_option("--seed", common.seed, "master seed (overrides the config)");
    sub->add_option("--out", common.out, "output directory (overrides the config)");
  };
  auto* sim = app.add_subcommand("simulate", "integrate one trajectory, write NDJSON diagnostics");
  auto* ren = app.add_subcommand("renorm", "tabulate renormalisation constants as CSV");
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  auto* and_ = app.add_subcommand("anderson", "resolvent and ground-energy ladder as CSV");
  for (auto* s : {sim, ren, ver, and_}) add_common(s);
  sim->add_flag("--besov-table", besov, "also write besov_table.csv for the final X and w");
  ver->add_option("suite", suite, "algebra | noise | renorm | solver | anderson | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg = resolve(common);
    if (ver->parsed() &&
        std::find(verify_suites().begin(), verify_suites().end(), suite) == verify_suites().end())
      throw InvalidArgument("unknown verify suite '" + suite + "'");
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(cfg, besov);
    if (ren->parsed()) return cmd_renorm(cfg);
    if (ver->parsed()) return cmd_verify(cfg, suite);
    if (and_->parsed()) return cmd_anderson(cfg);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitFail;
}
