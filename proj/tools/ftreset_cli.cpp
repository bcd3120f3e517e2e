// Copyright 2026 The ftreset Authors
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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "ftreset/config.hpp"
#include "ftreset/errors.hpp"
#include "ftreset/verify.hpp"

namespace {

using namespace ftreset;

struct Common {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> tau_grid;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<int> N;
  std::optional<double> mu, beta, E_max, tau, eps, initial_p1;
  std::optional<int> samples;
};

void add_common(CLI::App* sub, Common& c, bool physics) {
  sub->add_option("--config", c.config, "JSON config file")->envname("FTRESET_CONFIG");
  sub->add_option("--out", c.out, "output directory")->envname("FTRESET_OUT");
  sub->add_option("--tau-grid", c.tau_grid, "tau grid: lo:hi:n (log-spaced) or a,b,c")
      ->envname("FTRESET_TAU_GRID");
  sub->add_option("--workers", c.workers, "worker threads (0 = all cores)")->envname("FTRESET_WORKERS");
  sub->add_option("--seed", c.seed, "seed for sampled checks")->envname("FTRESET_SEED");
  if (!physics) return;
  sub->add_option("--N", c.N, "number of energy lifts");
  sub->add_option("--mu", c.mu, "swap rate");
  sub->add_option("--beta", c.beta, "inverse temperature");
  sub->add_option("--E-max", c.E_max, "final energy of level 1");
  sub->add_option("--tau", c.tau, "protocol duration (time budget for region-map)");
  sub->add_option("--eps", c.eps, "target reset error");
  sub->add_option("--initial-p1", c.initial_p1, "initial weight of logical 1");
  sub->add_option("--samples-per-window", c.samples, "integrator samples per window");
}

RunConfig build(const Common& c, Experiment e, bool keep_file_experiment) {
  RunConfig cfg = c.config.empty() ? default_config() : load_config_file(c.config);
  if (!keep_file_experiment || c.config.empty()) cfg.experiment = e;
  if (c.out) cfg.out = *c.out;
  if (c.tau_grid) cfg.tau_grid = parse_tau_grid(*c.tau_grid);
  if (c.workers) cfg.workers = *c.workers;
  if (c.seed) cfg.seed = *c.seed;
  if (c.N) cfg.protocol.N = *c.N;
  if (c.mu) cfg.protocol.mu = *c.mu;
  if (c.beta) cfg.protocol.beta = *c.beta;
  if (c.E_max) cfg.protocol.E_max = *c.E_max;
  if (c.eps) cfg.eps = *c.eps, cfg.throughput.eps = *c.eps;
  if (c.initial_p1) cfg.initial_p1 = *c.initial_p1;
  if (c.samples) cfg.samples_per_window = *c.samples;
  if (c.tau) {
    cfg.protocol.tau = *c.tau;
    cfg.region.tau = *c.tau;
    cfg.continuum.tau = *c.tau;
  }
  return cfg;
}

int run(const RunConfig& cfg) {
  ExecOutcome o = execute(cfg);
  std::cout << o.summary << "\n";
  for (const auto& a : o.artifacts) std::cout << "wrote " << a << "\n";
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-time bit reset: simulation and bound checks"};
  app.require_subcommand(1);

  Common c_run, c_sweep, c_region, c_cont, c_tp, c_self;
  std::string mode = "fixed-energy";
  std::vector<std::string> only;

  auto* run_cmd = app.add_subcommand("run", "single constant-shifting run, or the experiment named in --config");
  add_common(run_cmd, c_run, true);
  auto* sweep_cmd = app.add_subcommand("sweep", "tau sweep at fixed energy or fixed error");
  add_common(sweep_cmd, c_sweep, true);
  sweep_cmd->add_option("--mode", mode, "fixed-energy or fixed-error")
      ->check(CLI::IsMember({"fixed-energy", "fixed-error"}));
  auto* region_cmd = app.add_subcommand("region-map", "(E_max, eps) region map");
  add_common(region_cmd, c_region, true);
  auto* cont_cmd = app.add_subcommand("continuum", "double-well Fokker-Planck reset");
  add_common(cont_cmd, c_cont, true);
  auto* tp_cmd = app.add_subcommand("throughput", "information throughput bound");
  add_common(tp_cmd, c_tp, true);
  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance checks");
  add_common(self_cmd, c_self, false);
  self_cmd->add_option("--only", only, "check ids to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) return run(build(c_run, Experiment::kSingleRun, true));
    if (*sweep_cmd)
      return run(build(c_sweep, mode == "fixed-error" ? Experiment::kFixedErrorSweep : Experiment::kFixedEnergySweep, false));
    if (*region_cmd) return run(build(c_region, Experiment::kRegionMap, false));
    if (*cont_cmd) return run(build(c_cont, Experiment::kContinuumReset, false));
    if (*tp_cmd) return run(build(c_tp, Experiment::kThroughput, false));
    if (*self_cmd) {
      RunConfig cfg = build(c_self, Experiment::kSingleRun, false);
      VerifyOptions vo;
      vo.workers = cfg.workers;
      if (c_self.seed) vo.seed = *c_self.seed;
      auto ids = only.empty() ? acceptance_ids() : only;
      int failed = 0;
      for (const auto& id : ids) {
        CheckResult r = run_acceptance(id, vo);
        std::printf("[%s] %-4s %s: %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(), r.detail.c_str());
        failed += !r.pass;
      }
      std::printf("%zu checks, %d failed\n", ids.size(), failed);
      return failed ? 2 : 0;
    }
  } catch (const HypothesisError& e) {
    std::cerr << "error: hypothesis not met: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
