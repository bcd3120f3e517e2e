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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftreset/report.hpp"

namespace ftreset {

enum class Experiment {
  kSingleRun,
  kFixedEnergySweep,
  kFixedErrorSweep,
  kRegionMap,
  kContinuumReset,
  kThroughput,
};

Experiment parse_experiment(const std::string& s);
std::string experiment_name(Experiment e);

struct RegionGrid {
  double tau = 1e5;
  double E_min = 0.1;
  double E_max = 20.0;
  int E_points = 64;
  double eps_min = 1e-4;
  double eps_max = 0.5;
  int eps_points = 64;
};

struct ContinuumConfig {
  double tau = 8.0;
  int M = 512;
  double k = 1.0;
  double a0 = 4.0;
  double a1 = 0.0;
  double f1 = 2.0;
  double D = 1.0;
  double beta = 1.0;
  double dt = 0.0;
  double cutoff = 40.0;
  std::vector<double> snapshot_times;
};

struct ThroughputConfig {
  double n = 1.0;
  double tau_sw = 1.0;
  double T = 1.0;
  double mu = 0.1;
  double eps = 0.25;
  double E_max = 10.0;
};

struct RunConfig {
  Experiment experiment = Experiment::kSingleRun;
  ShiftingParams protocol;
  double initial_p1 = 0.5;
  int samples_per_window = 4;
  double eps = 0.25;
  std::vector<double> tau_grid;
  RegionGrid region;
  ContinuumConfig continuum;
  ThroughputConfig throughput;
  int workers = 0;
  std::uint64_t seed = 1;
  std::string out = "ftreset_out";

  // Checks every parameter the selected experiment uses.
  void validate() const;
};

RunConfig default_config();
// Strict: unknown keys and wrong types raise ArgumentError naming the key path.
void apply_config_json(RunConfig& cfg, const json& j);
RunConfig load_config_file(const std::string& path);
json config_to_json(const RunConfig& cfg);

// "lo:hi:n" for a log-spaced grid or a comma-separated list.
std::vector<double> parse_tau_grid(const std::string& s);

struct ExecOutcome {
  int exit_code = 0;
  std::vector<std::string> artifacts;
  std::string summary;
};

ExecOutcome execute(const RunConfig& cfg);

}  // namespace ftreset
