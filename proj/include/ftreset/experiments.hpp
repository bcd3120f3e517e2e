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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ftreset/bounds.hpp"

namespace ftreset {

struct ShiftingParams {
  int N = 100;
  double mu = 0.1;
  double beta = 1.0;
  double E_max = 10.0;
  double tau = 10.0;
  void validate() const;
};

// Closed-form window-by-window recursion for the two-level protocol.
struct ShiftingOutcome {
  double eps = 0.5;
  double W = 0.0;
  double W_qs = 0.0;
  double W_pn = 0.0;
  double Sigma = 0.0;
  double D_eps = 0.0;
  std::vector<StepTerms> steps;
};
ShiftingOutcome shifting_recursion(const ShiftingParams& p, bool keep_steps = false);
double shifting_final_p1(const ShiftingParams& p);

struct RunOptions {
  int samples_per_window = 4;
  double initial_p1 = 0.5;
  bool keep_trajectory = false;
};

struct RunResult {
  ShiftingParams params;
  ThermoLedger ledger;
  CoarseTrace trace;
  BoundsReport report;
  ShiftingSummary summary;
  double Sigma_trapezoid = 0.0;
  double residual = 0.0;
  double D_eps = 0.0;
  std::optional<Trajectory> trajectory;
};

// Full engine run: integrate, account, coarse-grain, evaluate every bound.
RunResult run_constant_shifting(const ShiftingParams& p, const RunOptions& opt = {});

// Runs f(i) for i in [0, n) on up to `workers` threads; results must be
// written by index. workers <= 0 uses the hardware concurrency.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& f);

std::vector<double> logspace(double lo, double hi, std::size_t n, bool endpoint = true);

enum class SweepMode { kFixedEnergy, kFixedError };

struct SweepSpec {
  SweepMode mode = SweepMode::kFixedEnergy;
  std::vector<double> tau_grid;
  int N = 100;
  double mu = 0.1;
  double beta = 1.0;
  double E_max = 10.0;
  double eps_target = 0.25;
  int samples_per_window = 4;
  void validate() const;
};

struct SweepRow {
  double tau = 0.0;
  bool feasible = true;
  std::string note;
  RunResult run;
};

std::vector<SweepRow> run_fixed_energy_sweep(const SweepSpec& spec, int workers = 1);
std::vector<SweepRow> run_fixed_error_sweep(const SweepSpec& spec, int workers = 1);
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers = 1);

inline constexpr double kEnergyCap = 50.0;  // in units of 1/beta

// Bisection for E_max in [0, kEnergyCap/beta] with final P1 = eps_target.
double solve_fixed_error_energy(double eps_target, double tau, int N, double mu, double beta);

// Slack of the main bound per row (infeasible rows skipped).
std::vector<double> main_bound_slacks(const std::vector<SweepRow>& rows);
bool nonincreasing(const std::vector<double>& v, double tol = 1e-9);

enum class Region { kI = 1, kII = 2, kIII = 3 };

struct RegionCell {
  double E_max = 0.0;
  double eps = 0.0;
  Region label = Region::kIII;
  double tau_used = 0.0;
  double D_eps = 0.0;
  double Sigma = 0.0;
};

struct RegionSpec {
  double tau_budget = 1e5;
  int N = 100;
  double mu = 0.1;
  double beta = 1.0;
  std::vector<double> E_grid;
  std::vector<double> eps_grid;
};

struct RegionMap {
  RegionSpec spec;
  // cells[i * eps_grid.size() + j] for E_grid[i], eps_grid[j]
  std::vector<RegionCell> cells;
  const RegionCell& at(std::size_t i, std::size_t j) const {
    return cells[i * spec.eps_grid.size() + j];
  }
  // Zero contour of D_eps - Sigma per E_max column (NaN when absent).
  std::vector<double> boundary() const;
};

// Each cell runs the protocol for the duration tau* <= tau_budget that
// reaches the requested error; unreachable cells are Region III.
RegionMap region_map(const RegionSpec& spec, int workers = 1);
RegionSpec default_region_spec();

double thermal_p1(double E, double beta);

}  // namespace ftreset
