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

#include <vector>

#include "ftreset/dynamics.hpp"

namespace ftreset {

struct ThermoLedger {
  double T = 1.0;
  double W = 0.0;
  double Q = 0.0;
  double dU = 0.0;
  double dS = 0.0;
  // Sigma from dS - Q/T; Sigma_rate from the time integral of the rate formula.
  double Sigma = 0.0;
  double Sigma_rate = 0.0;
  double D_initial = 0.0;
  double D_final = 0.0;
  double W_qs = 0.0;
  double W_pn = 0.0;
};

double work(const Trajectory& tr);
double heat(const Trajectory& tr);
double entropy_production(const Trajectory& tr, double T);
double entropy_production_rate_integral(const Trajectory& tr);
// Trapezoid of the rate formula on the sample grid; needs stored rates.
double entropy_production_trapezoid(const Trajectory& tr);
double penalty_equality_residual(const Trajectory& tr, double T);

ThermoLedger make_ledger(const Trajectory& tr, double T);

struct StepTerms {
  double Sigma;
  double W_pn;  // in units of T
};
std::vector<StepTerms> step_decomposition(const Trajectory& tr);

}  // namespace ftreset
