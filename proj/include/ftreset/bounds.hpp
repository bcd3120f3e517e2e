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

#include <string>
#include <vector>

#include "ftreset/accounting.hpp"
#include "ftreset/coarse.hpp"

namespace ftreset {

inline constexpr double kSlackAbs = 1e-9;
inline constexpr double kSlackRel = 1e-9;

struct BoundRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
  bool satisfied = true;
  bool applicable = true;
  std::string note;
};

// lhs >= rhs under the slack policy.
BoundRecord make_record(std::string name, double lhs, double rhs);
BoundRecord not_applicable(std::string name, std::string why);
bool within_slack(double lhs, double rhs);

struct BoundsReport {
  double tau = 0.0;
  int N = 0;
  double mu_avg = 0.0;
  double beta = 1.0;
  double E_max = 0.0;
  double eps = 0.0;
  std::vector<BoundRecord> records;
  // Values reported without a pass/fail verdict.
  std::vector<std::pair<std::string, double>> diagnostics;

  bool all_satisfied() const;
  const BoundRecord* find(const std::string& name) const;
};

// Two-level constant-shifting run reduced to the numbers the bounds need.
struct ShiftingSummary {
  int N = 1;
  double mu = 0.0;
  double beta = 1.0;
  double tau = 0.0;
  double E_max = 0.0;
  double eps = 0.5;  // final P1
  double W_pn = 0.0;
};

// Lower bound on Sigma^bit from the speed limit: L^2 / (<mu> tau).
BoundRecord speed_limit_check(const CoarseTrace& trace, double tau);
BoundRecord speed_limit_check(double sigma_bit, double L, double mu_avg, double tau);

struct MainBoundParts {
  double D_eps = 0.0;
  double speed_term = 0.0;
};
// Throws HypothesisError unless the initial bit is uniform within
// bit_tol and the initial fine state is thermal.
BoundRecord main_penalty_bound_check(const ThermoLedger& L, const CoarseTrace& trace,
                                     double bit_tol = 1e-9, MainBoundParts* parts = nullptr);
BoundRecord main_penalty_bound_check(double beta_W_pn, double P1_start, double D_initial,
                                     double D_eps, double eps, double mu_avg, double tau,
                                     double bit_tol = 1e-9, MainBoundParts* parts = nullptr);

BoundRecord relent_exponential_upper(const ShiftingSummary& s);
// Three-term lower bound plus its thermalizing special case; not-applicable
// records when the trace breaks the required orderings.
std::vector<BoundRecord> relent_general_lower(const CoarseTrace& trace, double* case1 = nullptr);

struct Envelope {
  double lower = 0.0;
  double upper = 0.0;
};
Envelope penalty_envelope(const ShiftingSummary& s);
std::vector<BoundRecord> penalty_envelope_check(const ShiftingSummary& s);

struct Throughput {
  double power = 0.0;      // closed form
  double composed = 0.0;   // bandwidth * (W_qs + T D_eps + T speed term)
  double E_bit = 0.0;      // W_qs + W_pn lower bound per switch
  double bandwidth = 0.0;  // n / tau_sw
};
Throughput throughput_bound(double n, double tau_sw, double T, double mu, double eps,
                            double E_max);

struct Identity {
  double lhs;
  double rhs;
};
// ln Z(0)/Z(tau) + D_eps against ln 2 - H_b(eps) + eps beta E_max.
Identity throughput_identity(double eps, double E_max, double beta);

}  // namespace ftreset
