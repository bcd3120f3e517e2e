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
#include <utility>
#include <vector>

#include "ftreset/dynamics.hpp"

namespace ftreset {

class BitPartition {
 public:
  BitPartition(std::vector<std::size_t> omega0, std::vector<std::size_t> omega1);
  // States 0..n0-1 in block 0, the rest in block 1.
  static BitPartition split(std::size_t n, std::size_t n0);

  std::size_t size() const { return label_.size(); }
  int block(std::size_t i) const { return label_[i]; }
  const std::vector<std::size_t>& omega(int a) const { return a == 0 ? omega0_ : omega1_; }

 private:
  std::vector<std::size_t> omega0_, omega1_;
  std::vector<int> label_;
};

Bit coarse_state(const Vec& p, const BitPartition& part);
Bit coarse_state(const Distribution& p, const BitPartition& part);

struct CoarseRates {
  double G01 = 0.0;  // into block 0 from block 1
  double G10 = 0.0;
  double mu() const { return G01 + G10; }
};

inline constexpr double kBlockUnderflow = 1e-300;

CoarseRates coarse_rates(const RateMatrix& G, const Vec& p, const BitPartition& part);
// Same as coarse_rates but rejects an empty block.
CoarseRates coarse_rates_strict(const RateMatrix& G, const Distribution& p,
                                const BitPartition& part);
double coarse_entropy_production_rate(const CoarseRates& r, const Bit& P);

struct CoarseTrace {
  std::vector<double> times;
  std::vector<Bit> P_bit;
  std::vector<Bit> gamma_bit;
  std::vector<double> G01, G10, mu;
  std::vector<Bit> P_st;
  std::vector<double> sigma_bit_cum;
  double Sigma_bit = 0.0;

  std::size_t size() const { return times.size(); }
  double tau() const { return times.empty() ? 0.0 : times.back() - times.front(); }
};

CoarseTrace build_coarse_trace(const Trajectory& tr, const BitPartition& part);
double coarse_entropy_production(const CoarseTrace& trace);

struct SwapRate {
  std::vector<double> mu;
  double average = 0.0;
};
SwapRate swap_rate(const CoarseTrace& trace);
double swap_rate_upper_bound(const RateMatrix& G, const BitPartition& part);
// mu for a fine partial swap is the fine rate itself.
double partial_swap_coarse_mu(double mu, const ThermalState& g, const BitPartition& part);
// omega = Gamma^bit_01 / gamma^bit_0 evaluated at local equilibrium.
double local_equilibrium_swap_rate(const RateMatrix& G, const ThermalState& g,
                                   const BitPartition& part);

Bit coarse_stationary_state(double G01, double G10);
double local_equilibrium_check(const Vec& p, const ThermalState& g, const BitPartition& part);

// Max |P_bit - P_integrated| from driving the two-state equation with the
// measured coarse rates (Crank-Nicolson on the sample grid).
double coarse_closure_error(const CoarseTrace& trace);

}  // namespace ftreset
