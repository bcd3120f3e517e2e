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

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ftreset/landscape.hpp"
#include "ftreset/simplex.hpp"

namespace ftreset {

// Gamma(i, j) is the rate from state j to state i; columns sum to zero.
using RateMatrix = Eigen::MatrixXd;

// Throws ValidationError on negative off-diagonals, nonzero column sums, or
// (when gamma is given) a detailed-balance violation.
void validate_rates(const RateMatrix& G, const ThermalState* gamma = nullptr);

RateMatrix partial_swap_generator(const ThermalState& gamma, double mu);
Distribution evolve_partial_swap_constant(const Distribution& p0, const ThermalState& gamma,
                                          double mu, double dt);
Distribution stationary_state(const RateMatrix& G);

// Rate law evaluated at (t, energies). Implementations must be thread-safe.
class RateModel {
 public:
  virtual ~RateModel() = default;
  virtual RateMatrix rates(double t, const Vec& energies, const ThermalState& g) const = 0;
  // Swap rate when the model is a fine-grained partial swap.
  virtual std::optional<double> partial_swap_mu(double) const { return std::nullopt; }
};

class PartialSwapModel : public RateModel {
 public:
  explicit PartialSwapModel(double mu);
  explicit PartialSwapModel(std::function<double(double)> mu_of_t);
  RateMatrix rates(double t, const Vec& energies, const ThermalState& g) const override;
  std::optional<double> partial_swap_mu(double t) const override;
  bool constant() const { return constant_; }

 private:
  std::function<double(double)> mu_;
  bool constant_;
};

// Gamma_ij = k_ij / (1 + exp(beta (E_i - E_j))) with symmetric k.
class GlauberModel : public RateModel {
 public:
  GlauberModel(Eigen::MatrixXd k, double beta);
  RateMatrix rates(double t, const Vec& energies, const ThermalState& g) const override;

 private:
  Eigen::MatrixXd k_;
  double beta_;
};

// Wraps a user callback; rates are validated at every evaluation.
class GenericRateModel : public RateModel {
 public:
  using Fn = std::function<RateMatrix(double, const Vec&)>;
  explicit GenericRateModel(Fn f) : f_(std::move(f)) {}
  RateMatrix rates(double t, const Vec& energies, const ThermalState& g) const override;

 private:
  Fn f_;
};

struct Trajectory {
  double beta = 1.0;
  double tau = 0.0;
  ProtocolKind kind = ProtocolKind::kCustom;
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<Vec> energies;
  std::vector<RateMatrix> rates;
  // Increment from sample k-1 to k; entry 0 is zero.
  std::vector<double> dW;
  std::vector<double> dSigma;
  // Index of every pre-jump sample; the post-jump sample follows it.
  std::vector<std::size_t> jumps;

  std::size_t size() const { return times.size(); }
  bool has_increments() const { return dW.size() == times.size() && !dW.empty(); }
};

struct IntegratorOptions {
  double dt_max = 1e-2;
  bool store_rates = true;
  // Gauss-Legendre nodes per step for closed-form windows.
  int quad_nodes = 5;
  // Upper bound on RK4 step times the fastest exit or relative population rate.
  double stiffness = 0.02;
};

Trajectory integrate_master_equation(const ProtocolSchedule& schedule, const RateModel& model,
                                     const Distribution& p0, const IntegratorOptions& opt);

// (1/2) sum_{i != j} (G_ij p_j - G_ji p_i) ln(G_ij p_j / G_ji p_i).
double entropy_production_rate(const RateMatrix& G, const Vec& p);

}  // namespace ftreset
