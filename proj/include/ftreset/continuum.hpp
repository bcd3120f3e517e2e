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

#include "ftreset/bounds.hpp"

namespace ftreset {

struct PiecewiseLinear {
  std::vector<double> t;
  std::vector<double> v;
  double at(double time) const;
  double min() const;
  double max() const;
};

// V(x, t) = k x^4 / 4 - a(t) x^2 / 2 + f(t) x
struct PotentialProtocol {
  double k = 1.0;
  PiecewiseLinear a;
  PiecewiseLinear f;
  double D = 1.0;
  double beta = 1.0;

  double V(double x, double t) const;
  double dV(double x, double t) const;
  void validate() const;
};

// Lower the barrier from a0 to a1 while tilting 0 -> f1 over [0, tau/2],
// then restore a0 with the tilt held over [tau/2, tau].
PotentialProtocol default_reset_protocol(double tau, double a0 = 4.0, double a1 = 0.0,
                                         double f1 = 2.0, double D = 1.0, double beta = 1.0);

struct Grid {
  double x_min = -1.0;
  double x_max = 1.0;
  int M = 2;
  double dx() const { return (x_max - x_min) / M; }
  double x(int i) const { return x_min + (i + 0.5) * dx(); }
};

// Symmetric grid whose half-width keeps beta V >= cutoff above the well
// minima at every protocol knot.
Grid make_grid(const PotentialProtocol& p, int M, double cutoff = 40.0);

struct GridDensity {
  Grid grid;
  Vec density;  // probability per unit length
  Vec probs() const;
  static GridDensity from_probs(const Grid& g, const Vec& P);
};

Vec potential_on(const Grid& g, const PotentialProtocol& p, double t);
GridDensity continuum_thermal(const Vec& V, double beta, const Grid& g);

// Nearest-neighbour rates with exponentially fitted fluxes.
// up[i]: i -> i+1, down[i]: i+1 -> i.
struct FpGenerator {
  Vec up;
  Vec down;
  double max_exit() const;
};
FpGenerator fp_generator(const Vec& V, const Grid& g, double D, double beta);
double fp_stability_limit(const FpGenerator& G);
GridDensity fp_step(const GridDensity& p, const Vec& V, double D, double beta, double dt);

struct ContinuumRates {
  double G01 = 0.0;
  double G10 = 0.0;
  double mu = 0.0;
};
// Short-time Gaussian propagator estimate of the rates across x = 0.
ContinuumRates continuum_coarse_rates(const GridDensity& p, const PotentialProtocol& proto,
                                      double t, double dt_probe);
// Rates across x = 0 of the discretized generator.
ContinuumRates discrete_coarse_rates(const FpGenerator& G, const Vec& P);

struct ContinuumOptions {
  int M = 512;
  double dt = 0.0;  // 0 selects a quarter of the stability limit
  int sample_every = 10;
  double cutoff = 40.0;
  std::vector<double> snapshot_times;
};

struct Snapshot {
  double t;
  Vec x, p, gamma, V;
};

struct ContinuumResult {
  Grid grid;
  double dt = 0.0;
  long steps = 0;
  ThermoLedger ledger;
  CoarseTrace trace;
  double Sigma_trapezoid = 0.0;
  double D_eps = 0.0;
  double residual = 0.0;
  double mass_drift_step = 0.0;
  double mass_drift_total = 0.0;
  double mu_probe_initial = 0.0;
  double mu_exact_initial = 0.0;
  BoundsReport report;
  std::vector<Snapshot> snapshots;
};

ContinuumResult run_continuum_reset(const PotentialProtocol& proto, double tau,
                                    const ContinuumOptions& opt = {});

// Evolves the discrete Gibbs state under static V; returns max D[p||gamma].
double gibbs_fixed_point_drift(const PotentialProtocol& proto, double t_static, double duration,
                               const ContinuumOptions& opt = {});

std::string snapshots_csv(const std::vector<Snapshot>& snaps);

}  // namespace ftreset
