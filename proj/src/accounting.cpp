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

#include "ftreset/accounting.hpp"

#include <cmath>

#include "ftreset/errors.hpp"

namespace ftreset {

namespace {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void require_energies(const Trajectory& tr) {
  if (tr.times.empty()) throw ArgumentError("accounting: empty trajectory");
  if (tr.energies.size() != tr.times.size() || tr.states.size() != tr.times.size())
    throw ArgumentError("accounting: trajectory is missing energy samples");
}

double thermal_kl(const Vec& p, const Vec& e, double beta) {
  return raw::kl(p, thermal_state(e, beta).gamma);
}

}  // namespace

double work(const Trajectory& tr) {
  require_energies(tr);
  if (tr.has_increments()) {
    double w = 0.0;
    for (double x : tr.dW) w += x;
    return w;
  }
  double w = 0.0;
  for (std::size_t k = 1; k < tr.size(); ++k) {
    const Vec& e0 = tr.energies[k - 1];
    const Vec& e1 = tr.energies[k];
    for (std::size_t i = 0; i < e0.size(); ++i) {
      double de = e1[i] - e0[i];
      if (de == 0.0) continue;
      // a jump keeps p frozen; a ramp uses the trapezoid rule
      double pi = tr.times[k] == tr.times[k - 1]
                      ? tr.states[k - 1][i]
                      : 0.5 * (tr.states[k - 1][i] + tr.states[k][i]);
      w += pi * de;
    }
  }
  return w;
}

double heat(const Trajectory& tr) {
  require_energies(tr);
  double du = dot(tr.states.back(), tr.energies.back()) - dot(tr.states.front(), tr.energies.front());
  return du - work(tr);
}

double entropy_production(const Trajectory& tr, double T) {
  if (!(T > 0.0)) throw ArgumentError("entropy_production: T must be positive");
  double ds = raw::entropy(tr.states.back()) - raw::entropy(tr.states.front());
  return ds - heat(tr) / T;
}

double entropy_production_trapezoid(const Trajectory& tr) {
  if (tr.rates.size() != tr.size())
    throw ArgumentError("entropy_production_trapezoid: trajectory has no stored rates");
  double s = 0.0;
  double prev = entropy_production_rate(tr.rates[0], tr.states[0]);
  for (std::size_t k = 1; k < tr.size(); ++k) {
    double cur = entropy_production_rate(tr.rates[k], tr.states[k]);
    s += 0.5 * (prev + cur) * (tr.times[k] - tr.times[k - 1]);
    prev = cur;
  }
  return s;
}

double entropy_production_rate_integral(const Trajectory& tr) {
  if (tr.has_increments()) {
    double s = 0.0;
    for (double x : tr.dSigma) s += x;
    return s;
  }
  return entropy_production_trapezoid(tr);
}

ThermoLedger make_ledger(const Trajectory& tr, double T) {
  require_energies(tr);
  if (!(T > 0.0)) throw ArgumentError("ledger: T must be positive");
  double beta = 1.0 / T;
  ThermoLedger L;
  L.T = T;
  L.W = work(tr);
  L.dU = dot(tr.states.back(), tr.energies.back()) - dot(tr.states.front(), tr.energies.front());
  L.Q = L.dU - L.W;
  L.dS = raw::entropy(tr.states.back()) - raw::entropy(tr.states.front());
  L.Sigma = L.dS - L.Q / T;
  L.Sigma_rate = entropy_production_rate_integral(tr);
  L.D_initial = thermal_kl(tr.states.front(), tr.energies.front(), beta);
  L.D_final = thermal_kl(tr.states.back(), tr.energies.back(), beta);
  L.W_qs = quasistatic_work(tr.energies.front(), tr.energies.back(), beta);
  L.W_pn = L.W - L.W_qs;
  return L;
}

double penalty_equality_residual(const Trajectory& tr, double T) {
  ThermoLedger L = make_ledger(tr, T);
  return std::abs(L.W_pn - (T * (L.D_final - L.D_initial) + T * L.Sigma_rate));
}

std::vector<StepTerms> step_decomposition(const Trajectory& tr) {
  if (tr.kind != ProtocolKind::kConstantShifting)
    throw UnsupportedError("step_decomposition: requires a constant-shifting protocol");
  require_energies(tr);
  const double beta = tr.beta;
  std::vector<StepTerms> out;
  out.reserve(tr.jumps.size());
  for (std::size_t k = 0; k < tr.jumps.size(); ++k) {
    std::size_t pre = tr.jumps[k];
    std::size_t end = (k + 1 < tr.jumps.size()) ? tr.jumps[k + 1] : tr.size() - 1;
    const Vec& p_prev = tr.states[pre];
    Vec g_prev = thermal_state(tr.energies[pre], beta).gamma;
    Vec g_k = thermal_state(tr.energies[pre + 1], beta).gamma;
    const Vec& p_k = tr.states[end];
    double a = raw::kl(p_prev, g_k);
    out.push_back({a - raw::kl(p_k, g_k), a - raw::kl(p_prev, g_prev)});
  }
  return out;
}

}  // namespace ftreset
