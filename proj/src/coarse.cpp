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

#include "ftreset/coarse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ftreset/errors.hpp"

namespace ftreset {

BitPartition::BitPartition(std::vector<std::size_t> omega0, std::vector<std::size_t> omega1)
    : omega0_(std::move(omega0)), omega1_(std::move(omega1)) {
  if (omega0_.empty() || omega1_.empty())
    throw ArgumentError("partition: both blocks must be non-empty");
  std::size_t n = omega0_.size() + omega1_.size();
  label_.assign(n, -1);
  for (int a = 0; a < 2; ++a)
    for (std::size_t i : (a == 0 ? omega0_ : omega1_)) {
      if (i >= n) throw ArgumentError("partition: index out of range");
      if (label_[i] != -1) throw ArgumentError("partition: blocks must be disjoint");
      label_[i] = a;
    }
}

BitPartition BitPartition::split(std::size_t n, std::size_t n0) {
  std::vector<std::size_t> a, b;
  for (std::size_t i = 0; i < n; ++i) (i < n0 ? a : b).push_back(i);
  return BitPartition(std::move(a), std::move(b));
}

Bit coarse_state(const Vec& p, const BitPartition& part) {
  if (p.size() != part.size()) throw ArgumentError("coarse_state: partition does not cover p");
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) (part.block(i) == 0 ? s0 : s1) += p[i];
  Bit b;
  b.p1 = std::clamp(s1 / (s0 + s1), 0.0, 1.0);
  return b;
}

Bit coarse_state(const Distribution& p, const BitPartition& part) {
  return coarse_state(p.weights(), part);
}

CoarseRates coarse_rates(const RateMatrix& G, const Vec& p, const BitPartition& part) {
  if (p.size() != part.size() || static_cast<std::size_t>(G.rows()) != p.size())
    throw ArgumentError("coarse_rates: size mismatch");
  double flow_to0 = 0.0, flow_to1 = 0.0, P0 = 0.0, P1 = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    (part.block(j) == 0 ? P0 : P1) += p[j];
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (part.block(i) == part.block(j)) continue;
      double f = G(i, j) * p[j];
      (part.block(i) == 0 ? flow_to0 : flow_to1) += f;
    }
  }
  CoarseRates r;
  r.G01 = P1 < kBlockUnderflow ? 0.0 : flow_to0 / P1;
  r.G10 = P0 < kBlockUnderflow ? 0.0 : flow_to1 / P0;
  return r;
}

CoarseRates coarse_rates_strict(const RateMatrix& G, const Distribution& p,
                                const BitPartition& part) {
  Bit b = coarse_state(p, part);
  if (b.p0() <= 0.0 || b.p1 <= 0.0)
    throw DegenerateError("coarse_rates: a block carries zero probability");
  return coarse_rates(G, p.weights(), part);
}

double coarse_entropy_production_rate(const CoarseRates& r, const Bit& P) {
  double a = r.G01 * P.p1;
  double b = r.G10 * P.p0();
  if (a > 0.0 && b > 0.0) return (a - b) * std::log(a / b);
  return 0.0;
}

CoarseTrace build_coarse_trace(const Trajectory& tr, const BitPartition& part) {
  if (tr.rates.size() != tr.size())
    throw ArgumentError("build_coarse_trace: trajectory has no stored rates");
  CoarseTrace c;
  const std::size_t n = tr.size();
  c.times = tr.times;
  c.P_bit.reserve(n);
  double prev_rate = 0.0;
  double cum = 0.0;
  bool warned = false;
  for (std::size_t k = 0; k < n; ++k) {
    Bit P = coarse_state(tr.states[k], part);
    Bit g = coarse_state(thermal_state(tr.energies[k], tr.beta).gamma, part);
    CoarseRates r = coarse_rates(tr.rates[k], tr.states[k], part);
    c.P_bit.push_back(P);
    c.gamma_bit.push_back(g);
    c.G01.push_back(r.G01);
    c.G10.push_back(r.G10);
    c.mu.push_back(r.mu());
    Bit st;
    st.p1 = r.mu() > 0.0 ? r.G10 / r.mu() : P.p1;
    c.P_st.push_back(st);
    double rate = coarse_entropy_production_rate(r, P);
    if (k > 0) {
      double dt = tr.times[k] - tr.times[k - 1];
      cum += 0.5 * (prev_rate + rate) * dt;
      if (dt > 0.0 && !warned && c.mu[k - 1] > 0.0 &&
          std::abs(c.mu[k] - c.mu[k - 1]) > 0.1 * c.mu[k - 1]) {
        warn("coarse trace: swap rate changes by more than 10% between samples");
        warned = true;
      }
    }
    c.sigma_bit_cum.push_back(cum);
    prev_rate = rate;
  }
  c.Sigma_bit = cum;
  return c;
}

double coarse_entropy_production(const CoarseTrace& trace) {
  double s = 0.0;
  for (std::size_t k = 1; k < trace.size(); ++k) {
    CoarseRates a{trace.G01[k - 1], trace.G10[k - 1]};
    CoarseRates b{trace.G01[k], trace.G10[k]};
    s += 0.5 *
         (coarse_entropy_production_rate(a, trace.P_bit[k - 1]) +
          coarse_entropy_production_rate(b, trace.P_bit[k])) *
         (trace.times[k] - trace.times[k - 1]);
  }
  return s;
}

SwapRate swap_rate(const CoarseTrace& trace) {
  SwapRate s;
  s.mu = trace.mu;
  double integral = 0.0;
  for (std::size_t k = 1; k < trace.size(); ++k)
    integral += 0.5 * (trace.mu[k - 1] + trace.mu[k]) * (trace.times[k] - trace.times[k - 1]);
  double tau = trace.tau();
  s.average = tau > 0.0 ? integral / tau : (trace.mu.empty() ? 0.0 : trace.mu.front());
  return s;
}

double swap_rate_upper_bound(const RateMatrix& G, const BitPartition& part) {
  if (static_cast<std::size_t>(G.rows()) != part.size())
    throw ArgumentError("swap_rate_upper_bound: size mismatch");
  double b = 0.0;
  for (std::size_t i : part.omega(0)) {
    double m = 0.0;
    for (std::size_t j : part.omega(1)) m = std::max(m, G(i, j));
    b += m;
  }
  for (std::size_t j : part.omega(1)) {
    double m = 0.0;
    for (std::size_t i : part.omega(0)) m = std::max(m, G(j, i));
    b += m;
  }
  return b;
}

double partial_swap_coarse_mu(double mu, const ThermalState& g, const BitPartition& part) {
  Bit gb = coarse_state(g.gamma, part);
  return mu * (gb.p0() + gb.p1);
}

double local_equilibrium_swap_rate(const RateMatrix& G, const ThermalState& g,
                                   const BitPartition& part) {
  CoarseRates r = coarse_rates(G, g.gamma, part);
  Bit gb = coarse_state(g.gamma, part);
  if (!(gb.p0() > 0.0)) throw DegenerateError("local_equilibrium_swap_rate: empty block 0");
  return r.G01 / gb.p0();
}

Bit coarse_stationary_state(double G01, double G10) {
  if (G01 < 0.0 || G10 < 0.0) throw ArgumentError("coarse_stationary_state: negative rate");
  double mu = G01 + G10;
  if (!(mu > 0.0)) throw DegenerateError("coarse_stationary_state: both rates are zero");
  Bit b;
  b.p1 = G10 / mu;
  return b;
}

double local_equilibrium_check(const Vec& p, const ThermalState& g, const BitPartition& part) {
  if (p.size() != g.gamma.size() || p.size() != part.size())
    throw ArgumentError("local_equilibrium_check: size mismatch");
  double dev = 0.0;
  for (int a = 0; a < 2; ++a) {
    double lo = kInf, hi = -kInf;
    for (std::size_t i : part.omega(a)) {
      if (!(g.gamma[i] > 0.0)) throw ArgumentError("local_equilibrium_check: gamma must be > 0");
      double c = p[i] / g.gamma[i];
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    double mean = 0.5 * (lo + hi);
    if (mean > 0.0) dev = std::max(dev, (hi - lo) / mean);
  }
  return dev;
}

double coarse_closure_error(const CoarseTrace& trace) {
  if (trace.size() == 0) return 0.0;
  double P1 = trace.P_bit[0].p1;
  double err = 0.0;
  for (std::size_t k = 1; k < trace.size(); ++k) {
    double h = trace.times[k] - trace.times[k - 1];
    if (h == 0.0) {
      // a jump leaves the bit unchanged
      err = std::max(err, std::abs(P1 - trace.P_bit[k].p1));
      continue;
    }
    // dP1/dt = G10 - mu P1
    double a0 = trace.G10[k - 1], m0 = trace.mu[k - 1];
    double a1 = trace.G10[k], m1 = trace.mu[k];
    P1 = (P1 * (1.0 - 0.5 * h * m0) + 0.5 * h * (a0 + a1)) / (1.0 + 0.5 * h * m1);
    err = std::max(err, std::abs(P1 - trace.P_bit[k].p1));
  }
  return err;
}

}  // namespace ftreset
