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

#include "ftreset/landscape.hpp"

#include <algorithm>
#include <cmath>

#include "ftreset/errors.hpp"

namespace ftreset {

ThermalState thermal_state(const Vec& energies, double beta) {
  if (energies.empty()) throw ArgumentError("thermal_state: empty energies");
  if (!(beta > 0.0)) throw ArgumentError("thermal_state: beta must be positive");
  double m = -kInf;
  for (double e : energies) {
    if (!std::isfinite(e)) throw ArgumentError("thermal_state: non-finite energy");
    m = std::max(m, -beta * e);
  }
  ThermalState ts;
  ts.gamma.resize(energies.size());
  double s = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    ts.gamma[i] = std::exp(-beta * energies[i] - m);
    s += ts.gamma[i];
  }
  for (auto& g : ts.gamma) g /= s;
  ts.logZ = m + std::log(s);
  return ts;
}

EnergyLandscape::EnergyLandscape(Vec initial, std::vector<Segment> segments)
    : initial_(std::move(initial)), segs_(std::move(segments)) {
  if (initial_.empty()) throw ArgumentError("landscape: no levels");
  if (segs_.empty()) throw ArgumentError("landscape: no segments");
  double t = 0.0;
  for (const auto& s : segs_) {
    if (s.start.size() != initial_.size() || s.end.size() != initial_.size())
      throw ArgumentError("landscape: segment level count mismatch");
    if (s.t0 != t) throw ArgumentError("landscape: segments must tile [0, tau]");
    if (!(s.t1 > s.t0)) throw ArgumentError("landscape: segment boundaries must increase");
    for (double e : s.start)
      if (!std::isfinite(e)) throw ArgumentError("landscape: non-finite energy");
    for (double e : s.end)
      if (!std::isfinite(e)) throw ArgumentError("landscape: non-finite energy");
    t = s.t1;
  }
  for (double e : initial_)
    if (!std::isfinite(e)) throw ArgumentError("landscape: non-finite energy");
}

Vec EnergyLandscape::energies_at(double t) const {
  if (t < 0.0) return initial_;
  for (const auto& s : segs_) {
    if (t < s.t1) {
      if (s.is_constant()) return s.start;
      double u = (t - s.t0) / (s.t1 - s.t0);
      Vec e(s.start.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = s.start[i] + u * (s.end[i] - s.start[i]);
      return e;
    }
  }
  return segs_.back().end;
}

Vec EnergyLandscape::final_energies() const { return segs_.back().end; }

void ProtocolSchedule::validate() const {
  if (!(tau > 0.0)) throw ArgumentError("schedule: tau must be positive");
  if (!(beta > 0.0)) throw ArgumentError("schedule: beta must be positive");
  if (kind == ProtocolKind::kConstantShifting) {
    if (N < 1) throw ArgumentError("schedule: N must be >= 1");
    if (!(E_max >= 0.0)) throw ArgumentError("schedule: E_max must be >= 0");
  }
}

double quasistatic_work(const Vec& e_start, const Vec& e_end, double beta) {
  return (thermal_state(e_start, beta).logZ - thermal_state(e_end, beta).logZ) / beta;
}

double quasistatic_work(const ProtocolSchedule& s) {
  return quasistatic_work(s.landscape.initial(), s.landscape.final_energies(), s.beta);
}

ProtocolSchedule constant_shifting_schedule(int N, double E_max, double tau, double beta) {
  if (N < 1) throw ArgumentError("constant_shifting: N must be >= 1");
  if (!(E_max >= 0.0) || !std::isfinite(E_max))
    throw ArgumentError("constant_shifting: E_max must be finite and >= 0");
  if (!(tau > 0.0)) throw ArgumentError("constant_shifting: tau must be positive");
  if (!(beta > 0.0)) throw ArgumentError("constant_shifting: beta must be positive");
  double lift = E_max / N;
  std::vector<Segment> segs;
  segs.reserve(N);
  for (int k = 1; k <= N; ++k) {
    Segment s;
    s.t0 = (k == 1) ? 0.0 : segs.back().t1;
    s.t1 = (k == N) ? tau : tau * k / N;
    // last lift lands exactly on E_max
    double e1 = (k == N) ? E_max : lift * k;
    s.start = {0.0, e1};
    s.end = s.start;
    segs.push_back(std::move(s));
  }
  ProtocolSchedule ps;
  ps.landscape = EnergyLandscape({0.0, 0.0}, std::move(segs));
  ps.tau = tau;
  ps.beta = beta;
  ps.kind = ProtocolKind::kConstantShifting;
  ps.N = N;
  ps.E_max = E_max;
  return ps;
}

ProtocolSchedule custom_schedule(EnergyLandscape landscape, double beta) {
  ProtocolSchedule ps;
  ps.tau = landscape.duration();
  ps.landscape = std::move(landscape);
  ps.beta = beta;
  ps.kind = ProtocolKind::kCustom;
  ps.validate();
  return ps;
}

}  // namespace ftreset
