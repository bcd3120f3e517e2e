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
#include <string>
#include <vector>

#include "ftreset/simplex.hpp"

namespace ftreset {

struct ThermalState {
  Vec gamma;
  double logZ = 0.0;
};

ThermalState thermal_state(const Vec& energies, double beta);

// One piece of the landscape. Energies move linearly from `start` at t0 to
// `end` at t1 (equal for a constant segment). A mismatch between the end of
// one segment and the start of the next is an instantaneous jump.
struct Segment {
  double t0 = 0.0;
  double t1 = 0.0;
  Vec start;
  Vec end;
  bool is_constant() const { return start == end; }
};

class EnergyLandscape {
 public:
  EnergyLandscape() = default;
  EnergyLandscape(Vec initial, std::vector<Segment> segments);

  std::size_t levels() const { return initial_.size(); }
  const Vec& initial() const { return initial_; }
  const std::vector<Segment>& segments() const { return segs_; }
  double duration() const { return segs_.empty() ? 0.0 : segs_.back().t1; }
  // Right-continuous: at a jump time returns the post-jump energies.
  Vec energies_at(double t) const;
  Vec final_energies() const;

 private:
  Vec initial_;
  std::vector<Segment> segs_;
};

enum class ProtocolKind { kConstantShifting, kCustom };

struct ProtocolSchedule {
  EnergyLandscape landscape;
  double tau = 1.0;
  double beta = 1.0;
  ProtocolKind kind = ProtocolKind::kCustom;
  int N = 0;
  double E_max = 0.0;

  double T() const { return 1.0 / beta; }
  void validate() const;
};

// T ln Z(0)/Z(tau), with Z(0) taken before any jump at t = 0.
double quasistatic_work(const ProtocolSchedule& s);
double quasistatic_work(const Vec& e_start, const Vec& e_end, double beta);

ProtocolSchedule constant_shifting_schedule(int N, double E_max, double tau, double beta);
ProtocolSchedule custom_schedule(EnergyLandscape landscape, double beta);

}  // namespace ftreset
