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

#include <memory>
#include <random>

#include "ftreset/coarse.hpp"

namespace ftreset {

// Seeded random detailed-balance system: landscape with jumps and ramps,
// Glauber or partial-swap rates, a random bit partition.
struct RandomSystem {
  ProtocolSchedule schedule;
  std::shared_ptr<RateModel> model;
  Distribution p0;
  BitPartition partition = BitPartition::split(2, 1);
};

RandomSystem make_random_system(std::mt19937_64& rng, int max_levels, bool thermal_start);
Vec random_simplex_point(std::mt19937_64& rng, std::size_t n);

}  // namespace ftreset
