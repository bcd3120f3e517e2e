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

#include <json.hpp>

#include "ftreset/continuum.hpp"
#include "ftreset/experiments.hpp"

namespace ftreset {

using json = nlohmann::ordered_json;

std::string fmt17(double v);

json to_json(const BoundRecord& r);
json to_json(const BoundsReport& r);
json to_json(const ThermoLedger& L);
json to_json(const RunResult& r);
json to_json(const ContinuumResult& r);
json sweep_bounds_json(const std::vector<SweepRow>& rows);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string region_csv(const RegionMap& m);
std::string region_boundary_csv(const RegionMap& m);

const char* region_name(Region r);

void write_text(const std::string& path, const std::string& text);

}  // namespace ftreset
