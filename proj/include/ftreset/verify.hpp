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

#include <cstdint>
#include <string>
#include <vector>

namespace ftreset {

struct CheckResult {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  int workers = 0;
  std::uint64_t seed = 20260101;
};

std::vector<std::string> acceptance_ids();
CheckResult run_acceptance(const std::string& id, const VerifyOptions& opt = {});

}  // namespace ftreset
