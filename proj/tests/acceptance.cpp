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

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ftreset/errors.hpp"
#include "ftreset/simplex.hpp"
#include "ftreset/verify.hpp"

int main(int argc, char** argv) {
  using namespace ftreset;
  std::vector<std::string> ids;
  for (int i = 1; i < argc; ++i) ids.emplace_back(argv[i]);
  if (ids.empty()) ids = acceptance_ids();

  VerifyOptions opt;
  if (const char* w = std::getenv("FTRESET_WORKERS")) opt.workers = std::atoi(w);
  // sampling warnings from random runs are expected; keep the output to one line per check
  set_warning_handler([](const std::string&) {});

  int failed = 0;
  for (const auto& id : ids) {
    CheckResult r;
    try {
      r = run_acceptance(id, opt);
    } catch (const ArgumentError& e) {
      std::fprintf(stderr, "%s\n", e.what());
      return 1;
    }
    std::printf("[%s] %s %s: %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(),
                r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  return failed ? 1 : 0;
}
