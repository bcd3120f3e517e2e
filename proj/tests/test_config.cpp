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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ftreset/config.hpp"
#include "ftreset/errors.hpp"

using namespace ftreset;

TEST_CASE("tau grid parsing") {
  auto g = parse_tau_grid("0.1:1000:5");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(0.1));
  CHECK(g.back() == doctest::Approx(1000.0));
  CHECK(parse_tau_grid("1,2.5,7") == std::vector<double>{1.0, 2.5, 7.0});
  CHECK_THROWS_AS(parse_tau_grid("1:2"), ArgumentError);
  CHECK_THROWS_AS(parse_tau_grid("1:2:0"), ArgumentError);
  CHECK_THROWS_AS(parse_tau_grid("a,b"), ArgumentError);
  CHECK_THROWS_AS(parse_tau_grid(""), ArgumentError);
}

TEST_CASE("defaults") {
  auto c = default_config();
  CHECK(c.protocol.N == 100);
  CHECK(c.protocol.mu == 0.1);
  CHECK(c.protocol.E_max == 10.0);
  CHECK(c.eps == 0.25);
  CHECK(c.tau_grid.size() == 60);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("strict config parsing") {
  auto c = default_config();
  apply_config_json(c, json::parse(R"({"experiment":"fixed-error-sweep","protocol":{"N":10,"tau":3},
                                       "sweep":{"eps":0.2,"tau_grid":"1:10:3"},"workers":2})"));
  CHECK(c.experiment == Experiment::kFixedErrorSweep);
  CHECK(c.protocol.N == 10);
  CHECK(c.eps == 0.2);
  CHECK(c.tau_grid.size() == 3);
  CHECK(c.workers == 2);

  auto msg = [](const char* text) {
    auto d = default_config();
    try {
      apply_config_json(d, json::parse(text));
    } catch (const ArgumentError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg(R"({"protocol":{"Nn":3}})").find("protocol.Nn") != std::string::npos);
  CHECK(msg(R"({"bogus":1})").find("unknown key") != std::string::npos);
  CHECK(msg(R"({"protocol":{"N":"three"}})").find("protocol.N") != std::string::npos);
  CHECK(msg(R"({"protocol":{"N":2.5}})") != "");
  CHECK(msg(R"({"experiment":"nope"})") != "");
  CHECK(msg(R"({"seed":-1})") != "");
}

TEST_CASE("validation of experiment parameters") {
  auto c = default_config();
  c.protocol.tau = -1.0;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = default_config();
  c.experiment = Experiment::kContinuumReset;
  c.continuum.M = 7;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = default_config();
  c.experiment = Experiment::kThroughput;
  c.throughput.eps = 0.7;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
}

TEST_CASE("config json round trip") {
  auto c = default_config();
  c.experiment = Experiment::kRegionMap;
  c.region.E_points = 5;
  auto j = config_to_json(c);
  auto d = default_config();
  apply_config_json(d, j);
  CHECK(config_to_json(d) == j);
  for (auto e : {Experiment::kSingleRun, Experiment::kFixedEnergySweep, Experiment::kFixedErrorSweep,
                 Experiment::kRegionMap, Experiment::kContinuumReset, Experiment::kThroughput}) {
    CHECK(parse_experiment(experiment_name(e)) == e);
  }
}

TEST_CASE("load_config_file errors") {
  CHECK_THROWS_AS(load_config_file("/nonexistent/config.json"), ArgumentError);
  auto path = std::filesystem::temp_directory_path() / "ftreset_bad_config.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_config_file(path.string()), ArgumentError);
  std::filesystem::remove(path);
}

TEST_CASE("execute is deterministic") {
  auto dir = std::filesystem::temp_directory_path() / "ftreset_exec_test";
  std::filesystem::remove_all(dir);
  auto c = default_config();
  c.experiment = Experiment::kFixedEnergySweep;
  c.tau_grid = {0.5, 5.0, 50.0};
  c.workers = 3;
  c.out = (dir / "a").string();
  auto a = execute(c);
  c.workers = 1;
  c.out = (dir / "b").string();
  auto b = execute(c);
  CHECK(a.exit_code == 0);
  REQUIRE(a.artifacts.size() == b.artifacts.size());
  auto slurp = [](const std::string& p) {
    std::ifstream f(p);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  };
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
    CHECK(slurp(a.artifacts[i]) == slurp(b.artifacts[i]));
  }
  auto header = slurp((dir / "a" / "sweep.csv").string());
  CHECK(header.rfind("tau,feasible,E_max,eps,W,W_qs,W_pn,Sigma,Sigma_bit,D_eps,mu_avg", 0) == 0);
  std::filesystem::remove_all(dir);
}
