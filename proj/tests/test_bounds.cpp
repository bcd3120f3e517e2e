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

#include <cmath>
#include <random>

#include "ftreset/bounds.hpp"
#include "ftreset/errors.hpp"
#include "ftreset/experiments.hpp"

using namespace ftreset;

TEST_CASE("slack policy") {
  CHECK(make_record("a", 1.0, 1.0).satisfied);
  CHECK(make_record("a", 1.0 - 5e-10, 1.0).satisfied);
  CHECK_FALSE(make_record("a", 1.0 - 1e-8, 1.0).satisfied);
  CHECK(make_record("a", 1e6 * (1.0 - 5e-10), 1e6).satisfied);
  CHECK_FALSE(make_record("a", 0.0, kInf).satisfied);
  auto r = make_record("a", 2.0, 0.5);
  CHECK(r.slack == 1.5);
  auto na = not_applicable("b", "why");
  CHECK_FALSE(na.applicable);
  CHECK(na.satisfied);
}

TEST_CASE("speed limit values") {
  auto r = speed_limit_check(0.03, 0.5, 0.1, 100.0);
  CHECK(r.rhs == doctest::Approx(0.025).epsilon(1e-15));
  CHECK(r.satisfied);
  CHECK_FALSE(speed_limit_check(0.02, 0.5, 0.1, 100.0).satisfied);
  CHECK(speed_limit_check(0.0, 0.0, 0.1, 100.0).rhs == 0.0);
}

TEST_CASE("main bound is the sum of its parts") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    double eps = 0.5 * U(rng), D = U(rng), mu = 0.01 + U(rng), tau = 0.1 + 100 * U(rng);
    MainBoundParts parts;
    auto r = main_penalty_bound_check(3.0, 0.5, 0.0, D, eps, mu, tau, 1e-9, &parts);
    double recomputed = parts.D_eps + parts.speed_term;
    REQUIRE(std::abs(r.rhs - recomputed) <= 1e-12);
    REQUIRE(std::abs(parts.speed_term - (1 - 2 * eps) * (1 - 2 * eps) / (mu * tau)) <= 1e-12);
  }
}

TEST_CASE("main bound refuses broken hypotheses") {
  CHECK_THROWS_AS(main_penalty_bound_check(1.0, 0.4, 0.0, 0.1, 0.1, 0.1, 10.0), HypothesisError);
  CHECK_THROWS_AS(main_penalty_bound_check(1.0, 0.5, 0.01, 0.1, 0.1, 0.1, 10.0), HypothesisError);
}

TEST_CASE("throughput bound") {
  auto t = throughput_bound(1.0, 1.0, 1.0, 0.1, 0.25, 10.0);
  CHECK(t.power == doctest::Approx(5.1308120359411369591).epsilon(1e-14));
  CHECK(t.composed == doctest::Approx(t.power).epsilon(1e-13));
  CHECK(t.bandwidth == 1.0);
  auto t2 = throughput_bound(3.0, 0.5, 2.0, 0.1, 0.25, 10.0);
  CHECK(t2.bandwidth == 6.0);
  CHECK_THROWS_AS(throughput_bound(1.0, 1.0, 1.0, 0.1, 0.6, 10.0), ArgumentError);
  CHECK_THROWS_AS(throughput_bound(1.0, 0.0, 1.0, 0.1, 0.25, 10.0), ArgumentError);
}

TEST_CASE("property: throughput identity") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    double eps = 1e-6 + 0.5 * U(rng), E = 30 * U(rng), beta = 0.2 + 2 * U(rng);
    auto id = throughput_identity(eps, E, beta);
    REQUIRE(std::abs(id.lhs - id.rhs) <= 1e-10);
  }
}

TEST_CASE("envelope and exponential bound on shifting runs") {
  for (double tau : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
    ShiftingParams p;
    p.tau = tau;
    auto o = shifting_recursion(p);
    ShiftingSummary s{p.N, p.mu, p.beta, p.tau, p.E_max, o.eps, o.W_pn};
    auto env = penalty_envelope(s);
    CHECK(env.lower <= o.W_pn + 1e-9);
    CHECK(o.W_pn <= env.upper + 1e-9);
    for (auto& r : penalty_envelope_check(s)) CHECK(r.satisfied);
    CHECK(relent_exponential_upper(s).satisfied);
  }
}
