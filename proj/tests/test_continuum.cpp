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

#include "ftreset/continuum.hpp"
#include "ftreset/errors.hpp"

using namespace ftreset;

TEST_CASE("default protocol shape") {
  auto p = default_reset_protocol(8.0);
  CHECK(p.a.at(0.0) == 4.0);
  CHECK(p.a.at(4.0) == 0.0);
  CHECK(p.a.at(8.0) == 4.0);
  CHECK(p.f.at(0.0) == 0.0);
  CHECK(p.f.at(6.0) == 2.0);
  CHECK(p.V(0.0, 0.0) == 0.0);
  CHECK(p.V(2.0, 0.0) == doctest::Approx(4.0 - 8.0));
  CHECK(p.dV(1.0, 0.0) == doctest::Approx(1.0 - 4.0));
  CHECK_THROWS_AS(default_reset_protocol(-1.0), ArgumentError);
}

TEST_CASE("grid is symmetric and respects the cutoff") {
  auto p = default_reset_protocol(8.0);
  auto g = make_grid(p, 256, 40.0);
  CHECK(g.x_min == -g.x_max);
  CHECK(g.M == 256);
  for (double t : {0.0, 4.0, 8.0}) {
    double vmin = kInf;
    for (double x = -3.0; x <= 3.0; x += 1e-3) vmin = std::min(vmin, p.V(x, t));
    CHECK(p.beta * (p.V(g.x_max, t) - vmin) >= 40.0);
    CHECK(p.beta * (p.V(g.x_min, t) - vmin) >= 40.0);
  }
}

TEST_CASE("discrete Gibbs state is a fixed point") {
  auto p = default_reset_protocol(4.0);
  ContinuumOptions opt;
  opt.M = 128;
  CHECK(gibbs_fixed_point_drift(p, 0.0, 2.0, opt) < 1e-8);
  CHECK(gibbs_fixed_point_drift(p, 2.0, 2.0, opt) < 1e-8);
}

TEST_CASE("single step conserves mass and rejects unstable steps") {
  auto p = default_reset_protocol(4.0);
  auto g = make_grid(p, 128, 40.0);
  auto V = potential_on(g, p, 0.0);
  auto G = fp_generator(V, g, p.D, p.beta);
  double lim = fp_stability_limit(G);
  Vec P(g.M, 0.0);
  for (int i = g.M / 2; i < g.M / 2 + 10; ++i) P[i] = 0.1;
  auto d = GridDensity::from_probs(g, P);
  auto next = fp_step(d, V, p.D, p.beta, 0.25 * lim);
  double s = 0.0;
  for (double x : next.probs()) {
    CHECK(x >= 0.0);
    s += x;
  }
  CHECK(std::abs(s - 1.0) <= 1e-12);
  CHECK_THROWS(fp_step(d, V, p.D, p.beta, 2.0 * lim));
}

TEST_CASE("short continuum reset satisfies every bound") {
  auto p = default_reset_protocol(2.0);
  ContinuumOptions opt;
  opt.M = 128;
  opt.snapshot_times = {0.0, 1.0, 2.0};
  auto r = run_continuum_reset(p, 2.0, opt);
  CHECK(r.report.all_satisfied());
  CHECK(r.residual < 1e-4);
  CHECK(r.mass_drift_step <= 1e-12);
  CHECK(r.mass_drift_total <= 1e-9);
  CHECK(r.report.eps < 0.5);
  CHECK(std::abs(r.trace.P_bit.front().p1 - 0.5) < 1e-3);
  CHECK(r.ledger.Sigma_rate >= 0.0);
  REQUIRE(r.snapshots.size() == 3);
  auto csv = snapshots_csv(r.snapshots);
  CHECK(csv.rfind("t,x,p,gamma,V\n", 0) == 0);
}
