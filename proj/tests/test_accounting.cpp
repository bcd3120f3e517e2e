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

#include "ftreset/accounting.hpp"
#include "ftreset/errors.hpp"
#include "ftreset/random_systems.hpp"

using namespace ftreset;

namespace {

Trajectory shifting(int N, double E, double mu, double tau, double dt_max = 1e-2) {
  auto s = constant_shifting_schedule(N, E, tau, 1.0);
  PartialSwapModel m(mu);
  IntegratorOptions opt;
  opt.dt_max = dt_max;
  return integrate_master_equation(s, m, Distribution({0.5, 0.5}), opt);
}

}  // namespace

TEST_CASE("single jump ledger") {
  auto tr = shifting(1, 10.0, 0.1, 10.0);
  auto L = make_ledger(tr, 1.0);
  CHECK(tr.states.back()[1] == doctest::Approx(0.18396841751185496912).epsilon(1e-13));
  CHECK(L.W == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(L.Q == doctest::Approx(-3.1603158248814503088).epsilon(1e-12));
  CHECK(L.Sigma == doctest::Approx(2.9445265854909305243).epsilon(1e-12));
  CHECK(L.Sigma_rate == doctest::Approx(2.9445265854909305243).epsilon(1e-10));
  CHECK(L.W_qs == doctest::Approx(0.69310178166072844477).epsilon(1e-14));
  CHECK(L.D_initial == 0.0);
}

TEST_CASE("two jump work") {
  auto tr = shifting(2, 10.0, 0.1, 20.0);
  REQUIRE(tr.jumps.size() == 2);
  CHECK(tr.states[tr.jumps[1]][1] == doctest::Approx(0.18817040925213633247).epsilon(1e-13));
  CHECK(work(tr) == doctest::Approx(3.4408520462606816623).epsilon(1e-13));
}

TEST_CASE("step decomposition") {
  auto tr = shifting(7, 10.0, 0.3, 6.0);
  auto L = make_ledger(tr, 1.0);
  auto steps = step_decomposition(tr);
  REQUIRE(steps.size() == 7);
  double s = 0.0, w = 0.0;
  for (auto& st : steps) {
    s += st.Sigma;
    w += st.W_pn;
    CHECK(st.Sigma >= -1e-12);
  }
  CHECK(s == doctest::Approx(L.Sigma).epsilon(1e-10));
  CHECK(w == doctest::Approx(L.W_pn).epsilon(1e-10));

  std::mt19937_64 rng(41);
  auto sys = make_random_system(rng, 4, true);
  auto other = integrate_master_equation(sys.schedule, *sys.model, sys.p0, {});
  CHECK_THROWS_AS(step_decomposition(other), UnsupportedError);
}

TEST_CASE("property: first law, non-negative entropy production, two paths agree") {
  std::mt19937_64 rng(42);
  IntegratorOptions opt;
  opt.dt_max = 5e-3;
  for (int k = 0; k < 50; ++k) {
    auto sys = make_random_system(rng, 8, k % 3 != 0);
    auto tr = integrate_master_equation(sys.schedule, *sys.model, sys.p0, opt);
    double T = sys.schedule.T();
    auto L = make_ledger(tr, T);
    REQUIRE(std::abs(L.dU - L.Q - L.W) < 1e-8);
    REQUIRE(L.Sigma >= -1e-9);
    REQUIRE(L.Sigma_rate >= -1e-9);
    REQUIRE(std::abs(L.Sigma - L.Sigma_rate) <= 1e-6);
    REQUIRE(penalty_equality_residual(tr, T) < 1e-6);
  }
}

TEST_CASE("property: penalty residual shrinks under refinement") {
  std::mt19937_64 rng(43);
  // A Glauber run with a ramp, so the stepping path is exercised.
  Eigen::MatrixXd k(3, 3);
  k << 0, 1.0, 0.4, 1.0, 0, 0.8, 0.4, 0.8, 0;
  GlauberModel m(k, 1.0);
  EnergyLandscape L({0.0, 0.5, 1.0}, {Segment{0.0, 2.0, {0.0, 1.5, -1.0}, {1.0, -0.5, 2.0}}});
  auto s = custom_schedule(L, 1.0);
  Distribution p0({0.6, 0.3, 0.1});
  double prev = kInf;
  for (double dt : {0.2, 0.1, 0.05}) {
    IntegratorOptions opt;
    opt.dt_max = dt;
    opt.stiffness = 10.0;
    auto tr = integrate_master_equation(s, m, p0, opt);
    double r = penalty_equality_residual(tr, 1.0);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1e-6);
}
