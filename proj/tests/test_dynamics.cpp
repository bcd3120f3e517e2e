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

double D(const Vec& p, const Vec& q) { return raw::kl(p, q); }

// Random piecewise-constant schedule with jumps at every boundary.
ProtocolSchedule random_step_schedule(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Vec e0(n);
  for (auto& e : e0) e = -2.0 + 4.0 * U(rng);
  std::vector<Segment> segs;
  double t = 0.0;
  int nseg = 1 + static_cast<int>(3 * U(rng));
  for (int k = 0; k < nseg; ++k) {
    Vec e(n);
    for (auto& x : e) x = -2.0 + 4.0 * U(rng);
    double t1 = t + 0.3 + 1.5 * U(rng);
    segs.push_back(Segment{t, t1, e, e});
    t = t1;
  }
  return custom_schedule(EnergyLandscape(e0, std::move(segs)), 0.5 + U(rng));
}

}  // namespace

TEST_CASE("partial swap closed form") {
  auto g = thermal_state({0.0, 10.0}, 1.0);
  Distribution p0({0.5, 0.5});
  auto p = evolve_partial_swap_constant(p0, g, 0.1, 10.0);
  CHECK(p[1] == doctest::Approx(0.18396841751185496912).epsilon(1e-14));
  auto same = evolve_partial_swap_constant(p0, g, 0.1, 0.0);
  CHECK(same[1] == 0.5);
}

TEST_CASE("partial swap generator") {
  auto g = thermal_state({0.0, 1.0, -0.5}, 1.0);
  auto G = partial_swap_generator(g, 0.7);
  CHECK_NOTHROW(validate_rates(G, &g));
  auto st = stationary_state(G);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(st[i] - g.gamma[i]) <= 1e-10);
  CHECK_THROWS_AS(stationary_state(partial_swap_generator(g, 0.0)), DegenerateError);
}

TEST_CASE("two-level stationary state from the null space") {
  const double a = 0.3, b = 1.7;  // a: 1 -> 0, b: 0 -> 1
  RateMatrix G(2, 2);
  G << -b, a, b, -a;
  auto st = stationary_state(G);
  CHECK(st[0] == doctest::Approx(a / (a + b)).epsilon(1e-12));
  CHECK(st[1] == doctest::Approx(b / (a + b)).epsilon(1e-12));
}

TEST_CASE("reducible chain names its blocks") {
  RateMatrix G = RateMatrix::Zero(4, 4);
  G(0, 1) = 1.0;
  G(1, 0) = 1.0;
  G(2, 3) = 1.0;
  G(3, 2) = 1.0;
  for (int j = 0; j < 4; ++j) G(j, j) = -G.col(j).sum();
  try {
    stationary_state(G);
    FAIL("expected DegenerateError");
  } catch (const DegenerateError& e) {
    std::string msg = e.what();
    CHECK(msg.find('{') != std::string::npos);
  }
}

TEST_CASE("rate validation") {
  auto g = thermal_state({0.0, 1.0}, 1.0);
  RateMatrix bad(2, 2);
  bad << -1.0, 1.0, 1.0, -1.0;
  CHECK_NOTHROW(validate_rates(bad));
  CHECK_THROWS_AS(validate_rates(bad, &g), ValidationError);
  RateMatrix neg(2, 2);
  neg << 1.0, -1.0, -1.0, 1.0;
  CHECK_THROWS_AS(validate_rates(neg), ValidationError);
  RateMatrix cols(2, 2);
  cols << -1.0, 1.0, 0.5, -1.0;
  CHECK_THROWS_AS(validate_rates(cols), ValidationError);
}

TEST_CASE("generic model rejects detailed-balance violations during integration") {
  GenericRateModel m([](double, const Vec&) {
    RateMatrix G(2, 2);
    G << -1.0, 1.0, 1.0, -1.0;
    return G;
  });
  auto s = constant_shifting_schedule(1, 2.0, 1.0, 1.0);
  CHECK_THROWS_AS(integrate_master_equation(s, m, Distribution({0.5, 0.5}), {}), ValidationError);
}

TEST_CASE("glauber rates satisfy detailed balance") {
  Eigen::MatrixXd k(3, 3);
  k << 0, 1, 2, 1, 0, 0.5, 2, 0.5, 0;
  GlauberModel m(k, 1.3);
  Vec e{0.0, 1.0, -2.0};
  auto g = thermal_state(e, 1.3);
  CHECK_NOTHROW(validate_rates(m.rates(0.0, e, g), &g));
}

TEST_CASE("jumps are sampled twice") {
  auto s = constant_shifting_schedule(3, 6.0, 3.0, 1.0);
  PartialSwapModel m(1.0);
  auto tr = integrate_master_equation(s, m, Distribution({0.5, 0.5}), {});
  REQUIRE(tr.jumps.size() == 3);
  for (auto j : tr.jumps) {
    CHECK(tr.times[j] == tr.times[j + 1]);
    CHECK(tr.states[j] == tr.states[j + 1]);
    CHECK(tr.energies[j] != tr.energies[j + 1]);
  }
}

TEST_CASE("property: probability conservation and H-theorem") {
  std::mt19937_64 rng(31);
  IntegratorOptions opt;
  opt.dt_max = 5e-3;
  for (int k = 0; k < 40; ++k) {
    auto sys = make_random_system(rng, 8, k % 2 == 0);
    auto tr = integrate_master_equation(sys.schedule, *sys.model, sys.p0, opt);
    for (std::size_t i = 0; i < tr.size(); ++i) {
      double s = 0.0;
      for (double x : tr.states[i]) s += x;
      REQUIRE(std::abs(s - 1.0) <= 1e-9);
    }
    for (std::size_t i = 1; i < tr.size(); ++i) {
      if (tr.energies[i] != tr.energies[i - 1] || tr.times[i] == tr.times[i - 1]) continue;
      auto g = thermal_state(tr.energies[i], tr.beta).gamma;
      REQUIRE(D(tr.states[i], g) <= D(tr.states[i - 1], g) + 1e-12);
    }
  }
}

TEST_CASE("property: sandwich decay on reset windows") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    double g1 = 0.5 * std::exp(std::log(1e-6) * U(rng));
    double p1 = g1 + (0.5 - g1) * U(rng);
    double mu = 0.05 + 2.0 * U(rng), t = 10.0 * U(rng);
    auto g = thermal_state({0.0, std::log((1.0 - g1) / g1)}, 1.0);
    auto p = evolve_partial_swap_constant(Distribution({1.0 - p1, p1}), g, mu, t);
    double d0 = raw::kl2(p1, g1), dt = raw::kl2(p[1], g1);
    REQUIRE(dt <= std::exp(-mu * t) * d0 + 1e-9);
    REQUIRE(dt >= std::exp(-2.0 * mu * t) * d0 - 1e-9);
  }
  for (int k = 0; k < 1000; ++k) {
    int n = 2 + k % 7;
    Vec e(n);
    for (auto& x : e) x = -3.0 + 6.0 * U(rng);
    auto g = thermal_state(e, 0.5 + U(rng));
    Distribution p0(random_simplex_point(rng, n));
    double mu = 0.05 + 2.0 * U(rng), t = 5.0 * U(rng);
    auto p = evolve_partial_swap_constant(p0, g, mu, t);
    REQUIRE(D(p.weights(), g.gamma) <= std::exp(-mu * t) * D(p0.weights(), g.gamma) + 1e-9);
  }
}

TEST_CASE("property: closed form agrees with generic stepping") {
  std::mt19937_64 rng(33);
  IntegratorOptions opt;
  opt.dt_max = 1e-2;
  for (int k = 0; k < 30; ++k) {
    int n = 2 + k % 7;
    auto s = random_step_schedule(rng, n);
    double mu = 0.2 + 1.5 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    Distribution p0(random_simplex_point(rng, n));
    PartialSwapModel exact(mu);
    GenericRateModel generic([mu, beta = s.beta](double, const Vec& e) {
      return partial_swap_generator(thermal_state(e, beta), mu);
    });
    auto a = integrate_master_equation(s, exact, p0, opt);
    auto b = integrate_master_equation(s, generic, p0, opt);
    for (int i = 0; i < n; ++i) REQUIRE(std::abs(a.states.back()[i] - b.states.back()[i]) <= 1e-8);
    REQUIRE(std::abs(work(a) - work(b)) <= 1e-8);
    REQUIRE(std::abs(entropy_production_rate_integral(a) - entropy_production_rate_integral(b)) <=
            1e-8);
  }
}

TEST_CASE("entropy production rate vanishes at equilibrium") {
  auto g = thermal_state({0.0, 0.4, 1.1}, 1.0);
  auto G = partial_swap_generator(g, 0.5);
  CHECK(std::abs(entropy_production_rate(G, g.gamma)) <= 1e-15);
  CHECK(entropy_production_rate(G, {0.2, 0.3, 0.5}) > 0.0);
}
