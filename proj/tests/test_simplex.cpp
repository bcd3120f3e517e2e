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

#include "ftreset/errors.hpp"
#include "ftreset/random_systems.hpp"
#include "ftreset/simplex.hpp"

using namespace ftreset;

TEST_CASE("shannon entropy values") {
  CHECK(shannon_entropy(Distribution({0.5, 0.5})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(shannon_entropy(Distribution({1.0, 0.0})) == 0.0);
  CHECK(shannon_entropy(Distribution({0.75, 0.25})) ==
        doctest::Approx(0.56233514461880835029).epsilon(1e-14));
}

TEST_CASE("distribution normalization policy") {
  CHECK_NOTHROW(Distribution({0.5, 0.5 + 1e-13}));
  int warnings = 0;
  set_warning_handler([&](const std::string&) { ++warnings; });
  Distribution d({0.5, 0.5 + 1e-10});
  CHECK(warnings == 1);
  CHECK(d[0] + d[1] == doctest::Approx(1.0).epsilon(1e-15));
  set_warning_handler(nullptr);
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), ArgumentError);
  CHECK_THROWS_AS(Distribution({1.2, -0.2}), ArgumentError);
}

TEST_CASE("relative entropy values") {
  Distribution p({0.5, 0.5});
  CHECK(relative_entropy(p, p) == 0.0);
  CHECK(relative_entropy(Distribution({1.0, 0.0}), p) == doctest::Approx(std::log(2.0)));
  double g1 = 1.0 / (1.0 + std::exp(10.0));
  CHECK(relative_entropy(p, Distribution({1.0 - g1, g1})) ==
        doctest::Approx(4.3068982183392715552).epsilon(1e-13));
  CHECK(relative_entropy(p, Distribution({1.0, 0.0})) == kInf);
  CHECK_THROWS_AS(relative_entropy(p, Distribution({0.2, 0.3, 0.5})), ArgumentError);
  CHECK(relative_entropy(Bit(0.1), Bit(0.5)) ==
        doctest::Approx(0.36806420716849706991).epsilon(1e-14));
  CHECK(relative_entropy(Bit(0.5), Bit(0.1)) ==
        doctest::Approx(0.51082562376599068321).epsilon(1e-14));
}

TEST_CASE("symmetric relative entropy") {
  CHECK(symmetric_relative_entropy(Bit(0.3), Bit(0.3)) == 0.0);
  CHECK(symmetric_relative_entropy(Bit(0.1), Bit(0.9)) ==
        doctest::Approx(3.5155593237379510125).epsilon(1e-14));
  double a = symmetric_relative_entropy(Bit(0.5), Bit(0.25));
  double b = symmetric_relative_entropy(Bit(0.25), Bit(0.5));
  CHECK(a == b);
  CHECK(a == doctest::Approx(0.27465307216702742285).epsilon(1e-14));
}

TEST_CASE("norm1 distance") {
  CHECK(norm1_distance(Distribution({0.5, 0.5}), Distribution({0.75, 0.25})) ==
        doctest::Approx(0.5));
  for (double eps : {0.01, 0.25, 0.4}) {
    CHECK(norm1_distance(Bit(0.5), Bit(eps)) == doctest::Approx(1.0 - 2.0 * eps));
  }
  CHECK_THROWS_AS(norm1_distance(Distribution({1.0}), Distribution({0.5, 0.5})), ArgumentError);
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.25) == doctest::Approx(0.56233514461880835029).epsilon(1e-14));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("binary relative entropy asymmetry") {
  auto a = binary_relent_asymmetry(Bit(0.4), Bit(0.2));
  CHECK(a.d_rs == doctest::Approx(0.1046496287529095673).epsilon(1e-13));
  CHECK(a.d_sr == doctest::Approx(0.091516221849435680068).epsilon(1e-13));
  CHECK(a.holds);
}

TEST_CASE("property: relative entropy is non-negative") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 2000; ++k) {
    std::size_t n = 2 + k % 7;
    Distribution p(random_simplex_point(rng, n)), q(random_simplex_point(rng, n));
    CHECK(relative_entropy(p, q) >= 0.0);
    CHECK(std::abs(relative_entropy(p, p)) <= 1e-12);
  }
}

TEST_CASE("property: log-sum inequality") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(1e-3, 5.0);
  for (int k = 0; k < 100000; ++k) {
    std::size_t n = 2 + k % 5;
    Vec u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = U(rng);
      v[i] = U(rng);
    }
    auto r = log_sum_lower_bound(u, v);
    REQUIRE(r.lhs >= r.rhs - 1e-12 * (1.0 + std::abs(r.rhs)));
  }
  Vec v = {0.3, 1.2, 2.5};
  Vec u = {0.6, 2.4, 5.0};
  auto r = log_sum_lower_bound(u, v);
  CHECK(std::abs(r.lhs - r.rhs) <= 1e-12);
}

TEST_CASE("property: norm1 is a metric") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 5000; ++k) {
    Distribution a(random_simplex_point(rng, 5)), b(random_simplex_point(rng, 5)),
        c(random_simplex_point(rng, 5));
    CHECK(norm1_distance(a, b) == norm1_distance(b, a));
    CHECK(norm1_distance(a, c) <= norm1_distance(a, b) + norm1_distance(b, c) + 1e-15);
  }
}

TEST_CASE("property: asymmetry holds when s1 <= r1 <= 1/2") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> U(1e-6, 0.5);
  for (int k = 0; k < 20000; ++k) {
    double r1 = U(rng), s1 = U(rng);
    if (s1 > r1) std::swap(s1, r1);
    auto a = binary_relent_asymmetry(Bit(r1), Bit(s1));
    REQUIRE(a.holds);
    REQUIRE(a.d_rs >= a.d_sr - 1e-12);
  }
}

TEST_CASE("property: convexity bound under the mixture condition") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int tested = 0;
  for (int k = 0; k < 200000 && tested < 20000; ++k) {
    Bit p(U(rng) * 0.5), q(U(rng)), x(U(rng) * 0.999 + 5e-4), y(U(rng) * 0.999 + 5e-4);
    double a = U(rng);
    if (!convexity_preconditions(p, q, x, y, a) || !convexity_mixture_condition(q, x, y, a)) {
      continue;
    }
    ++tested;
    auto c = relent_convexity_bound(p, q, x, y, a);
    REQUIRE(c.lhs >= c.rhs - 1e-12);
  }
  CHECK(tested >= 1000);
}

TEST_CASE("convexity bound rejects broken preconditions") {
  CHECK_THROWS(relent_convexity_bound(Bit(0.7), Bit(0.1), Bit(0.3), Bit(0.3), 0.5));
}
