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

#include "ftreset/random_systems.hpp"

#include <algorithm>
#include <numeric>

namespace ftreset {

Vec random_simplex_point(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> ex(1.0);
  Vec p(n);
  double s = 0.0;
  for (auto& x : p) {
    x = ex(rng) + 1e-12;
    s += x;
  }
  for (auto& x : p) x /= s;
  return p;
}

RandomSystem make_random_system(std::mt19937_64& rng, int max_levels, bool thermal_start) {
  std::uniform_int_distribution<int> nlev(2, std::max(2, max_levels));
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int n = nlev(rng);
  const double beta = 0.5 + U(rng);
  Vec e0(n);
  for (auto& e : e0) e = -2.0 + 4.0 * U(rng);

  const int nseg = std::uniform_int_distribution<int>(1, 4)(rng);
  const double tau = 0.5 + 3.5 * U(rng);
  std::vector<double> cuts{0.0, tau};
  for (int k = 1; k < nseg; ++k) cuts.push_back(tau * (0.05 + 0.9 * U(rng)));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Segment> segs;
  Vec cur = e0;
  for (int k = 0; k < nseg; ++k) {
    Segment s;
    s.t0 = k == 0 ? 0.0 : segs.back().t1;
    s.t1 = cuts[k + 1];
    if (!(s.t1 > s.t0)) s.t1 = s.t0 + 1e-3 * tau;
    s.start = cur;
    if (U(rng) < 0.6)
      for (auto& e : s.start) e += -1.5 + 3.0 * U(rng);
    s.end = s.start;
    if (U(rng) < 0.5)
      for (auto& e : s.end) e += -2.0 + 4.0 * U(rng);
    cur = s.end;
    segs.push_back(std::move(s));
  }
  RandomSystem sys;
  sys.schedule = custom_schedule(EnergyLandscape(e0, std::move(segs)), beta);

  if (U(rng) < 0.4) {
    sys.model = std::make_shared<PartialSwapModel>(0.2 + 1.8 * U(rng));
  } else {
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) k(i, j) = k(j, i) = 0.2 + 1.8 * U(rng);
    sys.model = std::make_shared<GlauberModel>(k, beta);
  }
  sys.p0 = thermal_start ? Distribution(thermal_state(e0, beta).gamma)
                         : Distribution(random_simplex_point(rng, n));

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::size_t n0 = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
  sys.partition = BitPartition(std::vector<std::size_t>(idx.begin(), idx.begin() + n0),
                               std::vector<std::size_t>(idx.begin() + n0, idx.end()));
  return sys;
}

}  // namespace ftreset
