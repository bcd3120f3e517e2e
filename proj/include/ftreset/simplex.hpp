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

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ftreset {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Normalization policy for probability vectors.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kRenormTol = 1e-8;

// Receives non-fatal diagnostics (renormalization, coarse sampling).
using WarningHandler = std::function<void(const std::string&)>;
void set_warning_handler(WarningHandler h);
void warn(const std::string& msg);

class Distribution {
 public:
  Distribution() = default;
  // Validates and, within kRenormTol, renormalizes.
  explicit Distribution(Vec w);

  static Distribution uniform(std::size_t n);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const Vec& weights() const { return w_; }

 private:
  Vec w_;
};

struct Bit {
  double p1 = 0.5;
  Bit() = default;
  explicit Bit(double p);
  double p0() const { return 1.0 - p1; }
  Vec vec() const { return {1.0 - p1, p1}; }
};

double shannon_entropy(const Distribution& p);
// Returns kInf when p has support where q vanishes.
double relative_entropy(const Distribution& p, const Distribution& q);
double relative_entropy(const Bit& p, const Bit& q);
double symmetric_relative_entropy(const Bit& r, const Bit& s);
double norm1_distance(const Distribution& p, const Distribution& q);
double norm1_distance(const Bit& p, const Bit& q);
double binary_entropy(double eps);

struct LogSum {
  double lhs;
  double rhs;
};
LogSum log_sum_lower_bound(const Vec& u, const Vec& v);

struct Asymmetry {
  double d_rs;
  double d_sr;
  bool holds;
};
Asymmetry binary_relent_asymmetry(const Bit& r, const Bit& s);

struct Convexity {
  double lhs;
  double rhs;
};
// Preconditions: p0 >= p1, p1 >= a*x1 + (1-a)*y1, q1 <= p1, a in [0,1].
Convexity relent_convexity_bound(const Bit& p, const Bit& q, const Bit& x,
                                 const Bit& y, double alpha);
bool convexity_preconditions(const Bit& p, const Bit& q, const Bit& x,
                             const Bit& y, double alpha);
// Extra requirement a*x1 + (1-a)*y1 >= q1 under which the bound is valid.
bool convexity_mixture_condition(const Bit& q, const Bit& x, const Bit& y,
                                 double alpha);

namespace raw {
// Unvalidated kernels for hot loops.
double entropy(const Vec& p);
double kl(const Vec& p, const Vec& q);
double kl2(double p1, double q1);
}  // namespace raw

}  // namespace ftreset
