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

#include "ftreset/simplex.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <sstream>

#include "ftreset/errors.hpp"

namespace ftreset {

namespace {
std::mutex g_warn_mu;
WarningHandler g_warn = [](const std::string& m) {
  std::fprintf(stderr, "ftreset: warning: %s\n", m.c_str());
};

double xlogy(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::log(x / y);
}
}  // namespace

void set_warning_handler(WarningHandler h) {
  std::lock_guard<std::mutex> lk(g_warn_mu);
  g_warn = std::move(h);
}

void warn(const std::string& msg) {
  std::lock_guard<std::mutex> lk(g_warn_mu);
  if (g_warn) g_warn(msg);
}

Distribution::Distribution(Vec w) : w_(std::move(w)) {
  if (w_.empty()) throw ArgumentError("distribution: empty weight vector");
  double s = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    double x = w_[i];
    if (!std::isfinite(x)) throw ArgumentError("distribution: non-finite weight");
    if (x < 0.0) {
      if (x < -kNormTol) {
        std::ostringstream os;
        os << "distribution: negative weight " << x << " at index " << i;
        throw ArgumentError(os.str());
      }
      w_[i] = 0.0;
    }
    s += w_[i];
  }
  double drift = std::abs(s - 1.0);
  if (drift > kRenormTol) {
    std::ostringstream os;
    os << "distribution: weights sum to " << s;
    throw ArgumentError(os.str());
  }
  if (drift > kNormTol) {
    std::ostringstream os;
    os << "renormalized distribution with sum drift " << drift;
    warn(os.str());
  }
  if (drift > 0.0)
    for (auto& x : w_) x /= s;
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw ArgumentError("distribution: empty weight vector");
  return Distribution(Vec(n, 1.0 / static_cast<double>(n)));
}

Bit::Bit(double p) : p1(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("bit: p1 outside [0,1]");
}

namespace raw {

double entropy(const Vec& p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

double kl(const Vec& p, const Vec& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInf;
    s += xlogy(p[i], q[i]);
  }
  return s < 0.0 ? 0.0 : s;
}

double kl2(double p1, double q1) {
  double p0 = 1.0 - p1, q0 = 1.0 - q1;
  if ((p1 > 0.0 && q1 <= 0.0) || (p0 > 0.0 && q0 <= 0.0)) return kInf;
  double s = xlogy(p0, q0) + xlogy(p1, q1);
  return s < 0.0 ? 0.0 : s;
}

}  // namespace raw

double shannon_entropy(const Distribution& p) { return raw::entropy(p.weights()); }

double relative_entropy(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size())
    throw ArgumentError("relative_entropy: length mismatch");
  return raw::kl(p.weights(), q.weights());
}

double relative_entropy(const Bit& p, const Bit& q) { return raw::kl2(p.p1, q.p1); }

double symmetric_relative_entropy(const Bit& r, const Bit& s) {
  return raw::kl2(r.p1, s.p1) + raw::kl2(s.p1, r.p1);
}

double norm1_distance(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw ArgumentError("norm1_distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s;
}

double norm1_distance(const Bit& p, const Bit& q) { return 2.0 * std::abs(p.p1 - q.p1); }

double binary_entropy(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw ArgumentError("binary_entropy: eps outside [0,1]");
  return raw::entropy({eps, 1.0 - eps});
}

LogSum log_sum_lower_bound(const Vec& u, const Vec& v) {
  if (u.empty()) throw ArgumentError("log_sum_lower_bound: empty input");
  if (u.size() != v.size()) throw ArgumentError("log_sum_lower_bound: length mismatch");
  double lhs = 0.0, su = 0.0, sv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0.0 || !(v[i] > 0.0))
      throw ArgumentError("log_sum_lower_bound: need u >= 0 and v > 0");
    lhs += xlogy(u[i], v[i]);
    su += u[i];
    sv += v[i];
  }
  return {lhs, xlogy(su, sv)};
}

Asymmetry binary_relent_asymmetry(const Bit& r, const Bit& s) {
  if (!(s.p1 <= r.p1 && r.p1 <= 0.5))
    throw ArgumentError("binary_relent_asymmetry: need s1 <= r1 <= 1/2");
  if (!(s.p1 > 0.0)) throw ArgumentError("binary_relent_asymmetry: boundary distribution");
  Asymmetry a{raw::kl2(r.p1, s.p1), raw::kl2(s.p1, r.p1), false};
  a.holds = a.d_rs >= a.d_sr - 1e-15;
  return a;
}

bool convexity_preconditions(const Bit& p, const Bit& q, const Bit& x, const Bit& y,
                             double alpha) {
  auto interior = [](const Bit& b) { return b.p1 > 0.0 && b.p1 < 1.0; };
  if (!(interior(p) && interior(q) && interior(x) && interior(y))) return false;
  if (!(alpha >= 0.0 && alpha <= 1.0)) return false;
  return p.p0() >= p.p1 && p.p1 >= alpha * x.p1 + (1.0 - alpha) * y.p1 && q.p1 <= p.p1;
}

bool convexity_mixture_condition(const Bit& q, const Bit& x, const Bit& y, double alpha) {
  return alpha * x.p1 + (1.0 - alpha) * y.p1 >= q.p1;
}

Convexity relent_convexity_bound(const Bit& p, const Bit& q, const Bit& x, const Bit& y,
                                 double alpha) {
  if (!convexity_preconditions(p, q, x, y, alpha))
    throw ArgumentError("relent_convexity_bound: preconditions violated");
  double lhs = raw::kl2(p.p1, q.p1);
  double rhs = alpha * raw::kl2(x.p1, q.p1) + (1.0 - alpha) * raw::kl2(y.p1, q.p1) +
               (alpha * alpha - alpha) * (raw::kl2(x.p1, y.p1) + raw::kl2(y.p1, x.p1));
  return {lhs, rhs};
}

}  // namespace ftreset
