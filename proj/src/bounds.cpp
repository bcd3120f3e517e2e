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

#include "ftreset/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ftreset/errors.hpp"

namespace ftreset {

namespace {

double gamma1(double E, double beta) {
  double x = beta * E;
  return x > 0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
}

double qs_work(double E, double beta) {
  return (std::log(2.0) - std::log1p(std::exp(-beta * E))) / beta;
}

double speed_term(double L, double mu_avg, double tau) {
  double L2 = L * L;
  if (L2 == 0.0) return 0.0;
  double d = mu_avg * tau;
  return d > 0.0 ? L2 / d : kInf;
}

}  // namespace

bool within_slack(double lhs, double rhs) {
  if (lhs >= rhs) return true;
  if (!std::isfinite(rhs) || !std::isfinite(lhs)) return false;
  return lhs >= rhs - (kSlackAbs + kSlackRel * std::max(std::abs(lhs), std::abs(rhs)));
}

BoundRecord make_record(std::string name, double lhs, double rhs) {
  BoundRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.satisfied = within_slack(lhs, rhs);
  return r;
}

BoundRecord not_applicable(std::string name, std::string why) {
  BoundRecord r;
  r.name = std::move(name);
  r.applicable = false;
  r.satisfied = true;
  r.note = std::move(why);
  return r;
}

bool BoundsReport::all_satisfied() const {
  return std::all_of(records.begin(), records.end(),
                     [](const BoundRecord& r) { return r.satisfied; });
}

const BoundRecord* BoundsReport::find(const std::string& name) const {
  for (const auto& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

BoundRecord speed_limit_check(double sigma_bit, double L, double mu_avg, double tau) {
  BoundRecord r = make_record("speed_limit", sigma_bit, speed_term(L, mu_avg, tau));
  if (L > 0.0 && sigma_bit <= 0.0) r.note = "zero coarse entropy production with net bit motion";
  return r;
}

BoundRecord speed_limit_check(const CoarseTrace& trace, double tau) {
  if (trace.size() == 0) throw ArgumentError("speed_limit_check: empty trace");
  double L = norm1_distance(trace.P_bit.back(), trace.P_bit.front());
  return speed_limit_check(trace.Sigma_bit, L, swap_rate(trace).average, tau);
}

BoundRecord main_penalty_bound_check(double beta_W_pn, double P1_start, double D_initial,
                                     double D_eps, double eps, double mu_avg, double tau,
                                     double bit_tol, MainBoundParts* parts) {
  if (std::abs(P1_start - 0.5) > bit_tol) {
    std::ostringstream os;
    os << "main bound requires an initial bit [1/2, 1/2]; got P1(0) = " << P1_start;
    throw HypothesisError(os.str());
  }
  if (D_initial > 1e-9) {
    std::ostringstream os;
    os << "main bound requires a thermal initial state; D[p(0)||gamma(0)] = " << D_initial;
    throw HypothesisError(os.str());
  }
  double st = speed_term(1.0 - 2.0 * eps, mu_avg, tau);
  if (parts) *parts = {D_eps, st};
  return make_record("main_penalty_bound", beta_W_pn, D_eps + st);
}

BoundRecord main_penalty_bound_check(const ThermoLedger& L, const CoarseTrace& trace,
                                     double bit_tol, MainBoundParts* parts) {
  if (trace.size() == 0) throw ArgumentError("main_penalty_bound_check: empty trace");
  const Bit& P = trace.P_bit.back();
  double D_eps = relative_entropy(P, trace.gamma_bit.back());
  return main_penalty_bound_check(L.W_pn / L.T, trace.P_bit.front().p1, L.D_initial, D_eps,
                                  P.p1, swap_rate(trace).average, trace.tau(), bit_tol, parts);
}

BoundRecord relent_exponential_upper(const ShiftingSummary& s) {
  double g1 = gamma1(s.E_max, s.beta);
  double D_eps = raw::kl2(s.eps, g1);
  double D0 = raw::kl2(0.5, g1);
  return make_record("relent_exponential_upper", std::exp(-s.mu * s.tau / s.N) * D0, D_eps);
}

std::vector<BoundRecord> relent_general_lower(const CoarseTrace& trace, double* case1) {
  std::vector<BoundRecord> out;
  if (trace.size() == 0) throw ArgumentError("relent_general_lower: empty trace");
  double tau = trace.tau();
  double q = std::exp(-swap_rate(trace).average * tau);
  const Bit& x = trace.gamma_bit.front();
  const Bit& g = trace.gamma_bit.back();
  const Bit& y = trace.P_st.back();
  const Bit& p = trace.P_bit.back();
  double D_eps = relative_entropy(p, g);
  double Dx = relative_entropy(x, g);
  if (case1) *case1 = q * Dx;

  std::string why;
  for (std::size_t k = 1; k < trace.size() && why.empty(); ++k)
    if (trace.P_st[k].p1 > trace.P_st[k - 1].p1 + 1e-12)
      why = "stationary bit state is not monotone in time";
  double m1 = q * x.p1 + (1.0 - q) * y.p1;
  auto interior = [](const Bit& b) { return b.p1 > 0.0 && b.p1 < 1.0; };
  if (why.empty() && !(interior(p) && interior(g) && interior(x) && interior(y)))
    why = "boundary distribution";
  if (why.empty() && p.p1 > 0.5) why = "final bit not in the reset half";
  if (why.empty() && p.p1 < m1 - 1e-12) why = "final bit below the mixture";
  if (why.empty() && g.p1 > p.p1) why = "final bit below the thermal bit";
  if (why.empty() && m1 < g.p1) why = "mixture below the thermal bit";
  if (!why.empty()) {
    out.push_back(not_applicable("relent_general_lower", why));
  } else {
    double rhs = q * Dx + (1.0 - q) * relative_entropy(y, g) -
                 q * (1.0 - q) * symmetric_relative_entropy(x, y);
    out.push_back(make_record("relent_general_lower", D_eps, rhs));
  }

  bool thermalizing = std::abs(y.p1 - g.p1) <= 1e-10 * std::max(y.p1, g.p1) + 1e-300;
  if (!thermalizing) {
    out.push_back(not_applicable("relent_case2_lower", "stationary bit differs from thermal bit"));
  } else if (!(g.p1 <= x.p1 && x.p1 <= 0.5)) {
    out.push_back(not_applicable("relent_case2_lower", "ordering gamma1(tau) <= gamma1(0) <= 1/2 fails"));
  } else {
    out.push_back(make_record("relent_case2_lower", D_eps, q * (2.0 * q - 1.0) * Dx));
  }
  return out;
}

Envelope penalty_envelope(const ShiftingSummary& s) {
  double lift = s.E_max / s.N;
  double T = 1.0 / s.beta;
  double decay = std::exp(-s.mu * s.tau / s.N);
  Envelope e;
  e.lower = decay * (0.5 - gamma1(s.E_max - lift, s.beta)) * lift;
  e.upper = T * std::expm1(s.beta * lift) / 2.0 + decay * (s.E_max / 2.0 - qs_work(s.E_max, s.beta));
  return e;
}

std::vector<BoundRecord> penalty_envelope_check(const ShiftingSummary& s) {
  Envelope e = penalty_envelope(s);
  return {make_record("penalty_envelope_lower", s.W_pn, e.lower),
          make_record("penalty_envelope_upper", e.upper, s.W_pn)};
}

Throughput throughput_bound(double n, double tau_sw, double T, double mu, double eps,
                            double E_max) {
  if (!(n > 0.0 && tau_sw > 0.0 && T > 0.0 && mu > 0.0 && E_max > 0.0))
    throw ArgumentError("throughput_bound: parameters must be positive");
  if (!(eps >= 0.0 && eps <= 0.5)) throw ArgumentError("throughput_bound: eps must be in [0, 1/2]");
  double beta = 1.0 / T;
  double st = (1.0 - 2.0 * eps) * (1.0 - 2.0 * eps) / (mu * tau_sw);
  Throughput t;
  t.bandwidth = n / tau_sw;
  t.power = T * t.bandwidth * (std::log(2.0) - binary_entropy(eps) + eps * beta * E_max + st);
  double D_eps = raw::kl2(eps, gamma1(E_max, beta));
  t.E_bit = qs_work(E_max, beta) + T * (D_eps + st);
  t.composed = t.bandwidth * t.E_bit;
  return t;
}

Identity throughput_identity(double eps, double E_max, double beta) {
  double lhs = std::log(2.0) - std::log1p(std::exp(-beta * E_max)) +
               raw::kl2(eps, gamma1(E_max, beta));
  double rhs = std::log(2.0) - binary_entropy(eps) + eps * beta * E_max;
  return {lhs, rhs};
}

}  // namespace ftreset
