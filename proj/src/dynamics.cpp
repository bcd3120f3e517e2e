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

#include "ftreset/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "ftreset/errors.hpp"

namespace ftreset {

namespace {

constexpr double kColSumTol = 1e-12;
constexpr double kDetailedBalanceTol = 1e-10;

// Gauss-Legendre nodes and weights on [0, 1].
struct Quadrature {
  std::vector<double> x, w;
};

Quadrature gauss_legendre(int n) {
  static const std::array<std::vector<double>, 6> nodes = {{
      {0.0},
      {-0.5773502691896257645},
      {-0.7745966692414833770, 0.0},
      {-0.8611363115940525752, -0.3399810435848562648},
      {-0.9061798459386639928, -0.5384693101056830910, 0.0},
      {-0.9324695142031520278, -0.6612093864662645137, -0.2386191860831969086},
  }};
  static const std::array<std::vector<double>, 6> weights = {{
      {2.0},
      {1.0},
      {0.5555555555555555556, 0.8888888888888888889},
      {0.3478548451374538574, 0.6521451548625461426},
      {0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889},
      {0.1713244923791703450, 0.3607615730481386076, 0.4679139345726910474},
  }};
  n = std::clamp(n, 1, 6);
  Quadrature q;
  const auto& xs = nodes[n - 1];
  const auto& ws = weights[n - 1];
  for (std::size_t k = 0; k < xs.size(); ++k) {
    q.x.push_back(0.5 * (1.0 + xs[k]));
    q.w.push_back(0.5 * ws[k]);
    if (xs[k] != 0.0) {
      q.x.push_back(0.5 * (1.0 - xs[k]));
      q.w.push_back(0.5 * ws[k]);
    }
  }
  return q;
}

Vec matvec(const RateMatrix& G, const Vec& p) {
  std::size_t n = p.size();
  Vec r(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double pj = p[j];
    if (pj == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) r[i] += G(i, j) * pj;
  }
  return r;
}

double sum(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

void validate_rates(const RateMatrix& G, const ThermalState* gamma) {
  if (G.rows() != G.cols()) throw ValidationError("rates: matrix must be square");
  const Eigen::Index n = G.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    double cs = 0.0, scale = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double g = G(i, j);
      if (!std::isfinite(g)) throw ValidationError("rates: non-finite entry");
      if (i != j && g < 0.0) {
        std::ostringstream os;
        os << "rates: negative off-diagonal rate at (" << i << "," << j << ")";
        throw ValidationError(os.str());
      }
      cs += g;
      scale = std::max(scale, std::abs(g));
    }
    if (std::abs(cs) > kColSumTol * std::max(1.0, scale)) {
      std::ostringstream os;
      os << "rates: column " << j << " sums to " << cs;
      throw ValidationError(os.str());
    }
  }
  if (!gamma) return;
  if (static_cast<Eigen::Index>(gamma->gamma.size()) != n)
    throw ValidationError("rates: thermal state size mismatch");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double a = G(i, j) * gamma->gamma[j];
      double b = G(j, i) * gamma->gamma[i];
      if (std::abs(a - b) > kDetailedBalanceTol * std::max(a, b)) {
        std::ostringstream os;
        os << "rates: detailed balance violated between states " << i << " and " << j;
        throw ValidationError(os.str());
      }
    }
}

RateMatrix partial_swap_generator(const ThermalState& gamma, double mu) {
  if (!(mu >= 0.0)) throw ArgumentError("partial_swap_generator: mu must be >= 0");
  const auto n = static_cast<Eigen::Index>(gamma.gamma.size());
  RateMatrix G(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) G(i, j) = mu * gamma.gamma[i];
  // diagonal chosen so columns sum to zero exactly
  for (Eigen::Index j = 0; j < n; ++j) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j) off += G(i, j);
    G(j, j) = -off;
  }
  return G;
}

Distribution evolve_partial_swap_constant(const Distribution& p0, const ThermalState& gamma,
                                          double mu, double dt) {
  if (p0.size() != gamma.gamma.size())
    throw ArgumentError("evolve_partial_swap_constant: size mismatch");
  if (!(dt >= 0.0)) throw ArgumentError("evolve_partial_swap_constant: dt must be >= 0");
  if (!(mu >= 0.0)) throw ArgumentError("evolve_partial_swap_constant: mu must be >= 0");
  double f = std::exp(-mu * dt);
  Vec p(p0.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = f * p0[i] + (1.0 - f) * gamma.gamma[i];
  return Distribution(std::move(p));
}

Distribution stationary_state(const RateMatrix& G) {
  validate_rates(G);
  const auto n = G.rows();
  // strong connectivity via forward and backward reachability from state 0
  auto reach = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      auto j = stack.back();
      stack.pop_back();
      for (Eigen::Index i = 0; i < n; ++i) {
        double g = forward ? G(i, j) : G(j, i);
        if (i != j && g > 0.0 && !seen[i]) {
          seen[i] = 1;
          stack.push_back(i);
        }
      }
    }
    return seen;
  };
  auto fwd = reach(true), bwd = reach(false);
  std::vector<Eigen::Index> block, rest;
  for (Eigen::Index i = 0; i < n; ++i) (fwd[i] && bwd[i] ? block : rest).push_back(i);
  if (!rest.empty()) {
    std::ostringstream os;
    os << "stationary_state: reducible chain; block {";
    for (std::size_t k = 0; k < block.size(); ++k) os << (k ? "," : "") << block[k];
    os << "} is disconnected from {";
    for (std::size_t k = 0; k < rest.size(); ++k) os << (k ? "," : "") << rest[k];
    os << "}";
    throw DegenerateError(os.str());
  }
  Eigen::MatrixXd A = G;
  A.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  Eigen::VectorXd x = A.fullPivLu().solve(b);
  Vec p(n);
  for (Eigen::Index i = 0; i < n; ++i) p[i] = std::max(0.0, x(i));
  double s = sum(p);
  for (auto& v : p) v /= s;
  return Distribution(std::move(p));
}

PartialSwapModel::PartialSwapModel(double mu)
    : mu_([mu](double) { return mu; }), constant_(true) {
  if (!(mu >= 0.0)) throw ArgumentError("partial swap: mu must be >= 0");
}

PartialSwapModel::PartialSwapModel(std::function<double(double)> mu_of_t)
    : mu_(std::move(mu_of_t)), constant_(false) {}

RateMatrix PartialSwapModel::rates(double t, const Vec&, const ThermalState& g) const {
  return partial_swap_generator(g, mu_(t));
}

std::optional<double> PartialSwapModel::partial_swap_mu(double t) const { return mu_(t); }

GlauberModel::GlauberModel(Eigen::MatrixXd k, double beta) : k_(std::move(k)), beta_(beta) {
  if (k_.rows() != k_.cols()) throw ArgumentError("glauber: prefactor matrix must be square");
  for (Eigen::Index i = 0; i < k_.rows(); ++i)
    for (Eigen::Index j = 0; j < k_.cols(); ++j)
      if (k_(i, j) < 0.0 || k_(i, j) != k_(j, i))
        throw ArgumentError("glauber: prefactors must be symmetric and non-negative");
}

RateMatrix GlauberModel::rates(double, const Vec& e, const ThermalState&) const {
  const auto n = k_.rows();
  if (static_cast<Eigen::Index>(e.size()) != n) throw ArgumentError("glauber: size mismatch");
  RateMatrix G = RateMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      double x = beta_ * (e[i] - e[j]);
      // 1/(1+e^x) without overflow
      double f = x > 0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
      G(i, j) = k_(i, j) * f;
      off += G(i, j);
    }
    G(j, j) = -off;
  }
  return G;
}

RateMatrix GenericRateModel::rates(double t, const Vec& e, const ThermalState& g) const {
  RateMatrix G = f_(t, e);
  validate_rates(G, &g);
  return G;
}

double entropy_production_rate(const RateMatrix& G, const Vec& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double a = G(i, j) * p[j];
      double b = G(j, i) * p[i];
      if (a > 0.0 && b > 0.0) s += (a - b) * std::log(a / b);
    }
  return s;
}

namespace {

constexpr double kRelFloor = 1e-15;
constexpr double kPanel = 0.25;

struct Integrator {
  const ProtocolSchedule& sched;
  const RateModel& model;
  const IntegratorOptions& opt;
  Trajectory tr;
  Quadrature quad;

  RateMatrix eval_rates(double t, const Vec& e) const {
    ThermalState g = thermal_state(e, sched.beta);
    RateMatrix G = model.rates(t, e, g);
    validate_rates(G, &g);
    return G;
  }

  void push(double t, const Vec& p, const Vec& e, double dw, double ds) {
    tr.times.push_back(t);
    tr.states.push_back(p);
    tr.energies.push_back(e);
    if (opt.store_rates) tr.rates.push_back(eval_rates(t, e));
    tr.dW.push_back(dw);
    tr.dSigma.push_back(ds);
  }

  static Vec lerp(const Segment& s, double t) {
    if (s.is_constant()) return s.start;
    double u = (t - s.t0) / (s.t1 - s.t0);
    Vec e(s.start.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = s.start[i] + u * (s.end[i] - s.start[i]);
    return e;
  }

  // Augmented right-hand side: [dp, dW, dSigma].
  void rhs(const Segment& s, double t, const Vec& p, Vec& dp, double& dw, double& ds) const {
    Vec e = lerp(s, t);
    RateMatrix G = eval_rates(t, e);
    dp = matvec(G, p);
    dw = 0.0;
    if (!s.is_constant()) {
      double len = s.t1 - s.t0;
      for (std::size_t i = 0; i < p.size(); ++i) dw += p[i] * (s.end[i] - s.start[i]) / len;
    }
    ds = entropy_production_rate(G, p);
  }

  bool rk4(const Segment& s, double t, double h, const Vec& p, Vec& out, double& w, double& sg,
           int depth) const {
    const std::size_t n = p.size();
    Vec k1, k2, k3, k4, y(n);
    double w1, w2, w3, w4, s1, s2, s3, s4;
    rhs(s, t, p, k1, w1, s1);
    for (std::size_t i = 0; i < n; ++i) y[i] = p[i] + 0.5 * h * k1[i];
    rhs(s, t + 0.5 * h, y, k2, w2, s2);
    for (std::size_t i = 0; i < n; ++i) y[i] = p[i] + 0.5 * h * k2[i];
    rhs(s, t + 0.5 * h, y, k3, w3, s3);
    for (std::size_t i = 0; i < n; ++i) y[i] = p[i] + h * k3[i];
    rhs(s, t + h, y, k4, w4, s4);
    out.assign(n, 0.0);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = p[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      if (out[i] < -1e-13) ok = false;
    }
    if (std::abs(sum(out) - 1.0) > 1e-12) ok = false;
    if (!ok) {
      if (depth > 30) throw ValidationError("integrator: step halving failed to converge");
      Vec mid;
      double wa, sa, wb, sb;
      rk4(s, t, 0.5 * h, p, mid, wa, sa, depth + 1);
      rk4(s, t + 0.5 * h, 0.5 * h, mid, out, wb, sb, depth + 1);
      w = wa + wb;
      sg = sa + sb;
      return true;
    }
    w = h / 6.0 * (w1 + 2 * w2 + 2 * w3 + w4);
    sg = h / 6.0 * (s1 + 2 * s2 + 2 * s3 + s4);
    for (auto& x : out) x = std::max(0.0, x);
    double z = sum(out);
    for (auto& x : out) x /= z;
    return true;
  }

  void run(const Distribution& p0) {
    sched.validate();
    const auto& L = sched.landscape;
    if (p0.size() != L.levels()) throw ArgumentError("integrate: initial state size mismatch");
    if (!(opt.dt_max > 0.0)) throw ArgumentError("integrate: dt_max must be positive");
    quad = gauss_legendre(opt.quad_nodes);
    tr.beta = sched.beta;
    tr.tau = sched.tau;
    tr.kind = sched.kind;
    Vec p = p0.weights();
    Vec e = L.initial();
    push(0.0, p, e, 0.0, 0.0);
    const auto* ps = dynamic_cast<const PartialSwapModel*>(&model);
    for (const auto& s : L.segments()) {
      if (s.start != e) {
        double dw = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) dw += p[i] * (s.start[i] - e[i]);
        tr.jumps.push_back(tr.size() - 1);
        e = s.start;
        push(s.t0, p, e, dw, 0.0);
      }
      double len = s.t1 - s.t0;
      auto nsteps = static_cast<long>(std::ceil(len / opt.dt_max - 1e-9));
      nsteps = std::max(1L, nsteps);
      double h = len / static_cast<double>(nsteps);
      if (s.is_constant() && ps && ps->constant()) {
        ThermalState g = thermal_state(e, sched.beta);
        double mu = *ps->partial_swap_mu(s.t0);
        RateMatrix G = partial_swap_generator(g, mu);
        Vec pstart = p;
        auto at = [&](double elapsed) {
          double f = std::exp(-mu * elapsed);
          Vec q(p.size());
          for (std::size_t i = 0; i < q.size(); ++i)
            q[i] = f * pstart[i] + (1.0 - f) * g.gamma[i];
          return q;
        };
        for (long k = 0; k < nsteps; ++k) {
          double a = k * h;
          double ds = 0.0, tc = a, end = a + h;
          while (tc < end) {
            // panels resolve the fastest relative change of any occupied level
            Vec q = at(tc);
            double r = mu;
            for (std::size_t i = 0; i < q.size(); ++i)
              r = std::max(r, mu * std::abs(g.gamma[i] - q[i]) / std::max(q[i], kRelFloor));
            double hp = r > 0.0 ? kPanel / r : end - tc;
            if (tc + hp >= end || end - (tc + hp) < 1e-3 * hp) hp = end - tc;
            double part = 0.0;
            for (std::size_t m = 0; m < quad.x.size(); ++m)
              part += quad.w[m] * entropy_production_rate(G, at(tc + quad.x[m] * hp));
            ds += part * hp;
            tc = (hp == end - tc) ? end : tc + hp;
          }
          double t = (k + 1 == nsteps) ? s.t1 : s.t0 + (k + 1) * h;
          p = at((k + 1 == nsteps) ? len : (k + 1) * h);
          push(t, p, e, 0.0, ds);
        }
      } else {
        for (long k = 0; k < nsteps; ++k) {
          double t = s.t0 + k * h;
          double end = t + h;
          double dw = 0.0, ds = 0.0, tc = t;
          while (tc < end) {
            // substep bounded by the fastest exit rate and the fastest relative
            // change of any occupied level
            RateMatrix G0 = eval_rates(tc, lerp(s, tc));
            double r = 0.0;
            for (Eigen::Index j = 0; j < G0.cols(); ++j) r = std::max(r, -G0(j, j));
            Vec dp = matvec(G0, p);
            for (std::size_t i = 0; i < p.size(); ++i)
              r = std::max(r, std::abs(dp[i]) / std::max(p[i], kRelFloor));
            double hs = r > 0.0 ? opt.stiffness / r : end - tc;
            if (tc + hs >= end || end - (tc + hs) < 1e-3 * hs) hs = end - tc;
            Vec out;
            double w1 = 0.0, s1 = 0.0;
            rk4(s, tc, hs, p, out, w1, s1, 0);
            p = std::move(out);
            dw += w1;
            ds += s1;
            tc = (hs == end - tc) ? end : tc + hs;
          }
          double tn = (k + 1 == nsteps) ? s.t1 : s.t0 + (k + 1) * h;
          e = lerp(s, tn);
          if (k + 1 == nsteps) e = s.end;
          push(tn, p, e, dw, ds);
        }
      }
      e = s.end;
    }
  }
};

}  // namespace

Trajectory integrate_master_equation(const ProtocolSchedule& schedule, const RateModel& model,
                                     const Distribution& p0, const IntegratorOptions& opt) {
  Integrator in{schedule, model, opt, {}, {}};
  in.run(p0);
  return std::move(in.tr);
}

}  // namespace ftreset
