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

#include "ftreset/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "ftreset/errors.hpp"

namespace ftreset {

namespace {

double bernoulli(double z) {
  if (std::abs(z) < 1e-8) return 1.0 - 0.5 * z;
  if (z > 700.0) return z * std::exp(-z);
  return z / std::expm1(z);
}

// Dense set of times covering every knot and the interiors between them.
std::vector<double> probe_times(const PotentialProtocol& p) {
  std::set<double> knots(p.a.t.begin(), p.a.t.end());
  knots.insert(p.f.t.begin(), p.f.t.end());
  std::vector<double> k(knots.begin(), knots.end()), out;
  for (std::size_t i = 0; i + 1 < k.size(); ++i)
    for (int s = 0; s < 64; ++s) out.push_back(k[i] + (k[i + 1] - k[i]) * s / 64.0);
  out.push_back(k.back());
  return out;
}

void fluxes(const FpGenerator& G, const Vec& P, Vec& dP) {
  const std::size_t M = P.size();
  dP.assign(M, 0.0);
  for (std::size_t i = 0; i + 1 < M; ++i) {
    double J = G.up[i] * P[i] - G.down[i] * P[i + 1];
    dP[i] -= J;
    dP[i + 1] += J;
  }
}

double sigma_rate(const FpGenerator& G, const Vec& P) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < P.size(); ++i) {
    double a = G.up[i] * P[i];
    double b = G.down[i] * P[i + 1];
    if (a > 0.0 && b > 0.0) s += (a - b) * std::log(a / b);
  }
  return s;
}

double rk4(const FpGenerator& G, Vec& P, double h) {
  const std::size_t M = P.size();
  Vec k1, k2, k3, k4, y(M);
  fluxes(G, P, k1);
  double s1 = sigma_rate(G, P);
  for (std::size_t i = 0; i < M; ++i) y[i] = P[i] + 0.5 * h * k1[i];
  fluxes(G, y, k2);
  double s2 = sigma_rate(G, y);
  for (std::size_t i = 0; i < M; ++i) y[i] = P[i] + 0.5 * h * k2[i];
  fluxes(G, y, k3);
  double s3 = sigma_rate(G, y);
  for (std::size_t i = 0; i < M; ++i) y[i] = P[i] + h * k3[i];
  fluxes(G, y, k4);
  double s4 = sigma_rate(G, y);
  for (std::size_t i = 0; i < M; ++i) P[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return h / 6.0 * (s1 + 2 * s2 + 2 * s3 + s4);
}

double vsum(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double vdot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec gibbs_probs(const Vec& V, double beta, double* logZ = nullptr) {
  ThermalState ts = thermal_state(V, beta);
  if (logZ) *logZ = ts.logZ;
  return ts.gamma;
}

}  // namespace

double PiecewiseLinear::at(double time) const {
  if (t.empty()) return 0.0;
  if (time <= t.front()) return v.front();
  if (time >= t.back()) return v.back();
  auto it = std::upper_bound(t.begin(), t.end(), time);
  std::size_t i = static_cast<std::size_t>(it - t.begin());
  double u = (time - t[i - 1]) / (t[i] - t[i - 1]);
  return v[i - 1] + u * (v[i] - v[i - 1]);
}

double PiecewiseLinear::min() const { return *std::min_element(v.begin(), v.end()); }
double PiecewiseLinear::max() const { return *std::max_element(v.begin(), v.end()); }

double PotentialProtocol::V(double x, double t) const {
  double x2 = x * x;
  return 0.25 * k * x2 * x2 - 0.5 * a.at(t) * x2 + f.at(t) * x;
}

double PotentialProtocol::dV(double x, double t) const {
  return k * x * x * x - a.at(t) * x + f.at(t);
}

void PotentialProtocol::validate() const {
  if (!(k > 0.0)) throw ArgumentError("potential: k must be positive (confinement)");
  if (!(D > 0.0)) throw ArgumentError("potential: diffusion constant must be positive");
  if (!(beta > 0.0)) throw ArgumentError("potential: beta must be positive");
  for (const auto* s : {&a, &f}) {
    if (s->t.empty() || s->t.size() != s->v.size())
      throw ArgumentError("potential: schedule needs matching knot times and values");
    for (std::size_t i = 1; i < s->t.size(); ++i)
      if (!(s->t[i] > s->t[i - 1])) throw ArgumentError("potential: knot times must increase");
  }
}

PotentialProtocol default_reset_protocol(double tau, double a0, double a1, double f1, double D,
                                         double beta) {
  if (!(tau > 0.0)) throw ArgumentError("continuum: tau must be positive");
  if (!(a0 > 0.0)) throw ArgumentError("continuum: a0 must be positive (double well)");
  if (a1 > 0.0) throw ArgumentError("continuum: a1 must be <= 0 (single well)");
  if (!(f1 > 0.0)) throw ArgumentError("continuum: f1 must be positive");
  PotentialProtocol p;
  p.a = {{0.0, 0.5 * tau, tau}, {a0, a1, a0}};
  p.f = {{0.0, 0.5 * tau, tau}, {0.0, f1, f1}};
  p.D = D;
  p.beta = beta;
  p.validate();
  return p;
}

Grid make_grid(const PotentialProtocol& p, int M, double cutoff) {
  p.validate();
  if (M < 4 || M % 2 != 0) throw ArgumentError("grid: M must be an even number >= 4");
  double half = 0.0;
  const double step = 1e-3, reach = 30.0;
  for (double t : probe_times(p)) {
    double vmin = kInf;
    for (double x = -reach; x <= reach; x += step) vmin = std::min(vmin, p.V(x, t));
    // outermost points still below the cutoff
    double xr = reach, xl = -reach;
    while (xr > 0.0 && p.beta * (p.V(xr, t) - vmin) >= cutoff) xr -= step;
    while (xl < 0.0 && p.beta * (p.V(xl, t) - vmin) >= cutoff) xl += step;
    half = std::max({half, xr + step, -xl + step});
  }
  Grid g;
  g.x_min = -half;
  g.x_max = half;
  g.M = M;
  return g;
}

Vec GridDensity::probs() const {
  Vec P(density.size());
  double dx = grid.dx();
  for (std::size_t i = 0; i < P.size(); ++i) P[i] = density[i] * dx;
  return P;
}

GridDensity GridDensity::from_probs(const Grid& g, const Vec& P) {
  GridDensity d;
  d.grid = g;
  d.density.resize(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) d.density[i] = P[i] / g.dx();
  return d;
}

Vec potential_on(const Grid& g, const PotentialProtocol& p, double t) {
  Vec V(g.M);
  for (int i = 0; i < g.M; ++i) V[i] = p.V(g.x(i), t);
  return V;
}

GridDensity continuum_thermal(const Vec& V, double beta, const Grid& g) {
  if (static_cast<int>(V.size()) != g.M) throw ArgumentError("continuum_thermal: size mismatch");
  return GridDensity::from_probs(g, gibbs_probs(V, beta));
}

double FpGenerator::max_exit() const {
  double m = 0.0;
  const std::size_t M = up.size() + 1;
  for (std::size_t i = 0; i < M; ++i) {
    double e = (i < up.size() ? up[i] : 0.0) + (i > 0 ? down[i - 1] : 0.0);
    m = std::max(m, e);
  }
  return m;
}

FpGenerator fp_generator(const Vec& V, const Grid& g, double D, double beta) {
  if (static_cast<int>(V.size()) != g.M) throw ArgumentError("fp_generator: size mismatch");
  FpGenerator G;
  const double c = D / (g.dx() * g.dx());
  G.up.resize(g.M - 1);
  G.down.resize(g.M - 1);
  for (int i = 0; i + 1 < g.M; ++i) {
    double z = beta * (V[i + 1] - V[i]);
    G.up[i] = c * bernoulli(z);
    G.down[i] = c * bernoulli(-z);
  }
  return G;
}

double fp_stability_limit(const FpGenerator& G) {
  // spectrum lies in [-2 max_exit, 0]; classic RK4 is stable to -2.785
  return 2.785 / (2.0 * G.max_exit());
}

GridDensity fp_step(const GridDensity& p, const Vec& V, double D, double beta, double dt) {
  FpGenerator G = fp_generator(V, p.grid, D, beta);
  double lim = fp_stability_limit(G);
  if (!(dt > 0.0) || dt > lim) {
    std::ostringstream os;
    os << "fp_step: dt=" << dt << " exceeds the stability limit; use dt <= " << lim;
    throw ArgumentError(os.str());
  }
  Vec P = p.probs();
  rk4(G, P, dt);
  return GridDensity::from_probs(p.grid, P);
}

ContinuumRates continuum_coarse_rates(const GridDensity& p, const PotentialProtocol& proto,
                                      double t, double dt_probe) {
  if (!(dt_probe > 0.0)) throw ArgumentError("continuum_coarse_rates: dt_probe must be positive");
  const Grid& g = p.grid;
  Vec P = p.probs();
  double s = std::sqrt(2.0 * proto.D * dt_probe);
  double to0 = 0.0, to1 = 0.0, P0 = 0.0, P1 = 0.0;
  for (int i = 0; i < g.M; ++i) {
    double x = g.x(i);
    double m = x - proto.beta * proto.D * proto.dV(x, t) * dt_probe;
    double below = 0.5 * std::erfc(m / (s * std::sqrt(2.0)));
    if (x < 0.0) {
      P0 += P[i];
      to1 += P[i] * (1.0 - below);
    } else {
      P1 += P[i];
      to0 += P[i] * below;
    }
  }
  if (to0 > 0.1 * P1 || to1 > 0.1 * P0)
    throw ArgumentError("continuum_coarse_rates: dt_probe too large, transfer exceeds 10% of block mass");
  ContinuumRates r;
  r.G01 = P1 > kBlockUnderflow ? to0 / (dt_probe * P1) : 0.0;
  r.G10 = P0 > kBlockUnderflow ? to1 / (dt_probe * P0) : 0.0;
  r.mu = r.G01 + r.G10;
  return r;
}

ContinuumRates discrete_coarse_rates(const FpGenerator& G, const Vec& P) {
  const std::size_t h = P.size() / 2;
  double P0 = 0.0, P1 = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) (i < h ? P0 : P1) += P[i];
  ContinuumRates r;
  r.G01 = P1 > kBlockUnderflow ? G.down[h - 1] * P[h] / P1 : 0.0;
  r.G10 = P0 > kBlockUnderflow ? G.up[h - 1] * P[h - 1] / P0 : 0.0;
  r.mu = r.G01 + r.G10;
  return r;
}

namespace {

double choose_dt(const PotentialProtocol& proto, const Grid& g, double tau, double dt,
                 long& nsteps) {
  double lim = kInf;
  for (double t : probe_times(proto))
    lim = std::min(lim, fp_stability_limit(fp_generator(potential_on(g, proto, t), g, proto.D, proto.beta)));
  if (dt <= 0.0) dt = 0.25 * lim;
  nsteps = std::max(1L, static_cast<long>(std::ceil(tau / dt - 1e-9)));
  return tau / static_cast<double>(nsteps);
}

Bit bit_of(const Vec& P) {
  const std::size_t h = P.size() / 2;
  double P0 = 0.0, P1 = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) (i < h ? P0 : P1) += P[i];
  Bit b;
  b.p1 = std::clamp(P1 / (P0 + P1), 0.0, 1.0);
  return b;
}

}  // namespace

ContinuumResult run_continuum_reset(const PotentialProtocol& proto, double tau,
                                    const ContinuumOptions& opt) {
  proto.validate();
  if (!(tau > 0.0)) throw ArgumentError("continuum: tau must be positive");
  ContinuumResult r;
  r.grid = make_grid(proto, opt.M, opt.cutoff);
  const Grid& g = r.grid;
  const double beta = proto.beta, T = 1.0 / beta;
  r.dt = choose_dt(proto, g, tau, opt.dt, r.steps);
  const long every = opt.sample_every > 0 ? opt.sample_every : std::max(1L, r.steps / 2000);

  Vec V = potential_on(g, proto, 0.0);
  double logZ0 = 0.0;
  Vec P = gibbs_probs(V, beta, &logZ0);
  const Vec V0 = V, P0 = P;
  FpGenerator G = fp_generator(V, g, proto.D, beta);
  {
    ContinuumRates ex = discrete_coarse_rates(G, P);
    r.mu_exact_initial = ex.mu;
    try {
      r.mu_probe_initial = continuum_coarse_rates(GridDensity::from_probs(g, P), proto, 0.0,
                                                  0.1 * g.dx() * g.dx() / proto.D).mu;
    } catch (const ArgumentError&) {
      r.mu_probe_initial = std::nan("");
    }
  }

  CoarseTrace& c = r.trace;
  double prev_fine = 0.0, prev_bit = 0.0;
  auto sample = [&](double t) {
    Bit Pb = bit_of(P);
    Bit gb = bit_of(gibbs_probs(V, beta));
    ContinuumRates cr = discrete_coarse_rates(G, P);
    double fine = sigma_rate(G, P);
    CoarseRates crr{cr.G01, cr.G10};
    double bit = coarse_entropy_production_rate(crr, Pb);
    if (!c.times.empty()) {
      double dt = t - c.times.back();
      r.Sigma_trapezoid += 0.5 * (prev_fine + fine) * dt;
      c.Sigma_bit += 0.5 * (prev_bit + bit) * dt;
    }
    prev_fine = fine;
    prev_bit = bit;
    c.times.push_back(t);
    c.P_bit.push_back(Pb);
    c.gamma_bit.push_back(gb);
    c.G01.push_back(cr.G01);
    c.G10.push_back(cr.G10);
    c.mu.push_back(cr.mu);
    Bit st;
    st.p1 = cr.mu > 0.0 ? cr.G10 / cr.mu : Pb.p1;
    c.P_st.push_back(st);
    c.sigma_bit_cum.push_back(c.Sigma_bit);
  };
  std::vector<double> snaps = opt.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;
  auto snapshot = [&](double t) {
    Snapshot s;
    s.t = t;
    Vec gam = gibbs_probs(V, beta);
    for (int i = 0; i < g.M; ++i) {
      s.x.push_back(g.x(i));
      s.p.push_back(P[i] / g.dx());
      s.gamma.push_back(gam[i] / g.dx());
      s.V.push_back(V[i]);
    }
    r.snapshots.push_back(std::move(s));
  };

  double W = 0.0, sigma_rate_total = 0.0;
  const double mass0 = vsum(P);
  for (long n = 0; n < r.steps; ++n) {
    double t = n * r.dt;
    if (n > 0) {
      Vec Vn = potential_on(g, proto, t);
      for (int i = 0; i < g.M; ++i) W += P[i] * (Vn[i] - V[i]);
      V = std::move(Vn);
      G = fp_generator(V, g, proto.D, beta);
    }
    if (n % every == 0) sample(t);
    while (next_snap < snaps.size() && snaps[next_snap] < t + 0.5 * r.dt) {
      snapshot(t);
      ++next_snap;
    }
    double before = vsum(P);
    sigma_rate_total += rk4(G, P, r.dt);
    r.mass_drift_step = std::max(r.mass_drift_step, std::abs(vsum(P) - before));
  }
  {
    Vec Vn = potential_on(g, proto, tau);
    for (int i = 0; i < g.M; ++i) W += P[i] * (Vn[i] - V[i]);
    V = std::move(Vn);
    G = fp_generator(V, g, proto.D, beta);
    sample(tau);
    while (next_snap < snaps.size()) {
      snapshot(tau);
      ++next_snap;
    }
  }
  r.mass_drift_total = std::abs(vsum(P) - mass0);

  double logZ1 = 0.0;
  Vec gam1 = gibbs_probs(V, beta, &logZ1);
  ThermoLedger& L = r.ledger;
  L.T = T;
  L.W = W;
  L.dU = vdot(P, V) - vdot(P0, V0);
  L.Q = L.dU - W;
  L.dS = raw::entropy(P) - raw::entropy(P0);
  L.Sigma = L.dS - L.Q / T;
  L.Sigma_rate = sigma_rate_total;
  L.D_initial = raw::kl(P0, gibbs_probs(V0, beta));
  L.D_final = raw::kl(P, gam1);
  L.W_qs = T * (logZ0 - logZ1);
  L.W_pn = L.W - L.W_qs;
  r.residual = std::abs(L.W_pn - T * (L.D_final - L.D_initial) - T * L.Sigma_rate);
  r.D_eps = relative_entropy(c.P_bit.back(), c.gamma_bit.back());

  BoundsReport& b = r.report;
  b.tau = tau;
  b.mu_avg = swap_rate(c).average;
  b.beta = beta;
  b.eps = c.P_bit.back().p1;
  b.records.push_back(main_penalty_bound_check(L, c));
  b.records.push_back(speed_limit_check(c, tau));
  b.records.push_back(make_record("data_processing", L.D_final, r.D_eps));
  b.records.push_back(make_record("coarse_hierarchy", r.Sigma_trapezoid, c.Sigma_bit));
  b.records.push_back(make_record("coarse_nonnegative", c.Sigma_bit, 0.0));
  b.records.push_back(make_record("entropy_production_nonnegative", L.Sigma, 0.0));
  b.diagnostics.push_back({"penalty_equality_residual", r.residual});
  b.diagnostics.push_back({"mu_probe_initial", r.mu_probe_initial});
  b.diagnostics.push_back({"mu_exact_initial", r.mu_exact_initial});
  b.diagnostics.push_back({"mass_drift_step", r.mass_drift_step});
  b.diagnostics.push_back({"mass_drift_total", r.mass_drift_total});
  return r;
}

double gibbs_fixed_point_drift(const PotentialProtocol& proto, double t_static, double duration,
                               const ContinuumOptions& opt) {
  Grid g = make_grid(proto, opt.M, opt.cutoff);
  Vec V = potential_on(g, proto, t_static);
  Vec gam = gibbs_probs(V, proto.beta);
  FpGenerator G = fp_generator(V, g, proto.D, proto.beta);
  double dt = opt.dt > 0.0 ? opt.dt : 0.25 * fp_stability_limit(G);
  long n = std::max(1L, static_cast<long>(std::ceil(duration / dt)));
  Vec P = gam;
  double worst = 0.0;
  for (long k = 0; k < n; ++k) {
    rk4(G, P, duration / n);
    if (k % 64 == 0 || k + 1 == n) worst = std::max(worst, raw::kl(P, gam));
  }
  return worst;
}

std::string snapshots_csv(const std::vector<Snapshot>& snaps) {
  std::string out = "t,x,p,gamma,V\n";
  char buf[160];
  for (const auto& s : snaps)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.x[i], s.p[i],
                    s.gamma[i], s.V[i]);
      out += buf;
    }
  return out;
}

}  // namespace ftreset
