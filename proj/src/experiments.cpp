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

#include "ftreset/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "ftreset/errors.hpp"

namespace ftreset {

double thermal_p1(double E, double beta) {
  double x = beta * E;
  return x > 0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
}

void ShiftingParams::validate() const {
  if (N < 1) throw ArgumentError("N must be >= 1");
  if (!(mu >= 0.0)) throw ArgumentError("mu must be >= 0");
  if (!(beta > 0.0)) throw ArgumentError("beta must be positive");
  if (!(E_max >= 0.0) || !std::isfinite(E_max)) throw ArgumentError("E_max must be finite and >= 0");
  if (!(tau > 0.0)) throw ArgumentError("tau must be positive");
}

ShiftingOutcome shifting_recursion(const ShiftingParams& p, bool keep_steps) {
  p.validate();
  ShiftingOutcome out;
  const double lift = p.E_max / p.N;
  const double f = std::exp(-p.mu * p.tau / p.N);
  double P1 = 0.5, E_prev = 0.0, g_prev = 0.5;
  for (int k = 1; k <= p.N; ++k) {
    double E = (k == p.N) ? p.E_max : lift * k;
    double g = thermal_p1(E, p.beta);
    out.W += P1 * (E - E_prev);
    double a = raw::kl2(P1, g);
    double next = f * P1 + (1.0 - f) * g;
    double sigma = a - raw::kl2(next, g);
    out.Sigma += sigma;
    if (keep_steps) out.steps.push_back({sigma, a - raw::kl2(P1, g_prev)});
    P1 = next;
    E_prev = E;
    g_prev = g;
  }
  out.eps = P1;
  out.W_qs = quasistatic_work({0.0, 0.0}, {0.0, p.E_max}, p.beta);
  out.W_pn = out.W - out.W_qs;
  out.D_eps = raw::kl2(P1, thermal_p1(p.E_max, p.beta));
  return out;
}

double shifting_final_p1(const ShiftingParams& p) {
  const double lift = p.E_max / p.N;
  const double f = std::exp(-p.mu * p.tau / p.N);
  double P1 = 0.5;
  for (int k = 1; k <= p.N; ++k) {
    double E = (k == p.N) ? p.E_max : lift * k;
    P1 = f * P1 + (1.0 - f) * thermal_p1(E, p.beta);
  }
  return P1;
}

RunResult run_constant_shifting(const ShiftingParams& p, const RunOptions& opt) {
  p.validate();
  if (opt.samples_per_window < 1) throw ArgumentError("samples_per_window must be >= 1");
  RunResult r;
  r.params = p;
  ProtocolSchedule sched = constant_shifting_schedule(p.N, p.E_max, p.tau, p.beta);
  PartialSwapModel model(p.mu);
  IntegratorOptions io;
  io.dt_max = p.tau / p.N / opt.samples_per_window;
  Trajectory tr = integrate_master_equation(sched, model, Distribution({1.0 - opt.initial_p1, opt.initial_p1}), io);
  const double T = 1.0 / p.beta;
  r.ledger = make_ledger(tr, T);
  BitPartition part = BitPartition::split(2, 1);
  r.trace = build_coarse_trace(tr, part);
  r.Sigma_trapezoid = entropy_production_trapezoid(tr);
  r.residual = std::abs(r.ledger.W_pn - T * (r.ledger.D_final - r.ledger.D_initial) -
                        T * r.ledger.Sigma_rate);
  r.D_eps = relative_entropy(r.trace.P_bit.back(), r.trace.gamma_bit.back());

  r.summary.N = p.N;
  r.summary.mu = p.mu;
  r.summary.beta = p.beta;
  r.summary.tau = p.tau;
  r.summary.E_max = p.E_max;
  r.summary.eps = r.trace.P_bit.back().p1;
  r.summary.W_pn = r.ledger.W_pn;

  BoundsReport& b = r.report;
  b.tau = p.tau;
  b.N = p.N;
  b.mu_avg = swap_rate(r.trace).average;
  b.beta = p.beta;
  b.E_max = p.E_max;
  b.eps = r.summary.eps;
  b.records.push_back(main_penalty_bound_check(r.ledger, r.trace));
  b.records.push_back(speed_limit_check(r.trace, p.tau));
  b.records.push_back(make_record("data_processing", r.ledger.D_final, r.D_eps));
  b.records.push_back(make_record("coarse_hierarchy", r.Sigma_trapezoid, r.trace.Sigma_bit));
  b.records.push_back(make_record("coarse_nonnegative", r.trace.Sigma_bit, 0.0));
  b.records.push_back(make_record("entropy_production_nonnegative", r.ledger.Sigma, 0.0));
  b.records.push_back(relent_exponential_upper(r.summary));
  double case1 = 0.0;
  for (auto& rec : relent_general_lower(r.trace, &case1)) b.records.push_back(rec);
  for (auto& rec : penalty_envelope_check(r.summary)) b.records.push_back(rec);
  b.diagnostics.push_back({"case1_first_order", case1});
  b.diagnostics.push_back({"penalty_equality_residual", r.residual});
  b.diagnostics.push_back({"sigma_paths_difference", std::abs(r.ledger.Sigma - r.ledger.Sigma_rate)});
  if (opt.keep_trajectory) r.trajectory = std::move(tr);
  return r;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& f) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::vector<double> logspace(double lo, double hi, std::size_t n, bool endpoint) {
  if (!(lo > 0.0 && hi > lo) || n == 0) throw ArgumentError("logspace: need 0 < lo < hi and n > 0");
  std::vector<double> v(n);
  double a = std::log10(lo), b = std::log10(hi);
  double div = endpoint ? static_cast<double>(n > 1 ? n - 1 : 1) : static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(10.0, a + (b - a) * i / div);
  if (endpoint && n > 1) v.back() = hi;
  v.front() = lo;
  return v;
}

void SweepSpec::validate() const {
  if (tau_grid.empty()) throw ArgumentError("sweep: empty tau grid");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > 0.0)) throw ArgumentError("sweep: tau values must be positive");
    if (i && !(tau_grid[i] > tau_grid[i - 1])) throw ArgumentError("sweep: tau grid must be strictly increasing");
  }
  if (N < 1) throw ArgumentError("sweep: N must be >= 1");
  if (!(mu > 0.0)) throw ArgumentError("sweep: mu must be positive");
  if (!(beta > 0.0)) throw ArgumentError("sweep: beta must be positive");
  if (mode == SweepMode::kFixedEnergy) {
    if (!(E_max >= 0.0)) throw ArgumentError("sweep: E_max must be >= 0");
  } else {
    if (!(eps_target > 0.0 && eps_target <= 0.5)) throw ArgumentError("sweep: eps must be in (0, 1/2]");
    double floor = thermal_p1(kEnergyCap / beta, beta);
    if (!(eps_target > floor)) {
      std::ostringstream os;
      os << "sweep: eps target " << eps_target << " is not above gamma1 at the energy cap (" << floor << ")";
      throw ArgumentError(os.str());
    }
  }
}

std::vector<SweepRow> run_fixed_energy_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  std::vector<SweepRow> rows(spec.tau_grid.size());
  RunOptions opt;
  opt.samples_per_window = spec.samples_per_window;
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    ShiftingParams p{spec.N, spec.mu, spec.beta, spec.E_max, spec.tau_grid[i]};
    rows[i].tau = p.tau;
    rows[i].run = run_constant_shifting(p, opt);
  });
  return rows;
}

std::vector<SweepRow> run_fixed_error_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  std::vector<SweepRow> rows(spec.tau_grid.size());
  RunOptions opt;
  opt.samples_per_window = spec.samples_per_window;
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.tau = spec.tau_grid[i];
    try {
      double E = solve_fixed_error_energy(spec.eps_target, row.tau, spec.N, spec.mu, spec.beta);
      row.run = run_constant_shifting({spec.N, spec.mu, spec.beta, E, row.tau}, opt);
    } catch (const InfeasibleError& e) {
      row.feasible = false;
      row.note = e.what();
    }
  });
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers) {
  return spec.mode == SweepMode::kFixedEnergy ? run_fixed_energy_sweep(spec, workers)
                                              : run_fixed_error_sweep(spec, workers);
}

double solve_fixed_error_energy(double eps_target, double tau, int N, double mu, double beta) {
  if (!(eps_target > 0.0 && eps_target <= 0.5))
    throw ArgumentError("solve_fixed_error_energy: eps must be in (0, 1/2]");
  ShiftingParams p{N, mu, beta, 0.0, tau};
  p.validate();
  if (eps_target == 0.5) return 0.0;
  double lo = 0.0, hi = kEnergyCap / beta;
  double f_lo = 0.5;
  p.E_max = hi;
  double f_hi = shifting_final_p1(p);
  if (f_hi > eps_target) {
    std::ostringstream os;
    os << "fixed-error target " << eps_target << " is infeasible at tau=" << tau << ", mu=" << mu
       << ", N=" << N << "; minimum achievable eps is " << f_hi;
    throw InfeasibleError(os.str(), f_hi);
  }
  for (int it = 0; it < 300; ++it) {
    double mid = 0.5 * (lo + hi);
    p.E_max = mid;
    double f = shifting_final_p1(p);
    if (f > f_lo + 1e-15 || f < f_hi - 1e-15)
      throw ValidationError("solve_fixed_error_energy: final P1 is not monotone in E_max");
    if (std::abs(f - eps_target) <= 1e-13) return mid;
    if (f > eps_target) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
      f_hi = f;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> main_bound_slacks(const std::vector<SweepRow>& rows) {
  std::vector<double> s;
  for (const auto& r : rows) {
    if (!r.feasible) continue;
    const BoundRecord* m = r.run.report.find("main_penalty_bound");
    if (m) s.push_back(m->slack);
  }
  return s;
}

bool nonincreasing(const std::vector<double>& v, double tol) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + tol) return false;
  return true;
}

RegionSpec default_region_spec() {
  RegionSpec s;
  s.E_grid = logspace(0.1, 20.0, 64);
  s.eps_grid = logspace(1e-4, 0.5, 64, false);
  return s;
}

namespace {

RegionCell classify(const RegionSpec& spec, double E, double eps) {
  RegionCell c;
  c.E_max = E;
  c.eps = eps;
  if (eps < thermal_p1(E, spec.beta)) return c;
  ShiftingParams p{spec.N, spec.mu, spec.beta, E, spec.tau_budget};
  if (shifting_final_p1(p) > eps) return c;
  // final P1 decreases with duration; bisect log(tau)
  double lo = std::log(spec.tau_budget) - 60.0, hi = std::log(spec.tau_budget);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    double mid = 0.5 * (lo + hi);
    p.tau = std::exp(mid);
    double f = shifting_final_p1(p);
    if (f > eps) lo = mid;
    else hi = mid;
  }
  p.tau = std::exp(hi);
  ShiftingOutcome o = shifting_recursion(p);
  c.tau_used = p.tau;
  c.D_eps = o.D_eps;
  c.Sigma = o.Sigma;
  c.label = o.D_eps > o.Sigma ? Region::kI : Region::kII;
  return c;
}

}  // namespace

RegionMap region_map(const RegionSpec& spec, int workers) {
  if (spec.E_grid.empty() || spec.eps_grid.empty()) throw ArgumentError("region_map: empty grid");
  for (double e : spec.E_grid)
    if (!(e > 0.0)) throw ArgumentError("region_map: E_max grid must be positive");
  for (double e : spec.eps_grid)
    if (!(e > 0.0 && e < 0.5)) throw ArgumentError("region_map: eps grid must lie in (0, 1/2)");
  if (!(spec.tau_budget > 0.0)) throw ArgumentError("region_map: tau must be positive");
  ShiftingParams{spec.N, spec.mu, spec.beta, 1.0, spec.tau_budget}.validate();
  RegionMap m;
  m.spec = spec;
  const std::size_t ne = spec.eps_grid.size();
  m.cells.resize(spec.E_grid.size() * ne);
  parallel_for(spec.E_grid.size(), workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < ne; ++j)
      m.cells[i * ne + j] = classify(spec, spec.E_grid[i], spec.eps_grid[j]);
  });
  return m;
}

std::vector<double> RegionMap::boundary() const {
  const std::size_t ne = spec.eps_grid.size();
  std::vector<double> b(spec.E_grid.size(), std::nan(""));
  for (std::size_t i = 0; i < spec.E_grid.size(); ++i)
    for (std::size_t j = 1; j < ne; ++j) {
      const RegionCell& a = at(i, j - 1);
      const RegionCell& c = at(i, j);
      if (a.label == Region::kIII || c.label == Region::kIII || a.label == c.label) continue;
      double fa = a.D_eps - a.Sigma, fc = c.D_eps - c.Sigma;
      double u = fa / (fa - fc);
      double la = std::log(a.eps), lc = std::log(c.eps);
      b[i] = std::exp(la + u * (lc - la));
      break;
    }
  return b;
}

}  // namespace ftreset
