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

#include "ftreset/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "ftreset/continuum.hpp"
#include "ftreset/errors.hpp"
#include "ftreset/experiments.hpp"
#include "ftreset/random_systems.hpp"

namespace ftreset {

namespace {

struct Panels {
  std::vector<SweepRow> energy;
  std::vector<SweepRow> error;
};

const Panels& sweep_panels(int workers) {
  static const Panels p = [&] {
    SweepSpec s;
    s.tau_grid = logspace(0.1, 1000.0, 60);
    Panels out;
    s.mode = SweepMode::kFixedEnergy;
    out.energy = run_sweep(s, workers);
    s.mode = SweepMode::kFixedError;
    s.eps_target = 0.25;
    out.error = run_sweep(s, workers);
    return out;
  }();
  return p;
}

std::string g(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// Counts rows where a named record fails; infeasible rows are skipped.
int count_failures(const std::vector<SweepRow>& rows, const std::vector<std::string>& names,
                   int* checked) {
  int bad = 0;
  for (const auto& r : rows) {
    if (!r.feasible) continue;
    for (const auto& n : names) {
      const BoundRecord* rec = r.run.report.find(n);
      if (!rec) {
        ++bad;
        continue;
      }
      if (checked) ++*checked;
      if (!rec->satisfied) ++bad;
    }
  }
  return bad;
}

std::size_t feasible_count(const std::vector<SweepRow>& rows) {
  return std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.feasible; });
}

CheckResult c1(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    RandomSystem s = make_random_system(rng, 8, k % 2 == 0);
    IntegratorOptions io;
    io.dt_max = 1e-3 * s.schedule.tau;
    io.store_rates = false;
    Trajectory tr = integrate_master_equation(s.schedule, *s.model, s.p0, io);
    worst = std::max(worst, penalty_equality_residual(tr, s.schedule.T()));
  }
  return {"", "", worst < 1e-6, "50 random protocols, max residual " + g(worst) + " (tol 1e-6)"};
}

CheckResult c2_bound(const VerifyOptions& o) {
  const Panels& p = sweep_panels(o.workers);
  int checked = 0;
  int bad = count_failures(p.energy, {"main_penalty_bound"}, &checked) +
            count_failures(p.error, {"main_penalty_bound"}, &checked);
  std::ostringstream os;
  os << checked << " sweep points (" << p.energy.size() << " fixed-energy, "
     << feasible_count(p.error) << "/" << p.error.size() << " feasible fixed-error), " << bad
     << " violations";
  return {"", "", bad == 0 && checked > 0, os.str()};
}

CheckResult trend(const std::vector<SweepRow>& rows) {
  auto s = main_bound_slacks(rows);
  std::size_t first_rise = 0;
  double rise = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] > s[i - 1] + 1e-9 && !first_rise) {
      first_rise = i;
      rise = s[i] - s[i - 1];
    }
  double peak = s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
  std::ostringstream os;
  os << s.size() << " points, slack " << g(s.empty() ? 0 : s.front()) << " -> "
     << g(s.empty() ? 0 : s.back()) << ", peak " << g(peak);
  if (first_rise) os << ", first increase of " << g(rise) << " at point " << first_rise;
  return {"", "", nonincreasing(s), os.str()};
}

CheckResult c2_trend_energy(const VerifyOptions& o) { return trend(sweep_panels(o.workers).energy); }
CheckResult c2_trend_error(const VerifyOptions& o) { return trend(sweep_panels(o.workers).error); }

CheckResult c3(const VerifyOptions& o) {
  const Panels& p = sweep_panels(o.workers);
  int checked = 0;
  int bad = count_failures(p.energy, {"relent_exponential_upper"}, &checked) +
            count_failures(p.error, {"relent_exponential_upper"}, &checked);
  std::mt19937_64 rng(o.seed + 3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int window_bad = 0;
  for (int k = 0; k < 1000; ++k) {
    double g1 = std::exp(std::log(1e-6) * U(rng)) * 0.5;
    double p1 = g1 + (0.5 - g1) * U(rng);
    double mu = 0.01 + 2.0 * U(rng);
    double t = 20.0 * U(rng);
    double D0 = raw::kl2(p1, g1);
    double f = std::exp(-mu * t);
    double Dt = raw::kl2(f * p1 + (1 - f) * g1, g1);
    if (!within_slack(f * D0, Dt) || !within_slack(Dt, f * f * D0)) ++window_bad;
  }
  // upper half on unrestricted multi-level windows
  for (int k = 0; k < 1000; ++k) {
    std::size_t n = 2 + rng() % 7;
    Vec gam = random_simplex_point(rng, n), p0 = random_simplex_point(rng, n);
    double mu = 0.01 + 2.0 * U(rng), t = 20.0 * U(rng), f = std::exp(-mu * t);
    Vec pt(n);
    for (std::size_t i = 0; i < n; ++i) pt[i] = f * p0[i] + (1 - f) * gam[i];
    if (!within_slack(f * raw::kl(p0, gam), raw::kl(pt, gam))) ++window_bad;
  }
  std::ostringstream os;
  os << checked << " sweep points with " << bad << " violations; 1000 reset-regime windows (both sides) and 1000 multi-level windows (upper side) with "
     << window_bad << " violations";
  return {"", "", bad == 0 && window_bad == 0, os.str()};
}

CheckResult c4(const VerifyOptions& o) {
  const Panels& p = sweep_panels(o.workers);
  int checked = 0;
  std::vector<std::string> n{"penalty_envelope_lower", "penalty_envelope_upper"};
  int bad = count_failures(p.energy, n, &checked) + count_failures(p.error, n, &checked);
  return {"", "", bad == 0, std::to_string(checked) + " envelope checks, " + std::to_string(bad) + " violations"};
}

CheckResult c5(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed + 5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int dp_bad = 0;
  for (int k = 0; k < 10000; ++k) {
    std::size_t n = 2 + rng() % 7;
    Vec p = random_simplex_point(rng, n), gam = random_simplex_point(rng, n);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::size_t n0 = 1 + rng() % (n - 1);
    BitPartition part({idx.begin(), idx.begin() + n0}, {idx.begin() + n0, idx.end()});
    if (!within_slack(raw::kl(p, gam), raw::kl2(coarse_state(p, part).p1, coarse_state(gam, part).p1)))
      ++dp_bad;
  }
  int hier_bad = 0;
  for (int k = 0; k < 100; ++k) {
    RandomSystem s = make_random_system(rng, 8, k % 2 == 0);
    IntegratorOptions io;
    io.dt_max = 1e-2 * s.schedule.tau;
    Trajectory tr = integrate_master_equation(s.schedule, *s.model, s.p0, io);
    CoarseTrace c = build_coarse_trace(tr, s.partition);
    double fine = entropy_production_trapezoid(tr);
    if (!within_slack(fine, c.Sigma_bit) || !within_slack(c.Sigma_bit, 0.0)) ++hier_bad;
  }
  // constructed local equilibrium: block-1 energies lifted together
  double le_worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    std::size_t n = 3 + rng() % 6;
    std::size_t n0 = 1 + rng() % (n - 1);
    BitPartition part = BitPartition::split(n, n0);
    Vec e0(n);
    for (auto& e : e0) e = -1.0 + 2.0 * U(rng);
    ThermalState g0 = thermal_state(e0, 1.0);
    double c0 = 0.5 + U(rng), w0 = 0.0;
    for (std::size_t i = 0; i < n0; ++i) w0 += g0.gamma[i];
    double c1 = (1.0 - c0 * w0) / (1.0 - w0);
    if (c1 <= 0.0) c1 = 0.1, c0 = (1.0 - c1 * (1.0 - w0)) / w0;
    Vec p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = (i < n0 ? c0 : c1) * g0.gamma[i];
    Distribution pd(p);
    le_worst = std::max(le_worst, std::abs(raw::kl(pd.weights(), g0.gamma) -
                                           raw::kl2(coarse_state(pd, part).p1, coarse_state(g0.gamma, part).p1)));
    std::vector<Segment> segs;
    Vec cur = e0;
    for (int s = 0; s < 3; ++s) {
      Segment seg;
      seg.t0 = s;
      seg.t1 = s + 1.0;
      seg.start = cur;
      for (std::size_t i = n0; i < n; ++i) seg.start[i] += 0.7;
      seg.end = seg.start;
      cur = seg.end;
      segs.push_back(seg);
    }
    ProtocolSchedule sch = custom_schedule(EnergyLandscape(e0, segs), 1.0);
    PartialSwapModel model(0.3 + U(rng));
    IntegratorOptions io;
    io.dt_max = 0.05;
    Trajectory tr = integrate_master_equation(sch, model, pd, io);
    for (std::size_t s = 0; s < tr.size(); ++s) {
      double fine = entropy_production_rate(tr.rates[s], tr.states[s]);
      CoarseRates cr = coarse_rates(tr.rates[s], tr.states[s], part);
      double bit = coarse_entropy_production_rate(cr, coarse_state(tr.states[s], part));
      le_worst = std::max(le_worst, std::abs(fine - bit));
      ThermalState gs = thermal_state(tr.energies[s], 1.0);
      le_worst = std::max(le_worst, std::abs(raw::kl(tr.states[s], gs.gamma) -
                                             raw::kl2(coarse_state(tr.states[s], part).p1,
                                                      coarse_state(gs.gamma, part).p1)));
    }
  }
  std::ostringstream os;
  os << "data processing: " << dp_bad << "/10000 violations; hierarchy: " << hier_bad
     << "/100 runs violate; local-equilibrium max deviation " << g(le_worst) << " (tol 1e-10)";
  return {"", "", dp_bad == 0 && hier_bad == 0 && le_worst <= 1e-10, os.str()};
}

CheckResult c6(const VerifyOptions& o) {
  const Panels& p = sweep_panels(o.workers);
  int checked = 0;
  int bad = count_failures(p.energy, {"speed_limit"}, &checked) + count_failures(p.error, {"speed_limit"}, &checked);
  std::mt19937_64 rng(o.seed + 6);
  for (int k = 0; k < 20; ++k) {
    RandomSystem s = make_random_system(rng, 8, true);
    IntegratorOptions io;
    io.dt_max = 1e-2 * s.schedule.tau;
    Trajectory tr = integrate_master_equation(s.schedule, *s.model, s.p0, io);
    ++checked;
    if (!speed_limit_check(build_coarse_trace(tr, s.partition), s.schedule.tau).satisfied) ++bad;
  }
  ContinuumResult cr = run_continuum_reset(default_reset_protocol(4.0), 4.0);
  ++checked;
  if (!cr.report.find("speed_limit")->satisfied) ++bad;

  std::vector<double> lhs, rhs;
  bool ladder_ok = true;
  RunOptions opt;
  opt.samples_per_window = 16;
  for (int k = 1; k <= 5; ++k) {
    double tau = std::pow(10.0, k);
    int N = static_cast<int>(std::ceil(10.0 * std::sqrt(0.1 * tau)));
    RunResult r = run_constant_shifting({N, 0.1, 1.0, 10.0, tau}, opt);
    const BoundRecord* sl = r.report.find("speed_limit");
    lhs.push_back(sl->lhs);
    rhs.push_back(sl->rhs);
    ladder_ok = ladder_ok && sl->satisfied;
  }
  for (std::size_t i = 1; i < lhs.size(); ++i)
    ladder_ok = ladder_ok && lhs[i] < lhs[i - 1] && rhs[i] < rhs[i - 1];
  ladder_ok = ladder_ok && lhs.back() < 0.05 * lhs.front() && rhs.back() < 0.05 * rhs.front();
  std::ostringstream os;
  os << checked << " runs (sweeps, random, continuum) with " << bad
     << " violations; ladder Sigma_bit " << g(lhs.front()) << " -> " << g(lhs.back())
     << ", L^2/(mu tau) " << g(rhs.front()) << " -> " << g(rhs.back());
  return {"", "", bad == 0 && ladder_ok, os.str()};
}

CheckResult c7(const VerifyOptions& o) {
  RegionSpec spec = default_region_spec();
  RegionMap m = region_map(spec, o.workers);
  const std::size_t nE = spec.E_grid.size(), ne = spec.eps_grid.size();
  auto below = [&](std::size_t i, std::size_t j) {
    return spec.eps_grid[j] < thermal_p1(spec.E_grid[i], spec.beta);
  };
  int mismatches = 0, far = 0;
  for (std::size_t i = 0; i < nE; ++i)
    for (std::size_t j = 0; j < ne; ++j) {
      bool iii = m.at(i, j).label == Region::kIII;
      if (iii == below(i, j)) continue;
      ++mismatches;
      bool near = false;
      for (auto [di, dj] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
        long a = static_cast<long>(i) + di, b = static_cast<long>(j) + dj;
        if (a < 0 || b < 0 || a >= static_cast<long>(nE) || b >= static_cast<long>(ne)) continue;
        if (below(a, b) != below(i, j)) near = true;
      }
      if (!near) ++far;
    }
  // per column: II below the switch, I above; switch index monotone across columns
  bool single = true;
  std::vector<long> sw;
  for (std::size_t i = 0; i < nE; ++i) {
    long first_I = static_cast<long>(ne);
    bool seen_I = false;
    for (std::size_t j = 0; j < ne; ++j) {
      Region r = m.at(i, j).label;
      if (r == Region::kIII) {
        if (seen_I) single = false;
        continue;
      }
      if (r == Region::kI && !seen_I) {
        seen_I = true;
        first_I = static_cast<long>(j);
      }
      if (r == Region::kII && seen_I) single = false;
    }
    sw.push_back(first_I);
  }
  bool up = true, down = true;
  for (std::size_t i = 1; i < sw.size(); ++i) {
    up = up && sw[i] >= sw[i - 1];
    down = down && sw[i] <= sw[i - 1];
  }
  int n[4] = {0, 0, 0, 0};
  for (const auto& c : m.cells) ++n[static_cast<int>(c.label)];
  std::ostringstream os;
  os << "I=" << n[1] << " II=" << n[2] << " III=" << n[3] << "; III/curve mismatches " << mismatches
     << " (" << far << " beyond one cell); I/II contour " << (single && (up || down) ? "single and monotone" : "broken");
  return {"", "", far == 0 && single && (up || down) && n[1] > 0 && n[2] > 0, os.str()};
}

CheckResult c8(const VerifyOptions&) {
  std::ostringstream os;
  bool ok = true;
  PotentialProtocol base = default_reset_protocol(8.0);
  double drift = gibbs_fixed_point_drift(base, 0.0, 2.0);
  ok = ok && drift < 1e-8;
  os << "Gibbs drift " << g(drift);
  for (double tau : {2.0, 8.0, 32.0}) {
    ContinuumResult r = run_continuum_reset(default_reset_protocol(tau), tau);
    bool run_ok = r.report.all_satisfied() && r.mass_drift_total < 1e-9 && r.mass_drift_step <= 1e-12 &&
                  r.residual < 1e-4;
    ok = ok && run_ok;
    os << "; tau=" << tau << ": eps " << g(r.report.eps) << ", mass drift " << g(r.mass_drift_total)
       << ", residual " << g(r.residual) << ", bounds " << (r.report.all_satisfied() ? "ok" : "VIOLATED");
  }
  return {"", "", ok, os.str()};
}

struct ConvexityStats {
  int sampled = 0;
  int violations = 0;
  double worst = 0.0;
};

ConvexityStats convexity_sampling(std::uint64_t seed, bool mixture) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  ConvexityStats s;
  while (s.sampled < 100000) {
    double p1 = 0.5 * U(rng), q1 = p1 * U(rng), x1 = U(rng), y1 = U(rng), a = U(rng);
    Bit p(p1), q(q1), x(x1), y(y1);
    if (!convexity_preconditions(p, q, x, y, a)) continue;
    if (mixture && !convexity_mixture_condition(q, x, y, a)) continue;
    ++s.sampled;
    Convexity c = relent_convexity_bound(p, q, x, y, a);
    if (!within_slack(c.lhs, c.rhs)) {
      ++s.violations;
      s.worst = std::max(s.worst, c.rhs - c.lhs);
    }
  }
  return s;
}

CheckResult c9(const VerifyOptions& o, bool mixture) {
  ConvexityStats s = convexity_sampling(o.seed + 9, mixture);
  std::ostringstream os;
  os << s.sampled << " tuples, " << s.violations << " violations";
  if (s.violations) os << ", worst excess " << g(s.worst) << "; counterexample p=q=[0.7,0.3], x=y=[0.99,0.01], alpha=0.5";
  return {"", "", s.violations == 0, os.str()};
}

CheckResult c10(const VerifyOptions& o) {
  const Panels& p = sweep_panels(o.workers);
  double worst = 0.0;
  int n = 0;
  for (const auto* rows : {&p.energy, &p.error})
    for (const auto& r : *rows) {
      if (!r.feasible) continue;
      Identity id = throughput_identity(r.run.summary.eps, r.run.params.E_max, r.run.params.beta);
      double direct = (r.run.ledger.W_qs / r.run.ledger.T) + r.run.D_eps;
      worst = std::max({worst, std::abs(id.lhs - id.rhs), std::abs(direct - id.rhs)});
      ++n;
    }
  double tp_worst = 0.0;
  for (double eps : {0.0, 0.01, 0.1, 0.25, 0.4, 0.5})
    for (double E : {1.0, 5.0, 10.0, 20.0}) {
      Throughput t = throughput_bound(1.0, 1.0, 1.0, 0.1, eps, E);
      tp_worst = std::max(tp_worst, std::abs(t.power - t.composed));
      Throughput t2 = throughput_bound(3.0, 0.5, 2.0, 0.7, eps, E);
      tp_worst = std::max(tp_worst, std::abs(t2.power - t2.composed));
    }
  std::ostringstream os;
  os << n << " sweep points, identity max error " << g(worst) << " (tol 1e-10); composed vs direct throughput max error "
     << g(tp_worst) << " (tol 1e-12)";
  return {"", "", worst < 1e-10 && tp_worst < 1e-12, os.str()};
}

struct Entry {
  const char* title;
  std::function<CheckResult(const VerifyOptions&)> fn;
};

const std::vector<std::pair<std::string, Entry>>& table() {
  static const std::vector<std::pair<std::string, Entry>> t = {
      {"C1", {"penalty equality on random protocols", c1}},
      {"C2a", {"main bound at every sweep point", c2_bound}},
      {"C2b", {"main bound slack non-increasing (fixed energy)", c2_trend_energy}},
      {"C2c", {"main bound slack non-increasing (fixed error)", c2_trend_error}},
      {"C3", {"exponential relative-entropy bound and window sandwich", c3}},
      {"C4", {"work penalty envelope", c4}},
      {"C5", {"coarse-graining inequalities and saturation", c5}},
      {"C6", {"speed limit and quasistatic ladder", c6}},
      {"C7", {"region map structure", c7}},
      {"C8", {"continuum backend", c8}},
      {"C9a", {"convexity bound with its stated preconditions", [](const VerifyOptions& o) { return c9(o, false); }}},
      {"C9b", {"convexity bound with the mixture condition", [](const VerifyOptions& o) { return c9(o, true); }}},
      {"C10", {"throughput identity and composed bound", c10}},
  };
  return t;
}

}  // namespace

std::vector<std::string> acceptance_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, e] : table()) ids.push_back(id);
  return ids;
}

CheckResult run_acceptance(const std::string& id, const VerifyOptions& opt) {
  for (const auto& [key, e] : table()) {
    if (key != id) continue;
    CheckResult r;
    try {
      r = e.fn(opt);
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("error: ") + ex.what();
    }
    r.id = key;
    r.title = e.title;
    return r;
  }
  throw ArgumentError("unknown acceptance check '" + id + "'");
}

}  // namespace ftreset
