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

#include "ftreset/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "ftreset/errors.hpp"

namespace ftreset {

namespace {

const std::map<std::string, Experiment>& experiment_table() {
  static const std::map<std::string, Experiment> t = {
      {"single-run", Experiment::kSingleRun},
      {"fixed-energy-sweep", Experiment::kFixedEnergySweep},
      {"fixed-error-sweep", Experiment::kFixedErrorSweep},
      {"region-map", Experiment::kRegionMap},
      {"continuum-reset", Experiment::kContinuumReset},
      {"throughput", Experiment::kThroughput},
  };
  return t;
}

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ArgumentError("config: " + path + ": " + what);
}

double num(const json& v, const std::string& path) {
  if (!v.is_number()) bad(path, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) bad(path, "expected an integer");
  return v.get<int>();
}

std::vector<double> num_list(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(num(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <class F>
void each(const json& obj, const std::string& path, F&& f) {
  if (!obj.is_object()) bad(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!f(it.key(), it.value(), key)) bad(key, "unknown key");
  }
}

void positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError(what + " must be positive");
}

}  // namespace

Experiment parse_experiment(const std::string& s) {
  auto it = experiment_table().find(s);
  if (it == experiment_table().end()) throw ArgumentError("unknown experiment '" + s + "'");
  return it->second;
}

std::string experiment_name(Experiment e) {
  for (const auto& [k, v] : experiment_table())
    if (v == e) return k;
  return "?";
}

RunConfig default_config() {
  RunConfig c;
  c.tau_grid = logspace(0.1, 1000.0, 60);
  return c;
}

std::vector<double> parse_tau_grid(const std::string& s) {
  auto to_d = [&](const std::string& t) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      throw ArgumentError("tau grid: cannot parse '" + t + "'");
    }
    if (pos != t.size()) throw ArgumentError("tau grid: cannot parse '" + t + "'");
    return v;
  };
  std::vector<std::string> parts;
  char sep = s.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) parts.push_back(tok);
  if (sep == ':') {
    if (parts.size() != 3) throw ArgumentError("tau grid: expected lo:hi:n");
    double n = to_d(parts[2]);
    if (n < 1 || n != std::floor(n)) throw ArgumentError("tau grid: point count must be a positive integer");
    if (n == 1) return {to_d(parts[0])};
    return logspace(to_d(parts[0]), to_d(parts[1]), static_cast<std::size_t>(n));
  }
  std::vector<double> v;
  for (const auto& p : parts) v.push_back(to_d(p));
  if (v.empty()) throw ArgumentError("tau grid: empty");
  return v;
}

void apply_config_json(RunConfig& c, const json& j) {
  each(j, "", [&](const std::string& k, const json& v, const std::string& path) {
    if (k == "experiment") {
      if (!v.is_string()) bad(path, "expected a string");
      c.experiment = parse_experiment(v.get<std::string>());
    } else if (k == "protocol") {
      each(v, path, [&](const std::string& k2, const json& v2, const std::string& p2) {
        if (k2 == "N") c.protocol.N = integer(v2, p2);
        else if (k2 == "mu") c.protocol.mu = num(v2, p2);
        else if (k2 == "beta") c.protocol.beta = num(v2, p2);
        else if (k2 == "E_max") c.protocol.E_max = num(v2, p2);
        else if (k2 == "tau") c.protocol.tau = num(v2, p2);
        else if (k2 == "initial_p1") c.initial_p1 = num(v2, p2);
        else if (k2 == "samples_per_window") c.samples_per_window = integer(v2, p2);
        else return false;
        return true;
      });
    } else if (k == "sweep") {
      each(v, path, [&](const std::string& k2, const json& v2, const std::string& p2) {
        if (k2 == "eps") c.eps = num(v2, p2);
        else if (k2 == "tau_grid") {
          if (v2.is_string()) c.tau_grid = parse_tau_grid(v2.get<std::string>());
          else c.tau_grid = num_list(v2, p2);
        } else return false;
        return true;
      });
    } else if (k == "region") {
      each(v, path, [&](const std::string& k2, const json& v2, const std::string& p2) {
        auto& r = c.region;
        if (k2 == "tau") r.tau = num(v2, p2);
        else if (k2 == "E_min") r.E_min = num(v2, p2);
        else if (k2 == "E_max") r.E_max = num(v2, p2);
        else if (k2 == "E_points") r.E_points = integer(v2, p2);
        else if (k2 == "eps_min") r.eps_min = num(v2, p2);
        else if (k2 == "eps_max") r.eps_max = num(v2, p2);
        else if (k2 == "eps_points") r.eps_points = integer(v2, p2);
        else return false;
        return true;
      });
    } else if (k == "continuum") {
      each(v, path, [&](const std::string& k2, const json& v2, const std::string& p2) {
        auto& r = c.continuum;
        if (k2 == "tau") r.tau = num(v2, p2);
        else if (k2 == "M") r.M = integer(v2, p2);
        else if (k2 == "k") r.k = num(v2, p2);
        else if (k2 == "a0") r.a0 = num(v2, p2);
        else if (k2 == "a1") r.a1 = num(v2, p2);
        else if (k2 == "f1") r.f1 = num(v2, p2);
        else if (k2 == "D") r.D = num(v2, p2);
        else if (k2 == "beta") r.beta = num(v2, p2);
        else if (k2 == "dt") r.dt = num(v2, p2);
        else if (k2 == "cutoff") r.cutoff = num(v2, p2);
        else if (k2 == "snapshot_times") r.snapshot_times = num_list(v2, p2);
        else return false;
        return true;
      });
    } else if (k == "throughput") {
      each(v, path, [&](const std::string& k2, const json& v2, const std::string& p2) {
        auto& r = c.throughput;
        if (k2 == "n") r.n = num(v2, p2);
        else if (k2 == "tau_sw") r.tau_sw = num(v2, p2);
        else if (k2 == "T") r.T = num(v2, p2);
        else if (k2 == "mu") r.mu = num(v2, p2);
        else if (k2 == "eps") r.eps = num(v2, p2);
        else if (k2 == "E_max") r.E_max = num(v2, p2);
        else return false;
        return true;
      });
    } else if (k == "workers") {
      c.workers = integer(v, path);
    } else if (k == "seed") {
      if (!v.is_number_unsigned()) bad(path, "expected a non-negative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (k == "out") {
      if (!v.is_string()) bad(path, "expected a string");
      c.out = v.get<std::string>();
    } else {
      return false;
    }
    return true;
  });
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ArgumentError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ArgumentError(std::string("config: parse error: ") + e.what());
  }
  RunConfig c = default_config();
  apply_config_json(c, j);
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["experiment"] = experiment_name(c.experiment);
  j["protocol"] = {{"N", c.protocol.N},           {"mu", c.protocol.mu},
                   {"beta", c.protocol.beta},     {"E_max", c.protocol.E_max},
                   {"tau", c.protocol.tau},       {"initial_p1", c.initial_p1},
                   {"samples_per_window", c.samples_per_window}};
  j["sweep"] = {{"eps", c.eps}, {"tau_grid", c.tau_grid}};
  const auto& r = c.region;
  j["region"] = {{"tau", r.tau},         {"E_min", r.E_min},     {"E_max", r.E_max},
                 {"E_points", r.E_points}, {"eps_min", r.eps_min}, {"eps_max", r.eps_max},
                 {"eps_points", r.eps_points}};
  const auto& q = c.continuum;
  j["continuum"] = {{"tau", q.tau}, {"M", q.M},       {"k", q.k},       {"a0", q.a0},
                    {"a1", q.a1},   {"f1", q.f1},     {"D", q.D},       {"beta", q.beta},
                    {"dt", q.dt},   {"cutoff", q.cutoff}, {"snapshot_times", q.snapshot_times}};
  const auto& t = c.throughput;
  j["throughput"] = {{"n", t.n},   {"tau_sw", t.tau_sw}, {"T", t.T},
                     {"mu", t.mu}, {"eps", t.eps},       {"E_max", t.E_max}};
  j["workers"] = c.workers;
  j["seed"] = c.seed;
  j["out"] = c.out;
  return j;
}

void RunConfig::validate() const {
  if (workers < 0) throw ArgumentError("workers must be >= 0");
  switch (experiment) {
    case Experiment::kSingleRun:
      protocol.validate();
      if (!(initial_p1 >= 0.0 && initial_p1 <= 1.0)) throw ArgumentError("initial_p1 must be in [0, 1]");
      if (samples_per_window < 1) throw ArgumentError("samples_per_window must be >= 1");
      break;
    case Experiment::kFixedEnergySweep:
    case Experiment::kFixedErrorSweep: {
      SweepSpec s;
      s.mode = experiment == Experiment::kFixedEnergySweep ? SweepMode::kFixedEnergy : SweepMode::kFixedError;
      s.tau_grid = tau_grid;
      s.N = protocol.N;
      s.mu = protocol.mu;
      s.beta = protocol.beta;
      s.E_max = protocol.E_max;
      s.eps_target = eps;
      s.samples_per_window = samples_per_window;
      s.validate();
      if (samples_per_window < 1) throw ArgumentError("samples_per_window must be >= 1");
      break;
    }
    case Experiment::kRegionMap:
      positive(region.tau, "region.tau");
      positive(region.E_min, "region.E_min");
      if (!(region.E_max > region.E_min)) throw ArgumentError("region.E_max must exceed region.E_min");
      if (!(region.eps_min > 0.0 && region.eps_max <= 0.5 && region.eps_max > region.eps_min))
        throw ArgumentError("region eps range must satisfy 0 < eps_min < eps_max <= 1/2");
      if (region.E_points < 2 || region.eps_points < 2) throw ArgumentError("region grids need >= 2 points");
      ShiftingParams{protocol.N, protocol.mu, protocol.beta, 1.0, region.tau}.validate();
      break;
    case Experiment::kContinuumReset:
      positive(continuum.tau, "continuum.tau");
      if (continuum.M < 4 || continuum.M % 2) throw ArgumentError("continuum.M must be an even number >= 4");
      positive(continuum.k, "continuum.k");
      positive(continuum.D, "continuum.D");
      positive(continuum.beta, "continuum.beta");
      positive(continuum.cutoff, "continuum.cutoff");
      if (continuum.dt < 0.0) throw ArgumentError("continuum.dt must be >= 0");
      default_reset_protocol(continuum.tau, continuum.a0, continuum.a1, continuum.f1, continuum.D,
                             continuum.beta);
      break;
    case Experiment::kThroughput:
      positive(throughput.n, "throughput.n");
      positive(throughput.tau_sw, "throughput.tau_sw");
      positive(throughput.T, "throughput.T");
      positive(throughput.mu, "throughput.mu");
      positive(throughput.E_max, "throughput.E_max");
      if (!(throughput.eps >= 0.0 && throughput.eps <= 0.5)) throw ArgumentError("throughput.eps must be in [0, 1/2]");
      break;
  }
}

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

bool rows_ok(const std::vector<SweepRow>& rows) {
  for (const auto& r : rows)
    if (r.feasible && !r.run.report.all_satisfied()) return false;
  return true;
}

}  // namespace

ExecOutcome execute(const RunConfig& c) {
  c.validate();
  std::filesystem::create_directories(c.out);
  ExecOutcome o;
  std::ostringstream sum;
  bool ok = true;
  auto emit = [&](const std::string& name, const std::string& text) {
    std::string p = join(c.out, name);
    write_text(p, text);
    o.artifacts.push_back(p);
  };
  switch (c.experiment) {
    case Experiment::kSingleRun: {
      RunOptions opt;
      opt.samples_per_window = c.samples_per_window;
      opt.initial_p1 = c.initial_p1;
      RunResult r = run_constant_shifting(c.protocol, opt);
      emit("run.json", to_json(r).dump(2) + "\n");
      ok = r.report.all_satisfied();
      sum << "W_pn=" << fmt17(r.ledger.W_pn) << " eps=" << fmt17(r.summary.eps)
          << " Sigma=" << fmt17(r.ledger.Sigma);
      break;
    }
    case Experiment::kFixedEnergySweep:
    case Experiment::kFixedErrorSweep: {
      SweepSpec s;
      s.mode = c.experiment == Experiment::kFixedEnergySweep ? SweepMode::kFixedEnergy : SweepMode::kFixedError;
      s.tau_grid = c.tau_grid;
      s.N = c.protocol.N;
      s.mu = c.protocol.mu;
      s.beta = c.protocol.beta;
      s.E_max = c.protocol.E_max;
      s.eps_target = c.eps;
      s.samples_per_window = c.samples_per_window;
      auto rows = run_sweep(s, c.workers);
      emit("sweep.csv", sweep_csv(rows));
      emit("sweep_bounds.json", sweep_bounds_json(rows).dump(2) + "\n");
      ok = rows_ok(rows);
      std::size_t feasible = 0;
      for (const auto& r : rows) feasible += r.feasible;
      sum << rows.size() << " points, " << feasible << " feasible, slack trend "
          << (nonincreasing(main_bound_slacks(rows)) ? "non-increasing" : "not monotone");
      break;
    }
    case Experiment::kRegionMap: {
      RegionSpec s;
      s.tau_budget = c.region.tau;
      s.N = c.protocol.N;
      s.mu = c.protocol.mu;
      s.beta = c.protocol.beta;
      s.E_grid = logspace(c.region.E_min, c.region.E_max, c.region.E_points);
      bool half = c.region.eps_max >= 0.5;
      s.eps_grid = logspace(c.region.eps_min, c.region.eps_max, c.region.eps_points, !half);
      RegionMap m = region_map(s, c.workers);
      emit("region_map.csv", region_csv(m));
      emit("region_boundary.csv", region_boundary_csv(m));
      int n[4] = {0, 0, 0, 0};
      for (const auto& cell : m.cells) ++n[static_cast<int>(cell.label)];
      sum << "I=" << n[1] << " II=" << n[2] << " III=" << n[3];
      break;
    }
    case Experiment::kContinuumReset: {
      const auto& q = c.continuum;
      PotentialProtocol p = default_reset_protocol(q.tau, q.a0, q.a1, q.f1, q.D, q.beta);
      p.k = q.k;
      ContinuumOptions opt;
      opt.M = q.M;
      opt.dt = q.dt;
      opt.cutoff = q.cutoff;
      opt.snapshot_times = q.snapshot_times;
      ContinuumResult r = run_continuum_reset(p, q.tau, opt);
      emit("continuum.json", to_json(r).dump(2) + "\n");
      if (!r.snapshots.empty()) emit("snapshots.csv", snapshots_csv(r.snapshots));
      ok = r.report.all_satisfied();
      sum << "W_pn=" << fmt17(r.ledger.W_pn) << " eps=" << fmt17(r.report.eps)
          << " residual=" << fmt17(r.residual);
      break;
    }
    case Experiment::kThroughput: {
      const auto& t = c.throughput;
      Throughput th = throughput_bound(t.n, t.tau_sw, t.T, t.mu, t.eps, t.E_max);
      Identity id = throughput_identity(t.eps, t.E_max, 1.0 / t.T);
      json j;
      j["power_bound"] = th.power;
      j["power_composed"] = th.composed;
      j["E_bit"] = th.E_bit;
      j["bandwidth"] = th.bandwidth;
      j["identity_lhs"] = id.lhs;
      j["identity_rhs"] = id.rhs;
      emit("throughput.json", j.dump(2) + "\n");
      sum << "P >= " << fmt17(th.power);
      break;
    }
  }
  o.exit_code = ok ? 0 : 2;
  o.summary = experiment_name(c.experiment) + ": " + sum.str() + (ok ? "" : " [bound violation]");
  return o;
}

}  // namespace ftreset
