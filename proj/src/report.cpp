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

#include "ftreset/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ftreset/errors.hpp"

namespace ftreset {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const BoundRecord& r) {
  json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["satisfied"] = r.satisfied;
  j["applicable"] = r.applicable;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const BoundsReport& r) {
  json j;
  j["tau"] = r.tau;
  j["N"] = r.N;
  j["mu_avg"] = r.mu_avg;
  j["beta"] = r.beta;
  j["E_max"] = r.E_max;
  j["eps"] = r.eps;
  j["all_satisfied"] = r.all_satisfied();
  j["records"] = json::array();
  for (const auto& rec : r.records) j["records"].push_back(to_json(rec));
  json d = json::object();
  for (const auto& [k, v] : r.diagnostics) d[k] = v;
  j["diagnostics"] = d;
  return j;
}

json to_json(const ThermoLedger& L) {
  json j;
  j["T"] = L.T;
  j["W"] = L.W;
  j["Q"] = L.Q;
  j["dU"] = L.dU;
  j["dS"] = L.dS;
  j["Sigma"] = L.Sigma;
  j["Sigma_rate"] = L.Sigma_rate;
  j["D_initial"] = L.D_initial;
  j["D_final"] = L.D_final;
  j["W_qs"] = L.W_qs;
  j["W_pn"] = L.W_pn;
  return j;
}

json to_json(const RunResult& r) {
  json j;
  j["params"] = {{"N", r.params.N},
                 {"mu", r.params.mu},
                 {"beta", r.params.beta},
                 {"E_max", r.params.E_max},
                 {"tau", r.params.tau}};
  j["ledger"] = to_json(r.ledger);
  j["coarse"] = {{"eps", r.summary.eps},
                 {"D_eps", r.D_eps},
                 {"Sigma_bit", r.trace.Sigma_bit},
                 {"Sigma_trapezoid", r.Sigma_trapezoid},
                 {"mu_avg", r.report.mu_avg}};
  j["bounds"] = to_json(r.report);
  return j;
}

json to_json(const ContinuumResult& r) {
  json j;
  j["grid"] = {{"x_min", r.grid.x_min}, {"x_max", r.grid.x_max}, {"M", r.grid.M}};
  j["dt"] = r.dt;
  j["steps"] = r.steps;
  j["ledger"] = to_json(r.ledger);
  j["coarse"] = {{"eps", r.report.eps},
                 {"D_eps", r.D_eps},
                 {"Sigma_bit", r.trace.Sigma_bit},
                 {"Sigma_trapezoid", r.Sigma_trapezoid},
                 {"mu_avg", r.report.mu_avg}};
  j["bounds"] = to_json(r.report);
  return j;
}

json sweep_bounds_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json j;
    j["tau"] = row.tau;
    j["feasible"] = row.feasible;
    if (row.feasible) j["report"] = to_json(row.run.report);
    else j["note"] = row.note;
    arr.push_back(j);
  }
  return arr;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::vector<std::string> names;
  for (const auto& row : rows)
    if (row.feasible) {
      for (const auto& rec : row.run.report.records) names.push_back(rec.name);
      break;
    }
  std::string out = "tau,feasible,E_max,eps,W,W_qs,W_pn,Sigma,Sigma_bit,D_eps,mu_avg";
  for (const auto& n : names) out += "," + n + "_lhs," + n + "_rhs";
  out += "\n";
  for (const auto& row : rows) {
    out += fmt17(row.tau) + (row.feasible ? ",1" : ",0");
    if (!row.feasible) {
      for (std::size_t k = 0; k < 9 + 2 * names.size(); ++k) out += ",nan";
      out += "\n";
      continue;
    }
    const RunResult& r = row.run;
    for (double v : {r.params.E_max, r.summary.eps, r.ledger.W, r.ledger.W_qs, r.ledger.W_pn,
                     r.ledger.Sigma, r.trace.Sigma_bit, r.D_eps, r.report.mu_avg})
      out += "," + fmt17(v);
    for (const auto& n : names) {
      const BoundRecord* rec = r.report.find(n);
      bool ok = rec && rec->applicable;
      out += "," + fmt17(ok ? rec->lhs : std::nan("")) + "," + fmt17(ok ? rec->rhs : std::nan(""));
    }
    out += "\n";
  }
  return out;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::kI: return "I";
    case Region::kII: return "II";
    default: return "III";
  }
}

std::string region_csv(const RegionMap& m) {
  std::string out = "E_max,eps,label,D_eps,Sigma,tau_used\n";
  for (const auto& c : m.cells) {
    bool live = c.label != Region::kIII;
    out += fmt17(c.E_max) + "," + fmt17(c.eps) + "," + region_name(c.label) + "," +
           fmt17(live ? c.D_eps : std::nan("")) + "," + fmt17(live ? c.Sigma : std::nan("")) +
           "," + fmt17(live ? c.tau_used : std::nan("")) + "\n";
  }
  return out;
}

std::string region_boundary_csv(const RegionMap& m) {
  std::string out = "E_max,eps_boundary,eps_thermal\n";
  auto b = m.boundary();
  for (std::size_t i = 0; i < b.size(); ++i)
    out += fmt17(m.spec.E_grid[i]) + "," + fmt17(b[i]) + "," +
           fmt17(thermal_p1(m.spec.E_grid[i], m.spec.beta)) + "\n";
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open output file " + path);
  f << text;
  if (!f) throw ArgumentError("failed writing " + path);
}

}  // namespace ftreset
