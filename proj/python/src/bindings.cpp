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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ftreset/config.hpp"
#include "ftreset/errors.hpp"
#include "ftreset/report.hpp"
#include "ftreset/verify.hpp"

namespace py = pybind11;
using namespace ftreset;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_py(x));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_py(it.value());
      return out;
    }
    default:
      throw std::runtime_error("unsupported json value");
  }
}

ShiftingParams params(int N, double mu, double beta, double E_max, double tau) {
  ShiftingParams p;
  p.N = N;
  p.mu = mu;
  p.beta = beta;
  p.E_max = E_max;
  p.tau = tau;
  return p;
}

}  // namespace

PYBIND11_MODULE(_ftreset, m) {
  m.doc() = "Finite-time bit reset: thermodynamic accounting and bounds";

  static py::exception<ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
  static py::exception<DegenerateError> degenerate_error(m, "DegenerateError", PyExc_ValueError);
  static py::exception<UnsupportedError> unsupported_error(m, "UnsupportedError",
                                                           PyExc_NotImplementedError);
  static py::exception<HypothesisError> hypothesis_error(m, "HypothesisError", PyExc_ValueError);
  static py::exception<InfeasibleError> infeasible_error(m, "InfeasibleError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InfeasibleError& e) {
      py::object err = infeasible_error;
      py::object inst = err(e.what());
      inst.attr("min_achievable_eps") = e.min_achievable_eps();
      PyErr_SetObject(err.ptr(), inst.ptr());
    } catch (const ValidationError& e) {
      py::set_error(validation_error, e.what());
    } catch (const DegenerateError& e) {
      py::set_error(degenerate_error, e.what());
    } catch (const UnsupportedError& e) {
      py::set_error(unsupported_error, e.what());
    } catch (const HypothesisError& e) {
      py::set_error(hypothesis_error, e.what());
    }
  });
  // ArgumentError derives from std::invalid_argument, which maps to ValueError.

  m.def("set_warning_handler", [](std::function<void(const std::string&)> f) {
    set_warning_handler(std::move(f));
  });

  m.def("shannon_entropy", [](const Vec& p) { return shannon_entropy(Distribution(p)); });
  m.def("relative_entropy", [](const Vec& p, const Vec& q) {
    return relative_entropy(Distribution(p), Distribution(q));
  });
  m.def("symmetric_relative_entropy", [](double r1, double s1) {
    return symmetric_relative_entropy(Bit(r1), Bit(s1));
  }, py::arg("r1"), py::arg("s1"));
  m.def("norm1_distance", [](const Vec& p, const Vec& q) {
    return norm1_distance(Distribution(p), Distribution(q));
  });
  m.def("binary_entropy", &binary_entropy, py::arg("eps"));

  m.def("thermal_state", [](const Vec& e, double beta) {
    ThermalState g = thermal_state(e, beta);
    return py::make_tuple(g.gamma, g.logZ);
  }, py::arg("energies"), py::arg("beta") = 1.0);
  m.def("quasistatic_work",
        py::overload_cast<const Vec&, const Vec&, double>(&quasistatic_work),
        py::arg("start"), py::arg("end"), py::arg("beta") = 1.0);

  m.def("partial_swap_generator", [](const Vec& e, double beta, double mu) {
    return partial_swap_generator(thermal_state(e, beta), mu);
  }, py::arg("energies"), py::arg("beta"), py::arg("mu"));
  m.def("evolve_partial_swap", [](const Vec& p0, const Vec& e, double beta, double mu, double t) {
    return evolve_partial_swap_constant(Distribution(p0), thermal_state(e, beta), mu, t).weights();
  }, py::arg("p0"), py::arg("energies"), py::arg("beta"), py::arg("mu"), py::arg("t"));
  m.def("stationary_state", [](const Eigen::MatrixXd& G) {
    return stationary_state(G).weights();
  });
  m.def("entropy_production_rate", &entropy_production_rate);

  m.def("run_constant_shifting",
        [](int N, double mu, double beta, double E_max, double tau, int samples_per_window,
           double initial_p1) {
          RunOptions o;
          o.samples_per_window = samples_per_window;
          o.initial_p1 = initial_p1;
          return to_py(to_json(run_constant_shifting(params(N, mu, beta, E_max, tau), o)));
        },
        py::arg("N") = 100, py::arg("mu") = 0.1, py::arg("beta") = 1.0, py::arg("E_max") = 10.0,
        py::arg("tau") = 10.0, py::arg("samples_per_window") = 4, py::arg("initial_p1") = 0.5);

  m.def("shifting_recursion",
        [](int N, double mu, double beta, double E_max, double tau) {
          ShiftingOutcome o = shifting_recursion(params(N, mu, beta, E_max, tau));
          py::dict d;
          d["eps"] = o.eps;
          d["W"] = o.W;
          d["W_qs"] = o.W_qs;
          d["W_pn"] = o.W_pn;
          d["Sigma"] = o.Sigma;
          d["D_eps"] = o.D_eps;
          return d;
        },
        py::arg("N") = 100, py::arg("mu") = 0.1, py::arg("beta") = 1.0, py::arg("E_max") = 10.0,
        py::arg("tau") = 10.0);

  m.def("solve_fixed_error_energy", &solve_fixed_error_energy, py::arg("eps"), py::arg("tau"),
        py::arg("N") = 100, py::arg("mu") = 0.1, py::arg("beta") = 1.0);

  m.def("run_sweep",
        [](const std::string& mode, const std::vector<double>& tau_grid, int N, double mu,
           double beta, double E_max, double eps, int workers) {
          SweepSpec s;
          if (mode == "fixed-energy") s.mode = SweepMode::kFixedEnergy;
          else if (mode == "fixed-error") s.mode = SweepMode::kFixedError;
          else throw ArgumentError("mode must be 'fixed-energy' or 'fixed-error'");
          s.tau_grid = tau_grid;
          s.N = N;
          s.mu = mu;
          s.beta = beta;
          s.E_max = E_max;
          s.eps_target = eps;
          py::list out;
          std::vector<SweepRow> rows;
          {
            py::gil_scoped_release release;
            rows = run_sweep(s, workers);
          }
          for (const auto& r : rows) {
            py::dict d;
            d["tau"] = r.tau;
            d["feasible"] = r.feasible;
            if (r.feasible) d["run"] = to_py(to_json(r.run));
            else d["note"] = r.note;
            out.append(d);
          }
          return out;
        },
        py::arg("mode"), py::arg("tau_grid"), py::arg("N") = 100, py::arg("mu") = 0.1,
        py::arg("beta") = 1.0, py::arg("E_max") = 10.0, py::arg("eps") = 0.25,
        py::arg("workers") = 0);

  m.def("region_map",
        [](const std::vector<double>& E_grid, const std::vector<double>& eps_grid,
           double tau_budget, int N, double mu, double beta, int workers) {
          RegionSpec s;
          s.E_grid = E_grid;
          s.eps_grid = eps_grid;
          s.tau_budget = tau_budget;
          s.N = N;
          s.mu = mu;
          s.beta = beta;
          RegionMap mp;
          {
            py::gil_scoped_release release;
            mp = region_map(s, workers);
          }
          py::list cells;
          for (const auto& c : mp.cells) {
            py::dict d;
            d["E_max"] = c.E_max;
            d["eps"] = c.eps;
            d["label"] = region_name(c.label);
            d["D_eps"] = c.D_eps;
            d["Sigma"] = c.Sigma;
            d["tau_used"] = c.tau_used;
            cells.append(d);
          }
          py::dict out;
          out["cells"] = cells;
          out["boundary"] = mp.boundary();
          return out;
        },
        py::arg("E_grid"), py::arg("eps_grid"), py::arg("tau_budget") = 1e5, py::arg("N") = 100,
        py::arg("mu") = 0.1, py::arg("beta") = 1.0, py::arg("workers") = 0);

  m.def("run_continuum_reset",
        [](double tau, int M, double a0, double a1, double f1, double D, double beta) {
          ContinuumOptions o;
          o.M = M;
          ContinuumResult r;
          {
            py::gil_scoped_release release;
            r = run_continuum_reset(default_reset_protocol(tau, a0, a1, f1, D, beta), tau, o);
          }
          return to_py(to_json(r));
        },
        py::arg("tau") = 8.0, py::arg("M") = 512, py::arg("a0") = 4.0, py::arg("a1") = 0.0,
        py::arg("f1") = 2.0, py::arg("D") = 1.0, py::arg("beta") = 1.0);

  m.def("throughput_bound",
        [](double n, double tau_sw, double T, double mu, double eps, double E_max) {
          Throughput t = throughput_bound(n, tau_sw, T, mu, eps, E_max);
          py::dict d;
          d["power"] = t.power;
          d["composed"] = t.composed;
          d["E_bit"] = t.E_bit;
          d["bandwidth"] = t.bandwidth;
          return d;
        },
        py::arg("n") = 1.0, py::arg("tau_sw") = 1.0, py::arg("T") = 1.0, py::arg("mu") = 0.1,
        py::arg("eps") = 0.25, py::arg("E_max") = 10.0);

  m.def("penalty_envelope",
        [](int N, double mu, double beta, double E_max, double tau) {
          ShiftingOutcome o = shifting_recursion(params(N, mu, beta, E_max, tau));
          Envelope e = penalty_envelope({N, mu, beta, tau, E_max, o.eps, o.W_pn});
          return py::make_tuple(e.lower, e.upper);
        },
        py::arg("N") = 100, py::arg("mu") = 0.1, py::arg("beta") = 1.0, py::arg("E_max") = 10.0,
        py::arg("tau") = 10.0);

  m.def("main_bound_rhs", [](double D_eps, double eps, double mu_avg, double tau) {
    MainBoundParts parts;
    main_penalty_bound_check(0.0, 0.5, 0.0, D_eps, eps, mu_avg, tau, 1e-9, &parts);
    return parts.D_eps + parts.speed_term;
  }, py::arg("D_eps"), py::arg("eps"), py::arg("mu_avg"), py::arg("tau"));

  m.def("acceptance_ids", &acceptance_ids);
  m.def("run_acceptance", [](const std::string& id, std::uint64_t seed) {
    VerifyOptions o;
    o.seed = seed;
    CheckResult r;
    {
      py::gil_scoped_release release;
      r = run_acceptance(id, o);
    }
    py::dict d;
    d["id"] = r.id;
    d["title"] = r.title;
    d["pass"] = r.pass;
    d["detail"] = r.detail;
    return d;
  }, py::arg("id"), py::arg("seed") = VerifyOptions{}.seed);

  m.def("execute_config", [](const std::string& text) {
    RunConfig c = default_config();
    apply_config_json(c, json::parse(text));
    ExecOutcome o;
    {
      py::gil_scoped_release release;
      o = execute(c);
    }
    return py::make_tuple(o.exit_code, o.artifacts, o.summary);
  }, py::arg("config_json"));
}
