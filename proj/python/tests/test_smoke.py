# Copyright 2026 The ftreset Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import ftreset


def test_entropies():
    assert ftreset.shannon_entropy([0.5, 0.5]) == pytest.approx(math.log(2))
    assert ftreset.relative_entropy([0.5, 0.5], [0.5, 0.5]) == 0.0
    assert math.isinf(ftreset.relative_entropy([0.5, 0.5], [1.0, 0.0]))
    assert ftreset.symmetric_relative_entropy(0.1, 0.9) == pytest.approx(3.5155593237379510125, rel=1e-13)
    assert ftreset.binary_entropy(0.25) == pytest.approx(0.56233514461880835029, rel=1e-13)
    assert ftreset.norm1_distance([0.5, 0.5], [0.75, 0.25]) == pytest.approx(0.5)


def test_thermal_and_work():
    gamma, logz = ftreset.thermal_state([0.0, 10.0], 1.0)
    assert gamma[1] == pytest.approx(4.5397868702434394505e-5, rel=1e-13)
    assert ftreset.quasistatic_work([0.0, 0.0], [0.0, 10.0]) == pytest.approx(0.69310178166072844477, rel=1e-13)


def test_partial_swap():
    p = ftreset.evolve_partial_swap([0.5, 0.5], [0.0, 10.0], 1.0, 0.1, 10.0)
    assert p[1] == pytest.approx(0.18396841751185496912, rel=1e-13)
    G = ftreset.partial_swap_generator([0.0, 1.0, 2.0], 1.0, 0.5)
    gamma, _ = ftreset.thermal_state([0.0, 1.0, 2.0], 1.0)
    assert ftreset.stationary_state(G) == pytest.approx(gamma, abs=1e-10)
    with pytest.raises(ftreset.DegenerateError):
        ftreset.stationary_state(ftreset.partial_swap_generator([0.0, 1.0], 1.0, 0.0))


def test_single_run_bounds():
    r = ftreset.run_constant_shifting(tau=50.0)
    assert r["bounds"]["all_satisfied"]
    names = {rec["name"] for rec in r["bounds"]["records"]}
    assert {"main_penalty_bound", "speed_limit", "data_processing"} <= names
    rec = next(x for x in r["bounds"]["records"] if x["name"] == "main_penalty_bound")
    assert rec["lhs"] >= rec["rhs"]
    led = r["ledger"]
    assert abs(led["dU"] - led["Q"] - led["W"]) < 1e-8


def test_hypothesis_error():
    with pytest.raises(ftreset.HypothesisError):
        ftreset.run_constant_shifting(initial_p1=0.3)
    with pytest.raises(ValueError):
        ftreset.run_constant_shifting(tau=-1.0)


def test_fixed_error_solver():
    E = ftreset.solve_fixed_error_energy(0.25, 500.0)
    assert ftreset.shifting_recursion(E_max=E, tau=500.0)["eps"] == pytest.approx(0.25, abs=1e-8)
    with pytest.raises(ftreset.InfeasibleError) as info:
        ftreset.solve_fixed_error_energy(0.25, 0.5)
    assert info.value.min_achievable_eps > 0.25


def test_sweep_and_envelope():
    rows = ftreset.run_sweep("fixed-energy", [1.0, 10.0, 100.0], workers=2)
    work = [row["run"]["ledger"]["W"] for row in rows]
    assert work == sorted(work, reverse=True)
    lo, hi = ftreset.penalty_envelope(tau=10.0)
    w_pn = ftreset.shifting_recursion(tau=10.0)["W_pn"]
    assert lo <= w_pn <= hi


def test_throughput():
    t = ftreset.throughput_bound()
    assert t["power"] == pytest.approx(5.1308120359411369591, rel=1e-13)
    assert t["composed"] == pytest.approx(t["power"], rel=1e-12)


def test_region_map_small():
    m = ftreset.region_map([1.0, 5.0, 10.0], [1e-3, 0.01, 0.2], tau_budget=1e4)
    assert len(m["cells"]) == 9
    for c in m["cells"]:
        if c["eps"] < ftreset.thermal_state([0.0, c["E_max"]])[0][1]:
            assert c["label"] == "III"


def test_continuum_small():
    r = ftreset.run_continuum_reset(tau=2.0, M=128)
    assert r["bounds"]["all_satisfied"]
    assert r["coarse"]["eps"] < 0.5


def test_acceptance_entry():
    assert "C1" in ftreset.acceptance_ids()
    res = ftreset.run_acceptance("C9b")
    assert res["pass"]


def test_warning_handler():
    seen = []
    ftreset.set_warning_handler(seen.append)
    ftreset.shannon_entropy([0.5, 0.5 + 1e-10])
    ftreset.set_warning_handler(None)
    assert len(seen) == 1
