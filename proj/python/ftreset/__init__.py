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

"""Finite-time bit reset: thermodynamic accounting, coarse graining and bounds."""

import atexit as _atexit

from ._ftreset import (
    DegenerateError,
    HypothesisError,
    InfeasibleError,
    UnsupportedError,
    ValidationError,
    acceptance_ids,
    binary_entropy,
    entropy_production_rate,
    evolve_partial_swap,
    execute_config,
    main_bound_rhs,
    norm1_distance,
    partial_swap_generator,
    penalty_envelope,
    quasistatic_work,
    region_map,
    relative_entropy,
    run_acceptance,
    run_constant_shifting,
    run_continuum_reset,
    run_sweep,
    set_warning_handler,
    shannon_entropy,
    shifting_recursion,
    solve_fixed_error_energy,
    stationary_state,
    symmetric_relative_entropy,
    thermal_state,
    throughput_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]

# a Python callback must not outlive the interpreter
_atexit.register(set_warning_handler, None)
