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

"""Independent high-precision oracle for the frozen constants used in the C++ tests.

Run with `python3 tests/oracles/frozen_values.py`. Evaluates every defining
formula directly with mpmath at 50 digits; nothing here calls the library.
"""
from mpmath import mp, mpf, log, exp

mp.dps = 50


def relent(p, q):
    return sum(pi * log(pi / qi) for pi, qi in zip(p, q) if pi != 0)


def gamma2(e_max, beta=mpf(1)):
    z = 1 + exp(-beta * e_max)
    return [1 / z, exp(-beta * e_max) / z]


def hb(e):
    return -e * log(e) - (1 - e) * log(1 - e)


def show(name, value):
    print(f"{name:40s} {mp.nstr(value, 20)}")


half = [mpf(1) / 2, mpf(1) / 2]
show("shannon([0.75,0.25])", -(mpf(3) / 4 * log(mpf(3) / 4) + mpf(1) / 4 * log(mpf(1) / 4)))
show("D([.5,.5] || gamma(E=10))", relent(half, gamma2(10)))
r, s = [mpf("0.9"), mpf("0.1")], [mpf("0.1"), mpf("0.9")]
show("J([.9,.1],[.1,.9])", relent(r, s) + relent(s, r))
r, s = half, [mpf("0.75"), mpf("0.25")]
show("J([.5,.5],[.75,.25])", relent(r, s) + relent(s, r))
show("H_b(0.25)", hb(mpf("0.25")))
show("gamma_1(E=10)", gamma2(10)[1])
show("W_qs(E=10)", log(2) - log(1 + exp(-10)))
r, s = half, [mpf("0.9"), mpf("0.1")]
show("D([.5,.5]||[.9,.1])", relent(r, s))
show("D([.9,.1]||[.5,.5])", relent(s, r))
r, s = [mpf("0.6"), mpf("0.4")], [mpf("0.8"), mpf("0.2")]
show("D([.6,.4]||[.8,.2])", relent(r, s))
show("D([.8,.2]||[.6,.4])", relent(s, r))

# Constant shifting, N=1, E_max=10, mu*tau = 1: single jump then one window.
g = gamma2(10)[1]
p1 = exp(-1) * mpf(1) / 2 + (1 - exp(-1)) * g
show("N=1 P1(tau), mu tau=1", p1)
show("N=1 W", mpf(5))
show("N=1 Q = 10*P1 - 5", 10 * p1 - 5)
# Sigma for N=1: D[gamma0||gamma1] - D[P1||gamma1]
sig = relent(half, gamma2(10)) - relent([1 - p1, p1], gamma2(10))
show("N=1 Sigma, mu tau=1", sig)

# Constant shifting, N=2, E_max=10, mu=0.1, tau=20: windows of 10, mu*dt = 1.
g5 = gamma2(5)[1]
p1_half = exp(-1) * mpf(1) / 2 + (1 - exp(-1)) * g5
show("N=2 P1(tau/2)", p1_half)
show("N=2 W = 2.5 + 5 P1(tau/2)", mpf("2.5") + 5 * p1_half)

# Throughput bound, n=1, tau_sw=1, T=1, mu=0.1, eps=0.25, E_max=10.
eps = mpf("0.25")
show("throughput rhs", log(2) - hb(eps) + eps * 10 + (1 - 2 * eps) ** 2 / mpf("0.1"))

# Partial-swap generator 2-level gamma=[0.9,0.1] stationary from null space by hand.
# Speed limit example: (1-2*0.25)^2/(0.1*100)
show("speed-limit Sigma_bit bound", (1 - 2 * eps) ** 2 / (mpf("0.1") * 100))
