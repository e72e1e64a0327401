"""
A tour of the half-integer polylogarithms
=========================================

Li_{3/2}, Li_{1/2} and Li_{-1/2} drive everything downstream.  This script
walks through the regimes used to evaluate them, the branch cut on
(1, inf) and the Riemann zeta values that show up as limits.
"""

import math

import numpy as np

from dimer_resonance.polylog import ABOVE, BELOW, li_half, regime, zeta

# Near the origin the defining series converges fast; compare a few terms.
z = 0.4
terms = np.array([z ** k / k ** 1.5 for k in range(1, 40)])
print(f"Li_3/2({z}) by 39 series terms : {terms.sum():.15f}")
print(f"Li_3/2({z}) by the library     : {li_half(1.5, z).real:.15f}")

# Each point of the plane is handled by one of four expansions.
for w in (0.3, -0.9, 2.0 + 1.0j, -1e12, math.exp(40)):
    print(f"regime at z = {w!r:>24}: {regime(w)}")

# At z = 1 the order-3/2 function is zeta(3/2); at z = -1 it is the eta value.
print(f"\nLi_3/2(1)  = {li_half(1.5, 1.0).real:.15f}   zeta(3/2) = {zeta(1.5):.15f}")
print(f"Li_3/2(-1) = {li_half(1.5, -1.0).real:.15f}   (2^-1/2 - 1) zeta(3/2) = "
      f"{(2 ** -0.5 - 1) * zeta(1.5):.15f}")

# Past z = 1 the function is two-valued; the jump across the cut is
# 2 pi i (log x)^(nu - 1) / Gamma(nu).
x = 5.0
for nu in (1.5, 0.5, -0.5):
    up, down = li_half(nu, x, ABOVE), li_half(nu, x, BELOW)
    print(f"nu = {nu:+.1f}: above {up:.10f}, below {down:.10f}, jump/i = {(up - down).imag:.10f}")

# Far out on the negative axis the asymptotic expansion takes over.
for x in (-1e3, -1e6, -1e12):
    v = li_half(1.5, x).real
    lead = -(math.log(-x)) ** 1.5 / math.gamma(2.5)
    print(f"Li_3/2({x:.0e}) = {v:.8f}, leading term {lead:.8f}")
