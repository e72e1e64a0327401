"""
Crossovers between the two homology classes
===========================================

For A^q > 1 the integrals for Z_+ and Z_- trade places as alpha grows.  Each
exchange is a crossover; each time a spiral passes through 1 the curve has a
kink.  Both are located here, first from the parametric formula, then by
watching the sign of the gap at fixed beta.
"""

import math

import numpy as np

from dimer_resonance.resonance import (JQuery, crossover, crossovers_at, j_closed,
                                       large_alpha_limits, log_z_gap, nonanalyticity_grid)

print("crossovers on curves log beta - alpha^2 = gamma")
for gamma in (-9.0, -4.0, 10.0):
    for r in range(3):
        beta, alpha = crossover(r, gamma)
        line = f"  gamma {gamma:+5.1f}, r = {r}: alpha = {alpha:.8f}, log beta = {math.log(beta):9.4f}"
        if math.log(beta) >= 10:
            approx = (r / 2 + 0.25) * math.pi / math.sqrt(math.log(beta))
            line += f", large-beta estimate {approx:.6f}"
        print(line)

beta = math.exp(4.0)
print(f"\nat log beta = 4 (alpha up to 6):")
print("  crossovers      ", np.round(crossovers_at(beta, 6.0), 6))
grid = nonanalyticity_grid(beta, 6.0)
print("  kinks of log Z+ ", np.round(grid.plus, 6))
print("  kinks of log Z- ", np.round(grid.minus, 6))

print(f"\n{'alpha':>6} {'-J1(+b)':>10} {'-J1(-b)':>10} {'winner':>7}")
for alpha in np.linspace(0, 6, 13):
    plus = -j_closed(JQuery(1, beta, alpha)).value.real
    minus = -j_closed(JQuery(1, -beta, alpha)).value.real
    print(f"{alpha:>6.2f} {plus:>10.5f} {minus:>10.5f} {'+' if log_z_gap(beta, alpha) > 0 else '-':>7}")

lim = large_alpha_limits(beta)
far = -j_closed(JQuery(1, beta, 60.0)).value.real
print(f"\nat alpha = 60 the log Z integral is {far:.5f}; its limit is {lim.logz_limit:.5f}")
