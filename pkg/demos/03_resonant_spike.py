"""
The resonant spike in log Z
===========================

At fixed area, log Z / (mn)^(1/4) jumps up sharply when the aspect ratio
n b / (m (a - b)) sits on a simple rational.  Here the sweep runs over
n/m in [0.8, 1.25] at a million sites, with the theory curve alongside.
"""

import numpy as np

from dimer_resonance.sweeps import scan_aspect

recs = list(scan_aspect(10 ** 6, 0.8, 1.25, 91, (1.0, 0.5, 0.5), qmax=4, alpha_max=8))
exact = np.array([r.log_z_exact for r in recs])
lo, hi = exact.min(), exact.max()

print(f"{'m':>5} {'n':>5} {'p/q':>5} {'alpha':>8} {'exact':>9} {'theory':>9}")
for r in recs[::3]:
    bar = "#" * int(40 * (r.log_z_exact - lo) / (hi - lo))
    theory = "" if r.log_z_theory is None else f"{r.log_z_theory:9.5f}"
    print(f"{r.m:>5} {r.n:>5} {r.p:>2}/{r.q:<2} {r.alpha:>8.3f} {r.log_z_exact:>9.5f} {theory:>9}  {bar}")

top = recs[int(np.argmax(exact))]
print(f"\npeak at m = {top.m}, n = {top.n} where log Z/(mn)^1/4 = {top.log_z_exact:.6f}")
