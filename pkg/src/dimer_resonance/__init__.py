"""Honeycomb dimers on a torus: exact partition functions, brute-force
enumeration and the asymptotic theory of resonant aspect ratios."""

from .enumeration import brute_moments, enumerate_covers, homology_table
from .kasteleyn import (MomentVector, Sector, SignedLog, TorusParams, log_z_sector,
                        log_z_total, moments_exact, z_plus_minus)
from .polylog import li, li_half, li_int, zeta
from .resonance import (CriticalParams, JQuery, JResult, best_rational, crossover,
                        derive_params, j_closed, j_quadrature, large_alpha_limits,
                        nonanalyticity_grid, predict_all)

__version__ = "0.1.0"
