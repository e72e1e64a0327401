"""Parameter sweeps behind the command line: aspect, alpha and melting scans.

Every sweep yields ``ScanRecord`` rows.  Quantities are reported on the
scale of the leading asymptotics, i.e. log Z / (mn)**(1/4),
<N_c> / (mn)**(3/4) and var(N_c) / (mn)**(5/4), with log Z measured relative
to the bulk term mn log a (equivalently, weights normalized to a = 1).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .kasteleyn import NearSingularFactorError, TorusParams, log_z_total, moments_exact
from .resonance import (CriticalParams, best_rational, crossovers_at, derive_params,
                        nonanalyticity_grid, predict_all)

__all__ = [
    "COLUMNS",
    "FLAG_TOKENS",
    "ScanRecord",
    "exact_scaled",
    "format_value",
    "parallel_map",
    "realize_sizes",
    "scan_alpha",
    "scan_aspect",
    "scan_melt",
    "worker_count",
]

COLUMNS = ("m", "n", "p", "q", "alpha", "logAq", "log_z_exact", "log_z_theory",
           "mean_nc_exact", "mean_nc_theory", "var_nc_exact", "var_nc_theory",
           "dominant", "flags")
FLAG_TOKENS = ("singular", "tie", "near-zero-var", "unreliable-cumulant",
               "infeasible", "subordinate")
MAX_AREA = 10 ** 8


@dataclass
class ScanRecord:
    m: int | None = None
    n: int | None = None
    p: int | None = None
    q: int | None = None
    alpha: float | None = None
    logAq: float | None = None
    log_z_exact: float | None = None
    log_z_theory: float | None = None
    mean_nc_exact: float | None = None
    mean_nc_theory: float | None = None
    var_nc_exact: float | None = None
    var_nc_theory: float | None = None
    dominant: int | None = None
    flags: tuple = field(default=())

    def cells(self) -> list[str]:
        d = asdict(self)
        out = [format_value(d[k]) for k in COLUMNS[:-2]]
        out.append("" if self.dominant is None else ("+" if self.dominant > 0 else "-"))
        out.append(";".join(self.flags))
        return out

    def as_json(self) -> dict:
        d = {k: v for k, v in zip(COLUMNS, self.cells())}
        # JSON keeps numbers numeric; empty cells become null
        for k in COLUMNS[:-2]:
            v = getattr(self, k)
            d[k] = None if v is None else (v if isinstance(v, int) else float(format_value(v)))
        d["flags"] = list(self.flags)
        return d


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def worker_count() -> int:
    cap = os.environ.get("RESONANCE_THREADS")
    if cap:
        try:
            return max(1, int(cap))
        except ValueError:
            raise ValueError(f"RESONANCE_THREADS must be an integer, got {cap!r}") from None
    return min(8, os.cpu_count() or 1)


def parallel_map(fn: Callable, items: Sequence) -> Iterator:
    """Map in a thread pool; results come back in input order."""
    workers = worker_count()
    if workers == 1 or len(items) < 2:
        yield from map(fn, items)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, items)


def realize_sizes(area: int, ratio: float) -> tuple[int, int] | None:
    """Integer (m, n) with n/m near ``ratio`` and mn near ``area``.

    n is tied to round(ratio * m) and m is scanned around sqrt(area / ratio);
    among those the area error is minimized first, then the ratio error.
    """
    if area < 1 or not ratio > 0:
        return None
    m0 = math.sqrt(area / ratio)
    best = None
    for m in range(max(1, int(m0) - 3), int(m0) + 5):
        n = max(1, round(ratio * m))
        key = (abs(m * n - area), abs(n / m - ratio), m)
        if best is None or key < best[0]:
            best = (key, (m, n))
    return best[1] if best else None


def exact_scaled(t: TorusParams, with_variance: bool = True) -> tuple[float, float | None, float | None, list]:
    """Scaled exact log Z, <N_c>, var(N_c) and any flags raised on the way."""
    mn = t.m * t.n
    flags = []
    log_z = (log_z_total(t).log_abs - mn * math.log(t.a)) / mn ** 0.25
    try:
        mv = moments_exact(t, 2)
    except NearSingularFactorError:
        return log_z, None, None, ["unreliable-cumulant"]
    var = mv.variance / mn ** 1.25 if with_variance else None
    return log_z, mv.mean / mn ** 0.75, var, flags


def _theory_fields(cp: CriticalParams, t: TorusParams) -> dict:
    pr = predict_all(cp, t)
    mn = t.m * t.n
    return dict(log_z_theory=pr.log_z / mn ** 0.25, mean_nc_theory=pr.mean_nc / mn ** 0.75,
                var_nc_theory=pr.var_nc / mn ** 1.25, dominant=pr.dominant,
                flags=tuple(f for f in FLAG_TOKENS if f in pr.flags))


def scan_aspect(area: int, ratio_min: float, ratio_max: float, steps: int,
                weights: tuple[float, float, float], qmax: int = 20,
                alpha_max: float = 10.0) -> Iterator[ScanRecord]:
    """Exact log Z and <N_c> across aspect ratios n/m at roughly fixed area.

    Theory columns are filled wherever the best rational p/q (q <= qmax) of
    the reduced ratio n b / (m (a - b)) gives |alpha| <= alpha_max.
    """
    if area > MAX_AREA:
        raise ValueError(f"area {area} exceeds {MAX_AREA}")
    a, b, c = weights
    TorusParams(1, 1, a, b, c)   # validates the weights
    ratios = np.linspace(ratio_min, ratio_max, steps) if steps > 1 else np.array([ratio_min])

    def point(ratio: float) -> ScanRecord:
        mn = realize_sizes(area, float(ratio))
        if mn is None:
            return ScanRecord(flags=("infeasible",))
        m, n = mn
        t = TorusParams(m, n, a, b, c)
        log_z, mean, _, flags = exact_scaled(t, with_variance=False)
        rec = ScanRecord(m=m, n=n, log_z_exact=log_z, mean_nc_exact=mean)
        p, q = best_rational(n * b / (m * (a - b)), qmax)
        cp = derive_params(t, p, q)
        rec.p, rec.q, rec.alpha, rec.logAq = p, q, cp.alpha, cp.log_beta
        if abs(cp.alpha) <= alpha_max:
            th = _theory_fields(cp, t)
            flags = flags + list(th.pop("flags"))
            for k, v in th.items():
                setattr(rec, k, v)
        rec.flags = tuple(f for f in FLAG_TOKENS if f in flags)
        return rec

    yield from parallel_map(point, list(ratios))


def _torus_for(m: int, n: int, a: float, b: float, log_aq: float, q: int) -> TorusParams:
    # c such that (c / (a - b))**n = A
    return TorusParams(m, n, a, b, (a - b) * math.exp(log_aq / (q * n)))


def realize_alpha(m: int, p: int, q: int, alpha: float, a: float, b: float) -> int:
    """Smallest-error integer n for which a torus m x n sits at ``alpha``."""
    # n b q / (m (a - b) p) = 1 + alpha W with W = sqrt(2 q n a b) / (p m (a - b))
    n = m * (a - b) * p / (b * q)
    for _ in range(50):
        W = math.sqrt(2 * q * n * a * b) / (p * m * (a - b))
        n = m * (a - b) * p * (1 + alpha * W) / (b * q)
    return max(1, round(n))


def scan_alpha(log_aq: float, alpha_min: float, alpha_max: float, steps: int,
               m: int, n: int, p: int, q: int, weights: tuple[float, float],
               exact: bool = False, markers: bool = True) -> Iterator[ScanRecord]:
    """Theory curves against alpha for both signs of A**q.

    Each alpha gives a row for the dominant sign and a ``subordinate`` row for
    the other.  Crossover and nonanalyticity points inside the range are
    added to the grid.  With ``exact`` the exact route is evaluated on a torus
    of width m whose height is chosen to realize alpha; those rows report the
    realized size and alpha.
    """
    a, b = weights
    grid = list(np.linspace(alpha_min, alpha_max, steps)) if steps > 1 else [alpha_min]
    beta = math.exp(log_aq)
    if markers and beta > 1:
        grid += [x for x in crossovers_at(beta, alpha_max) if x >= alpha_min]
        g = nonanalyticity_grid(beta, alpha_max, alpha_min)
        grid += g.plus + g.minus
    grid = sorted(set(float(x) for x in grid))
    base = _torus_for(m, n, a, b, log_aq, q)
    ref = derive_params(base, p, q)

    def point(alpha: float) -> list[ScanRecord]:
        if exact:
            nn = realize_alpha(m, p, q, alpha, a, b)
            t = _torus_for(m, nn, a, b, log_aq, q)
            cp = derive_params(t, p, q)
        else:
            t, cp = base, CriticalParams(ref.eps, ref.phi, log_aq / q, p, q, ref.W, alpha)
        pr = predict_all(cp, t)
        mn = t.m * t.n
        rows = []
        for sign in (pr.dominant, -pr.dominant):
            br = pr.branches[sign]
            flags = set(pr.flags) if sign == pr.dominant else {"subordinate"}
            if br.singular:
                flags.add("singular")
            rec = ScanRecord(m=t.m, n=t.n, p=p, q=q, alpha=cp.alpha, logAq=cp.log_beta,
                             log_z_theory=br.log_z / mn ** 0.25,
                             mean_nc_theory=br.mean_nc / mn ** 0.75,
                             var_nc_theory=br.var_nc / mn ** 1.25, dominant=sign)
            if exact and sign == pr.dominant:
                rec.log_z_exact, rec.mean_nc_exact, rec.var_nc_exact, ef = exact_scaled(t)
                flags.update(ef)
            rec.flags = tuple(f for f in FLAG_TOKENS if f in flags)
            rows.append(rec)
        return rows

    for rows in parallel_map(point, grid):
        yield from rows


def scan_melt(m: int, n: int, p: int, q: int, log_aq_min: float, log_aq_max: float,
              steps: int, weights: tuple[float, float], exact: bool = False) -> Iterator[ScanRecord]:
    """Theory log Z and <N_c> at alpha = 0 as A**q passes through 1."""
    a, b = weights
    ratio = n * b / (m * (a - b))
    if abs(ratio * q / p - 1) > 1e-12:
        raise ValueError(f"n b / (m (a - b)) = {ratio!r} is not p/q = {p}/{q}; alpha = 0 needs an exact rational")
    grid = np.linspace(log_aq_min, log_aq_max, steps) if steps > 1 else np.array([log_aq_min])

    def point(log_aq: float) -> ScanRecord:
        t = _torus_for(m, n, a, b, float(log_aq), q)
        ref = derive_params(t, p, q)
        cp = CriticalParams(ref.eps, ref.phi, float(log_aq) / q, p, q, ref.W, 0.0)
        rec = ScanRecord(m=m, n=n, p=p, q=q, alpha=0.0, logAq=float(log_aq))
        th = _theory_fields(cp, t)
        flags = list(th.pop("flags"))
        for k, v in th.items():
            setattr(rec, k, v)
        if exact:
            rec.log_z_exact, rec.mean_nc_exact, rec.var_nc_exact, ef = exact_scaled(t)
            flags += ef
        rec.flags = tuple(f for f in FLAG_TOKENS if f in flags)
        return rec

    yield from parallel_map(point, list(grid))

