"""Exact partition functions of the honeycomb dimer model on an m x n torus.

The partition function is a signed combination of four Kasteleyn
determinants, one per boundary-condition sector (sigma, tau)::

    Z = (-Z00 + Z01 + Z10 + Z11) / 2

    Z_st = (a**m - (-1)**s b**m)**n * prod_k [1 - (-1)**t (c / (a + b z_k))**n]

with z_k = -exp(2 pi i k / m) over k in Z_m + s/2.  Everything is carried in
log space (``SignedLog``) since log Z grows like n*m*log(a).

Moments of the number N_c of c-type edges come from the cumulants
L_l = (c d/dc)**l log Z_st, which reduce exactly to finite sums of rational
polylogarithms Li_{1-l}.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .polylog import li_int

__all__ = [
    "DegenerateSectorError",
    "FourierFactor",
    "InconsistentSignError",
    "MomentVector",
    "NearSingularFactorError",
    "SECTORS",
    "Sector",
    "SignedLog",
    "TorusParams",
    "bell_coefficient",
    "bell_polynomial",
    "bell_terms",
    "cumulant_sector",
    "cumulants_sector",
    "fourier_factors",
    "log_z_sector",
    "log_z_total",
    "moments_exact",
    "sector_weights",
    "z_plus_minus",
]

MAX_MOMENT_ORDER = 8
NEAR_SINGULAR = 1e-12


class DegenerateSectorError(ArithmeticError):
    """A sector partition function is exactly zero."""


class NearSingularFactorError(ArithmeticError):
    """A factor of Z_st is too close to zero for its cumulants to be trusted."""


class InconsistentSignError(ArithmeticError):
    """The signed sector combination came out non-positive."""


@dataclass(frozen=True)
class TorusParams:
    m: int
    n: int
    a: float
    b: float
    c: float

    def __post_init__(self):
        if int(self.m) != self.m or int(self.n) != self.n or self.m < 1 or self.n < 1:
            raise ValueError(f"m and n must be positive integers, got {self.m}, {self.n}")
        if not (self.a > 0 and self.b > 0 and self.c > 0):
            raise ValueError("weights a, b, c must be positive")
        if not self.b < self.a:
            raise ValueError(f"need b < a, got a={self.a}, b={self.b}")

    @property
    def area(self) -> int:
        return self.m * self.n

    def with_c(self, c: float) -> "TorusParams":
        return TorusParams(self.m, self.n, self.a, self.b, c)


class Sector(NamedTuple):
    sigma: int
    tau: int

    @property
    def eps(self) -> int:
        return -1 if (self.sigma, self.tau) == (0, 0) else 1


SECTORS = (Sector(0, 0), Sector(0, 1), Sector(1, 0), Sector(1, 1))


@dataclass(frozen=True)
class SignedLog:
    """sign * exp(log_abs); zero is ``sign == 0`` with ``log_abs == -inf``."""

    log_abs: float
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if self.sign == 0 and self.log_abs != -math.inf:
            raise ValueError("zero must carry log_abs = -inf")

    @classmethod
    def zero(cls) -> "SignedLog":
        return cls(-math.inf, 0)

    @classmethod
    def from_float(cls, x: float) -> "SignedLog":
        if x == 0:
            return cls.zero()
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __neg__(self) -> "SignedLog":
        return SignedLog(self.log_abs, -self.sign)

    def scale(self, factor: float) -> "SignedLog":
        """Multiply by a plain nonzero float."""
        if self.sign == 0:
            return self
        return SignedLog(self.log_abs + math.log(abs(factor)),
                         self.sign * (1 if factor > 0 else -1))

    def __add__(self, other: "SignedLog") -> "SignedLog":
        return signed_sum([self, other])


def signed_sum(values: Sequence[SignedLog]) -> SignedLog:
    """Log-sum-exp over signed values."""
    live = [v for v in values if v.sign != 0]
    if not live:
        return SignedLog.zero()
    top = max(v.log_abs for v in live)
    total = math.fsum(v.sign * math.exp(v.log_abs - top) for v in live)
    if total == 0.0:
        return SignedLog.zero()
    return SignedLog(top + math.log(abs(total)), 1 if total > 0 else -1)


# ---------------------------------------------------------------------------
# Fourier factors
# ---------------------------------------------------------------------------

class FourierFactor(NamedTuple):
    k: float
    z_k: complex
    theta_k: float
    r_k: float
    phi_k: float


def _k_values(m: int, sigma: int) -> np.ndarray:
    # k in Z_m + sigma/2 with -m/2 < k <= m/2
    shift = 0.5 * sigma
    lo = math.floor(-m / 2 - shift) + 1
    ks = np.arange(lo, lo + m) + shift
    return ks


def fourier_factors(t: TorusParams, sigma: int) -> list[FourierFactor]:
    """The m points z_k with r_k, phi_k defined by (a-b)**n/(a+b z_k)**n = r_k e^{i phi_k}."""
    out = []
    for k in _k_values(t.m, sigma):
        theta = 2.0 * math.pi * k / t.m
        z = -complex(math.cos(theta), math.sin(theta))
        base = t.a + t.b * z
        r = math.exp(t.n * (math.log(t.a - t.b) - math.log(abs(base))))
        phi = -t.n * math.atan2(base.imag, base.real)
        out.append(FourierFactor(float(k), z, theta, r, phi))
    return out


class _SectorData(NamedTuple):
    """Log-space decomposition of one Z_st.

    ``x_pairs`` holds (c/(a+b z_k))**n for one member of every conjugate pair;
    ``x_real`` the real points z = -1 and z = +1 (when present).  The sector
    value is exp(log_pref) * prod_pairs |1 - s x|**2 * prod_real (1 - s x).
    """

    s: float
    log_pref: float
    x_pairs: np.ndarray
    x_real: np.ndarray


def _sector_data(t: TorusParams, sector: Sector) -> _SectorData:
    m, n, a, b, c = t.m, t.n, t.a, t.b, t.c
    sigma, tau = sector
    s = -1.0 if tau else 1.0
    # n log(a**m - (-1)**sigma b**m) without forming a**m
    ratio_m = math.exp(m * (math.log(b) - math.log(a)))
    log_pref = n * (m * math.log(a) + math.log1p(-ratio_m if sigma == 0 else ratio_m))

    ks = _k_values(m, sigma)
    real_mask = (ks == 0) | (ks == m / 2)
    pair_ks = ks[ks > 0]
    pair_ks = pair_ks[pair_ks != m / 2]

    def x_of(kk: np.ndarray) -> np.ndarray:
        theta = 2.0 * np.pi * kk / m
        base = a - b * np.exp(1j * theta)
        return np.exp(n * (math.log(c) - np.log(base)))

    x_pairs = x_of(pair_ks.astype(float))
    real_ks = ks[real_mask]
    # z = -1 at k = 0 and z = +1 at k = m/2: a + b z is a -+ b exactly
    x_real = np.array([math.exp(n * (math.log(c) - math.log(a - b if k == 0 else a + b)))
                       for k in real_ks])
    return _SectorData(s, log_pref, x_pairs, x_real)


def _log_abs_pairs(s: float, x: np.ndarray) -> np.ndarray:
    # log |1 - s x|**2 = log1p(|x|**2 - 2 s Re x)
    return np.log1p((x.real * x.real + x.imag * x.imag) - 2.0 * s * x.real)


def log_z_sector(t: TorusParams, s: Sector) -> SignedLog:
    """Z_st as a SignedLog.  An exactly vanishing factor gives ``SignedLog.zero()``."""
    d = _sector_data(t, Sector(*s))
    real_factors = 1.0 - d.s * d.x_real
    if np.any(real_factors == 0.0):
        return SignedLog.zero()
    pair_logs = _log_abs_pairs(d.s, d.x_pairs)
    if np.any(np.isneginf(pair_logs)):
        return SignedLog.zero()
    log_abs = math.fsum([d.log_pref, *pair_logs.tolist(),
                         *np.log(np.abs(real_factors)).tolist()])
    sign = -1 if int(np.sum(real_factors < 0)) % 2 else 1
    return SignedLog(log_abs, sign)


def log_z_total(t: TorusParams) -> SignedLog:
    """Z = (-Z00 + Z01 + Z10 + Z11)/2."""
    parts = [log_z_sector(t, s) for s in SECTORS]
    signed = [(-p if s.eps < 0 else p) for s, p in zip(SECTORS, parts)]
    total = signed_sum(signed)
    if total.sign <= 0:
        # positive up to rounding slack relative to the largest sector
        top = max(p.log_abs for p in parts)
        raise InconsistentSignError(
            f"Z combination is not positive for {t} (log|Z|={total.log_abs}, max sector {top})")
    return total.scale(0.5)


def z_plus_minus(t: TorusParams, p: int, q: int) -> tuple[SignedLog, SignedLog]:
    """(Z_-, Z_+) split by the parity of tau q + sigma p."""
    if math.gcd(p, q) != 1:
        raise ValueError(f"p and q must be coprime, got {p}, {q}")
    minus, plus = [], []
    for s in SECTORS:
        v = log_z_sector(t, s)
        if (s.tau * q + s.sigma * p) % 2:
            minus.append(v)
        else:
            plus.append(-v if s.eps < 0 else v)
    return signed_sum(minus).scale(0.5), signed_sum(plus).scale(0.5)


# ---------------------------------------------------------------------------
# Cumulants
# ---------------------------------------------------------------------------

def cumulant_sector(t: TorusParams, s: Sector, l: int) -> float:
    """L_l = (c d/dc)**l log Z_st = -n**l sum_k Li_{1-l}((-1)**tau (c/(a+b z_k))**n)."""
    return cumulants_sector(t, s, l)[l - 1]


def cumulants_sector(t: TorusParams, s: Sector, lmax: int) -> list[float]:
    """[L_1, ..., L_lmax] for one sector."""
    if lmax < 1:
        raise ValueError("cumulant order must be >= 1")
    d = _sector_data(t, Sector(*s))
    pair_factors = np.abs(1.0 - d.s * d.x_pairs)
    real_factors = np.abs(1.0 - d.s * d.x_real)
    if np.any(pair_factors < NEAR_SINGULAR) or np.any(real_factors < NEAR_SINGULAR):
        raise NearSingularFactorError(f"sector {tuple(s)} of {t} has a factor within {NEAR_SINGULAR} of 0")
    out = []
    for l in range(1, lmax + 1):
        pairs = 2.0 * li_int(1 - l, d.s * d.x_pairs).real if d.x_pairs.size else np.zeros(0)
        reals = li_int(1 - l, d.s * d.x_real.astype(complex)).real if d.x_real.size else np.zeros(0)
        out.append(-(t.n ** l) * math.fsum([*pairs.tolist(), *reals.tolist()]))
    return out


# ---------------------------------------------------------------------------
# Bell polynomials and moments
# ---------------------------------------------------------------------------

def bell_coefficient(partition: Sequence[int]) -> int:
    """l! / prod_i (s_i!**r_i r_i!) for a partition with r_i parts of size s_i."""
    parts = list(partition)
    if not parts or any(int(p) != p or p < 1 for p in parts):
        raise ValueError(f"not a partition: {partition!r}")
    l = sum(parts)
    denom = 1
    for size, mult in Counter(parts).items():
        denom *= math.factorial(size) ** mult * math.factorial(mult)
    return math.factorial(l) // denom


def _partitions(l: int, largest: int | None = None):
    if l == 0:
        yield ()
        return
    largest = l if largest is None else largest
    for first in range(min(l, largest), 0, -1):
        for rest in _partitions(l - first, first):
            yield (first, *rest)


def bell_terms(l: int) -> list[tuple[int, tuple[int, ...]]]:
    """Monomials of the complete Bell polynomial Y_l as (coefficient, partition)."""
    return [(bell_coefficient(p), p) for p in _partitions(l)]


def bell_polynomial(l: int, x: Sequence[float]) -> float:
    """Y_l(x_1, ..., x_l) by the recurrence Y_{j+1} = sum_i C(j,i) Y_{j-i} x_{i+1}."""
    if l < 0 or len(x) < l:
        raise ValueError("need at least l cumulants")
    ys = [1.0]
    for j in range(l):
        ys.append(math.fsum(math.comb(j, i) * ys[j - i] * x[i] for i in range(j + 1)))
    return ys[l]


@dataclass(frozen=True)
class MomentVector:
    """raw[l] = <N_c**l>, central[l] = <(N_c - mean)**l>, both with index 0 == 1."""

    raw: tuple[float, ...]
    central: tuple[float, ...]

    @property
    def mean(self) -> float:
        return self.raw[1]

    @property
    def variance(self) -> float:
        return self.central[2]

    def standardized(self, l: int) -> float:
        return self.central[l] / self.central[2] ** (l / 2)


class _SectorExpansion(NamedTuple):
    log_h: float            # log of prefactor * prod_pairs |1 - s x|**2 (positive part)
    g_derivs: list[float]   # (c d/dc)**j G for the product G of the real factors
    cumulants_h: list[float]


def _expand_sector(t: TorusParams, sector: Sector, lmax: int) -> _SectorExpansion:
    d = _sector_data(t, sector)
    pair_logs = _log_abs_pairs(d.s, d.x_pairs)
    if np.any(np.isneginf(pair_logs)):
        raise DegenerateSectorError(f"complex factor of sector {tuple(sector)} vanishes")
    log_h = math.fsum([d.log_pref, *pair_logs.tolist()])
    cum = []
    for l in range(1, lmax + 1):
        vals = 2.0 * li_int(1 - l, d.s * d.x_pairs).real if d.x_pairs.size else np.zeros(0)
        cum.append(-(t.n ** l) * math.fsum(vals.tolist()))
    # real factors g = 1 - s x with (c d/dc)**j g = -s n**j x for j >= 1
    g = [1.0] + [0.0] * lmax
    for x in d.x_real:
        fac = [1.0 - d.s * x] + [-d.s * t.n ** j * x for j in range(1, lmax + 1)]
        g = [math.fsum(math.comb(j, i) * fac[i] * g[j - i] for i in range(j + 1))
             for j in range(lmax + 1)]
    return _SectorExpansion(log_h, g, cum)


def _shifted_numerators(e: _SectorExpansion, lmax: int, mu: float) -> list[float]:
    # (D - mu)**l (G h) / h with D = c d/dc, via Leibniz on G * h
    shifted = [e.cumulants_h[0] - mu, *e.cumulants_h[1:]]
    ys = [bell_polynomial(i, shifted) for i in range(lmax + 1)]
    return [math.fsum(math.comb(l, j) * e.g_derivs[j] * ys[l - j] for j in range(l + 1))
            for l in range(lmax + 1)]


def _sector_scales(expansions: Sequence[_SectorExpansion]) -> list[float]:
    top = max(e.log_h for e in expansions)
    return [s.eps * math.exp(e.log_h - top) for s, e in zip(SECTORS, expansions)]


def sector_weights(t: TorusParams) -> dict[Sector, float]:
    """w_st = eps_st Z_st / (2 Z); these sum to 1."""
    exps = [_expand_sector(t, s, 1) for s in SECTORS]
    scales = _sector_scales(exps)
    raw = [sc * e.g_derivs[0] for sc, e in zip(scales, exps)]
    total = math.fsum(raw)
    return {s: r / total for s, r in zip(SECTORS, raw)}


def moments_exact(t: TorusParams, lmax: int) -> MomentVector:
    """Raw and central moments of N_c up to order ``lmax`` (<= 8).

    Each sector contributes eps_st (c d/dc)**l Z_st / (2Z).  The real factors
    at z = +-1 are differentiated directly rather than through log Z_st, so a
    sector that vanishes exactly (e.g. Z00 at A = 1) still contributes its
    nonzero derivatives.
    """
    if not 1 <= lmax <= MAX_MOMENT_ORDER:
        raise ValueError(f"lmax must be in 1..{MAX_MOMENT_ORDER}")
    exps = [_expand_sector(t, s, lmax) for s in SECTORS]
    scales = _sector_scales(exps)

    def combine(mu: float) -> list[float]:
        nums = [_shifted_numerators(e, lmax, mu) for e in exps]
        z = math.fsum(sc * nu[0] for sc, nu in zip(scales, nums))
        return [math.fsum(sc * nu[l] for sc, nu in zip(scales, nums)) / z
                for l in range(lmax + 1)]

    weights = [sc * e.g_derivs[0] for sc, e in zip(scales, exps)]
    wsum = math.fsum(weights)
    if any(abs(w / wsum) > 1.0 + 1e-6 for w in weights):
        warnings.warn(f"sector weights leave [-1, 1] for {t}; moments may suffer cancellation",
                      RuntimeWarning, stacklevel=2)
    raw = combine(0.0)
    central = combine(raw[1])
    central[1] = 0.0
    return MomentVector(tuple(raw), tuple(central))
