"""Asymptotic theory of the resonant spikes.

Near a rational aspect ratio p/q the large-torus statistics of the dimer
model reduce to the Gaussian-window polylog integrals::

    J_nu(beta, alpha) = integral over R of Li_nu(beta * exp(2i alpha x - x**2)) dx

with nu = 1 for log Z, nu = 0 for <N_c> and nu = -1 for var(N_c).  For real
beta these have closed forms: a main term sqrt(pi) Li_{nu+1/2}(beta e^{-alpha^2})
minus one "branch term" for every time the spiral beta e^{2i alpha x - x^2}
winds around the singularity at 1.

Branch terms are indexed here by j = 2k + [beta < 0], so that the spiral
crosses the cut at x_j = -pi j / (2 alpha) and the term exists when
(pi j)**2 <= 4 alpha**2 log|beta|.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy import integrate, optimize

from .kasteleyn import TorusParams
from .polylog import ABOVE, BELOW, gamma_half, li_half, li_int, li_regular

__all__ = [
    "CriticalParams",
    "CrossoverError",
    "JQuery",
    "JResult",
    "LargeAlphaLimits",
    "NonanalyticityGrid",
    "Prediction",
    "SignPrediction",
    "QuadratureBudgetError",
    "UnsupportedOrderError",
    "best_rational",
    "crossover",
    "crossovers_at",
    "derive_params",
    "j_closed",
    "j_quadrature",
    "large_alpha_limits",
    "log_z_gap",
    "nonanalyticity_grid",
    "predict_all",
]

SUPPORTED_ORDERS = (1, 0, -1)
SINGULAR_TOL = 1e-9
TIE_TOL = 1e-9
ZERO_VAR_TOL = 1e-12
QUAD_TARGET = 1e-8
TAIL_NATS = 30.0
NEAR_POLE = 0.5

_SQRT_PI = math.sqrt(math.pi)


class UnsupportedOrderError(ValueError):
    pass


class QuadratureBudgetError(ArithmeticError):
    def __init__(self, msg: str, achieved: float):
        super().__init__(f"{msg} (achieved error estimate {achieved:.3g})")
        self.achieved = achieved


class CrossoverError(ValueError):
    """No crossover of the requested index exists for this gamma."""


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriticalParams:
    eps: float
    phi: float
    log_A: float
    p: int
    q: int
    W: float
    alpha: float

    @property
    def log_beta(self) -> float:
        """log A**q."""
        return self.q * self.log_A

    @property
    def gamma(self) -> float:
        return self.log_beta - self.alpha ** 2

    def phi_from_alpha(self) -> float:
        return 2 * math.pi * self.p / self.q * (1 + self.alpha * self.W)


def derive_params(t: TorusParams, p: int, q: int) -> CriticalParams:
    """Scaling parameters of a torus relative to the rational p/q."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise ValueError(f"p/q must be a reduced positive fraction, got {p}/{q}")
    m, n, a, b, c = t.m, t.n, t.a, t.b, t.c
    eps = 2 * math.pi ** 2 * n * a * b / (m ** 2 * (a - b) ** 2)
    phi = 2 * math.pi * n * b / (m * (a - b))
    log_A = n * (math.log(c) - math.log(a - b))
    W = math.sqrt(q * eps) / (math.pi * p)
    alpha = (phi * q / (2 * math.pi * p) - 1) / W
    return CriticalParams(eps, phi, log_A, p, q, W, alpha)


def best_rational(x: float, qmax: int) -> tuple[int, int]:
    """Closest positive p/q to x with q <= qmax; ties go to the smaller q."""
    if not x > 0:
        raise ValueError("x must be positive")
    if qmax < 1:
        raise ValueError("qmax must be >= 1")
    fx = Fraction(x)
    best = fx.limit_denominator(qmax)
    if best <= 0:
        best = Fraction(1, qmax)
    err = abs(best - fx)
    # limit_denominator does not promise the smaller denominator on a tie
    for q in range(1, best.denominator):
        for p in (math.floor(fx * q), math.ceil(fx * q)):
            if p >= 1 and abs(Fraction(p, q) - fx) <= err:
                r = Fraction(p, q)
                return r.numerator, r.denominator
    return best.numerator, best.denominator


# ---------------------------------------------------------------------------
# Gaussian-window polylog integrals
# ---------------------------------------------------------------------------

class JQuery(NamedTuple):
    nu: int
    beta: float
    alpha: float

    def normalized(self) -> "JQuery":
        if self.nu not in SUPPORTED_ORDERS:
            raise UnsupportedOrderError(f"order {self.nu} is not one of {SUPPORTED_ORDERS}")
        return JQuery(int(self.nu), float(self.beta), abs(float(self.alpha)))


class BranchTerm(NamedTuple):
    j: tuple[int, ...]   # cut indices folded into this term (a +-j pair or a lone 0)
    value: complex


@dataclass(frozen=True)
class JResult:
    query: JQuery
    value: complex
    main_term: complex
    branch_terms: tuple[BranchTerm, ...] = field(default=())
    singular: bool = False


def _branch_indices(beta: float, alpha: float) -> tuple[list[int], bool]:
    """Nonnegative cut indices j whose branch term is present, and the singular flag.

    j runs over even integers for beta > 0 and odd ones for beta < 0.
    """
    L = math.log(abs(beta))
    delta = 0 if beta > 0 else 1
    lhs = alpha * alpha * L
    if L < 0:
        return [], False
    out, singular = [], False
    j = delta
    while True:
        rhs = (math.pi * j / 2) ** 2
        if abs(lhs - rhs) < SINGULAR_TOL * (1 + lhs):
            singular = True
        elif rhs > lhs:
            break
        out.append(j)
        j += 2
    return out, singular


def _pair_nu1(alpha: float, X: float, j: int) -> complex:
    if j == 0:
        return 2 * math.pi * (alpha - cmath.sqrt(complex(X, 0.0)))
    y = math.pi * j
    # sqrt(X + iy) + sqrt(X - iy) without cancellation when X < 0
    root = math.sqrt(2 * (X + math.hypot(X, y))) if X >= 0 else \
        y * math.sqrt(2 / (math.hypot(X, y) - X))
    return complex(2 * math.pi * (2 * alpha - root), 0.0)


def _pair_low(nu: int, X: float, j: int) -> complex:
    c = _SQRT_PI * gamma_half(0.5 - nu)
    power = complex(X, math.pi * j) ** (nu - 0.5)
    if j == 0:
        return c * power
    return complex(2 * c * power.real, 0.0)


def j_closed(query: JQuery) -> JResult:
    """Closed form of J_nu(beta, alpha) for real beta and nu in {1, 0, -1}.

    Near beta e^{-alpha^2} = 1 the main term and the j = 0 branch term both
    blow up; there ``main_term`` is their pole-free difference and the j = 0
    term is left out of ``branch_terms``.
    """
    query = query.normalized()
    nu, beta, alpha = query
    if beta == 0:
        return JResult(query, 0j, 0j)
    w = beta * math.exp(-alpha * alpha)
    X = alpha * alpha - math.log(abs(beta))
    indices, singular = _branch_indices(beta, alpha)
    if indices and indices[0] == 0 and abs(X) < NEAR_POLE:
        main = _SQRT_PI * li_regular(nu + 0.5, -X)
        if nu == 1:
            main -= 2 * math.pi * alpha
        indices = indices[1:]
    else:
        # below the cut, so the j = 0 term cancels the imaginary part exactly
        main = _SQRT_PI * li_half(nu + 0.5, w, BELOW if w > 1 else None)
    terms = []
    for j in indices:
        v = _pair_nu1(alpha, X, j) if nu == 1 else _pair_low(nu, X, j)
        terms.append(BranchTerm((j,) if j == 0 else (j, -j), v))
    total = main - sum((t.value for t in terms), 0j)
    if total.imag != 0.0 and abs(total.imag) <= 1e-9 * max(abs(total), 1e-300):
        total = complex(total.real, 0.0)
    return JResult(query, total, main, tuple(terms), singular)


def _cut_abscissae(beta: float, alpha: float, X: float) -> list[float]:
    L = math.log(abs(beta))
    if alpha == 0:
        return [-math.sqrt(L), 0.0, math.sqrt(L)] if L > 0 else []
    pts = []
    j = 0 if beta > 0 else 1
    while math.pi * j / (2 * alpha) < X:
        x = math.pi * j / (2 * alpha)
        pts.extend({-x, x})
        j += 2
    return sorted(pts)


def j_quadrature(query: JQuery, limit: int = 2000) -> complex:
    """Direct adaptive quadrature of J_nu(beta, alpha); the closed form's oracle."""
    query = query.normalized()
    nu, beta, alpha = query
    if beta == 0:
        return 0j
    X = alpha + math.sqrt(max(math.log(abs(beta)), 0.0) + TAIL_NATS)

    def f(x: float) -> complex:
        z = beta * cmath.exp(complex(-x * x, 2 * alpha * x))
        if alpha == 0:
            z = complex(z.real, 0.0)
        # for alpha = 0 the integrand sits above the cut for x > 0
        return li_int(nu, z, ABOVE if x > 0 else BELOW)

    edges = [-X] + [x for x in _cut_abscissae(beta, alpha, X) if -X < x < X] + [X]
    total, err = 0j, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        # full_output keeps scipy from warning; the error check is below
        v, e, *_ = integrate.quad(f, lo, hi, complex_func=True, epsabs=1e-11,
                                  epsrel=1e-11, limit=limit, full_output=True)
        total += v
        err += abs(e.real) + abs(e.imag)
    if err > QUAD_TARGET:
        raise QuadratureBudgetError(f"quadrature of {query} missed its target", err)
    return total



# ---------------------------------------------------------------------------
# Predictions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignPrediction:
    """Scaled predictions for one choice of sign in +-A**q."""
    sign: int
    log_z: float
    mean_nc: float
    var_nc: float
    singular: bool


@dataclass(frozen=True)
class Prediction:
    log_z: float
    dominant: int
    mean_nc: float
    var_nc: float
    flags: frozenset = frozenset()
    branches: dict = field(default_factory=dict)   # sign -> SignPrediction

    @property
    def log_z_plus(self) -> float:
        return self.branches[1].log_z

    @property
    def log_z_minus(self) -> float:
        return self.branches[-1].log_z


def _branch_prediction(cp: CriticalParams, t: TorusParams, sign: int) -> SignPrediction:
    # the theory is written for a = 1; the other weights are taken relative to a
    mn, b, c = t.m * t.n, t.b / t.a, t.c / t.a
    pq = cp.p * cp.q
    beta = sign * math.exp(cp.log_beta)
    root2pi = math.pi * math.sqrt(2)
    j1 = j_closed(JQuery(1, beta, cp.alpha))
    j0 = j_closed(JQuery(0, beta, cp.alpha))
    jm = j_closed(JQuery(-1, beta, cp.alpha))
    log_z = (mn * b * c) ** 0.25 / (root2pi * pq ** 0.75) * -j1.value.real
    mean = (mn * c) ** 0.75 / (root2pi * (pq * b) ** 0.25) * -j0.value.real
    var = (mn * c) ** 1.25 * pq ** 0.25 / (root2pi * b ** 0.75) * -jm.value.real
    return SignPrediction(sign, log_z, mean, var, j1.singular)


def predict_all(cp: CriticalParams, t: TorusParams) -> Prediction:
    """Leading-order log Z, <N_c> and var(N_c) from the dominant sign."""
    branches = {s: _branch_prediction(cp, t, s) for s in (1, -1)}
    plus, minus = branches[1], branches[-1]
    dom = minus if minus.log_z >= plus.log_z else plus
    flags = set()
    if abs(plus.log_z - minus.log_z) <= TIE_TOL * max(abs(plus.log_z), abs(minus.log_z)):
        flags.add("tie")
    if dom.singular:
        flags.add("singular")
    scale = (t.m * t.n * t.c / t.a) ** 1.25
    if dom.var_nc <= ZERO_VAR_TOL * scale:
        flags.add("near-zero-var")
    return Prediction(dom.log_z, dom.sign, dom.mean_nc, dom.var_nc, frozenset(flags), branches)


class LargeAlphaLimits(NamedTuple):
    logz_limit: float
    mean_limit: float
    var_scaled_limit: float


def large_alpha_limits(beta: float) -> LargeAlphaLimits:
    """alpha -> infinity limits of -J_1, -J_0 and -alpha**2 J_{-1} at +-beta."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    L = math.log(beta)
    if L <= 0:
        return LargeAlphaLimits(0.0, 0.0, 0.0)
    return LargeAlphaLimits(4 / 3 * L ** 1.5, 2 * math.sqrt(L), math.sqrt(L))


# ---------------------------------------------------------------------------
# Crossovers and nonanalyticities
# ---------------------------------------------------------------------------

def log_z_gap(beta: float, alpha: float) -> float:
    """(-J_1 at +beta) - (-J_1 at -beta): positive where Z_+ dominates."""
    return (j_closed(JQuery(1, -beta, alpha)).value.real
            - j_closed(JQuery(1, beta, alpha)).value.real)


def _signed_crossover_alpha(r: int, gamma: float) -> float:
    g = math.exp(gamma)
    side = BELOW if g > 1 else None
    lead = (li_half(1.5, g, side) - li_half(1.5, -g)) / (2 * _SQRT_PI)
    s = lead + cmath.sqrt(complex(-gamma, 0.0))
    for k in range(1, r + 1):
        # sqrt(-gamma + k pi i) + sqrt(-gamma - k pi i), folded to a real number
        y = k * math.pi
        pair = math.sqrt(2 * (-gamma + math.hypot(gamma, y))) if gamma <= 0 else \
            y * math.sqrt(2 / (math.hypot(gamma, y) + gamma))
        s += (-1) ** k * pair
    return s.real


def crossover(r: int, gamma: float, tol: float = 1e-8) -> tuple[float, float]:
    """(beta, alpha) of the r-th crossover on the curve log beta - alpha**2 = gamma.

    The parametric solution is confirmed by the sign change of ``log_z_gap``;
    if it misses, a bracketing root search along the same curve takes over.
    """
    if r < 0 or int(r) != r:
        raise ValueError("r must be a nonnegative integer")
    alpha = (-1) ** r * _signed_crossover_alpha(int(r), gamma)
    if not alpha > 0:
        raise CrossoverError(f"crossover {r} has no positive alpha at gamma = {gamma} ({alpha:.6g})")

    def gap(a: float) -> float:
        return log_z_gap(math.exp(gamma + a * a), a)

    if abs(gap(alpha)) < tol:
        return math.exp(gamma + alpha * alpha), alpha
    lo, hi = 0.9 * alpha, 1.1 * alpha
    if gap(lo) * gap(hi) > 0:
        raise CrossoverError(f"crossover {r} at gamma = {gamma} could not be confirmed")
    alpha = optimize.brentq(gap, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return math.exp(gamma + alpha * alpha), alpha


class NonanalyticityGrid(NamedTuple):
    plus: list
    minus: list


def nonanalyticity_grid(beta: float, alpha_max: float, alpha_min: float = 0.0) -> NonanalyticityGrid:
    """alpha values in [alpha_min, alpha_max] where a spiral of +-beta hits 1."""
    if not beta > 1:
        raise ValueError("beta must exceed 1")
    step = math.pi / math.sqrt(math.log(beta))
    plus = [k * step for k in range(int(alpha_max / step) + 1) if k * step >= alpha_min]
    minus = [(k + 0.5) * step for k in range(int(alpha_max / step + 0.5) + 1)
             if alpha_min <= (k + 0.5) * step <= alpha_max]
    return NonanalyticityGrid(plus, minus)


def crossovers_at(beta: float, alpha_max: float, samples: int = 400) -> list[float]:
    """Crossover alphas in (0, alpha_max] at fixed beta, by bracketing sign changes."""
    if not beta > 1:
        return []
    grid = np.linspace(alpha_max / samples, alpha_max, samples)
    gaps = [log_z_gap(beta, a) for a in grid]
    out = []
    for (a0, g0), (a1, g1) in zip(zip(grid, gaps), zip(grid[1:], gaps[1:])):
        if g0 == 0.0:
            out.append(float(a0))
        elif g0 * g1 < 0:
            out.append(optimize.brentq(lambda a: log_z_gap(beta, a), a0, a1, xtol=1e-14))
    return out
