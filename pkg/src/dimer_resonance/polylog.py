"""Polylogarithms Li_nu(z) and the Riemann zeta function.

Two families of orders are supported:

* integers nu <= 1, where Li_1(z) = -log(1-z) and every lower order is the
  rational function obtained by repeatedly applying z d/dz;
* the half-integers 3/2, 1/2 and -1/2, evaluated on the principal branch.

Half-integer evaluation picks one of four regimes:

==============  ===========================================================
series          |z| <= 1/2, the defining power series
lindelof        |log z| <= 2.5, expansion about z = 1 in powers of log z
asymptotic      real z with |log|z|| >= 25, optimally truncated large-|z| series
replication     anything else, via Li(w) = 2**(nu-1) (Li(sqrt w) + Li(-sqrt w))
==============  ===========================================================

On the cut [1, inf) the caller must say which side the argument approaches
from: ``ABOVE`` is the limit from Im z > 0, ``BELOW`` from Im z < 0.  The
conventional principal value (e.g. ``Li_1(2) = -i*pi``) is ``BELOW``.
"""

from __future__ import annotations

import cmath
import enum
import math
from fractions import Fraction

import numpy as np

__all__ = [
    "BranchSide",
    "PolylogDomainError",
    "PolylogPrecisionError",
    "ZetaPoleError",
    "HALF_INTEGER_ORDERS",
    "ABOVE",
    "BELOW",
    "eulerian_numbers",
    "gamma_half",
    "li",
    "li_half",
    "li_int",
    "li_regular",
    "regime",
    "zeta",
]


class PolylogDomainError(ValueError):
    """Argument at a pole, or on the branch cut without a side."""


class PolylogPrecisionError(ArithmeticError):
    """No evaluation regime reached the target tolerance."""


class ZetaPoleError(ZeroDivisionError):
    pass


class BranchSide(enum.Enum):
    ABOVE = "above"
    BELOW = "below"


ABOVE = BranchSide.ABOVE
BELOW = BranchSide.BELOW

HALF_INTEGER_ORDERS = (1.5, 0.5, -0.5)

SERIES_RADIUS = 0.5
LINDELOF_RADIUS = 2.5
ASYMPTOTIC_MIN_LOG = 25.0

_SQRT_PI = math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# Gamma and zeta
# ---------------------------------------------------------------------------

def gamma_half(x: float) -> float:
    """Gamma at an integer or half-integer from Gamma(1/2) = sqrt(pi).

    Poles (non-positive integers) raise ``ValueError``.
    """
    twice = Fraction(x) * 2
    if twice.denominator != 1:
        raise ValueError(f"{x} is not a half-integer")
    k = int(twice)
    if k % 2 == 0:
        if k <= 0:
            raise ValueError(f"Gamma has a pole at {x}")
        return float(math.factorial(k // 2 - 1))
    # x = k/2 with k odd; walk from 1/2
    value = _SQRT_PI
    y = 0.5
    if x > 0.5:
        while y < x:
            value *= y
            y += 1.0
    else:
        while y > x:
            y -= 1.0
            value /= y
    return value


def _borwein_weights(n: int) -> tuple[float, ...]:
    # d_k of Borwein's algorithm 2 (Chebyshev-accelerated alternating series)
    d = []
    total = 0.0
    for i in range(n + 1):
        total += n * math.factorial(n + i - 1) * 4.0 ** i / (
            math.factorial(n - i) * math.factorial(2 * i))
        d.append(total)
    return tuple(d)


_BORWEIN_N = 32
_BORWEIN_D = _borwein_weights(_BORWEIN_N)


def _eta(s: float) -> float:
    """Dirichlet eta for real s >= 0."""
    dn = _BORWEIN_D[-1]
    terms = [(-1) ** k * (_BORWEIN_D[k] - dn) / (k + 1) ** s
             for k in range(_BORWEIN_N)]
    return -math.fsum(terms) / dn


def zeta(s: float) -> float:
    """Riemann zeta for real s != 1.

    Uses the accelerated eta series for s >= 0 and the functional equation
    below zero.  Trivial zeros are returned as exact 0.0.
    """
    s = float(s)
    if s == 1.0:
        raise ZetaPoleError("zeta has a pole at s = 1")
    if s >= 0.0:
        # 1 - 2**(1-s), written to stay accurate near s = 1
        denom = -math.expm1((1.0 - s) * math.log(2.0))
        return _eta(s) / denom
    if s == math.floor(s) and int(s) % 2 == 0:
        return 0.0
    t = 1.0 - s
    log_mag = (s * math.log(2.0) + (s - 1.0) * math.log(math.pi)
               + math.lgamma(t))
    return math.exp(log_mag) * math.sin(math.pi * s / 2.0) * zeta(t)


# ---------------------------------------------------------------------------
# Integer orders
# ---------------------------------------------------------------------------

def eulerian_numbers(n: int) -> tuple[int, ...]:
    """Row n of the Eulerian triangle, A(n, 0..n-1)."""
    if n == 0:
        return (1,)
    return tuple(
        sum((-1) ** j * math.comb(n + 1, j) * (k + 1 - j) ** n for j in range(k + 1))
        for k in range(n))


def _check_side(side):
    if side is not None and not isinstance(side, BranchSide):
        raise TypeError(f"side must be a BranchSide, got {side!r}")


def li_int(nu: int, z, side: BranchSide | None = None):
    """Li_nu(z) for integer nu <= 1.  Accepts scalars or numpy arrays.

    For nu <= 0 this is ``z * E_n(z) / (1 - z)**(n + 1)`` with n = -nu and
    E_n the Eulerian polynomial, which is exactly (z d/dz)**n applied to
    z/(1-z).  For nu = 1 a point on [1, inf) needs ``side``.
    """
    if int(nu) != nu or nu > 1:
        raise ValueError(f"li_int needs an integer order <= 1, got {nu}")
    nu = int(nu)
    _check_side(side)
    scalar = np.ndim(z) == 0
    w = np.asarray(z, dtype=complex)
    if nu == 1:
        out = _li1(w, side)
    else:
        if np.any(w == 1.0):
            raise PolylogDomainError(f"Li_{nu} has a pole at z = 1")
        n = -nu
        coeffs = eulerian_numbers(n) if n > 0 else (1,)
        poly = np.zeros_like(w)
        for a in reversed(coeffs):
            poly = poly * w + a
        out = w * poly / (1.0 - w) ** (n + 1)
    return complex(out) if scalar else out


def _li1(w: np.ndarray, side) -> np.ndarray:
    on_cut = (w.imag == 0.0) & (w.real >= 1.0)
    if np.any(w == 1.0):
        raise PolylogDomainError("Li_1 has a pole at z = 1")
    if np.any(on_cut) and side is None:
        raise PolylogDomainError("Li_1 on its branch cut needs a BranchSide")
    x, y = w.real, w.imag
    # log|1-w| via log1p keeps small arguments exact
    re = 0.5 * np.log1p(x * x + y * y - 2.0 * x)
    im = np.arctan2(-y, 1.0 - x)
    if np.any(on_cut):
        # arctan2(-0., negative) == -pi; BELOW wants +pi inside the log
        sign = 1.0 if side is BELOW else -1.0
        im = np.where(on_cut, sign * np.pi, im)
    return -(re + 1j * im)


# ---------------------------------------------------------------------------
# Half-integer orders
# ---------------------------------------------------------------------------

_LINDELOF_TERMS = 80


def _lindelof_coefficients(nu: float) -> tuple[float, ...]:
    # zeta(nu - k) / k!, computed in log space to dodge overflow
    out = []
    for k in range(_LINDELOF_TERMS):
        zv = zeta(nu - k)
        if zv == 0.0:
            out.append(0.0)
            continue
        out.append(math.copysign(math.exp(math.log(abs(zv)) - math.lgamma(k + 1)), zv))
    return tuple(out)


def _asymptotic_coefficients(nu: float, negative: bool) -> tuple[float, ...]:
    # 2 * c_k * zeta(2k) / Gamma(nu + 1 - 2k); c_k = 2**(1-2k) - 1 for Li(-x)
    out = []
    for k in range(40):
        z2k = -0.5 if k == 0 else zeta(2.0 * k)
        g = gamma_half(nu + 1 - 2 * k)
        c = (2.0 ** (1 - 2 * k) - 1.0) if negative else 1.0
        out.append(2.0 * c * z2k / g)
    return tuple(out)


_LINDELOF = {nu: _lindelof_coefficients(nu) for nu in HALF_INTEGER_ORDERS}
_ASYMPTOTIC = {(nu, neg): _asymptotic_coefficients(nu, neg)
               for nu in HALF_INTEGER_ORDERS for neg in (True, False)}
_GAMMA_ONE_MINUS = {nu: gamma_half(1.0 - nu) for nu in HALF_INTEGER_ORDERS}
_GAMMA = {nu: gamma_half(nu) for nu in HALF_INTEGER_ORDERS}


def _normalize_half(nu) -> float:
    nu = float(nu)
    if nu not in HALF_INTEGER_ORDERS:
        raise ValueError(f"half-integer order must be one of {HALF_INTEGER_ORDERS}, got {nu}")
    return nu


def _on_cut(z: complex) -> bool:
    return z.imag == 0.0 and z.real > 1.0


def regime(z: complex) -> str:
    """Name of the regime ``li_half`` uses for ``z``."""
    z = complex(z)
    if abs(z) <= SERIES_RADIUS:
        return "series"
    if abs(cmath.log(z)) <= LINDELOF_RADIUS:
        return "lindelof"
    if z.imag == 0.0 and abs(math.log(abs(z.real))) >= ASYMPTOTIC_MIN_LOG:
        return "asymptotic"
    return "replication"


def _series(nu: float, z: complex) -> complex:
    total = 0j
    power = z
    for k in range(1, 200):
        term = power / k ** nu
        total += term
        if abs(term) <= 1e-18 * abs(total):
            return total
        power *= z
    raise PolylogPrecisionError(f"power series for Li_{nu}({z}) did not converge")


def _log_on_side(z: complex, side) -> complex:
    lz = cmath.log(z)
    if _on_cut(z):
        lz = complex(lz.real, 0.0)
    return lz


def _lindelof(nu: float, z: complex, side) -> complex:
    lz = _log_on_side(z, side)
    if lz == 0:
        if nu > 1:
            return complex(zeta(nu))
        raise PolylogDomainError(f"Li_{nu} has a pole at z = 1")
    # (-log z)**(nu-1); on the cut -log z is negative real with arg -pi from
    # above and +pi from below
    mlz = -lz
    if _on_cut(z):
        arg = -math.pi if side is ABOVE else math.pi
        singular = (-mlz.real) ** (nu - 1.0) * cmath.exp(1j * arg * (nu - 1.0))
    else:
        try:
            singular = mlz ** (nu - 1.0)
        except OverflowError:
            raise PolylogDomainError(f"Li_{nu}({z}) overflows this close to the pole") from None
    total = _GAMMA_ONE_MINUS[nu] * singular
    return total + _regular_part(nu, lz, abs(total))


def _regular_part(nu: float, lz: complex, scale: float = 0.0) -> complex:
    acc = 0j
    power = 1.0 + 0j
    for k, c in enumerate(_LINDELOF[nu]):
        term = c * power
        acc += term
        if k > 4 and abs(term) <= 1e-18 * (abs(acc) + scale):
            return acc
        power *= lz
    raise PolylogPrecisionError(f"Lindelof expansion for Li_{nu} at log z = {lz} did not converge")


def li_regular(nu: float, log_z: complex) -> complex:
    """Li_nu(z) - Gamma(1-nu) (-log z)**(nu-1) as a series in log z.

    This is the part of Li_nu that stays analytic through z = 1; it is what
    survives when the pole of Li_nu at 1 is cancelled by hand.  Requires
    |log z| <= 2.5.
    """
    nu = _normalize_half(nu)
    log_z = complex(log_z)
    if abs(log_z) > LINDELOF_RADIUS:
        raise ValueError(f"|log z| = {abs(log_z):.3g} exceeds {LINDELOF_RADIUS}")
    return _regular_part(nu, log_z)


def _asymptotic(nu: float, x: float, side) -> complex:
    # x real with |log|x|| >= ASYMPTOTIC_MIN_LOG
    if abs(x) < 1.0:
        # tiny |x| is covered by the series regime; never reached
        return _series(nu, complex(x))
    negative = x < 0
    lx = math.log(abs(x))
    coeffs = _ASYMPTOTIC[(nu, negative)]
    total = 0.0
    prev = math.inf
    for k, c in enumerate(coeffs):
        term = c * lx ** (nu - 2 * k)
        if abs(term) > abs(prev):
            break
        total += term
        prev = term
    # -cos(pi nu) Li_nu(+-1/x) vanishes identically for half-integer nu
    if negative:
        return complex(total)
    if side is None:
        raise PolylogDomainError(f"Li_{nu}({x}) lies on the branch cut; pass a BranchSide")
    sign = 1.0 if side is ABOVE else -1.0
    return complex(total, sign * math.pi * lx ** (nu - 1.0) / _GAMMA[nu])


def _replicate(nu: float, z: complex, side, depth: int) -> complex:
    if depth > 60:
        raise PolylogPrecisionError(f"replication for Li_{nu}({z}) did not terminate")
    if _on_cut(z):
        r = math.sqrt(z.real)
        a = _li_half(nu, complex(r, 0.0), side, depth + 1)
        b = _li_half(nu, complex(-r, 0.0), None, depth + 1)
    else:
        r = cmath.sqrt(z)
        a = _li_half(nu, r, None, depth + 1)
        b = _li_half(nu, -r, None, depth + 1)
    return 2.0 ** (nu - 1.0) * (a + b)


def _li_half(nu: float, z: complex, side, depth: int = 0) -> complex:
    if z == 0:
        return 0j
    which = regime(z)
    if _on_cut(z) and side is None:
        raise PolylogDomainError(f"Li_{nu}({z.real}) lies on the branch cut; pass a BranchSide")
    if which == "series":
        return _series(nu, z)
    if which == "lindelof":
        return _lindelof(nu, z, side)
    if which == "asymptotic":
        return _asymptotic(nu, z.real, side)
    return _replicate(nu, z, side, depth)


def li_half(nu: float, z, side: BranchSide | None = None, *, method: str | None = None) -> complex:
    """Principal-branch Li_nu(z) for nu in {3/2, 1/2, -1/2}.

    ``side`` is required when z is real and > 1.  ``method`` forces a regime
    (used to test agreement where regimes overlap); it is not range-checked
    beyond what the regime itself needs.
    """
    nu = _normalize_half(nu)
    _check_side(side)
    z = complex(z)
    if z == 1.0:
        if nu > 1:
            return complex(zeta(nu))
        raise PolylogDomainError(f"Li_{nu} has a pole at z = 1")
    if method is None:
        return _li_half(nu, z, side)
    if _on_cut(z) and side is None:
        raise PolylogDomainError(f"Li_{nu}({z.real}) lies on the branch cut; pass a BranchSide")
    if method == "series":
        return _series(nu, z)
    if method == "lindelof":
        return _lindelof(nu, z, side)
    if method == "asymptotic":
        if z.imag != 0.0:
            raise ValueError("asymptotic regime is implemented for real arguments only")
        return _asymptotic(nu, z.real, side)
    if method == "replication":
        return _replicate(nu, z, side, 0)
    raise ValueError(f"unknown method {method!r}")


def li(nu, z, side: BranchSide | None = None):
    """Dispatch on the order: integers <= 1 or the supported half-integers."""
    if float(nu) == int(nu) and nu <= 1:
        return li_int(int(nu), z, side)
    return li_half(nu, z, side)
