import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from dimer_resonance.polylog import (ABOVE, BELOW, PolylogDomainError, ZetaPoleError,
                                     eulerian_numbers, gamma_half, li, li_half, li_int,
                                     li_regular, regime, zeta)

HALF = (1.5, 0.5, -0.5)


def direct_series(nu, z, terms=200):
    return math.fsum(z ** k / k ** nu for k in range(1, terms))


def alt_series_minus_one(nu, terms=2_000_000):
    # pairwise-summed alternating series, accelerated by averaging partial sums
    k = np.arange(1, terms + 1, dtype=float)
    s = np.cumsum((-1.0) ** k * k ** -nu)
    return 0.5 * (s[-1] + s[-2])


# --- examples ---------------------------------------------------------------

def test_integer_order_examples():
    assert li_int(1, 0) == 0
    assert li_int(0, 0.5) == pytest.approx(1.0, rel=1e-15)
    assert li_int(-1, -1) == pytest.approx(-0.25, rel=1e-15)
    partial = math.fsum((-1) ** k / k for k in range(1, 200001))
    assert li_int(1, -1).real == pytest.approx(partial, abs=1e-5)
    assert li_int(1, -1) == pytest.approx(-math.log(2), rel=1e-15)


def test_half_order_examples():
    assert li_half(1.5, 0) == 0
    # frozen from a directly summed alternating series
    assert li_half(1.5, -1).real == pytest.approx(alt_series_minus_one(1.5), rel=1e-9)
    assert li_half(1.5, -1).real == pytest.approx(-0.765147024625408, rel=1e-12)
    assert li_half(1.5, 0.5).real == pytest.approx(direct_series(1.5, 0.5), rel=1e-14)
    assert li_half(1.5, 0.5).real == pytest.approx(0.624837020819914, rel=1e-12)


def test_zeta_examples():
    assert zeta(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert zeta(1.5) == pytest.approx(2.612375348685488, rel=1e-13)
    assert zeta(-0.5) == pytest.approx(-0.20788622497735457, rel=1e-12)
    assert zeta(-2) == 0.0
    assert zeta(0) == pytest.approx(-0.5, rel=1e-14)


@pytest.mark.parametrize("s", [-39.5, -20.5, -7.3, -1.5, 0.3, 0.999, 1.001, 3.7, 12.0, 39.9])
def test_zeta_against_mpmath(s):
    assert zeta(s) == pytest.approx(float(mp.zeta(s)), rel=1e-12)


def test_zeta_pole():
    with pytest.raises(ZetaPoleError):
        zeta(1.0)


def test_gamma_half_and_eulerian():
    for x in (-2.5, -0.5, 0.5, 1.0, 1.5, 3.5):
        assert gamma_half(x) == pytest.approx(math.gamma(x), rel=1e-14)
    assert eulerian_numbers(3) == (1, 4, 1)
    assert eulerian_numbers(4) == (1, 11, 11, 1)


def test_domain_errors():
    with pytest.raises(PolylogDomainError):
        li_int(0, 1.0)
    with pytest.raises(PolylogDomainError):
        li_int(1, 2.0)
    with pytest.raises(PolylogDomainError):
        li_half(0.5, 3.0)
    with pytest.raises(PolylogDomainError):
        li_half(0.5, 1.0)
    with pytest.raises(ValueError):
        li_half(2.5, 0.3)
    assert li_half(1.5, 1.0).real == pytest.approx(zeta(1.5), rel=1e-14)


def test_li_int_vectorized():
    z = np.array([0.3, -2.0, 0.5 + 0.5j])
    for nu in (1, 0, -1, -3):
        got = li_int(nu, z)
        want = [complex(mp.polylog(nu, complex(x))) for x in z]
        assert np.allclose(got, want, rtol=1e-13, atol=0)


# --- oracle sweep -------------------------------------------------------------

def _mp_li(nu, z, side):
    if side is None:
        return complex(mp.polylog(nu, z))
    eps = mp.mpf(10) ** -40
    return complex(mp.polylog(nu, mp.mpc(z.real, eps if side is ABOVE else -eps)))


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(HALF), st.floats(-3.0, 40.0), st.floats(-math.pi, math.pi))
def test_half_orders_match_mpmath(nu, log_r, theta):
    mp.mp.dps = 30
    z = cmath.rect(math.exp(log_r), theta)
    assume(not (z.imag == 0 and z.real >= 1))   # the cut has its own test
    assume(abs(z - 1) > 1e-8)
    v = li_half(nu, z)
    want = _mp_li(nu, z, None)
    assert abs(v - want) <= 1e-10 * abs(want)


@pytest.mark.parametrize("nu", HALF)
@pytest.mark.parametrize("x", [1.001, 1.5, 3.0, 12.0, 500.0, 1e12, 1e20,
                               -1.0, -3.0, -40.0, -1e9, -1e15, 0.999, 0.7])
@pytest.mark.parametrize("side", [ABOVE, BELOW])
def test_real_axis_and_cut_against_mpmath(nu, x, side):
    mp.mp.dps = 30
    s = side if x > 1 else None
    v = li_half(nu, x, s)
    want = _mp_li(nu, complex(x), s)
    assert abs(v - want) <= 1e-10 * abs(want)


# --- invariants ---------------------------------------------------------------

@pytest.mark.parametrize("nu", [1.5, 0.5])
@pytest.mark.parametrize("z", [0.3 + 0.2j, -0.8, -4.0 + 1.0j, 2.0 + 3.0j, -30.0, 0.5j])
def test_derivative_chain(nu, z):
    errs = []
    for h in (1e-3, 5e-4):
        fd = (li_half(nu, z * (1 + h)) - li_half(nu, z * (1 - h))) / (2 * h)
        errs.append(abs(fd - li_half(nu - 1, z)))
    # second order: halving h quarters the error
    assert errs[1] < 1e-6 * max(1, abs(li_half(nu - 1, z)))
    assert errs[1] <= errs[0] / 3 or errs[1] < 1e-10


@pytest.mark.parametrize("z", [0.3 + 0.2j, -0.8, 2.0 + 3.0j])
def test_derivative_chain_into_integer_orders(z):
    h = 1e-4
    for nu in (1, 0):
        fd = (li(nu, z * (1 + h)) - li(nu, z * (1 - h))) / (2 * h)
        assert abs(fd - li(nu - 1, z)) < 1e-6 * max(1, abs(li(nu - 1, z)))
    fd = (li_half(-0.5 + 1, z * (1 + h)) - li_half(0.5, z * (1 - h))) / (2 * h)
    assert abs(fd - li_half(-0.5, z)) < 1e-6 * max(1, abs(li_half(-0.5, z)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(HALF), st.sampled_from((2, 3, 5)),
       st.floats(0.05, 0.97), st.floats(-math.pi, math.pi))
def test_replication(nu, q, r, theta):
    z = cmath.rect(r, theta)
    lhs = sum(li_half(nu, cmath.exp(2j * math.pi * k / q) * z) for k in range(q)) / q
    rhs = q ** -nu * li_half(nu, z ** q)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(HALF), st.floats(-2.0, 30.0), st.floats(0.01, math.pi - 0.01))
def test_conjugate_symmetry(nu, log_r, theta):
    z = cmath.rect(math.exp(log_r), theta)
    assert abs(li_half(nu, z.conjugate()) - li_half(nu, z).conjugate()) <= 1e-13 * abs(li_half(nu, z))


@pytest.mark.parametrize("nu", HALF)
@pytest.mark.parametrize("x", [1.2, 2.0, math.e, 10.0, 1e6, 1e15])
def test_cut_jump(nu, x):
    jump = li_half(nu, x, ABOVE) - li_half(nu, x, BELOW)
    want = 2j * math.pi * math.log(x) ** (nu - 1) / gamma_half(nu)
    assert abs(jump - want) <= 1e-9 * abs(want)


@pytest.mark.parametrize("nu", HALF)
def test_special_value_minus_one(nu):
    assert li_half(nu, -1).real == pytest.approx((2 ** (1 - nu) - 1) * zeta(nu), rel=1e-10)


OVERLAP_POINTS = {
    ("series", "lindelof"): [0.45, -0.45, 0.3 + 0.35j, -0.2 + 0.4j],
    ("series", "replication"): [0.4j, -0.49, 0.25 - 0.3j],
    ("lindelof", "replication"): [2.0, -3.0, 5 + 5j, -1.0, 0.6 - 0.2j],
    ("asymptotic", "replication"): [-math.exp(26), math.exp(27), math.exp(-26) * -1],
}


@pytest.mark.parametrize("nu", HALF)
@pytest.mark.parametrize("pair,z", [(p, z) for p, zs in OVERLAP_POINTS.items() for z in zs])
def test_regime_overlap(nu, pair, z):
    side = BELOW if (complex(z).imag == 0 and complex(z).real > 1) else None
    a = li_half(nu, z, side, method=pair[0])
    b = li_half(nu, z, side, method=pair[1])
    assert abs(a - b) <= 1e-9 * abs(b)


def test_regime_selection_covers_plane():
    for log_r in np.linspace(-5, 60, 70):
        for theta in np.linspace(-math.pi, math.pi, 41):
            z = cmath.rect(math.exp(log_r), theta)
            assert regime(z) in ("series", "lindelof", "asymptotic", "replication")


def test_li_regular_removes_pole():
    # Li_nu(w) - Gamma(1 - nu) (-log w)^(nu - 1) stays finite as w -> 1
    for nu in HALF:
        for lw in (-0.3, -1e-6, 1e-6):
            w = math.exp(lw)
            side = BELOW if w > 1 else None
            full = li_half(nu, w, side)
            sing = gamma_half(1 - nu) * complex(-lw, 0.0) ** (nu - 1) if w < 1 else \
                gamma_half(1 - nu) * (lw ** (nu - 1)) * cmath.exp(1j * math.pi * (nu - 1))
            assert abs(full - sing - li_regular(nu, lw)) <= 1e-9 * max(1, abs(full))
    assert li_regular(1.5, 0).real == pytest.approx(zeta(1.5), rel=1e-14)


def test_overflow_near_pole_is_a_domain_error():
    with pytest.raises(PolylogDomainError):
        li_half(-0.5, complex(1.0, 1e-230))
