import io
import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from dimer_resonance.enumeration import (MAX_VERTICES, ZTABLE, EnumerationSizeError,
                                         MalformedCoverError, brute_moments, cover_from_loops,
                                         cover_stats, dump_covers, enumerate_covers,
                                         homology_table, iter_covers, paths_from_cover,
                                         sector_from_table, table_from_sectors)
from dimer_resonance.kasteleyn import SECTORS, Sector, TorusParams, log_z_sector, log_z_total

SIZES = [(m, n) for m in range(1, 11) for n in range(1, 11) if 2 * m * n <= 16]


def test_one_by_one_covers():
    got = {(s.n_a, s.n_b, s.n_c, s.cls) for s in enumerate_covers(1, 1)}
    assert got == {(1, 0, 0, (0, 0)), (0, 1, 0, (1, 0)), (0, 0, 1, (0, 1))}


def test_two_by_one_count_matches_unit_weights():
    count = len(enumerate_covers(2, 1))
    # a = b = c = 1 is outside b < a; use the polynomial table instead
    tab = homology_table(2, 1, 1.0, 1.0, 1.0)
    assert count == round(tab.total)
    t = TorusParams(2, 1, 1.0, 1.0 - 1e-12, 1.0)
    assert math.exp(log_z_total(t).log_abs) == pytest.approx(count, rel=1e-9)


@pytest.mark.parametrize("m,n", SIZES)
def test_conservation_and_determinism(m, n):
    covers = enumerate_covers(m, n)
    assert all(s.n_a + s.n_b + s.n_c == m * n for s in covers)
    assert covers == enumerate_covers(m, n)
    assert len(set(iter_covers(m, n))) == len(covers)


def test_size_bound():
    with pytest.raises(EnumerationSizeError):
        enumerate_covers(3, 4)
    assert 2 * 2 * 5 <= MAX_VERTICES
    with pytest.raises(ValueError):
        enumerate_covers(0, 2)


def test_one_by_one_table():
    a, b, c = 1.0, 0.5, 0.3
    tab = homology_table(1, 1, a, b, c)
    assert (tab.N00, tab.N10, tab.N01, tab.N11) == (a, b, c, 0.0)
    assert sector_from_table(tab.N, Sector(0, 0)) == pytest.approx(a - b - c)
    assert tab.sector(Sector(0, 0)) == pytest.approx(float(log_z_sector(TorusParams(1, 1, a, b, c), Sector(0, 0))))


@pytest.mark.parametrize("m,n", SIZES)
def test_table_partitions_z(m, n):
    tab = homology_table(m, n, 1.0, 0.6, 0.8)
    assert all(v >= 0 for v in tab.N.values())
    t = TorusParams(m, n, 1.0, 0.6, 0.8)
    assert tab.total == pytest.approx(math.exp(log_z_total(t).log_abs), rel=1e-10)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(SIZES), st.floats(0.1, 3), st.floats(0.1, 3), st.floats(0.1, 3))
def test_ztable_round_trip(mn, a, b, c):
    tab = homology_table(*mn, a, b, c)
    z = {s: sector_from_table(tab.N, s) for s in SECTORS}
    back = table_from_sectors(z)
    scale = max(tab.N.values())
    for cls, v in tab.N.items():
        assert abs(back[cls] - v) <= 1e-12 * scale


def test_sign_table_is_orthogonal():
    rows = [ZTABLE[s] for s in SECTORS]
    for i in range(4):
        for j in range(4):
            dot = sum(rows[k][i] * rows[k][j] for k in range(4))
            assert dot == (4 if i == j else 0)


def test_all_a_cover_is_empty():
    cover = ("a",) * 12
    assert paths_from_cover(4, 3, cover) == []
    assert cover_stats(4, 3, cover).cls == (0, 0)


def test_one_by_one_b_cover():
    (loop,) = paths_from_cover(1, 1, ("b",))
    assert loop.winding == (1, 0) and loop.steps == "E"
    assert cover_stats(1, 1, ("b",)).cls == (1, 0)


def test_seven_by_six_staircases():
    # two disjoint staircase loops, 14 east and 12 north steps in total
    stairs = "EN" * 6 + "E"
    loops = [((0, 0), stairs), ((3, 0), stairs)]
    cover = cover_from_loops(7, 6, loops)
    s = cover_stats(7, 6, cover)
    assert (s.n_a, s.n_b, s.n_c) == (16, 14, 12)
    assert s.n_a + s.n_b + s.n_c == 42
    back = paths_from_cover(7, 6, cover)
    assert sum(l.winding[0] for l in back) == 2 and sum(l.winding[1] for l in back) == 2
    assert s.cls == (0, 0)


def test_loop_bijection_round_trip():
    for m, n in [(2, 3), (3, 2), (2, 4)]:
        for cover in iter_covers(m, n):
            loops = paths_from_cover(m, n, cover)
            assert cover_from_loops(m, n, [(l.sites[0], l.steps) for l in loops]) == cover
            for l in loops:
                assert set(l.steps) <= {"E", "N"}
            # weight is carried by the loops plus empty sites
            occupied = sum(len(l.sites) for l in loops)
            counts = Counter("".join(lp.steps for lp in loops))
            st_ = cover_stats(m, n, cover)
            assert (m * n - occupied, counts["E"], counts["N"]) == (st_.n_a, st_.n_b, st_.n_c)
            # crossing parity equals total winding parity
            assert st_.cls == (sum(l.winding[0] for l in loops) % 2,
                               sum(l.winding[1] for l in loops) % 2)


@pytest.mark.parametrize("m,n", [(2, 3), (4, 2), (3, 3)])
def test_cut_placement_does_not_change_class(m, n):
    for cover in iter_covers(m, n):
        ref = cover_stats(m, n, cover).cls
        for cx in range(m):
            for cy in range(n):
                assert cover_stats(m, n, cover, cx, cy).cls == ref


def test_malformed_covers():
    with pytest.raises(MalformedCoverError):
        paths_from_cover(2, 1, ("b", "a"))     # both whites hit black (1, 0)
    with pytest.raises(MalformedCoverError):
        paths_from_cover(1, 1, ("x",))
    with pytest.raises(MalformedCoverError):
        cover_from_loops(2, 2, [((0, 0), "EN")])


def test_reweight_matches_fresh_table():
    tab = homology_table(2, 3, 1.0, 0.5, 0.5)
    fresh = homology_table(2, 3, 1.3, 0.2, 0.9)
    again = tab.reweight(1.3, 0.2, 0.9)
    for cls in fresh.N:
        assert again.N[cls] == pytest.approx(fresh.N[cls], rel=1e-14)


def test_brute_moments_one_by_one():
    a, b, c = 1.0, 0.5, 0.3
    mv = brute_moments(1, 1, a, b, c, 2)
    assert mv.raw[1] == pytest.approx(c / (a + b + c), rel=1e-15)
    assert mv.raw[2] == pytest.approx(c / (a + b + c), rel=1e-15)


def test_dump_covers():
    buf = io.StringIO()
    assert dump_covers(1, 1, buf) == 3
    assert buf.getvalue().splitlines() == ["1 0 0 0 0", "0 1 0 1 0", "0 0 1 0 1"]
