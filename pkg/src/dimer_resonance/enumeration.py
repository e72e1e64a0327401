"""Brute-force dimer covers of the honeycomb torus H_{m,n}.

Vertices are white W(x, y) and black B(x, y) for x in Z_m, y in Z_n.  Every
white vertex has three labelled edges::

    a: W(x, y) - B(x, y)
    b: W(x, y) - B(x+1, y)      (an east step after contracting a-edges)
    c: W(x, y) - B(x, y+1)      (a north step)

Contracting the a-edges leaves the square torus R_{m,n}; a cover becomes a
family of vertex-disjoint north-east loops, with a-dimers marking the empty
sites.  Covers are classified by the parities of their crossings of the
cuts x = 0 and y = 0.

Everything here is an oracle for the closed forms in ``kasteleyn`` and is
only meant for tiny tori (2mn <= 20).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .kasteleyn import MomentVector, SECTORS, Sector

__all__ = [
    "CoverStats",
    "EnumerationSizeError",
    "HomologyTable",
    "Loop",
    "MalformedCoverError",
    "MAX_VERTICES",
    "ZTABLE",
    "brute_moments",
    "cover_from_loops",
    "cover_stats",
    "dump_covers",
    "enumerate_covers",
    "homology_table",
    "iter_covers",
    "paths_from_cover",
    "sector_from_table",
    "table_from_sectors",
]

MAX_VERTICES = 20

# rows Z00, Z10, Z01, Z11 against columns N(0,0), N(1,0), N(0,1), N(1,1)
ZTABLE = {
    Sector(0, 0): (1, -1, -1, -1),
    Sector(1, 0): (1, 1, -1, 1),
    Sector(0, 1): (1, -1, 1, 1),
    Sector(1, 1): (1, 1, 1, -1),
}
_CLASSES = ((0, 0), (1, 0), (0, 1), (1, 1))


class EnumerationSizeError(ValueError):
    pass


class MalformedCoverError(ValueError):
    pass


# A cover is a tuple indexed by white vertex x + m*y holding the edge type
# 'a', 'b' or 'c' used by that white vertex.
Cover = tuple


class CoverStats(NamedTuple):
    n_a: int
    n_b: int
    n_c: int
    eps_x: int
    eps_y: int

    @property
    def cls(self) -> tuple[int, int]:
        return (self.eps_x, self.eps_y)


class Loop(NamedTuple):
    sites: tuple[tuple[int, int], ...]   # visited sites of R_{m,n} in order
    steps: str                           # 'E'/'N' per step
    winding: tuple[int, int]             # (horizontal, vertical) turns


def _check_size(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if 2 * m * n > MAX_VERTICES:
        raise EnumerationSizeError(f"2mn = {2 * m * n} exceeds the enumeration bound {MAX_VERTICES}")


def _partner(m: int, n: int, x: int, y: int, kind: str) -> tuple[int, int]:
    if kind == "a":
        return x, y
    if kind == "b":
        return (x + 1) % m, y
    return x, (y + 1) % n


def iter_covers(m: int, n: int) -> Iterator[Cover]:
    """Yield every perfect matching, depth-first over white vertices in order."""
    _check_size(m, n)
    whites = [(x, y) for y in range(n) for x in range(m)]
    used = [[False] * n for _ in range(m)]
    choice: list[str] = []

    def rec(i: int):
        if i == len(whites):
            yield tuple(choice)
            return
        x, y = whites[i]
        for kind in "abc":
            bx, by = _partner(m, n, x, y, kind)
            if not used[bx][by]:
                used[bx][by] = True
                choice.append(kind)
                yield from rec(i + 1)
                choice.pop()
                used[bx][by] = False

    yield from rec(0)


def _validate(m: int, n: int, cover: Sequence[str]) -> None:
    if len(cover) != m * n or any(k not in "abc" for k in cover):
        raise MalformedCoverError("a cover lists one edge type per white vertex")
    hit = Counter(_partner(m, n, i % m, i // m, k) for i, k in enumerate(cover))
    if len(hit) != m * n:
        raise MalformedCoverError("two white vertices share a black partner")


def cover_stats(m: int, n: int, cover: Sequence[str], cut_x: int = 0, cut_y: int = 0) -> CoverStats:
    """Edge counts and crossing parities.

    The vertical cut sits between columns cut_x - 1 and cut_x (mod m), the
    horizontal one between rows cut_y - 1 and cut_y.
    """
    counts = Counter(cover)
    cross_x = sum(1 for i, k in enumerate(cover)
                  if k == "b" and i % m == (cut_x - 1) % m)
    cross_y = sum(1 for i, k in enumerate(cover)
                  if k == "c" and i // m == (cut_y - 1) % n)
    return CoverStats(counts["a"], counts["b"], counts["c"], cross_x % 2, cross_y % 2)


def enumerate_covers(m: int, n: int) -> list[CoverStats]:
    """One CoverStats per perfect matching of H_{m,n}, in enumeration order."""
    return [cover_stats(m, n, cov) for cov in iter_covers(m, n)]


def paths_from_cover(m: int, n: int, cover: Sequence[str]) -> list[Loop]:
    """Map a cover to its loop system on R_{m,n}.

    Site (x, y) is occupied unless W(x, y) uses its a-edge; its outgoing step
    is east for a b-edge and north for a c-edge.
    """
    _validate(m, n, cover)
    seen = set()
    loops = []
    for start in range(m * n):
        if cover[start] == "a" or start in seen:
            continue
        sites, steps = [], []
        x, y = start % m, start // m
        dx = dy = 0
        while True:
            idx = x + m * y
            if idx in seen:
                break
            seen.add(idx)
            sites.append((x, y))
            kind = cover[idx]
            if kind == "a":
                raise MalformedCoverError("path ran into an empty site")
            steps.append("E" if kind == "b" else "N")
            if kind == "b":
                dx += 1
            else:
                dy += 1
            x, y = _partner(m, n, x, y, kind)
        if (x, y) != sites[0]:
            raise MalformedCoverError("steps do not close into a loop")
        loops.append(Loop(tuple(sites), "".join(steps), (dx // m, dy // n)))
    return loops


def cover_from_loops(m: int, n: int, loops: Sequence[tuple[tuple[int, int], str]]) -> Cover:
    """Inverse of ``paths_from_cover``.

    Each loop is given as ``(start_site, steps)`` with steps a string over
    'E' and 'N'; a ``Loop`` works too via ``(loop.sites[0], loop.steps)``.
    """
    cover = ["a"] * (m * n)
    for (x, y), steps in loops:
        x, y = x % m, y % n
        for step in steps:
            idx = x + m * y
            if cover[idx] != "a":
                raise MalformedCoverError(f"site {(x, y)} visited twice")
            if step == "E":
                cover[idx] = "b"
            elif step == "N":
                cover[idx] = "c"
            else:
                raise MalformedCoverError(f"unknown step {step!r}")
            x, y = _partner(m, n, x, y, cover[idx])
    _validate(m, n, cover)
    return tuple(cover)


@dataclass(frozen=True)
class HomologyTable:
    """Class weights N(eps_x, eps_y) at fixed (a, b, c).

    ``exponents`` keeps the multiset of (n_a, n_b, n_c) per class so the table
    can be re-evaluated at other weights without enumerating again.
    """

    m: int
    n: int
    a: float
    b: float
    c: float
    N: dict = field(repr=False)
    exponents: dict = field(repr=False)

    @property
    def N00(self) -> float:
        return self.N[(0, 0)]

    @property
    def N10(self) -> float:
        return self.N[(1, 0)]

    @property
    def N01(self) -> float:
        return self.N[(0, 1)]

    @property
    def N11(self) -> float:
        return self.N[(1, 1)]

    @property
    def total(self) -> float:
        return math.fsum(self.N.values())

    def sector(self, s: Sector) -> float:
        """Z_st from the sign table, summed exactly over the stored exponents."""
        a, b, c = Fraction(self.a), Fraction(self.b), Fraction(self.c)
        row = ZTABLE[Sector(*s)]
        total = sum(coef * cnt * a ** na * b ** nb * c ** nc
                    for coef, cls in zip(row, _CLASSES)
                    for (na, nb, nc), cnt in self.exponents[cls].items())
        return float(total)

    def reweight(self, a: float, b: float, c: float) -> "HomologyTable":
        return _table(self.m, self.n, a, b, c, self.exponents)


def _table(m, n, a, b, c, exponents) -> HomologyTable:
    N = {cls: math.fsum(cnt * a ** na * b ** nb * c ** nc
                        for (na, nb, nc), cnt in exponents[cls].items())
         for cls in _CLASSES}
    return HomologyTable(m, n, a, b, c, N, exponents)


def homology_table(m: int, n: int, a: float, b: float, c: float) -> HomologyTable:
    exponents = {cls: Counter() for cls in _CLASSES}
    for st in enumerate_covers(m, n):
        exponents[st.cls][(st.n_a, st.n_b, st.n_c)] += 1
    return _table(m, n, a, b, c, exponents)


def sector_from_table(N: dict, s: Sector) -> float:
    row = ZTABLE[Sector(*s)]
    return math.fsum(coef * N[cls] for coef, cls in zip(row, _CLASSES))


def table_from_sectors(z: dict) -> dict:
    """Invert the sign table: N-classes from the four Z_st values."""
    # the table matrix M satisfies M^T M = 4 I
    return {cls: math.fsum(ZTABLE[s][j] * z[s] for s in SECTORS) / 4.0
            for j, cls in enumerate(_CLASSES)}


def brute_moments(m: int, n: int, a: float, b: float, c: float, lmax: int) -> MomentVector:
    """Exact Boltzmann moments of N_c by summing over all covers."""
    stats = enumerate_covers(m, n)
    weights = [a ** s.n_a * b ** s.n_b * c ** s.n_c for s in stats]
    z = math.fsum(weights)
    raw = [math.fsum(w * s.n_c ** l for w, s in zip(weights, stats)) / z
           for l in range(lmax + 1)]
    mu = raw[1]
    central = [math.fsum(w * (s.n_c - mu) ** l for w, s in zip(weights, stats)) / z
               for l in range(lmax + 1)]
    central[1] = 0.0
    return MomentVector(tuple(raw), tuple(central))


def dump_covers(m: int, n: int, stream) -> int:
    """Write one ``n_a n_b n_c eps_x eps_y`` line per cover; return the count."""
    count = 0
    for s in enumerate_covers(m, n):
        stream.write(f"{s.n_a} {s.n_b} {s.n_c} {s.eps_x} {s.eps_y}\n")
        count += 1
    return count
