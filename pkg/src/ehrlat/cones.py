"""Half-open simplicial cones and their fundamental parallelepipeds.

A cone is ``apex + {sum l_i v_i : l_i >= 0}``; when ``open_flags[i]`` is set
the facet not containing ``v_i`` is removed, i.e. ``l_i > 0``.  Lattice
points of the fundamental parallelepiped are enumerated through the Smith
normal form of the generator matrix, which lists one representative per
class of ``Z^n / V Z^n`` directly instead of scanning a bounding box.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .exactmath import (
    DimensionError,
    RankError,
    det,
    from_columns,
    inverse,
    matvec,
    nullspace,
    primitive,
    rank,
    smith_normal_form,
)


@dataclass(frozen=True)
class HalfOpenCone:
    apex: Tuple[Fraction, ...]
    generators: Tuple[Tuple[int, ...], ...]
    open_flags: Tuple[bool, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "apex", tuple(Fraction(x) for x in self.apex))
        object.__setattr__(self, "generators", tuple(tuple(int(x) for x in g) for g in self.generators))
        if not self.open_flags:
            object.__setattr__(self, "open_flags", (False,) * len(self.generators))
        if len(self.open_flags) != len(self.generators):
            raise ValueError("one open flag per generator")
        if any(len(g) != len(self.apex) for g in self.generators):
            raise DimensionError("generator length does not match the apex")

    @property
    def ambient_dim(self) -> int:
        return len(self.apex)

    @property
    def d(self) -> int:
        return len(self.generators)

    @property
    def is_full_dimensional(self) -> bool:
        return self.d == self.ambient_dim

    def coordinates(self, x):
        """Coefficients of ``x - apex`` in the generators, or ``None`` off the span."""
        diff = [Fraction(a) - b for a, b in zip(x, self.apex)]
        if self.is_full_dimensional:
            return matvec(_inverse_cols(self.generators), diff)
        cols = [list(g) for g in self.generators]
        aug = [[c[i] for c in cols] + [diff[i]] for i in range(self.ambient_dim)]
        from .exactmath import row_reduce
        red, piv = row_reduce(aug)
        if piv and piv[-1] == self.d:
            return None
        lam = [Fraction(0)] * self.d
        for r, p in zip(red, piv):
            lam[p] = r[self.d]
        return tuple(lam)

    def contains(self, x) -> bool:
        lam = self.coordinates(x)
        if lam is None:
            return False
        return all(l > 0 if o else l >= 0 for l, o in zip(lam, self.open_flags))

    def translate(self, shift) -> "HalfOpenCone":
        return HalfOpenCone(tuple(a + s for a, s in zip(self.apex, shift)), self.generators, self.open_flags)


_INV_CACHE: Dict[tuple, tuple] = {}


def _inverse_cols(gens):
    key = tuple(gens)
    inv = _INV_CACHE.get(key)
    if inv is None:
        inv = inverse(from_columns(gens))
        if len(_INV_CACHE) > 4096:
            _INV_CACHE.clear()
        _INV_CACHE[key] = inv
    return inv


def index(c: HalfOpenCone) -> int:
    """Number of lattice points in the fundamental parallelepiped: ``|det V|``."""
    if not c.is_full_dimensional:
        raise DimensionError("index is defined here for full-dimensional cones only")
    return abs(det(from_columns(c.generators)))


@dataclass(frozen=True)
class ParallelepipedPoints:
    points: Tuple[Tuple[int, ...], ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _frac(x: Fraction, is_open: bool) -> Fraction:
    f = x - math.floor(x)
    if is_open and f == 0:
        return Fraction(1)
    return f


def _full_dim_points(apex, gens, flags):
    n = len(gens)
    v = from_columns(gens)
    dd = abs(det(v))
    if dd == 0:
        raise RankError("generators are linearly dependent")
    vinv = _inverse_cols(gens)
    if dd == 1:
        lam = matvec(vinv, [-a for a in apex])
        f = [_frac(x, o) for x, o in zip(lam, flags)]
        return [tuple(int(apex[i] + sum(gens[j][i] * f[j] for j in range(n))) for i in range(n))]
    snf = smith_normal_form(v)
    diag = snf.diagonal
    # integer coordinates: N * lambda with N a common denominator
    q = 1
    for a in apex:
        q = q * a.denominator // math.gcd(q, a.denominator)
    big_n = dd * q
    shift = [int(x * big_n) for x in matvec(vinv, apex)]
    steps = [[int(x * big_n) for x in matvec(vinv, col)] for col in zip(*snf.U)]
    base = [int(a * big_n) for a in apex]
    lam = [-x for x in shift]
    pts = []
    ks = [0] * n
    total = math.prod(diag)
    for _ in range(total):
        f = []
        for l, o in zip(lam, flags):
            r = l % big_n
            if o and r == 0:
                r = big_n
            f.append(r)
        p = []
        for i in range(n):
            num = base[i] + sum(gens[j][i] * f[j] for j in range(n))
            if num % big_n:
                raise ArithmeticError("parallelepiped point is not integral")
            p.append(num // big_n)
        pts.append(tuple(p))
        for j in range(n):
            ks[j] += 1
            st = steps[j]
            if ks[j] < diag[j]:
                for i in range(n):
                    lam[i] += st[i]
                break
            for i in range(n):
                lam[i] -= (diag[j] - 1) * st[i]
            ks[j] = 0
    return pts


def parallelepiped_points(c: HalfOpenCone) -> ParallelepipedPoints:
    """Integer points of ``apex + {sum l_i v_i}`` with ``l_i`` in [0,1) or (0,1] if open."""
    if not c.generators:
        ok = all(x.denominator == 1 for x in c.apex)
        return ParallelepipedPoints((tuple(int(x) for x in c.apex),) if ok else ())
    if rank([list(g) for g in c.generators]) < c.d:
        raise RankError("generators are linearly dependent")
    if c.is_full_dimensional:
        pts = _full_dim_points(c.apex, c.generators, c.open_flags)
        return ParallelepipedPoints(tuple(sorted(pts)))
    from .polyhedra import Equation, Polyhedron, lattice_chart
    n = c.ambient_dim
    ortho = nullspace([list(g) for g in c.generators], n)
    eqs = []
    for o in ortho:
        a = primitive(o)
        eqs.append(Equation(-sum(x * y for x, y in zip(a, c.apex)), tuple(Fraction(x) for x in a)))
    chart = lattice_chart(Polyhedron(n, (), tuple(eqs)))
    if chart is None:
        return ParallelepipedPoints(())
    gens = [tuple(int(x) for x in chart.back_linear(g)) for g in c.generators]
    apex = chart.back(c.apex)
    pts = _full_dim_points(apex, gens, c.open_flags)
    return ParallelepipedPoints(tuple(sorted(tuple(int(x) for x in chart.forward(p)) for p in pts)))


def heights(pp: ParallelepipedPoints) -> Dict[int, int]:
    """Histogram of the last coordinate of the points."""
    return dict(sorted(Counter(p[-1] for p in pp.points).items()))
