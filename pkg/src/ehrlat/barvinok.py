"""Signed decompositions into half-open simplicial cones.

Facet assignment follows one rule everywhere: given a direction ``y``, the
facet of a simplicial cone with inner normal ``b`` is open exactly when
``b . y < 0``.  Ties are broken by perturbing ``y`` lexicographically with
``eps * e_0 + eps^2 * e_1 + ...``, so the rule never hesitates.  Applying
the same ``y`` to every cell of an identity that holds modulo
lower-dimensional cones makes it hold exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .cones import HalfOpenCone, index, parallelepiped_points
from .exactmath import (
    DimensionError,
    RankError,
    det,
    from_columns,
    inverse,
    lll_reduce,
    matvec,
    nullspace,
    primitive,
    rank,
)
from .polyhedra import (
    Polyhedron,
    linear_chart,
    strictly_feasible_direction,
    tighten,
    vertices,
)


class LinealityError(ValueError):
    """The cone contains a line."""


class DecompositionError(RuntimeError):
    """Index failed to decrease; never expected."""


@dataclass
class SignedConeList:
    terms: List[Tuple[int, HalfOpenCone]] = field(default_factory=list)
    max_depth: int = 0
    nodes: int = 0

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def multiplicity(self, x) -> int:
        return sum(s for s, c in self.terms if c.contains(x))

    def canonical(self) -> "SignedConeList":
        terms = sorted(self.terms, key=_cone_key)
        return SignedConeList(terms, self.max_depth, self.nodes)


def _cone_key(t):
    s, c = t
    return (s, c.apex, c.generators, c.open_flags)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lex_sign(b, y) -> int:
    """Sign of ``b . (y + eps e_0 + eps^2 e_1 + ...)`` for tiny eps."""
    s = _dot(b, y)
    if s:
        return 1 if s > 0 else -1
    for x in b:
        if x:
            return 1 if x > 0 else -1
    raise ValueError("zero normal")


def _normals(gens):
    """Rows of V^{-1}: row i is the inner normal of the facet opposite gens[i]."""
    return inverse(from_columns(gens))


def flags_from_direction(gens, y) -> Tuple[bool, ...]:
    return tuple(lex_sign(b, y) < 0 for b in _normals(gens))


def direction_for_flags(gens, flags) -> Tuple[int, ...]:
    """A direction realising ``flags`` under the open-facet rule."""
    mu = [-1 if f else 1 for f in flags]
    n = len(gens[0])
    return tuple(sum(g[i] * m for g, m in zip(gens, mu)) for i in range(n))


def _check_pointed(gens, n):
    if any(not any(g) for g in gens):
        raise ValueError("zero generator")
    if strictly_feasible_direction(gens, [1] * len(gens), n) is None:
        raise LinealityError("cone is not pointed")


def _placing(gens, n) -> List[Tuple[int, ...]]:
    """Placing triangulation; cells are tuples of generator indices."""
    start: List[int] = []
    rows: List[list] = []
    for i, g in enumerate(gens):
        if rank(rows + [list(g)]) > len(rows):
            rows.append(list(g))
            start.append(i)
        if len(start) == n:
            break
    if len(start) < n:
        raise DimensionError("generators do not span the ambient space")
    cells = [tuple(start)]
    inv: Dict[tuple, tuple] = {}

    def cell_inv(cell):
        if cell not in inv:
            inv[cell] = _normals([gens[i] for i in cell])
        return inv[cell]

    for p in range(len(gens)):
        if p in start:
            continue
        count: Dict[frozenset, int] = {}
        for cell in cells:
            for j in range(n):
                f = frozenset(cell[:j] + cell[j + 1:])
                count[f] = count.get(f, 0) + 1
        new = []
        for cell in cells:
            normals = cell_inv(cell)
            for j in range(n):
                f = frozenset(cell[:j] + cell[j + 1:])
                if count[f] != 1:
                    continue
                if _dot(normals[j], gens[p]) < 0:
                    new.append(tuple(sorted(f)) + (p,))
        cells.extend(new)
    return cells


def triangulate_cone(generators: Sequence[Sequence[int]], y=None, apex=None) -> SignedConeList:
    """Disjoint half-open simplicial cones covering the closed cone on ``generators``."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise ValueError("no generators")
    n = len(gens[0])
    if apex is None:
        apex = (0,) * n
    _check_pointed(gens, n)
    if rank([list(g) for g in gens]) < n:
        # lower-dimensional: triangulate inside the span
        ortho = nullspace([list(g) for g in gens], n)
        chart = linear_chart([primitive(o) for o in ortho], n)
        local = [tuple(int(x) for x in chart.back_linear(g)) for g in gens]
        ly = None if y is None else tuple(chart.back_linear(y))
        sub = triangulate_cone(local, ly)
        out = []
        for s, c in sub:
            out.append((s, HalfOpenCone(apex, tuple(tuple(chart.linear(g)) for g in c.generators), c.open_flags)))
        return SignedConeList(out)
    if y is None:
        y = tuple(sum(g[i] for g in gens) for i in range(n))
    cells = _placing(gens, n)
    out = []
    for cell in cells:
        cg = tuple(gens[i] for i in cell)
        out.append((1, HalfOpenCone(apex, cg, flags_from_direction(cg, y))))
    return SignedConeList(out)


def brion(p: Polyhedron) -> SignedConeList:
    """Triangulated vertex cones of a bounded polyhedron, apexes at the vertices.

    Strict rows are first tightened on the lattice, which leaves the set of
    integer points unchanged.
    """
    if not p.is_closed:
        p = tighten(p)
    vs = vertices(p)
    out = []
    for v, dirs in zip(vs.vertices, vs.edges):
        if not dirs:
            out.append((1, HalfOpenCone(v, ())))
            continue
        out.extend(triangulate_cone(dirs, apex=v).terms)
    return SignedConeList(out)


# ---------------------------------------------------------------------------
# Barvinok's signed decomposition
# ---------------------------------------------------------------------------

def _lam_key(lam):
    return (max(abs(x) for x in lam), tuple(abs(x) for x in lam))


def short_vector(gens) -> Tuple[Tuple[int, ...], Tuple[Fraction, ...]]:
    """Nonzero lattice vector ``u = V lam`` with ``max |lam_i| < 1``."""
    n = len(gens)
    v = from_columns(gens)
    dd = abs(det(v))
    vinv = inverse(v)
    scaled = [[int(x * dd) for x in row] for row in vinv]
    red = lll_reduce(scaled)
    basis = [tuple(red[i][j] for i in range(n)) for j in range(n)]
    cands = [tuple(Fraction(x, dd) for x in b) for b in basis]
    best = min(cands, key=_lam_key)
    if _lam_key(best)[0] >= 1:
        for coef in itertools.product(range(-2, 3), repeat=n):
            if not any(coef):
                continue
            lam = tuple(Fraction(sum(c * b[i] for c, b in zip(coef, basis)), dd) for i in range(n))
            if _lam_key(lam) < _lam_key(best):
                best = lam
    if _lam_key(best)[0] >= 1:
        best = _exhaustive_short(gens, dd)
    u = matvec(v, best)
    return tuple(int(x) for x in u), best


def _exhaustive_short(gens, dd):
    vinv = inverse(from_columns(gens))
    pp = parallelepiped_points(HalfOpenCone((0,) * len(gens), gens))
    best = None
    for p in pp:
        if not any(p):
            continue
        lam = matvec(vinv, p)
        lam = tuple(x - 1 if x > Fraction(1, 2) else x for x in lam)
        if best is None or _lam_key(lam) < _lam_key(best):
            best = lam
    return best


def barvinok_decompose(c: HalfOpenCone, target_index: int = 1, on_edge=None) -> SignedConeList:
    """Signed half-open cones of index at most ``target_index`` summing to ``c``.

    The result records ``max_depth`` (longest recursion path) and ``nodes``.
    ``on_edge(parent_index, child_index, depth)`` is called for every
    recursion edge when given.
    """
    if target_index < 1:
        raise ValueError("target_index must be positive")
    n = c.ambient_dim
    gens = c.generators
    if not gens:
        return SignedConeList([(1, c)])
    if rank([list(g) for g in gens]) < len(gens):
        raise RankError("cone is not simplicial")
    if not c.is_full_dimensional:
        ortho = nullspace([list(g) for g in gens], n)
        chart = linear_chart([primitive(o) for o in ortho], n)
        local = tuple(tuple(int(x) for x in chart.back_linear(g)) for g in gens)
        sub = barvinok_decompose(HalfOpenCone((0,) * len(local), local, c.open_flags), target_index, on_edge)
        terms = [(s, HalfOpenCone(c.apex, tuple(tuple(chart.linear(g)) for g in k.generators), k.open_flags))
                 for s, k in sub]
        return SignedConeList(terms, sub.max_depth, sub.nodes).canonical()
    y = direction_for_flags(gens, c.open_flags)
    out: List[Tuple[int, HalfOpenCone]] = []
    stats = {"depth": 0, "nodes": 0}
    stack = [(1, gens, index(c), 0)]
    while stack:
        sign, g, dd, depth = stack.pop()
        stats["nodes"] += 1
        stats["depth"] = max(stats["depth"], depth)
        if dd <= target_index:
            out.append((sign, HalfOpenCone(c.apex, g, flags_from_direction(g, y))))
            continue
        u, lam = short_vector(g)
        if all(x <= 0 for x in lam):
            u = tuple(-x for x in u)
            lam = tuple(-x for x in lam)
        for i, li in enumerate(lam):
            if li == 0:
                continue
            child = g[:i] + (u,) + g[i + 1:]
            cd = abs(det(from_columns(child)))
            if cd >= dd or cd != abs(li) * dd:
                raise DecompositionError("index did not decrease")
            if on_edge is not None:
                on_edge(dd, cd, depth + 1)
            stack.append((sign * (1 if li > 0 else -1), child, cd, depth + 1))
    res = SignedConeList(out, stats["depth"], stats["nodes"])
    return res.canonical()


__all__ = [
    "SignedConeList",
    "LinealityError",
    "DecompositionError",
    "lex_sign",
    "flags_from_direction",
    "direction_for_flags",
    "triangulate_cone",
    "brion",
    "short_vector",
    "barvinok_decompose",
]
