"""Counting problems phrased as lattice points in dilates.

Each front-end builds a polyhedron or partial complex whose k-th dilate
holds the objects being counted, and pairs it with a naive enumerator.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .genfunc import ZERO, QuasiPolynomial, ehrhart_qp
from .polyhedra import (
    And,
    Equation,
    Formula,
    PartialComplex,
    Polyhedron,
    atom,
    compile_formula,
    ineq,
    is_empty,
)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: Tuple[Tuple[int, int], ...] = ()
    directed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")

    @property
    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def to_json(self) -> dict:
        return {"vertices": self.n, "edges": [list(e) for e in self.edges], "directed": self.directed}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        return cls(int(data["vertices"]), tuple(tuple(e) for e in data.get("edges", [])),
                   bool(data.get("directed", False)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple(itertools.combinations(range(n), 2)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, tuple((i, (i + 1) % n) for i in range(n)))


# ---------------------------------------------------------------------------
# Proper colourings
# ---------------------------------------------------------------------------

def _cube_bounds(n: int, open_top: bool = False) -> List[Formula]:
    out = []
    for v in range(n):
        e = [0] * n
        e[v] = 1
        out.append(atom(e, 0, ">"))
        out.append(atom(e, -1, "<" if open_top else "<="))
    return out


def _edge_atoms(g: Graph) -> List[Formula]:
    out = []
    for u, v in g.edges:
        c = [0] * g.n
        c[u], c[v] = 1, -1
        out.append(atom(c, 0, "!="))
    return out


def chromatic_formula(g: Graph) -> Formula:
    """``0 < x_v <= k`` for every vertex and ``x_u != x_v`` along every edge."""
    return And(*_cube_bounds(g.n), *_edge_atoms(g))


def chromatic_qp(g: Graph, method: str = "interpolation") -> QuasiPolynomial:
    """Chromatic polynomial as the Ehrhart function of the half-open cube minus the edge hyperplanes."""
    if g.directed:
        raise ValueError("chromatic polynomial needs an undirected graph")
    if g.has_loops:
        return ZERO
    if g.n == 0:
        return QuasiPolynomial.polynomial([1])
    cx = compile_formula(chromatic_formula(g), g.n)
    return ehrhart_qp(cx.base, method)


def open_cube_chromatic_qp(g: Graph, method: str = "interpolation") -> QuasiPolynomial:
    """Same model on the open cube ``(0, k)^V``; equals ``chi(k - 1)``."""
    if g.n == 0:
        return QuasiPolynomial.polynomial([1])
    f = And(*_cube_bounds(g.n, open_top=True), *_edge_atoms(g))
    return ehrhart_qp(compile_formula(f, g.n).base, method)


def chromatic_shift(qp: QuasiPolynomial) -> QuasiPolynomial:
    """``k -> qp(k - 1)``: the open-cube model from the half-open one."""
    return qp.shift(-1)


def _simple_edges(n, edges):
    return tuple(sorted({(min(u, v), max(u, v)) for u, v in edges}))


@lru_cache(maxsize=None)
def _dc(n: int, edges: Tuple[Tuple[int, int], ...]) -> Tuple[int, ...]:
    if any(u == v for u, v in edges):
        return (0,) * (n + 1)
    if not edges:
        return (0,) * n + (1,)
    (u, v), rest = edges[0], edges[1:]
    deleted = _dc(n, rest)
    # contract v into u, relabel n-1 onto v
    def relabel(x):
        if x == v:
            x = u
        return v if x == n - 1 and v != n - 1 else x
    contracted = _dc(n - 1, _simple_edges(n - 1, ((relabel(a), relabel(b)) for a, b in rest)))
    return tuple(a - b for a, b in zip(deleted, contracted + (0,)))


def chromatic_oracle(g: Graph) -> QuasiPolynomial:
    """Deletion-contraction; ``P(G) = P(G - e) - P(G / e)``."""
    if g.has_loops:
        return ZERO
    coeffs = _dc(g.n, _simple_edges(g.n, g.edges))
    return QuasiPolynomial.polynomial(coeffs)


def _is_acyclic(n, arcs) -> bool:
    indeg = [0] * n
    out: Dict[int, List[int]] = {i: [] for i in range(n)}
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    stack = [i for i in range(n) if indeg[i] == 0]
    seen = 0
    while stack:
        u = stack.pop()
        seen += 1
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    return seen == n


def acyclic_orientation_count(g: Graph) -> int:
    total = 0
    for flips in itertools.product((False, True), repeat=len(g.edges)):
        arcs = [(v, u) if f else (u, v) for (u, v), f in zip(g.edges, flips)]
        if _is_acyclic(g.n, arcs):
            total += 1
    return total


def proper_colourings(g: Graph, k: int) -> int:
    """Brute force over ``[k]^V``."""
    return sum(all(c[u] != c[v] for u, v in g.edges)
               for c in itertools.product(range(k), repeat=g.n))


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------

def partition_polytope(m: int) -> Polyhedron:
    """``x_1 >= ... >= x_m >= 0`` with ``sum x = 1``; its k-th dilate holds partitions of k."""
    if m < 1:
        raise ValueError("m must be positive")
    rows = []
    for i in range(m - 1):
        a = [0] * m
        a[i], a[i + 1] = 1, -1
        rows.append(ineq(0, a))
    a = [0] * m
    a[m - 1] = 1
    rows.append(ineq(0, a))
    return Polyhedron(m, tuple(rows), (Equation(Fraction(-1), tuple(Fraction(1) for _ in range(m))),))


def restricted_partition_qp(m: int, method: str = "interpolation") -> QuasiPolynomial:
    return ehrhart_qp(partition_polytope(m), method)


def partitions_at_most(k: int, m: int) -> int:
    """Partitions of ``k`` into at most ``m`` parts (simple recursion)."""
    @lru_cache(maxsize=None)
    def p(n, parts, largest):
        if n == 0:
            return 1
        if parts == 0:
            return 0
        return sum(p(n - x, parts - 1, x) for x in range(1, min(n, largest) + 1))
    return p(k, m, k)


def distinct_partitions_exactly(k: int, m: int) -> int:
    return sum(1 for c in itertools.combinations(range(1, k + 1), m) if sum(c) == k)


def partition_reciprocity_check(m: int, k: int, qp: QuasiPolynomial = None) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    if qp is None:
        qp = restricted_partition_qp(m)
    return abs(qp.value(-k)) == distinct_partitions_exactly(k, m)


# ---------------------------------------------------------------------------
# Nowhere-zero flows
# ---------------------------------------------------------------------------

def incidence(g: Graph) -> List[List[int]]:
    a = [[0] * len(g.edges) for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if u != v:
            a[u][e] += 1
            a[v][e] -= 1
    return a


def flow_complex(g: Graph) -> PartialComplex:
    """Open sections ``{y in (0,1)^E : A y = b}`` over the feasible integer ``b``.

    ``y`` in ``{1..k-1}^E`` is a nowhere-zero Z_k-flow exactly when ``y / k``
    lies in one of these sections.  Row ``v`` of ``A y`` ranges over the open
    interval ``(-indeg v, outdeg v)``, which bounds the candidates for ``b``.
    """
    if not g.directed:
        raise ValueError("flow model needs a directed graph")
    a = incidence(g)
    m = len(g.edges)
    ranges = []
    for row in a:
        lo = sum(x for x in row if x < 0)
        hi = sum(x for x in row if x > 0)
        ranges.append(range(lo + 1, hi) if (lo, hi) != (0, 0) else range(0, 1))
    box = []
    for e in range(m):
        u = [0] * m
        u[e] = 1
        box.append(ineq(0, u, True))
        box.append(ineq(1, [-x for x in u], True))
    pieces = []
    for b in itertools.product(*ranges):
        if sum(b) != 0:
            continue
        eqs = tuple(Equation(Fraction(-bv), tuple(Fraction(x) for x in row))
                    for row, bv in zip(a, b) if any(row))
        p = Polyhedron(m, tuple(box), eqs)
        if not is_empty(p):
            pieces.append((1, p))
    return PartialComplex(tuple(pieces))


def modular_flow_qp(g: Graph, method: str = "interpolation") -> QuasiPolynomial:
    if any(u == v for u, v in g.edges):
        # a loop carries any nonzero value
        rest = Graph(g.n, tuple(e for e in g.edges if e[0] != e[1]), True)
        loops = sum(1 for u, v in g.edges if u == v)
        base = modular_flow_qp(rest, method)
        factor = QuasiPolynomial.polynomial([-1, 1])
        for _ in range(loops):
            base = _qp_mul(base, factor)
        return base
    if not g.edges:
        return QuasiPolynomial.polynomial([1])
    cx = flow_complex(g)
    if not cx.pieces:
        return ZERO
    return ehrhart_qp(cx, method)


def _qp_mul(p: QuasiPolynomial, q: QuasiPolynomial) -> QuasiPolynomial:
    if p.period != 1 or q.period != 1:
        raise ValueError("only polynomials")
    out = [Fraction(0)] * (p.degree + q.degree + 1)
    for i, a in enumerate(p.coefficients):
        for j, b in enumerate(q.coefficients):
            out[i + j] += a * b
    return QuasiPolynomial.polynomial(out)


def nowhere_zero_flows(g: Graph, k: int) -> int:
    """Brute force over ``{1..k-1}^E``."""
    a = incidence(g)
    total = 0
    for y in itertools.product(range(1, k), repeat=len(g.edges)):
        if all(sum(r * x for r, x in zip(row, y)) % k == 0 for row in a):
            total += 1
    return total


# ---------------------------------------------------------------------------
# Scheduling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchedulingProblem:
    jobs: int
    formula: Formula = field(default_factory=lambda: And())

    def full_formula(self) -> Formula:
        return And(*_cube_bounds(self.jobs), self.formula)

    def to_json(self) -> dict:
        return {"jobs": self.jobs, "formula": self.formula.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "SchedulingProblem":
        return cls(int(data["jobs"]), Formula.from_json(data.get("formula", {"op": "and", "args": []})))


def scheduling_qp(s: SchedulingProblem, method: str = "interpolation") -> QuasiPolynomial:
    """Schedules ``x in [k]^d`` satisfying the formula (bounds ``0 < x_i <= k`` are implied)."""
    if s.jobs == 0:
        return QuasiPolynomial.polynomial([1])
    cx = compile_formula(s.full_formula(), s.jobs)
    if not cx.base.pieces:
        return ZERO
    return ehrhart_qp(cx.base, method)


def schedules(s: SchedulingProblem, k: int) -> int:
    f = s.formula
    return sum(1 for x in itertools.product(range(1, k + 1), repeat=s.jobs) if f.evaluate(x, k))
