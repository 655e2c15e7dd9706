"""Rational polyhedra, partial polytopal complexes and boolean formulas.

A :class:`Polyhedron` is stored as rows ``b + a.x >= 0`` (``> 0`` when the
row is strict) plus equations ``b + a.x = 0``.  Feasibility questions are
answered exactly by Fourier-Motzkin elimination with strictness tracking,
which is fine at the handful of variables this library targets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Tuple

from .exactmath import (
    as_rational,
    integer_row,
    integer_solutions,
    inverse,
    lcm,
    nullspace,
    primitive,
    rank,
    rational_str,
    row_reduce,
)


class PolyhedronError(ValueError):
    pass


class UnboundedError(PolyhedronError):
    pass


class EmptyError(PolyhedronError):
    pass


@dataclass(frozen=True)
class Inequality:
    b: Fraction
    a: Tuple[Fraction, ...]
    strict: bool = False

    def value(self, x) -> Fraction:
        return self.b + sum(ai * xi for ai, xi in zip(self.a, x))

    def holds(self, x) -> bool:
        v = self.value(x)
        return v > 0 if self.strict else v >= 0


@dataclass(frozen=True)
class Equation:
    b: Fraction
    a: Tuple[Fraction, ...]

    def value(self, x) -> Fraction:
        return self.b + sum(ai * xi for ai, xi in zip(self.a, x))


def ineq(b, a, strict=False) -> Inequality:
    return Inequality(as_rational(b), tuple(as_rational(x) for x in a), bool(strict))


def eq(b, a) -> Equation:
    return Equation(as_rational(b), tuple(as_rational(x) for x in a))


@dataclass(frozen=True)
class Polyhedron:
    """``{x in R^dim : every inequality and equation holds}``."""
    dim: int
    inequalities: Tuple[Inequality, ...] = ()
    equations: Tuple[Equation, ...] = ()

    def __post_init__(self):
        if self.dim < 0:
            raise PolyhedronError("negative dimension")
        for r in self.inequalities + self.equations:
            if len(r.a) != self.dim:
                raise PolyhedronError(
                    f"row has {len(r.a)} coefficients, expected {self.dim}")

    def contains(self, x) -> bool:
        return (all(r.holds(x) for r in self.inequalities)
                and all(e.value(x) == 0 for e in self.equations))

    @property
    def is_closed(self) -> bool:
        return not any(r.strict for r in self.inequalities)

    def closure(self) -> "Polyhedron":
        return Polyhedron(self.dim, tuple(Inequality(r.b, r.a, False) for r in self.inequalities),
                          self.equations)

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if other.dim != self.dim:
            raise PolyhedronError("dimension mismatch")
        return Polyhedron(self.dim, self.inequalities + other.inequalities,
                          self.equations + other.equations)

    @classmethod
    def box(cls, lower, upper, strict_lower=False, strict_upper=False) -> "Polyhedron":
        n = len(lower)
        rows = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            rows.append(ineq(-Fraction(lower[i]), e, strict_lower))
            e = [0] * n
            e[i] = -1
            rows.append(ineq(Fraction(upper[i]), e, strict_upper))
        return cls(n, tuple(rows))

    @classmethod
    def simplex(cls, d: int) -> "Polyhedron":
        """Standard simplex ``x >= 0, sum x <= 1`` in R^d."""
        rows = [ineq(0, [int(i == j) for j in range(d)]) for i in range(d)]
        rows.append(ineq(1, [-1] * d))
        return cls(d, tuple(rows))

    @classmethod
    def from_vertices(cls, points) -> "Polyhedron":
        """H-description of the convex hull of full-dimensional rational points."""
        pts = sorted({tuple(as_rational(x) for x in p) for p in points})
        n = len(pts[0])
        if n == 0:
            return cls(0)
        if rank([[x - y for x, y in zip(p, pts[0])] for p in pts[1:]]) < n:
            raise PolyhedronError("points are not full-dimensional")
        rows = {}
        for sub in itertools.combinations(range(len(pts)), n):
            base = pts[sub[0]]
            diffs = [[x - y for x, y in zip(pts[i], base)] for i in sub[1:]]
            ns = nullspace(diffs, n)
            if len(ns) != 1:
                continue
            a = ns[0]
            b = -sum(x * y for x, y in zip(a, base))
            vals = [b + sum(x * y for x, y in zip(a, p)) for p in pts]
            if all(v >= 0 for v in vals):
                pass
            elif all(v <= 0 for v in vals):
                a, b = tuple(-x for x in a), -b
            else:
                continue
            ib, ia = integer_row(b, a)
            rows[(ib, ia)] = ineq(ib, ia)
        return cls(n, tuple(rows[k] for k in sorted(rows)))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "inequalities": [{"b": rational_str(r.b), "a": [rational_str(x) for x in r.a],
                              "strict": r.strict} for r in self.inequalities],
            "equations": [{"b": rational_str(e.b), "a": [rational_str(x) for x in e.a]}
                          for e in self.equations],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polyhedron":
        n = int(data["dim"])
        ineqs = tuple(ineq(r["b"], r["a"], r.get("strict", False))
                      for r in data.get("inequalities", []))
        eqs = tuple(eq(r["b"], r["a"]) for r in data.get("equations", []))
        return cls(n, ineqs, eqs)


@dataclass(frozen=True)
class PartialComplex:
    """Signed list of half-open polyhedra; disjoint when every sign is +1."""
    pieces: Tuple[Tuple[int, Polyhedron], ...]

    @property
    def dim(self) -> int:
        return self.pieces[0][1].dim if self.pieces else 0

    def multiplicity(self, x) -> int:
        return sum(s for s, p in self.pieces if p.contains(x))


# ---------------------------------------------------------------------------
# Fourier-Motzkin
# ---------------------------------------------------------------------------

# Internal rows: (b, a, strict) with a primitive integer vector and b rational,
# meaning b + a.x >= 0 (> 0 when strict).
_Row = Tuple[Fraction, Tuple[int, ...], bool]


def _norm(b, a, strict) -> _Row:
    b = Fraction(b)
    den = 1
    for x in a:
        d = getattr(x, "denominator", 1)
        if d != 1:
            den = den * d // gcd(den, d)
    ia = [int(x) for x in a] if den == 1 else [int(x * den) for x in a]
    g = 0
    for x in ia:
        g = gcd(g, x)
    if g == 0:
        return b, tuple(ia), strict
    return b * den / g, tuple(x // g for x in ia), strict


def _dedup(rows) -> Optional[List[_Row]]:
    """Keep the tightest row per direction; ``None`` signals a violated constant row."""
    best: Dict[Tuple[int, ...], Tuple[int, bool]] = {}
    for b, a, s in rows:
        if not any(a):
            if b < 0 or (b == 0 and s):
                return None
            continue
        cur = best.get(a)
        if cur is None or b < cur[0] or (b == cur[0] and s and not cur[1]):
            best[a] = (b, s)
    out = [(b, a, s) for a, (b, s) in best.items()]
    for b, a, s in out:
        neg = tuple(-x for x in a)
        if neg in best:
            b2, s2 = best[neg]
            tot = b + b2
            if tot < 0 or (tot == 0 and (s or s2)):
                return None
    return out


def _combine(p: _Row, q: _Row, j: int) -> _Row:
    cp, cq = p[1][j], -q[1][j]
    b = cq * p[0] + cp * q[0]
    a = [cq * x + cp * y for x, y in zip(p[1], q[1])]
    g = 0
    for x in a:
        g = gcd(g, x)
    if g > 1:
        b /= g
        a = [x // g for x in a]
    return b, tuple(a), p[2] or q[2]


def _fm_stages(rows: List[_Row], n: int) -> Optional[List[List[_Row]]]:
    stages = []
    cur = _dedup(rows)
    if cur is None:
        return None
    for j in range(n - 1, -1, -1):
        stages.append(cur)
        pos = [r for r in cur if r[1][j] > 0]
        neg = [r for r in cur if r[1][j] < 0]
        nxt = [r for r in cur if r[1][j] == 0]
        for p in pos:
            for q in neg:
                nxt.append(_combine(p, q, j))
        cur = _dedup(nxt)
        if cur is None:
            return None
    stages.reverse()
    return stages


def _to_rows(ineqs, eqs=()) -> List[_Row]:
    rows = [_norm(r.b, r.a, r.strict) for r in ineqs]
    for e in eqs:
        rows.append(_norm(e.b, e.a, False))
        rows.append(_norm(-e.b, [-x for x in e.a], False))
    return rows


def _feasible_rows(rows: List[_Row], n: int) -> bool:
    return _fm_stages(rows, n) is not None


def _witness(rows: List[_Row], n: int) -> Optional[Tuple[Fraction, ...]]:
    stages = _fm_stages(rows, n)
    if stages is None:
        return None
    x: List[Fraction] = []
    for j in range(n):
        lo = hi = None
        lo_s = hi_s = False
        for b, a, s in stages[j]:
            c = a[j]
            if c == 0:
                continue
            rest = b + sum(a[i] * x[i] for i in range(j))
            bound = Fraction(-rest, c)
            if c > 0:
                if lo is None or bound > lo or (bound == lo and s):
                    lo, lo_s = bound, s
            else:
                if hi is None or bound < hi or (bound == hi and s):
                    hi, hi_s = bound, s
        if lo is not None and hi is not None:
            v = lo if lo == hi else (lo + hi) / 2
        elif lo is not None:
            v = lo + 1 if lo_s else lo
        elif hi is not None:
            v = hi - 1 if hi_s else hi
        else:
            v = Fraction(0)
        x.append(v)
    return tuple(x)


def is_empty(p: Polyhedron) -> bool:
    return not _feasible_rows(_to_rows(p.inequalities, p.equations), p.dim)


def find_point(p: Polyhedron) -> Optional[Tuple[Fraction, ...]]:
    """Some rational point of ``p`` (exact), or ``None`` when empty."""
    return _witness(_to_rows(p.inequalities, p.equations), p.dim)


def strictly_feasible_direction(functionals, signs, n: int):
    """A vector y with ``sign(f.y) == s`` for each functional, or ``None``."""
    rows = []
    for f, s in zip(functionals, signs):
        rows.append(_norm(0, [s * x for x in f], True))
    return _witness(rows, n)


def _negation(r: Inequality) -> Inequality:
    return Inequality(-r.b, tuple(-x for x in r.a), not r.strict)


def is_bounded(p: Polyhedron) -> bool:
    """Exact test that the recession cone of the closure is trivial."""
    n = p.dim
    rec = [(0, integer_row(0, r.a)[1], False) for r in p.inequalities]
    for e in p.equations:
        a = integer_row(0, e.a)[1]
        rec.append((0, a, False))
        rec.append((0, tuple(-x for x in a), False))
    for i in range(n):
        for s in (1, -1):
            unit = tuple(s * int(i == j) for j in range(n))
            if _feasible_rows(rec + [(-1, unit, False)], n):
                return False
    return True


def implied_equalities(p: Polyhedron) -> Polyhedron:
    """Move weak rows that are constant zero over ``p`` into the equations."""
    # a weak row is an implicit equality iff its strict version is infeasible;
    # this does not depend on which other rows were already converted
    base = _to_rows(p.inequalities, p.equations)
    ineqs, eqs = [], list(p.equations)
    for i, r in enumerate(p.inequalities):
        if not r.strict:
            probe = base[:i] + base[i + 1:] + [_norm(r.b, r.a, True)]
            if not _feasible_rows(probe, p.dim):
                eqs.append(Equation(r.b, r.a))
                continue
        ineqs.append(r)
    return Polyhedron(p.dim, tuple(ineqs), tuple(eqs))


def _independent_equations(p: Polyhedron) -> Tuple[Equation, ...]:
    kept, mat = [], []
    for e in p.equations:
        trial = mat + [list(e.a) + [e.b]]
        if rank(trial) > len(mat):
            mat = trial
            kept.append(e)
    return tuple(kept)


def irredundant(p: Polyhedron) -> Polyhedron:
    """Drop rows whose removal does not change the (half-open) point set."""
    ineqs = list(p.inequalities)
    eqs = _independent_equations(p)
    i = 0
    while i < len(ineqs):
        r = ineqs[i]
        others = ineqs[:i] + ineqs[i + 1:]
        if not _feasible_rows(_to_rows(others + [_negation(r)], eqs), p.dim):
            del ineqs[i]
        else:
            i += 1
    return Polyhedron(p.dim, tuple(ineqs), eqs)


@lru_cache(maxsize=4096)
def canonical(p: Polyhedron) -> Polyhedron:
    """Implied equalities made explicit, then redundant rows removed.

    Raises :class:`EmptyError` for an empty input.
    """
    if is_empty(p):
        raise EmptyError("polyhedron is empty")
    return irredundant(implied_equalities(p))


def affine_dimension(p: Polyhedron) -> int:
    q = implied_equalities(p)
    if not q.equations:
        return p.dim
    return p.dim - rank([list(e.a) + [e.b] for e in q.equations])


def relative_interior(p: Polyhedron) -> Polyhedron:
    """Make every non-constant inequality strict; implied equalities become equations."""
    if is_empty(p):
        return Polyhedron(p.dim, tuple(Inequality(r.b, r.a, True) for r in p.inequalities),
                          p.equations)
    q = implied_equalities(p)
    return Polyhedron(q.dim, tuple(Inequality(r.b, r.a, True) for r in q.inequalities),
                      q.equations)


def dilate(p: Polyhedron, k: int) -> Polyhedron:
    if int(k) != k or k <= 0:
        raise ValueError("dilation factor must be a positive integer")
    return Polyhedron(
        p.dim,
        tuple(Inequality(k * r.b, r.a, r.strict) for r in p.inequalities),
        tuple(Equation(k * e.b, e.a) for e in p.equations),
    )


def dilate_complex(x: PartialComplex, k: int) -> PartialComplex:
    return PartialComplex(tuple((s, dilate(p, k)) for s, p in x.pieces))


def tighten(p: Polyhedron) -> Polyhedron:
    """Closed polyhedron with the same integer points.

    Each row ``b + a.x >= 0`` (or ``> 0``) is scaled to integers, divided by
    the content of ``a`` and rounded; strict rows gain a unit of slack.
    """
    rows = []
    for r in p.inequalities:
        b, a = integer_row(r.b, r.a)
        g = 0
        for x in a:
            g = gcd(g, x)
        if g == 0:
            ok = b > 0 if r.strict else b >= 0
            rows.append(Inequality(Fraction(0 if ok else -1), a, False))
            continue
        a = tuple(x // g for x in a)
        # a.x is a multiple of g on integer points
        nb = -((-b) // g + 1) if r.strict else b // g
        rows.append(Inequality(Fraction(nb), tuple(Fraction(x) for x in a), False))
    return Polyhedron(p.dim, tuple(rows), p.equations)


# ---------------------------------------------------------------------------
# Vertices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexSet:
    vertices: Tuple[Tuple[Fraction, ...], ...]
    edges: Tuple[Tuple[Tuple[int, ...], ...], ...]

    def __len__(self):
        return len(self.vertices)


@lru_cache(maxsize=4096)
def vertices(p: Polyhedron) -> VertexSet:
    """Vertices of the closure of a bounded polyhedron with primitive edge directions.

    Exhaustive active-set enumeration; vertices come out sorted.
    """
    if is_empty(p.closure()):
        raise EmptyError("polyhedron is empty")
    if not is_bounded(p):
        raise UnboundedError("polyhedron is unbounded")
    q = irredundant(implied_equalities(p.closure()))
    n = q.dim
    eq_rows = [list(e.a) for e in q.equations]
    eq_rhs = [-e.b for e in q.equations]
    need = n - len(eq_rows)
    rows = q.inequalities
    found: Dict[Tuple[Fraction, ...], frozenset] = {}
    if need == 0:
        red, piv = row_reduce([r + [b] for r, b in zip(eq_rows, eq_rhs)])
        x = [Fraction(0)] * n
        for r, c in zip(red, piv):
            x[c] = r[n]
        found[tuple(x)] = frozenset()
    else:
        for sub in itertools.combinations(range(len(rows)), need):
            mat = eq_rows + [list(rows[i].a) for i in sub]
            rhs = eq_rhs + [-rows[i].b for i in sub]
            red, piv = row_reduce([r + [b] for r, b in zip(mat, rhs)])
            if len(piv) != n or piv[-1] == n:
                continue
            x = [Fraction(0)] * n
            for r, c in zip(red, piv):
                x[c] = r[n]
            x = tuple(x)
            if x in found:
                continue
            if all(r.value(x) >= 0 for r in rows):
                found[x] = frozenset(i for i, r in enumerate(rows) if r.value(x) == 0)
    verts = sorted(found)
    edges = []
    for v in verts:
        dirs = []
        for w in verts:
            if w == v:
                continue
            common = found[v] & found[w]
            mat = eq_rows + [list(rows[i].a) for i in common]
            if rank(mat) == n - 1:
                dirs.append(primitive([y - x for x, y in zip(v, w)]))
        edges.append(tuple(sorted(dirs)))
    return VertexSet(tuple(verts), tuple(edges))


def vertex_lcm(vs: VertexSet) -> int:
    return lcm(*(x.denominator for v in vs.vertices for x in v)) or 1


@dataclass(frozen=True)
class ConeOver:
    """Generators ``ell * (w, 1)`` of the cone over a polytope with vertices ``w``."""
    ell: int
    generators: Tuple[Tuple[int, ...], ...]


def cone_over(p: Polyhedron) -> ConeOver:
    vs = vertices(p)
    ell = vertex_lcm(vs)
    gens = tuple(tuple(int(ell * x) for x in v) + (ell,) for v in vs.vertices)
    return ConeOver(ell, gens)


# ---------------------------------------------------------------------------
# Lattice charts: integer points of an affine subspace as x0 + N z
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeChart:
    """Bijection ``z -> x0 + N z`` between Z^m and the integer points of an affine space."""
    x0: Tuple[int, ...]
    basis: Tuple[Tuple[int, ...], ...]  # columns of N
    _left: Tuple[Tuple[Fraction, ...], ...] = field(repr=False, default=())

    @property
    def m(self) -> int:
        return len(self.basis)

    def forward(self, z) -> Tuple:
        n = len(self.x0)
        return tuple(self.x0[i] + sum(c[i] * zj for c, zj in zip(self.basis, z)) for i in range(n))

    def linear(self, z) -> Tuple:
        n = len(self.x0)
        return tuple(sum(c[i] * zj for c, zj in zip(self.basis, z)) for i in range(n))

    def back(self, x) -> Tuple:
        d = [xi - oi for xi, oi in zip(x, self.x0)]
        return tuple(sum(r[i] * d[i] for i in range(len(d))) for r in self._left)

    def back_linear(self, x) -> Tuple:
        return tuple(sum(r[i] * x[i] for i in range(len(x))) for r in self._left)

    def pull_row(self, b, a):
        """Row ``b + a.x`` rewritten in chart coordinates."""
        nb = b + sum(ai * xi for ai, xi in zip(a, self.x0))
        na = tuple(sum(ai * c[i] for i, ai in enumerate(a)) for c in self.basis)
        return nb, na


def _make_chart(x0, basis, n) -> LatticeChart:
    m = len(basis)
    if m == 0:
        return LatticeChart(tuple(x0), (), ())
    # complete with unit vectors; the left inverse is exact on the span of the basis
    cur = [list(c) for c in basis]
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        if rank(cur + [e]) > len(cur):
            cur.append(e)
        if len(cur) == n:
            break
    full = [list(r) for r in zip(*cur)]
    inv = inverse(full)
    return LatticeChart(tuple(x0), tuple(tuple(c) for c in basis), tuple(inv[:m]))


def lattice_chart(p: Polyhedron) -> Optional[LatticeChart]:
    """Chart of the integer points of the affine hull given by ``p.equations``."""
    n = p.dim
    if not p.equations:
        basis = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        return _make_chart((0,) * n, basis, n)
    sol = integer_solutions([list(e.a) for e in p.equations], [-e.b for e in p.equations])
    if sol is None:
        return None
    x0, kernel = sol
    return _make_chart(x0, kernel, n)


def linear_chart(functionals, n: int) -> LatticeChart:
    """Chart of ``{x in Z^n : f.x = 0 for all f}``."""
    if not functionals:
        return lattice_chart(Polyhedron(n))
    sol = integer_solutions([list(f) for f in functionals], [0] * len(functionals))
    x0, kernel = sol
    return _make_chart((0,) * n, kernel, n)


def pull_back(p: Polyhedron, chart: LatticeChart) -> Polyhedron:
    """Inequalities of ``p`` expressed in the coordinates of ``chart``."""
    rows = []
    for r in p.inequalities:
        b, a = chart.pull_row(r.b, r.a)
        rows.append(Inequality(Fraction(b), tuple(Fraction(x) for x in a), r.strict))
    return Polyhedron(chart.m, tuple(rows))


# ---------------------------------------------------------------------------
# Boolean formulas
# ---------------------------------------------------------------------------

_RELS = ("<", "<=", "=", "!=", ">=", ">")
_NEGATE = {"<": ">=", "<=": ">", "=": "!=", "!=": "=", ">=": "<", ">": "<="}
_SIGNS = {"<": {-1}, "<=": {-1, 0}, "=": {0}, ">=": {0, 1}, ">": {1}}


@dataclass(frozen=True)
class Atom:
    """``coeffs_x . x + coeff_k * k  REL  0``."""
    coeffs_x: Tuple[Fraction, ...]
    coeff_k: Fraction
    rel: str

    def __post_init__(self):
        if self.rel not in _RELS:
            raise ValueError(f"unknown relation {self.rel!r}")

    def evaluate(self, x, k) -> bool:
        v = sum(c * xi for c, xi in zip(self.coeffs_x, x)) + self.coeff_k * k
        return {"<": v < 0, "<=": v <= 0, "=": v == 0, "!=": v != 0,
                ">=": v >= 0, ">": v > 0}[self.rel]


@dataclass(frozen=True)
class Formula:
    op: str
    args: Tuple["Formula", ...] = ()
    atom: Optional[Atom] = None

    def evaluate(self, x, k) -> bool:
        if self.op == "atom":
            return self.atom.evaluate(x, k)
        if self.op == "not":
            return not self.args[0].evaluate(x, k)
        if self.op == "and":
            return all(a.evaluate(x, k) for a in self.args)
        if self.op == "or":
            return any(a.evaluate(x, k) for a in self.args)
        raise ValueError(f"unknown op {self.op!r}")

    def to_json(self) -> dict:
        if self.op == "atom":
            return {"op": "atom", "atom": {
                "coeffs_x": [rational_str(c) for c in self.atom.coeffs_x],
                "coeff_k": rational_str(self.atom.coeff_k), "rel": self.atom.rel}}
        return {"op": self.op, "args": [a.to_json() for a in self.args]}

    @classmethod
    def from_json(cls, data: dict) -> "Formula":
        op = data["op"]
        if op == "atom":
            a = data["atom"]
            return atom(a["coeffs_x"], a.get("coeff_k", 0), a["rel"])
        if op not in ("and", "or", "not"):
            raise ValueError(f"unknown op {op!r}")
        args = tuple(cls.from_json(x) for x in data.get("args", []))
        if op == "not" and len(args) != 1:
            raise ValueError("'not' takes exactly one argument")
        return cls(op, args)


def atom(coeffs_x, coeff_k, rel) -> Formula:
    return Formula("atom", (), Atom(tuple(as_rational(c) for c in coeffs_x), as_rational(coeff_k), rel))


def And(*args: Formula) -> Formula:
    return Formula("and", tuple(args))


def Or(*args: Formula) -> Formula:
    return Formula("or", tuple(args))


def Not(f: Formula) -> Formula:
    return Formula("not", (f,))


def Implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


TRUE = And()


def less(d: int, i: int, j: int) -> Formula:
    """``x_i < x_j`` in d variables (0-based)."""
    c = [0] * d
    c[i], c[j] = 1, -1
    return atom(c, 0, "<")


def _nnf(f: Formula, neg: bool = False) -> Formula:
    if f.op == "atom":
        a = f.atom
        return Formula("atom", (), Atom(a.coeffs_x, a.coeff_k, _NEGATE[a.rel] if neg else a.rel))
    if f.op == "not":
        return _nnf(f.args[0], not neg)
    op = f.op
    if neg:
        op = "or" if op == "and" else "and"
    return Formula(op, tuple(_nnf(a, neg) for a in f.args))


# A literal is (b, a, rel) in canonical integer form: first nonzero of a positive.
_Lit = Tuple[int, Tuple[int, ...], str]
_FLIP = {"<": ">", "<=": ">=", "=": "=", "!=": "!=", ">=": "<=", ">": "<"}


def _literal(a: Atom) -> List[_Lit]:
    b, coeffs = integer_row(a.coeff_k, a.coeffs_x)
    rel = a.rel
    first = next((c for c in coeffs if c), 0)
    if first < 0:
        b, coeffs, rel = -b, tuple(-c for c in coeffs), _FLIP[rel]
    if rel == "!=":
        return [(b, coeffs, "<"), (b, coeffs, ">")]
    return [(b, coeffs, rel)]


def _lits_contradict(x: _Lit, y: _Lit) -> bool:
    return x[0] == y[0] and x[1] == y[1] and not (_SIGNS[x[2]] & _SIGNS[y[2]])


def _cells_disjoint_syntactic(c1, c2) -> bool:
    by_key = {}
    for l in c1:
        by_key.setdefault((l[0], l[1]), []).append(l)
    for l in c2:
        for m in by_key.get((l[0], l[1]), ()):
            if _lits_contradict(l, m):
                return True
    return False


def _cell_polyhedron(cell, d: int) -> Polyhedron:
    ineqs, eqs = [], []
    for b, a, rel in cell:
        fb, fa = Fraction(b), tuple(Fraction(x) for x in a)
        if rel == "=":
            eqs.append(Equation(fb, fa))
        elif rel in (">=", ">"):
            ineqs.append(Inequality(fb, fa, rel == ">"))
        else:
            ineqs.append(Inequality(-fb, tuple(-x for x in fa), rel == "<"))
    return Polyhedron(d, tuple(ineqs), tuple(eqs))


def _cell_feasible(cell, d) -> bool:
    for i, x in enumerate(cell):
        for y in cell[i + 1:]:
            if _lits_contradict(x, y):
                return False
    return not is_empty(_cell_polyhedron(cell, d))


def _dnf(f: Formula, d: int) -> List[tuple]:
    if f.op == "atom":
        return [(l,) for l in _literal(f.atom)]
    if f.op == "or":
        out = []
        for a in f.args:
            out.extend(_dnf(a, d))
        return out
    # and: incremental product with pruning
    cells = [()]
    for a in f.args:
        sub = _dnf(a, d)
        nxt = []
        for c in cells:
            for s in sub:
                merged = c + tuple(l for l in s if l not in c)
                if _cell_feasible(merged, d):
                    nxt.append(merged)
        cells = nxt
        if not cells:
            break
    return cells


def _negate_lit(l: _Lit) -> List[_Lit]:
    b, a, rel = l
    nr = _NEGATE[rel]
    if nr == "!=":
        return [(b, a, "<"), (b, a, ">")]
    return [(b, a, nr)]


def _subtract(frag: tuple, cell: tuple, d: int) -> List[tuple]:
    """Disjoint cells covering ``frag`` minus ``cell``."""
    out = []
    prefix = frag
    for l in cell:
        for nl in _negate_lit(l):
            cand = prefix + (nl,)
            if _cell_feasible(cand, d):
                out.append(cand)
        prefix = prefix + (l,)
        if not _cell_feasible(prefix, d):
            break
    return out


@dataclass(frozen=True)
class CompiledFormula:
    """Disjoint half-open pieces at ``k = 1``; call with ``k`` to get the dilate."""
    dim: int
    base: PartialComplex

    def __call__(self, k: int) -> PartialComplex:
        return dilate_complex(self.base, k)


def compile_formula(f: Formula, d: int) -> CompiledFormula:
    """Disjoint partial polytopal complex whose k-th dilate is ``{x : f(x, k)}``.

    Atoms are homogeneous in (x, k), so the solution set at ``k`` is the
    k-th dilate of the set at ``k = 1``.  Cells of the disjunctive normal
    form are made disjoint by first-match splitting in input order.
    """
    for a in _atoms(f):
        if len(a.coeffs_x) != d:
            raise ValueError("atom arity does not match dimension")
    cells = _dnf(_nnf(f), d)
    pieces = []
    for i, c in enumerate(cells):
        frags = [c]
        for prev in cells[:i]:
            nxt = []
            for fr in frags:
                if _cells_disjoint_syntactic(fr, prev) or not _cell_feasible(fr + prev, d):
                    nxt.append(fr)
                else:
                    nxt.extend(_subtract(fr, prev, d))
            frags = nxt
            if not frags:
                break
        pieces.extend(frags)
    polys = []
    for c in pieces:
        p = _cell_polyhedron(c, d)
        if not is_bounded(p):
            raise UnboundedError("formula has an unbounded solution set")
        polys.append((1, p))
    return CompiledFormula(d, PartialComplex(tuple(polys)))


def _atoms(f: Formula):
    if f.op == "atom":
        yield f.atom
    for a in f.args:
        yield from _atoms(a)
