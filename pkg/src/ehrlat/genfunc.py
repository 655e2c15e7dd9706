"""Generating functions, counts, Ehrhart series and quasipolynomials."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple, Union

from .barvinok import (
    barvinok_decompose,
    brion,
    triangulate_cone,
)
from .cones import HalfOpenCone, parallelepiped_points
from .exactmath import integer_row, lcm, rational_str
from .polyhedra import (
    EmptyError,
    Equation,
    Inequality,
    PartialComplex,
    Polyhedron,
    UnboundedError,
    canonical,
    dilate,
    dilate_complex,
    irredundant,
    is_bounded,
    is_empty,
    lattice_chart,
    linear_chart,
    pull_back,
    strictly_feasible_direction,
    tighten,
    vertex_lcm,
    vertices,
)

METHODS = ("fpp", "barvinok")


# ---------------------------------------------------------------------------
# Generating functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenTerm:
    sign: int
    num: Tuple[Tuple[int, ...], ...]
    den: Tuple[Tuple[int, ...], ...]


@dataclass
class GenFunc:
    """``sum sign * (sum_a z^a) / prod (1 - z^b)`` over the terms."""
    dim: int
    terms: List[GenTerm] = field(default_factory=list)

    def __post_init__(self):
        for t in self.terms:
            if any(not any(b) for b in t.den):
                raise ValueError("zero denominator exponent")

    def __len__(self):
        return len(self.terms)

    def to_json(self) -> dict:
        return {"terms": [{"sign": t.sign, "num": [list(a) for a in t.num],
                           "den": [list(b) for b in t.den]} for t in self.terms]}

    @classmethod
    def from_json(cls, data: dict, dim: Optional[int] = None) -> "GenFunc":
        terms = [GenTerm(int(t["sign"]), tuple(tuple(int(x) for x in a) for a in t["num"]),
                         tuple(tuple(int(x) for x in b) for b in t["den"]))
                 for t in data["terms"]]
        if dim is None:
            dim = next((len(a) for t in terms for a in t.num + t.den), 0)
        return cls(dim, terms)


def _cone_terms(sign, cone: HalfOpenCone, method: str):
    if method == "fpp" or not cone.generators:
        yield GenTerm(sign, parallelepiped_points(cone).points, cone.generators)
        return
    for s, leaf in barvinok_decompose(cone):
        yield GenTerm(sign * s, parallelepiped_points(leaf).points, leaf.generators)


def _polyhedron_terms(p: Polyhedron, method: str, sign: int = 1) -> List[GenTerm]:
    q = tighten(p) if not p.is_closed else p
    try:
        q = canonical(q)
    except EmptyError:
        return []
    if not is_bounded(q):
        raise UnboundedError("polyhedron is unbounded")
    chart = lattice_chart(q)
    if chart is None:
        return []
    if chart.m == 0:
        return [GenTerm(sign, (tuple(chart.x0),), ())]
    z = pull_back(q, chart)
    out = []
    for s, c in brion(z):
        for t in _cone_terms(s * sign, c, method):
            num = tuple(tuple(int(x) for x in chart.forward(a)) for a in t.num)
            den = tuple(tuple(int(x) for x in chart.linear(b)) for b in t.den)
            out.append(GenTerm(t.sign, num, den))
    return out


def gen_func(x: Union[Polyhedron, PartialComplex, HalfOpenCone], method: str = "fpp") -> GenFunc:
    """Rational generating function of the integer points of ``x``.

    Polyhedra go through Brion's theorem on vertex cones; ``fpp`` keeps the
    whole fundamental parallelepiped of every triangulated cone as the
    numerator, ``barvinok`` first splits each cone into unimodular pieces.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if isinstance(x, HalfOpenCone):
        if x.generators:
            triangulate_cone(x.generators)  # pointedness check
        return GenFunc(x.ambient_dim, list(_cone_terms(1, x, method)))
    if isinstance(x, PartialComplex):
        terms = []
        for s, p in x.pieces:
            terms.extend(_polyhedron_terms(p, method, s))
        return GenFunc(x.dim, terms)
    return GenFunc(x.dim, _polyhedron_terms(x, method))


# ---------------------------------------------------------------------------
# Specialisation to a count
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli numbers with ``B_1 = -1/2``."""
    if n == 0:
        return Fraction(1)
    return -sum(comb(n + 1, k) * bernoulli(k) for k in range(n)) / (n + 1)


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    return 1 if n < 2 else n * _factorial(n - 1)


def _todd_product(cs, order):
    """Coefficients up to ``t^order`` of ``prod_j x/(e^x - 1)`` at ``x = c_j t``."""
    poly = [Fraction(0)] * (order + 1)
    poly[0] = Fraction(1)
    series = [bernoulli(i) / _factorial(i) for i in range(order + 1)]
    for c in cs:
        f = [series[i] * c ** i for i in range(order + 1)]
        nxt = [Fraction(0)] * (order + 1)
        for i, a in enumerate(poly):
            if a:
                for j in range(order + 1 - i):
                    nxt[i + j] += a * f[j]
        poly = nxt
    return poly


def generic_functional(g: GenFunc) -> Tuple[int, ...]:
    """``(1, M, M^2, ...)`` with no zero pairing against a denominator."""
    mx = max((abs(x) for t in g.terms for b in t.den for x in b), default=0)
    m = mx + 1
    while True:
        lam = tuple(m ** i for i in range(g.dim))
        if all(sum(a * b for a, b in zip(lam, v)) for t in g.terms for v in t.den):
            return lam
        m += 1


def specialize_count(g: GenFunc) -> int:
    """Number of integer points encoded by ``g`` (must describe a finite set)."""
    lam = generic_functional(g)
    total = Fraction(0)
    for t in g.terms:
        d = len(t.den)
        cs = [sum(a * b for a, b in zip(lam, v)) for v in t.den]
        todd = _todd_product(cs, d)
        alphas = [sum(a * b for a, b in zip(lam, p)) for p in t.num]
        acc = Fraction(0)
        for m in range(d + 1):
            pm = sum(a ** m for a in alphas)
            if pm:
                acc += Fraction(pm, _factorial(m)) * todd[d - m]
        prod = 1
        for c in cs:
            prod *= c
        total += t.sign * (-1) ** d * acc / prod
    if total.denominator != 1:
        raise ArithmeticError(f"specialisation produced a non-integer {total}")
    return int(total)


def _term_constant(sign, cs, sums, todd=None):
    """Constant term of ``sign * sum_a e^(alpha t) / prod (1 - e^(c t))`` from power sums."""
    d = len(cs)
    if todd is None:
        todd = _todd_product(cs, d)
    acc = Fraction(0)
    for m in range(d + 1):
        if sums[m]:
            acc += Fraction(sums[m], _factorial(m)) * todd[d - m]
    prod = 1
    for c in cs:
        prod *= c
    return sign * (-1) ** d * acc / prod


def _half_open_brion(q: Polyhedron):
    """Half-open tangent cones of ``q``: active strict rows give open facets.

    Returns ``None`` when some vertex admits no direction realising its
    open/closed pattern.
    """
    vs = vertices(q)
    funcs_eq = [integer_row(e.b, e.a)[1] for e in q.equations]
    chart = linear_chart(funcs_eq, q.dim)
    out = []
    for v, dirs in zip(vs.vertices, vs.edges):
        if not dirs:
            out.append((1, HalfOpenCone(v, ())))
            continue
        rows, signs = [], []
        for r in q.inequalities:
            if r.value(v) != 0:
                continue
            f = chart.pull_row(0, integer_row(r.b, r.a)[1])[1]
            if any(f):
                rows.append(f)
                signs.append(-1 if r.strict else 1)
        y = None
        if any(s < 0 for s in signs):
            yz = strictly_feasible_direction(rows, signs, chart.m)
            if yz is None:
                return None
            y = chart.linear(yz)
        out.extend(triangulate_cone(dirs, y=y, apex=v).terms)
    return out


class DilateCounter:
    """Counts of ``k * P`` for many ``k`` from one Brion decomposition of ``P``.

    The vertex cones of ``k * P`` are those of ``P`` moved to ``k * v``.  Writing
    ``k = r + ell * j`` the parallelepiped of the cone at ``k * v`` is the one at
    ``r * v`` shifted by the integer vector ``(k - r) * v``, so only power sums
    per residue are stored.  Strict rows stay strict in the tangent cones; if
    no direction opens exactly those facets at some vertex, one strict row is
    split off by inclusion-exclusion instead.
    """

    def __init__(self, p: Polyhedron, method: str = "fpp"):
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
        self.p = p
        self.method = method
        self.cones = []
        self.parts: List[Tuple[int, "DilateCounter"]] = []
        self._sums: Dict[tuple, list] = {}
        try:
            q = canonical(p)
        except EmptyError:
            return
        if not is_bounded(q):
            raise UnboundedError("polyhedron is unbounded")
        tangent = brion(q) if q.is_closed else _half_open_brion(q)
        if tangent is None:
            weak, face = _strict_split(q)
            self.parts = [(1, DilateCounter(weak, method)), (-1, DilateCounter(face, method))]
            return
        for s, c in tangent:
            leaves = [(s, c)] if method == "fpp" or not c.generators else \
                [(s * t, leaf) for t, leaf in barvinok_decompose(c)]
            for t, leaf in leaves:
                ell = lcm(*(x.denominator for x in leaf.apex)) if leaf.apex else 1
                self.cones.append((t, leaf, ell))
        dens = [g for _, c, _ in self.cones for g in c.generators]
        self.lam = generic_functional(GenFunc(p.dim, [GenTerm(1, (), tuple(dens))]))
        self._cs = [[sum(a * b for a, b in zip(self.lam, g)) for g in c.generators]
                    for _, c, _ in self.cones]
        self._todd = [_todd_product(cs, len(cs)) for cs in self._cs]

    def _power_sums(self, i, r):
        key = (i, r)
        if key not in self._sums:
            _, c, _ = self.cones[i]
            apex = tuple(r * x for x in c.apex)
            pts = parallelepiped_points(HalfOpenCone(apex, c.generators, c.open_flags))
            alphas = [sum(a * b for a, b in zip(self.lam, pt)) for pt in pts]
            d = len(c.generators)
            self._sums[key] = [sum(a ** m for a in alphas) for m in range(d + 1)]
        return self._sums[key]

    def __call__(self, k: int) -> int:
        if k < 1 or int(k) != k:
            raise ValueError("dilation factor must be a positive integer")
        if self.parts:
            return sum(s * c(k) for s, c in self.parts)
        total = Fraction(0)
        for i, (sign, c, ell) in enumerate(self.cones):
            r = k % ell
            sums = self._power_sums(i, r)
            shift = sum(a * (k - r) * x for a, x in zip(self.lam, c.apex))
            if shift.denominator != 1:
                raise ArithmeticError("non-integral translation")
            shift = int(shift)
            shifted = [sum(comb(m, j) * shift ** (m - j) * sums[j] for j in range(m + 1))
                       for m in range(len(sums))]
            total += _term_constant(sign, self._cs[i], shifted, self._todd[i])
        if total.denominator != 1:
            raise ArithmeticError(f"specialisation produced a non-integer {total}")
        return int(total)


def count(x, k: int = 1, method: str = "fpp") -> int:
    """Integer points of the ``k``-th dilate of a polyhedron or partial complex."""
    if isinstance(x, PartialComplex):
        return specialize_count(gen_func(dilate_complex(x, k), method))
    return specialize_count(gen_func(dilate(x, k), method))


# ---------------------------------------------------------------------------
# Quasipolynomials
# ---------------------------------------------------------------------------

def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_eval(c, k):
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * k + a
    return acc


@dataclass(frozen=True)
class QuasiPolynomial:
    """Constituent ``r`` (coefficients of ``k^0 ... k^degree``) applies when ``k = r mod period``."""
    period: int
    degree: int
    constituents: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.period < 1 or len(self.constituents) != self.period:
            raise ValueError("need one constituent per residue")
        cons = tuple(tuple(Fraction(x) for x in c) + (Fraction(0),) * (self.degree + 1 - len(c))
                     for c in self.constituents)
        if any(len(c) != self.degree + 1 for c in cons):
            raise ValueError("constituent longer than degree + 1")
        object.__setattr__(self, "constituents", cons)

    def __call__(self, k: int) -> Fraction:
        return _poly_eval(self.constituents[k % self.period], k)

    def value(self, k: int) -> int:
        v = self(k)
        if v.denominator != 1:
            raise ArithmeticError(f"non-integer value {v} at k={k}")
        return int(v)

    @classmethod
    def polynomial(cls, coeffs) -> "QuasiPolynomial":
        coeffs = list(coeffs) or [0]
        return cls(1, len(coeffs) - 1, (tuple(coeffs),)).reduced()

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        if self.period != 1:
            raise ValueError("not a polynomial")
        return self.constituents[0]

    def reduced(self) -> "QuasiPolynomial":
        """Same function with minimal period and trailing zero coefficients dropped."""
        cons = self.constituents
        deg = self.degree
        while deg > 0 and all(c[deg] == 0 for c in cons):
            deg -= 1
        cons = tuple(c[:deg + 1] for c in cons)
        per = self.period
        for p in range(1, per + 1):
            if per % p == 0 and all(cons[r] == cons[r % p] for r in range(per)):
                per = p
                break
        return QuasiPolynomial(per, deg, cons[:per])

    def _lift(self, period, degree):
        return [tuple(self.constituents[r % self.period]) + (Fraction(0),) * (degree - self.degree)
                for r in range(period)]

    def __add__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        per = lcm(self.period, other.period)
        deg = max(self.degree, other.degree)
        a, b = self._lift(per, deg), other._lift(per, deg)
        return QuasiPolynomial(per, deg, tuple(tuple(x + y for x, y in zip(u, v))
                                               for u, v in zip(a, b))).reduced()

    def __neg__(self):
        return QuasiPolynomial(self.period, self.degree,
                               tuple(tuple(-x for x in c) for c in self.constituents))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "QuasiPolynomial":
        return QuasiPolynomial(self.period, self.degree,
                               tuple(tuple(s * x for x in c) for c in self.constituents)).reduced()

    def shift(self, s: int) -> "QuasiPolynomial":
        """``k -> q(k + s)``."""
        cons = []
        per = self.period
        for r in range(per):
            c = self.constituents[(r + s) % per]
            out = [Fraction(0)] * (self.degree + 1)
            for i, a in enumerate(c):
                for j in range(i + 1):
                    out[j] += a * comb(i, j) * s ** (i - j)
            cons.append(tuple(out))
        return QuasiPolynomial(per, self.degree, tuple(cons)).reduced()

    def to_json(self) -> dict:
        return {"period": self.period, "degree": self.degree,
                "constituents": [[rational_str(x) for x in c] for c in self.constituents]}

    @classmethod
    def from_json(cls, data: dict) -> "QuasiPolynomial":
        return cls(int(data["period"]), int(data["degree"]),
                   tuple(tuple(Fraction(x) for x in c) for c in data["constituents"]))

    def __str__(self):
        parts = []
        for r, c in enumerate(self.constituents):
            terms = [f"{rational_str(a)}*k^{i}" for i, a in enumerate(c) if a] or ["0"]
            parts.append(f"[{r}] " + " + ".join(reversed(terms)))
        return "; ".join(parts)


ZERO = QuasiPolynomial(1, 0, ((Fraction(0),),))


def interpolate(points) -> Tuple[Fraction, ...]:
    """Coefficients of the Lagrange interpolant through ``(k, value)`` pairs."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = _poly_mul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        for t, b in enumerate(basis):
            coeffs[t] += yi * b / denom
    return tuple(coeffs)


def _pieces(x) -> List[Tuple[int, Polyhedron]]:
    if isinstance(x, PartialComplex):
        return list(x.pieces)
    return [(1, x)]


def _period_and_degree(x) -> Tuple[int, int]:
    per, deg = 1, 0
    for _, p in _pieces(x):
        if is_empty(p):
            continue
        vs = vertices(p)
        per = lcm(per, vertex_lcm(vs))
        q = canonical(p.closure())
        deg = max(deg, p.dim - len(q.equations))
    return per, deg


def _interpolation_qp(x, method: str = "fpp") -> QuasiPolynomial:
    per, deg = _period_and_degree(x)
    counters = [(s, DilateCounter(p, method)) for s, p in _pieces(x) if not is_empty(p)]

    def total(k):
        return sum(s * c(k) for s, c in counters)

    cons = []
    for r in range(per):
        start = r if r else per
        pts = [(start + j * per, total(start + j * per)) for j in range(deg + 1)]
        cons.append(interpolate(pts))
    return QuasiPolynomial(per, deg, tuple(cons)).reduced()


# ---------------------------------------------------------------------------
# Ehrhart series through the cone over a polytope
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EhrhartSeries:
    """``sum_k ehr(k) q^k = (sum_j hstar[j] q^j) / (1 - q^ell)^d``."""
    hstar: Tuple[int, ...]
    ell: int
    d: int

    def coefficient(self, k: int) -> int:
        if self.d == 0:
            return self.hstar[k] if k < len(self.hstar) else 0
        tot = 0
        for h, c in enumerate(self.hstar):
            if c and h <= k and (k - h) % self.ell == 0:
                tot += c * comb((k - h) // self.ell + self.d - 1, self.d - 1)
        return tot

    def to_qp(self) -> QuasiPolynomial:
        """Expand the binomials ``C((k-h)/ell + d-1, d-1)`` per residue of ``k``."""
        ell, d = self.ell, self.d
        if d == 0:
            return ZERO
        cons = []
        fact = _factorial(d - 1)
        for r in range(ell):
            acc = [Fraction(0)] * d
            for h, c in enumerate(self.hstar):
                if not c or h % ell != r:
                    continue
                poly = [Fraction(c, fact)]
                for i in range(1, d):
                    poly = _poly_mul(poly, [Fraction(-h, ell) + i, Fraction(1, ell)])
                for i, a in enumerate(poly):
                    acc[i] += a
            cons.append(tuple(acc))
        return QuasiPolynomial(ell, d - 1, tuple(cons)).reduced()

    def __add__(self, other: "EhrhartSeries") -> "EhrhartSeries":
        ell = lcm(self.ell, other.ell)
        d = max(self.d, other.d)
        a, b = self._lift(ell, d), other._lift(ell, d)
        n = max(len(a), len(b))
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        return EhrhartSeries(_trim([x + y for x, y in zip(a, b)]), ell, d)

    def __neg__(self):
        return EhrhartSeries(tuple(-x for x in self.hstar), self.ell, self.d)

    def _lift(self, ell, d) -> List[int]:
        num = list(self.hstar)
        # 1/(1-q^a) = (1 + q^a + ... + q^(ell-a)) / (1-q^ell)
        geo = [0] * (ell - self.ell + 1)
        for j in range(0, ell, self.ell):
            geo[j] = 1
        for _ in range(self.d):
            num = _int_mul(num, geo)
        one_minus = [0] * (ell + 1)
        one_minus[0], one_minus[ell] = 1, -1
        for _ in range(d - self.d):
            num = _int_mul(num, one_minus)
        return num


def _int_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _trim(v) -> Tuple[int, ...]:
    v = list(v)
    while len(v) > 1 and v[-1] == 0:
        v.pop()
    return tuple(v)


ZERO_SERIES = EhrhartSeries((0,), 1, 0)


def _homogenised_chart(q: Polyhedron):
    """Chart of ``{(x, k) in Z^(n+1) : E x = k e}`` for the equations ``E x = e`` of ``q``."""
    n = q.dim
    funcs = []
    for e in q.equations:
        b, a = integer_row(e.b, e.a)
        funcs.append(tuple(a) + (b,))
    return linear_chart(funcs, n + 1)


def _series_direct(p: Polyhedron) -> Optional[EhrhartSeries]:
    """Series of one polyhedron via a half-open triangulation of its cone, or ``None``
    when no single direction opens exactly the strict facets."""
    q = irredundant(canonical(p))
    n = q.dim
    vs = vertices(q)
    ell = vertex_lcm(vs)
    gens = [tuple(int(ell * x) for x in v) + (ell,) for v in vs.vertices]
    chart = _homogenised_chart(q)
    local = [tuple(int(x) for x in chart.back_linear(g)) for g in gens]
    dim = chart.m
    rows = []
    signs = []
    for r in q.inequalities:
        b, a = integer_row(r.b, r.a)
        hom = tuple(a) + (b,)
        _, f = chart.pull_row(0, hom)
        if not any(f):
            continue
        rows.append(tuple(f))
        signs.append(-1 if r.strict else 1)
    if any(s < 0 for s in signs):
        y = strictly_feasible_direction(rows, signs, dim)
        if y is None:
            return None
    else:
        y = None
    tri = triangulate_cone(local, y)
    height = [c[n] for c in chart.basis]
    hist: Dict[int, int] = {}
    for _, cell in tri:
        for pt in parallelepiped_points(cell):
            h = sum(a * b for a, b in zip(height, pt))
            hist[h] = hist.get(h, 0) + 1
    top = max(hist) if hist else 0
    hstar = [hist.get(i, 0) for i in range(top + 1)]
    return EhrhartSeries(_trim(hstar), ell, dim)


def _strict_split(p: Polyhedron):
    """``[p] = [p with one strict row made weak] - [p on that row's hyperplane]``."""
    i = next(i for i, r in enumerate(p.inequalities) if r.strict)
    r = p.inequalities[i]
    rest = p.inequalities[:i] + p.inequalities[i + 1:]
    weak = Polyhedron(p.dim, rest + (Inequality(r.b, r.a, False),), p.equations)
    face = Polyhedron(p.dim, rest, p.equations + (Equation(r.b, r.a),))
    return weak, face


def ehrhart_series(x) -> EhrhartSeries:
    """Ehrhart series numerator, denominator period and exponent for a bounded set."""
    total = ZERO_SERIES
    for s, p in _pieces(x):
        ser = _piece_series(p)
        total = total + (ser if s > 0 else -ser)
    return total


def _piece_series(p: Polyhedron) -> EhrhartSeries:
    if is_empty(p):
        return ZERO_SERIES
    if not is_bounded(p):
        raise UnboundedError("polyhedron is unbounded")
    ser = _series_direct(p)
    if ser is not None:
        return ser
    weak, face = _strict_split(p)
    return _piece_series(weak) + (-_piece_series(face))


def ehrhart_qp(x, method: str = "interpolation", count_method: str = "fpp") -> QuasiPolynomial:
    """Ehrhart quasipolynomial of a bounded polyhedron or partial complex.

    ``interpolation`` counts dilates ``k = 1 .. ell (d+1)`` and solves one
    Vandermonde system per residue; ``hstar`` expands the Ehrhart series.
    """
    if method == "interpolation":
        return _interpolation_qp(x, count_method)
    if method == "hstar":
        return ehrhart_series(x).to_qp()
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# h* and f* vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HStarData:
    """``p(k) = sum_i h[i] * C(k + d - i, d)``."""
    h: Tuple[Fraction, ...]
    d: int

    def to_qp(self) -> QuasiPolynomial:
        return _from_basis(self.h, self.d, lambda i, d: _binom_poly(d - i, d))


@dataclass(frozen=True)
class FStarData:
    """``p(k) = sum_i f[i] * C(k - 1, i)``."""
    f: Tuple[Fraction, ...]
    d: int

    def to_qp(self) -> QuasiPolynomial:
        return _from_basis(self.f, self.d, lambda i, d: _binom_poly(-1, i))


def _binom_poly(shift: int, r: int):
    """Coefficients of ``C(k + shift, r)`` as a polynomial in ``k``."""
    poly = [Fraction(1)]
    for j in range(r):
        poly = _poly_mul(poly, [Fraction(shift - j), Fraction(1)])
    return [c / _factorial(r) for c in poly]


def _from_basis(coeffs, d, basis):
    acc = [Fraction(0)] * (d + 1)
    for i, c in enumerate(coeffs):
        for j, a in enumerate(basis(i, d)):
            acc[j] += c * a
    return QuasiPolynomial(1, d, (tuple(acc),)).reduced()


def _as_poly(qp: QuasiPolynomial, d: Optional[int]):
    if qp.period != 1:
        raise ValueError("h*/f* vectors need a polynomial (period 1)")
    if d is None:
        d = qp.degree
    if d < qp.degree:
        raise ValueError("degree bound below the degree")
    return d


def hstar_vector(qp: QuasiPolynomial, d: Optional[int] = None) -> HStarData:
    d = _as_poly(qp, d)
    h: List[Fraction] = []
    for j in range(d + 1):
        h.append(qp(j) - sum(h[i] * comb(j + d - i, d) for i in range(j)))
    return HStarData(tuple(h), d)


def fstar_vector(qp: QuasiPolynomial, d: Optional[int] = None) -> FStarData:
    d = _as_poly(qp, d)
    f: List[Fraction] = []
    for j in range(d + 1):
        f.append(qp(j + 1) - sum(f[i] * comb(j, i) for i in range(j)))
    return FStarData(tuple(f), d)


def reciprocity(qp: QuasiPolynomial, k: int) -> int:
    """Value at ``-k``; for a polytope of dimension d this is (-1)^d times the interior count of k*P."""
    if k < 1:
        raise ValueError("k must be positive")
    return qp.value(-k)
