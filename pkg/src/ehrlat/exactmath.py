"""Exact integer and rational linear algebra.

Matrices are plain tuples of row tuples. Nothing in here touches floating
point: determinants use Bareiss elimination, inverses Gauss-Jordan over
:class:`fractions.Fraction`, and LLL runs on exact Gram-Schmidt data.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence, Tuple, Union

Rational = Fraction
IntMatrix = Tuple[Tuple[int, ...], ...]
Vector = Tuple[int, ...]


class DimensionError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


class RankError(ValueError):
    pass


def as_rational(x: Union[int, str, Fraction]) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings into a Fraction."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted; use 'p/q' strings")
    return Fraction(x)


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Validate and freeze an integer matrix."""
    out = tuple(tuple(int(v) for v in r) for r in rows)
    if not out or not out[0]:
        raise DimensionError("matrix must have at least one row and column")
    n = len(out[0])
    if any(len(r) != n for r in out):
        raise DimensionError("ragged matrix")
    for r, src in zip(out, rows):
        for v, s in zip(r, src):
            if v != s:
                raise TypeError(f"non-integer entry {s!r}")
    return out


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def columns(m) -> list:
    return [tuple(c) for c in transpose(m)]


def from_columns(cols) -> tuple:
    return transpose(cols)


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        if x:
            out = out * abs(x) // gcd(out, x)
    return out


def primitive(v: Sequence) -> Vector:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def integer_row(b, a) -> tuple:
    """Scale ``(b, a)`` by a positive factor so all entries are coprime integers."""
    fr = [Fraction(b)] + [Fraction(x) for x in a]
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g:
        ints = [x // g for x in ints]
    return ints[0], tuple(ints[1:])


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix via fraction-free Bareiss elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0 or any(len(r) != n for r in a):
        raise DimensionError("det needs a square matrix")
    if any(isinstance(x, Fraction) and x.denominator != 1 for r in a for x in r):
        return rational_det(m)
    a = [[int(x) for x in r] for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def rational_det(m) -> Fraction:
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    out = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            out = -out
        out *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return out


def row_reduce(rows) -> Tuple[list, list]:
    """Reduced row echelon form over Q; returns (rref rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows) -> int:
    return len(row_reduce(rows)[1]) if rows else 0


def adjugate(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer adjugate, so that ``m * adjugate(m) = det(m) * I``."""
    n = len(m)
    if n == 1:
        return ((1,),)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(m) if k != i]
            out[j][i] = (-1) ** (i + j) * det(minor)
    return tuple(tuple(r) for r in out)


def inverse(m) -> Tuple[Tuple[Fraction, ...], ...]:
    """Exact inverse over Q."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("inverse needs a square matrix")
    if n <= 4 and all(isinstance(x, int) for r in m for x in r):
        m = [list(r) for r in m]
        d = det(m)
        if d == 0:
            raise SingularMatrixError("matrix is singular")
        return tuple(tuple(Fraction(x, d) for x in r) for r in adjugate(m))
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    red, piv = row_reduce(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(r[n:]) for r in red)


def solve(m, rhs) -> Tuple[Fraction, ...]:
    """Solve the square nonsingular system ``m x = rhs`` over Q."""
    n = len(m)
    aug = [list(r) + [rhs[i]] for i, r in enumerate(m)]
    red, piv = row_reduce(aug)
    if len(red) < n or piv[:n] != list(range(n)) or (len(piv) > n):
        raise SingularMatrixError("system is singular")
    return tuple(r[n] for r in red)


def nullspace(rows, ncols: int) -> list:
    """Rational basis of ``{x : rows x = 0}`` as a list of vectors."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, piv = row_reduce(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, piv):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

class SmithDecomposition(NamedTuple):
    """``M = U * S * W`` with U, W unimodular and S diagonal, s_i | s_{i+1}."""
    U: IntMatrix
    S: IntMatrix
    W: IntMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.S[i][i] for i in range(min(len(self.S), len(self.S[0]))))


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form of a square nonsingular integer matrix.

    Pivot is the entry of minimal nonzero absolute value in the active
    submatrix, ties broken by lowest (row, col); this makes the output
    deterministic.
    """
    m = matrix(m)
    n = len(m)
    if len(m[0]) != n:
        raise DimensionError("smith_normal_form needs a square matrix")
    if det(m) == 0:
        raise SingularMatrixError("smith_normal_form needs a nonsingular matrix")
    s = [list(r) for r in m]
    # m = uinv * s * winv is kept invariant throughout.
    uinv = [list(r) for r in identity(n)]
    winv = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        winv[i], winv[j] = winv[j], winv[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
        for r in uinv:
            r[src] -= q * r[dst]

    def add_col(src, dst, q):
        # col_dst += q * col_src
        for r in s:
            r[dst] += q * r[src]
        winv[src] = [x - q * y for x, y in zip(winv[src], winv[dst])]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    v = s[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            _, pi, pj = best
            if pi != t:
                swap_rows(pi, t)
            if pj != t:
                swap_cols(pj, t)
            piv = s[t][t]
            dirty = False
            for i in range(t + 1, n):
                if s[i][t]:
                    add_row(t, i, -(s[i][t] // piv))
                    dirty = dirty or s[i][t] != 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(t, j, -(s[t][j] // piv))
                    dirty = dirty or s[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if s[i][j] % piv), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            for r in uinv:
                r[t] = -r[t]
    return SmithDecomposition(matrix(uinv), matrix(s), matrix(winv))


# ---------------------------------------------------------------------------
# Integer column echelon form, used to solve linear systems over Z
# ---------------------------------------------------------------------------

def column_echelon(a: Sequence[Sequence[int]]):
    """Unimodular column reduction ``a @ T = H``.

    Returns ``(H, T, pivots)`` where H is in column echelon form: column
    ``c < len(pivots)`` has its leading entry in row ``pivots[c]`` and the
    columns from ``len(pivots)`` on are zero.  The trailing columns of ``T``
    therefore form a basis of the integer kernel of ``a``.
    """
    h = [list(r) for r in a]
    nrows = len(h)
    ncols = len(h[0]) if h else 0
    t = [list(r) for r in identity(ncols)]
    pivots = []
    c = 0
    for r in range(nrows):
        if c == ncols:
            break
        while True:
            nz = [j for j in range(c, ncols) if h[r][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (abs(h[r][j]), j))
            if j0 != c:
                for row in h:
                    row[c], row[j0] = row[j0], row[c]
                for row in t:
                    row[c], row[j0] = row[j0], row[c]
            done = True
            for j in range(c + 1, ncols):
                if h[r][j]:
                    q = h[r][j] // h[r][c]
                    for row in h:
                        row[j] -= q * row[c]
                    for row in t:
                        row[j] -= q * row[c]
                    if h[r][j]:
                        done = False
            if done:
                break
        if any(h[r][j] for j in range(c, ncols)):
            pivots.append(r)
            c += 1
    return h, t, pivots


def integer_solutions(a, rhs):
    """Describe ``{x in Z^n : a x = rhs}`` as ``x0 + N z``.

    ``a`` and ``rhs`` may be rational.  Returns ``(x0, N)`` with N given as a
    list of integer column vectors (a lattice basis of the integer kernel), or
    ``None`` when there is no integer solution.
    """
    if not a:
        return None
    n = len(a[0])
    rows = [integer_row(-b, r) for b, r in zip(rhs, a)]
    ia = [list(r) for _, r in rows]
    ib = [-b for b, _ in rows]
    h, t, pivots = column_echelon(ia)
    k = len(pivots)
    y = [0] * n
    for c, r in enumerate(pivots):
        acc = ib[r] - sum(h[r][j] * y[j] for j in range(c))
        if acc % h[r][c]:
            return None
        y[c] = acc // h[r][c]
    x0 = tuple(sum(t[i][j] * y[j] for j in range(k)) for i in range(n))
    if any(sum(ai * xi for ai, xi in zip(row, x0)) != bi for row, bi in zip(ia, ib)):
        return None
    kernel = [tuple(t[i][j] for i in range(n)) for j in range(k, n)]
    return x0, kernel


def saturation_basis(vectors, n: int) -> list:
    """Lattice basis of ``Z^n`` intersected with the rational span of ``vectors``."""
    ortho = nullspace([list(v) for v in vectors], n) if vectors else []
    if not ortho:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    rows = [list(primitive(o)) for o in ortho]
    _, t, pivots = column_echelon(rows)
    k = len(pivots)
    return [tuple(t[i][j] for i in range(n)) for j in range(k, n)]


# ---------------------------------------------------------------------------
# LLL
# ---------------------------------------------------------------------------

def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def lll_reduce(b: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> IntMatrix:
    """LLL-reduce the lattice basis given by the *columns* of ``b``.

    Exact rational Gram-Schmidt; returns a matrix of the same shape whose
    columns are size-reduced (|mu| <= 1/2) and satisfy the Lovasz condition.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie strictly between 1/4 and 1")
    cols = [list(c) for c in columns(matrix(b))]
    n = len(cols)
    if rank([list(c) for c in cols]) < n:
        raise RankError("basis vectors are linearly dependent")

    def gram_schmidt():
        bstar, mu, norms = [], [[Fraction(0)] * n for _ in range(n)], []
        for i in range(n):
            v = [Fraction(x) for x in cols[i]]
            for j in range(i):
                mu[i][j] = _dot(cols[i], bstar[j]) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(_dot(v, v))
        return mu, norms

    mu, norms = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                cols[k] = [x - q * y for x, y in zip(cols[k], cols[j])]
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            cols[k], cols[k - 1] = cols[k - 1], cols[k]
            m = mu[k][k - 1]
            big = norms[k] + m * m * norms[k - 1]
            mu[k][k - 1] = m * norms[k - 1] / big
            norms[k] = norms[k - 1] * norms[k] / big
            norms[k - 1] = big
            for j in range(k - 1):
                mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
    return from_columns([tuple(c) for c in cols])


def is_lll_reduced(b, delta: Fraction = Fraction(3, 4)) -> bool:
    cols = columns(b)
    n = len(cols)
    bstar, norms = [], []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in cols[i]]
        for j in range(i):
            mu[i][j] = _dot(cols[i], bstar[j]) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(_dot(v, v))
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if norms[k] < (Fraction(delta) - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True
