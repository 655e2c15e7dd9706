"""Brute-force lattice point enumeration.

Deliberately naive: every integer point of a box is tested against every
constraint.  A vectorised prefilter on integer-scaled rows discards most
candidates; survivors are rechecked with exact membership.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np

from .exactmath import integer_row
from .polyhedra import (
    PartialComplex,
    Polyhedron,
    dilate,
    dilate_complex,
    is_empty,
    relative_interior,
    vertices,
)

MAX_CANDIDATES = 10 ** 7


class ResourceError(RuntimeError):
    """Box too large for exhaustive enumeration."""


@dataclass(frozen=True)
class BoundingBox:
    lower: Tuple[int, ...]
    upper: Tuple[int, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("bound lengths differ")
        if any(a > b for a, b in zip(self.lower, self.upper)):
            raise ValueError("lower bound exceeds upper bound")

    @property
    def size(self) -> int:
        return math.prod(b - a + 1 for a, b in zip(self.lower, self.upper))

    @classmethod
    def of(cls, x: Union[Polyhedron, PartialComplex]) -> "BoundingBox":
        """Smallest integer box around the closure of every nonempty piece."""
        pieces = x.pieces if isinstance(x, PartialComplex) else ((1, x),)
        n = x.dim
        lo, hi = [None] * n, [None] * n
        for _, p in pieces:
            if is_empty(p):
                continue
            for v in vertices(p).vertices:
                for i, c in enumerate(v):
                    f, cl = math.floor(c), math.ceil(c)
                    lo[i] = f if lo[i] is None else min(lo[i], f)
                    hi[i] = cl if hi[i] is None else max(hi[i], cl)
        if lo and lo[0] is None:
            # nothing to enumerate; any box will do
            return cls((0,) * n, (0,) * n)
        return cls(tuple(lo), tuple(hi))


def _grid(box: BoundingBox) -> np.ndarray:
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(box.lower, box.upper)]
    if not axes:
        return np.zeros((1, 0), dtype=np.int64)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _mask(p: Polyhedron, pts: np.ndarray) -> np.ndarray:
    keep = np.ones(len(pts), dtype=bool)
    big = False
    rows = []
    for r in p.inequalities:
        b, a = integer_row(r.b, r.a)
        rows.append((b, a, r.strict, False))
    for e in p.equations:
        b, a = integer_row(e.b, e.a)
        rows.append((b, a, False, True))
    for b, a, strict, is_eq in rows:
        if max([abs(b)] + [abs(x) for x in a]) > 2 ** 40:
            big = True
            continue
        val = pts @ np.array(a, dtype=np.int64) + b if len(a) else np.full(len(pts), b)
        if is_eq:
            keep &= val == 0
        elif strict:
            keep &= val > 0
        else:
            keep &= val >= 0
    if big:
        idx = np.nonzero(keep)[0]
        for i in idx:
            if not p.contains(tuple(int(x) for x in pts[i])):
                keep[i] = False
    return keep


def enumerate_points(x: Union[Polyhedron, PartialComplex], box: BoundingBox = None) -> List[Tuple[int, ...]]:
    """Integer points of ``x`` inside ``box`` in lexicographic order.

    For a partial complex a point is reported once per unit of multiplicity.
    """
    if box is None:
        box = BoundingBox.of(x)
    if box.size > MAX_CANDIDATES:
        raise ResourceError(f"box has {box.size} candidates, cap is {MAX_CANDIDATES}")
    pts = _grid(box)
    pieces = x.pieces if isinstance(x, PartialComplex) else ((1, x),)
    mult = np.zeros(len(pts), dtype=np.int64)
    for s, p in pieces:
        mult += s * _mask(p, pts)
    if (mult < 0).any():
        raise ValueError("negative multiplicity")
    out = []
    for i in np.nonzero(mult)[0]:
        pt = tuple(int(v) for v in pts[i])
        out.extend([pt] * int(mult[i]))
    return out


def count_dilate(x: Union[Polyhedron, PartialComplex], k: int) -> int:
    dx = dilate_complex(x, k) if isinstance(x, PartialComplex) else dilate(x, k)
    return len(enumerate_points(dx))


def count_interior(p: Polyhedron, k: int) -> int:
    return len(enumerate_points(relative_interior(dilate(p, k))))


def count_box(x, box: BoundingBox) -> int:
    return len(enumerate_points(x, box))


def scan_box(lower, upper):
    """All integer points of a box, lexicographic."""
    return itertools.product(*(range(a, b + 1) for a, b in zip(lower, upper)))
