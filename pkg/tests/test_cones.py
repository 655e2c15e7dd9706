import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrlat.cones import HalfOpenCone, heights, index, parallelepiped_points
from ehrlat.exactmath import DimensionError, RankError, det, from_columns


def box_scan(c: HalfOpenCone):
    """Oracle: scan the bounding box of the parallelepiped with the exact coordinate test."""
    n = c.ambient_dim
    corners = []
    for mask in itertools.product((0, 1), repeat=c.d):
        corners.append([c.apex[i] + sum(m * g[i] for m, g in zip(mask, c.generators)) for i in range(n)])
    lo = [int(min(p[i] for p in corners)) - 1 for i in range(n)]
    hi = [int(max(p[i] for p in corners)) + 1 for i in range(n)]
    out = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        lam = c.coordinates(x)
        if lam is None:
            continue
        if all((0 < l <= 1) if o else (0 <= l < 1) for l, o in zip(lam, c.open_flags)):
            out.append(x)
    return sorted(out)


@pytest.mark.parametrize("gens, expected", [
    (((1, 0), (0, 1)), 1),
    (((3, 2), (2, 1)), 1),
    (((1, 0, 0), (0, 1, 0), (1, 1, 5)), 5),
])
def test_index_examples(gens, expected):
    assert index(HalfOpenCone((0,) * len(gens[0]), gens)) == expected


def test_parallelepiped_examples():
    assert parallelepiped_points(HalfOpenCone((0, 0), ((1, 0), (0, 1)))).points == ((0, 0),)
    c = HalfOpenCone((0, 0, 0), ((1, 0, 0), (0, 1, 0), (1, 1, 3)))
    pp = parallelepiped_points(c)
    assert len(pp) == 3
    assert list(pp.points) == box_scan(c)
    c = HalfOpenCone((0, 0), ((2, 1), (1, 2)))
    assert list(parallelepiped_points(c).points) == box_scan(c) == [(0, 0), (1, 1), (2, 2)]


def test_heights():
    seg = HalfOpenCone((0, 0), ((0, 1), (1, 1)))
    assert heights(parallelepiped_points(seg)) == {0: 1}
    # cone over [0, 1/2] with generators 2 * (w, 1); the primitive pair (0,1),(1,2) is unimodular
    half = HalfOpenCone((0, 0), ((0, 2), (1, 2)))
    h = heights(parallelepiped_points(half))
    assert h == {0: 1, 1: 1}
    assert sum(h.values()) == 2 == len(box_scan(half))
    tall = HalfOpenCone((0, 0, 0), ((1, 0, 0), (0, 1, 0), (1, 1, 5)))
    h = heights(parallelepiped_points(tall))
    assert sum(h.values()) == 5
    assert h == {z: sum(1 for p in box_scan(tall) if p[-1] == z) for z in h}


def test_index_needs_full_dimension():
    with pytest.raises(DimensionError):
        index(HalfOpenCone((0, 0, 0), ((1, 0, 0),)))
    with pytest.raises(RankError):
        parallelepiped_points(HalfOpenCone((0, 0), ((1, 1), (2, 2))))


def test_no_generators():
    assert parallelepiped_points(HalfOpenCone((1, 2), ())).points == ((1, 2),)
    assert parallelepiped_points(HalfOpenCone((Fraction(1, 2), 2), ())).points == ()


cone_data = st.integers(2, 3).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.fractions(-2, 2, max_denominator=3), min_size=n, max_size=n),
    st.lists(st.booleans(), min_size=n, max_size=n)))


@settings(max_examples=80, deadline=None)
@given(cone_data)
def test_parallelepiped_matches_scan(data):
    gens, apex, flags = data
    if det(from_columns([tuple(g) for g in gens])) == 0:
        return
    c = HalfOpenCone(tuple(apex), tuple(tuple(g) for g in gens), tuple(flags))
    pts = parallelepiped_points(c)
    assert list(pts.points) == box_scan(c)
    if all(x == 0 for x in apex):
        assert len(pts) == index(c)


def test_lower_dimensional_cone():
    rng = random.Random(3)
    for _ in range(30):
        g = (rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(1, 3))
        h = (rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
        if det([[g[0], h[0], 0], [g[1], h[1], 0], [g[2], h[2], 1]]) == 0 and \
                det([[g[0], h[0], 1], [g[1], h[1], 0], [g[2], h[2], 0]]) == 0:
            continue
        c = HalfOpenCone((Fraction(1, 2), 0, 0), (g, h), (rng.random() < 0.5, False))
        try:
            pts = parallelepiped_points(c)
        except RankError:
            continue
        assert list(pts.points) == box_scan(c)


def test_contains_and_translate():
    c = HalfOpenCone((0, 0), ((1, 0), (0, 1)), (True, False))
    assert c.contains((1, 0)) and not c.contains((0, 1))
    t = c.translate((1, 1))
    assert t.contains((2, 1)) and not t.contains((1, 2))
