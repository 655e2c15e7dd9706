import csv
import io
import random
from math import gcd

import pytest

from ehrlat.euclid import (
    SizeError,
    emit_plot,
    euclid_depth,
    gcd_certificate,
    gcd_rays_data,
    render_plot,
    staircase_decomposition,
    stern_brocot_embedding,
    stern_brocot_pruned,
    triangle_points,
)


def test_worked_certificates():
    c = gcd_certificate(9, 6)
    assert c.g == 3 and c.segment_points == 4
    c = gcd_certificate(3, 2)
    assert c.closest == (2, 1) and c.bezout == (-1, 2)
    c = gcd_certificate(7, 5)
    assert c.g == 1 and c.bezout == (-2, 3)


def test_bezout_random():
    rng = random.Random(1)
    for _ in range(500):
        a, b = rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6)
        c = gcd_certificate(a, b)
        assert c.g == gcd(a, b)
        assert c.bezout[0] * a + c.bezout[1] * b == c.g
        p, q = c.closest
        assert (b // c.g) * p - (a // c.g) * q == 1


def test_segment_points():
    for a, b in [(9, 6), (4, 4), (12, 7), (10, 25)]:
        pts = [(x, y) for x in range(a + 1) for y in range(b + 1) if a * y == b * x]
        assert len(pts) == gcd_certificate(a, b).segment_points


def test_invalid_input():
    with pytest.raises(ValueError):
        gcd_certificate(0, 3)
    with pytest.raises(SizeError):
        stern_brocot_embedding(99)


def test_stern_brocot():
    assert [n.point for n in stern_brocot_embedding(0)] == [(1, 1)]
    assert [n.point for n in stern_brocot_embedding(1)][1:] == [(2, 1), (1, 2)]
    assert len(stern_brocot_embedding(3)) == 15
    nodes = stern_brocot_embedding(8)
    assert all(gcd(*n.point) == 1 for n in nodes)
    assert len({n.point for n in nodes}) == len(nodes)
    assert all(max(n.point) <= 5 for n in stern_brocot_pruned(5, 8))


def test_euclid_depth():
    assert euclid_depth(1, 1) == 0
    assert euclid_depth(2, 1) == 1
    # every tree node sits at its own depth
    for n in stern_brocot_embedding(6):
        assert euclid_depth(*n.point) == n.depth


def _multiset(dec):
    pts = []
    for p in dec.pieces:
        pts.extend(p.points())
    return sorted(pts)


def test_staircase_examples():
    dec = staircase_decomposition(5, 5)
    assert len(dec.pieces) == 1 and dec.pieces[0].transform == ((1, 0), (0, 1))
    assert _multiset(staircase_decomposition(2, 1)) == sorted(triangle_points(2, 1))
    assert len(staircase_decomposition(2, 1).pieces) == 2
    assert _multiset(staircase_decomposition(12, 7)) == sorted(triangle_points(12, 7))


def test_staircase_small_exhaustive():
    for a in range(1, 16):
        for b in range(1, a + 1):
            assert _multiset(staircase_decomposition(a, b)) == sorted(triangle_points(a, b))


def test_plots_are_deterministic(tmp_path):
    for kind, params in [("gcd_rays", {"bound": 10}), ("stern_brocot", {"depth": 3}),
                         ("staircase", {"a": 12, "b": 7})]:
        first = render_plot(kind, params)
        assert first == render_plot(kind, params)
        assert first[1].startswith("<?xml")
    csv_path, svg_path = emit_plot("staircase", {"a": 12, "b": 7}, str(tmp_path))
    rows = list(csv.reader(open(csv_path)))
    assert rows[0][0] == "piece" and len(rows) - 1 == len(staircase_decomposition(12, 7).pieces)
    assert svg_path.endswith(".svg")
    with pytest.raises(ValueError):
        render_plot("pie", {})


def test_gcd_rays():
    rows = gcd_rays_data(10)
    assert {(a, b) for a, b, _ in rows} == {(a, b) for a in range(1, 11) for b in range(1, 11) if gcd(a, b) == 1}
    text, _ = render_plot("gcd_rays", {"bound": 10})
    assert len(list(csv.reader(io.StringIO(text)))) == len(rows) + 1
