import pytest

from ehrlat.models import partition_polytope
from ehrlat.oracle import (
    BoundingBox,
    ResourceError,
    count_box,
    count_dilate,
    count_interior,
    enumerate_points,
    scan_box,
)
from ehrlat.polyhedra import PartialComplex, Polyhedron


def test_square_points(square):
    assert enumerate_points(square) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert enumerate_points(Polyhedron.box([0, 0], [1, 1], True, True)) == []


def test_partition_dilate():
    assert count_dilate(partition_polytope(2), 4) == 3


@pytest.mark.parametrize("p, k, closed, interior", [
    (Polyhedron.box([0], [1]), 5, 6, 4),
    (Polyhedron.box([0, 0], [1, 1]), 2, 9, 1),
    (Polyhedron.simplex(2), 3, 10, 1),
])
def test_dilate_and_interior(p, k, closed, interior):
    assert count_dilate(p, k) == closed
    assert count_interior(p, k) == interior


def test_complex_multiplicity(square):
    cx = PartialComplex(((1, square), (1, square)))
    assert count_dilate(cx, 1) == 8


def test_box_helpers():
    box = BoundingBox((0, 0), (2, 3))
    assert box.size == 12
    assert len(list(scan_box(box.lower, box.upper))) == 12
    assert count_box(Polyhedron.simplex(2), box) == 3
    with pytest.raises(ValueError):
        BoundingBox((1,), (0,))


def test_resource_cap():
    with pytest.raises(ResourceError):
        enumerate_points(Polyhedron.box([0] * 3, [400] * 3))
