import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrlat.exactmath import primitive
from ehrlat.polyhedra import (
    EmptyError,
    Implies,
    Polyhedron,
    UnboundedError,
    affine_dimension,
    atom,
    canonical,
    compile_formula,
    cone_over,
    dilate,
    find_point,
    ineq,
    is_bounded,
    is_empty,
    lattice_chart,
    less,
    relative_interior,
    tighten,
    vertices,
    And,
    Formula,
)
from ehrlat.models import partition_polytope
from ehrlat.oracle import BoundingBox, scan_box

from conftest import random_polytope


def test_square_vertices(square):
    vs = vertices(square)
    assert len(vs) == 4
    assert all(len(e) == 2 for e in vs.edges)


def test_partition_polytope_vertices():
    vs = vertices(partition_polytope(2))
    assert set(vs.vertices) == {(1, 0), (Fraction(1, 2), Fraction(1, 2))}


@pytest.mark.parametrize("d", range(1, 6))
def test_simplex_vertices(d):
    assert len(vertices(Polyhedron.simplex(d))) == d + 1


def test_cone_over():
    seg = Polyhedron.box([0], [1])
    c = cone_over(seg)
    assert c.ell == 1 and set(c.generators) == {(0, 1), (1, 1)}
    half = Polyhedron.box([0], [Fraction(1, 2)])
    c = cone_over(half)
    assert c.ell == 2
    assert set(c.generators) == {(0, 2), (1, 2)}
    assert {primitive(g) for g in c.generators} == {(0, 1), (1, 2)}
    assert cone_over(partition_polytope(2)).ell == 2


def test_relative_interior():
    seg = relative_interior(Polyhedron.box([0], [1]))
    assert seg.contains((Fraction(1, 2),)) and not seg.contains((0,)) and not seg.contains((1,))
    tri = relative_interior(Polyhedron.simplex(2))
    assert all(r.strict for r in tri.inequalities)
    flat = Polyhedron(1, (ineq(0, [1]), ineq(0, [-1])))
    ri = relative_interior(flat)
    assert ri.contains((0,)) and affine_dimension(ri) == 0


def test_dilate():
    d = dilate(Polyhedron.box([0], [1]), 3)
    assert d.contains((3,)) and not d.contains((4,))
    s = Polyhedron.simplex(2)
    assert dilate(s, 1) == s
    half = Polyhedron(1, (ineq(Fraction(-1, 2), [1]),))
    assert dilate(half, 2).contains((1,)) and not dilate(half, 2).contains((Fraction(99, 100),))
    with pytest.raises(ValueError):
        dilate(s, 0)


def test_empty_and_unbounded():
    empty = Polyhedron(1, (ineq(0, [1], True), ineq(0, [-1])))
    assert is_empty(empty)
    # vertices work on the closure, which is the point 0 here
    assert vertices(empty).vertices == ((0,),)
    with pytest.raises(EmptyError):
        vertices(Polyhedron(1, (ineq(-1, [1]), ineq(0, [-1]))))
    ray = Polyhedron(1, (ineq(0, [1]),))
    assert not is_bounded(ray)
    with pytest.raises(UnboundedError):
        vertices(ray)


def test_json_round_trip(rng):
    for _ in range(20):
        p = random_polytope(rng, half_open=0.5)
        q = Polyhedron.from_json(json.loads(json.dumps(p.to_json())))
        assert q == p


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_canonical_preserves_points(seed):
    p = random_polytope(random.Random(seed), half_open=0.5)
    c = canonical(p)
    box = BoundingBox.of(p)
    lo = [x - 1 for x in box.lower]
    hi = [x + 1 for x in box.upper]
    for x in scan_box(lo, hi):
        assert p.contains(x) == c.contains(x)
    pt = find_point(p)
    assert pt is not None and p.contains(pt)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_tighten_keeps_integer_points(seed):
    p = random_polytope(random.Random(seed), half_open=0.5)
    t = tighten(p)
    assert t.is_closed
    box = BoundingBox.of(p)
    for x in scan_box([a - 1 for a in box.lower], [b + 1 for b in box.upper]):
        assert p.contains(x) == t.contains(x)


def test_lattice_chart():
    p = Polyhedron(3, (), (Polyhedron.from_json({"dim": 3, "equations": [{"b": "-3", "a": ["2", "4", "1"]}]}).equations))
    ch = lattice_chart(p)
    assert ch.m == 2
    for z in itertools.product(range(-2, 3), repeat=2):
        x = ch.forward(z)
        assert 2 * x[0] + 4 * x[1] + x[2] == 3
        assert ch.back(x) == z
    odd = Polyhedron(1, (), Polyhedron.from_json({"dim": 1, "equations": [{"b": "-1", "a": ["2"]}]}).equations)
    assert lattice_chart(odd) is None


def _brute(f: Formula, d, k):
    return sum(1 for x in itertools.product(range(0, k + 2), repeat=d) if f.evaluate(x, k))


def _pieces_count(cx, k):
    dx = cx(k)
    return sum(s for x in itertools.product(range(0, k + 2), repeat=cx.dim)
               for s, p in dx.pieces if p.contains(x))


def test_compile_single_variable():
    f = And(atom([1], 0, ">"), atom([1], -1, "<="))
    cx = compile_formula(f, 1)
    assert len(cx.base.pieces) == 1
    assert [_pieces_count(cx, k) for k in range(1, 5)] == [1, 2, 3, 4]


def test_compile_single_edge():
    box = [atom([1, 0], 0, ">"), atom([1, 0], -1, "<="), atom([0, 1], 0, ">"), atom([0, 1], -1, "<=")]
    cx = compile_formula(And(*box, atom([1, -1], 0, "!=")), 2)
    assert len(cx.base.pieces) == 2
    assert all(not p.is_closed for _, p in cx.base.pieces)
    for k in range(1, 6):
        assert _pieces_count(cx, k) == k * k - k


def test_compile_implication():
    d = 3
    box = [f for i in range(d) for f in (atom([int(i == j) for j in range(d)], 0, ">"),
                                       atom([int(i == j) for j in range(d)], -1, "<="))]
    f = And(*box, Implies(less(d, 0, 1), less(d, 2, 1)))
    cx = compile_formula(f, d)
    assert _pieces_count(cx, 2) == 7
    assert _pieces_count(cx, 3) == 23


formula_atoms = st.builds(
    lambda cx, ck, rel: atom(cx, ck, rel),
    st.lists(st.integers(-2, 2), min_size=2, max_size=2),
    st.integers(-2, 2),
    st.sampled_from(["<", "<=", "=", "!=", ">=", ">"]))
formulas = st.recursive(formula_atoms, lambda c: st.one_of(
    st.builds(lambda a, b: Formula("and", (a, b)), c, c),
    st.builds(lambda a, b: Formula("or", (a, b)), c, c),
    st.builds(lambda a: Formula("not", (a,)), c)), max_leaves=4)


@settings(max_examples=60, deadline=None)
@given(formulas)
def test_compiled_pieces_are_disjoint_and_exact(f):
    box = [atom([1, 0], 0, ">"), atom([1, 0], -1, "<="), atom([0, 1], 0, ">"), atom([0, 1], -1, "<=")]
    full = And(*box, f)
    cx = compile_formula(full, 2)
    for k in (1, 2, 3):
        dx = cx(k)
        for x in itertools.product(range(-1, k + 2), repeat=2):
            m = dx.multiplicity(x)
            assert m in (0, 1)
            assert m == int(full.evaluate(x, k))


def test_formula_json_round_trip():
    f = Implies(less(3, 0, 1), less(3, 2, 1))
    assert Formula.from_json(json.loads(json.dumps(f.to_json()))) == f
    with pytest.raises(ValueError):
        Formula.from_json({"op": "xor", "args": []})
