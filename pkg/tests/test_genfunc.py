import itertools
import json
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrlat.cones import HalfOpenCone
from ehrlat.genfunc import (
    METHODS,
    DilateCounter,
    EhrhartSeries,
    GenFunc,
    GenTerm,
    QuasiPolynomial,
    bernoulli,
    count,
    ehrhart_qp,
    ehrhart_series,
    fstar_vector,
    gen_func,
    hstar_vector,
    interpolate,
    reciprocity,
    specialize_count,
)
from ehrlat.models import partition_polytope, partitions_at_most
from ehrlat.oracle import count_dilate
from ehrlat.polyhedra import PartialComplex, Polyhedron, UnboundedError, ineq

from conftest import random_polytope


def test_bernoulli():
    assert [bernoulli(i) for i in range(5)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]


def test_half_line():
    g = gen_func(HalfOpenCone((0,), ((1,),)))
    assert [(t.sign, t.num, t.den) for t in g.terms] == [(1, ((0,),), ((1,),))]


def test_unimodular_numerator():
    g = gen_func(HalfOpenCone((0, 0), ((3, 2), (2, 1))))
    assert len(g) == 1 and g.terms[0].num == ((0, 0),)


def test_segment_brion():
    g = gen_func(Polyhedron.box([0], [1]))
    got = {(t.sign, t.num, t.den) for t in g.terms}
    assert got == {(1, ((0,),), ((1,),)), (1, ((1,),), ((-1,),))}
    assert [count(Polyhedron.box([0], [1]), k) for k in range(1, 6)] == [k + 1 for k in range(1, 6)]


def test_specialize_finite_sum():
    g = GenFunc(1, [GenTerm(1, ((0,), (1,), (2,)), ())])
    assert specialize_count(g) == 3


@pytest.mark.parametrize("method", METHODS)
def test_square(square, method):
    assert count(square, 1, method) == 4
    assert [count(square, k, method) for k in (2, 3)] == [9, 16]


def _expand_cone(t, radius):
    """Multiplicities of a + sum n_i b_i (n_i >= 0 integers) on the grid of ``radius``."""
    (p, q), (r, s) = t.den
    dt = p * s - q * r
    out = Counter()
    for x in itertools.product(range(-radius, radius + 1), repeat=2):
        for a in t.num:
            u, v = x[0] - a[0], x[1] - a[1]
            n1, n2 = Fraction(u * s - v * r, dt), Fraction(p * v - q * u, dt)
            if n1 >= 0 and n2 >= 0 and n1.denominator == 1 and n2.denominator == 1:
                out[x] += t.sign
    return out


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2),
       st.lists(st.booleans(), min_size=2, max_size=2))
def test_cone_series_expansion(gens, flags):
    gens = [tuple(g) for g in gens]
    if gens[0][0] * gens[1][1] - gens[0][1] * gens[1][0] == 0:
        return
    c = HalfOpenCone((0, 0), tuple(gens), tuple(flags))
    r = 4
    total = Counter()
    for t in gen_func(c, "fpp").terms:
        total.update(_expand_cone(t, r))
    for x in itertools.product(range(-r, r + 1), repeat=2):
        assert total[x] == int(c.contains(x))


def test_genfunc_json_round_trip(square):
    g = gen_func(square)
    h = GenFunc.from_json(json.loads(json.dumps(g.to_json())))
    assert h.terms == g.terms and h.dim == 2


def test_unbounded_raises():
    with pytest.raises(UnboundedError):
        gen_func(Polyhedron(1, (ineq(0, [1]),)))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(METHODS))
def test_count_matches_oracle(seed, method):
    p = random_polytope(random.Random(seed), half_open=0.4)
    for k in (1, 2):
        assert count(p, k, method) == count_dilate(p, k)


def test_dilate_counter_reuse():
    p = Polyhedron.from_vertices([(0, 0), (Fraction(3, 2), 0), (0, Fraction(2, 3))])
    dc = DilateCounter(p, "barvinok")
    assert [dc(k) for k in range(1, 8)] == [count_dilate(p, k) for k in range(1, 8)]


def test_lower_dimensional_count():
    seg = Polyhedron(2, (ineq(0, [1, 0]), ineq(2, [-1, 0])),
                     Polyhedron.from_json({"dim": 2, "equations": [{"b": "0", "a": ["1", "-1"]}]}).equations)
    assert [count(seg, k) for k in (1, 2, 3)] == [3, 5, 7]


def test_interpolate():
    assert interpolate([(0, 1), (1, 3), (2, 7)]) == (1, 1, 1)


def test_qp_examples(square):
    assert ehrhart_qp(square).coefficients == (1, 2, 1)
    qp = ehrhart_qp(partition_polytope(2))
    assert qp.period == 2
    assert qp.constituents == ((1, Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2)))
    assert [qp.value(k) for k in range(0, 13)] == [partitions_at_most(k, 2) for k in range(13)]


def test_qp_routes_agree(rng):
    for _ in range(8):
        p = random_polytope(rng, half_open=0.3)
        assert ehrhart_qp(p, "interpolation") == ehrhart_qp(p, "hstar")


def test_qp_algebra():
    a = QuasiPolynomial.polynomial([1, 1])
    b = QuasiPolynomial(2, 0, ((1,), (0,)))
    s = a + b
    assert [s.value(k) for k in range(4)] == [2, 2, 4, 4]
    assert (s - b) == a.reduced() or (s - b).reduced() == a.reduced()
    assert [a.shift(-1).value(k) for k in range(3)] == [0, 1, 2]
    assert QuasiPolynomial.from_json(json.loads(json.dumps(s.to_json()))) == s
    assert "k" in str(a)


def test_series_examples():
    s = ehrhart_series(Polyhedron.box([0], [1]))
    assert s.hstar == (1,) and s.ell == 1
    assert [s.coefficient(k) for k in range(5)] == [k + 1 for k in range(5)]
    ps = ehrhart_series(partition_polytope(2))
    assert ps.ell == 2
    assert [ps.coefficient(k) for k in range(21)] == [partitions_at_most(k, 2) for k in range(21)]


@pytest.mark.parametrize("d", range(1, 5))
def test_simplex_hstar(d):
    s = Polyhedron.simplex(d)
    assert ehrhart_series(s).hstar == (1,)
    h = hstar_vector(ehrhart_qp(s), d)
    assert list(h.h) == [1] + [0] * d


def test_hstar_basis():
    assert hstar_vector(QuasiPolynomial.polynomial([1, 1]), 1).h == (1, 0)
    assert fstar_vector(QuasiPolynomial.polynomial([-1, 1]), 1).f == (0, 1)
    assert fstar_vector(QuasiPolynomial.polynomial([1, 1]), 1).f == (2, 1)
    h = hstar_vector(QuasiPolynomial.polynomial([1, 2, 1]), 2)
    assert h.to_qp() == QuasiPolynomial.polynomial([1, 2, 1])


def test_reciprocity_examples(square):
    seg = ehrhart_qp(Polyhedron.box([0], [1]))
    assert reciprocity(seg, 2) == -1
    assert reciprocity(ehrhart_qp(square), 1) == 0


def test_half_open_pieces():
    open_sq = Polyhedron.box([0, 0], [1, 1], True, True)
    assert [ehrhart_qp(open_sq).value(k) for k in range(1, 5)] == [(k - 1) ** 2 for k in range(1, 5)]
    half = Polyhedron.box([0, 0], [1, 1], True, False)
    assert [ehrhart_qp(half).value(k) for k in range(1, 5)] == [k * k for k in range(1, 5)]
    cx = PartialComplex(((1, half), (1, Polyhedron.box([0, 0], [0, 1]))))
    assert [ehrhart_qp(cx).value(k) for k in range(1, 4)] == [count_dilate(cx, k) for k in range(1, 4)]


def test_series_addition():
    a = EhrhartSeries((1,), 1, 2)
    b = EhrhartSeries((1,), 2, 2)
    s = a + b
    assert [s.coefficient(k) for k in range(6)] == [a.coefficient(k) + b.coefficient(k) for k in range(6)]
