"""Counting lattice points in dilates, three ways.

A tour of the core pipeline: build a polytope, ask for its generating
function, specialise to counts, and recover the Ehrhart quasipolynomial.
Run with ``python3 demos/01_counting_basics.py``.
"""
from fractions import Fraction

from ehrlat import Polyhedron, count, ehrhart_qp, ehrhart_series, gen_func, hstar_vector
from ehrlat.models import partition_polytope
from ehrlat.oracle import count_dilate

# The unit square: the simplest polytope with a non-trivial Ehrhart polynomial.
square = Polyhedron.box([0, 0], [1, 1])
print("square, k = 1..5:", [count(square, k) for k in range(1, 6)])
print("Ehrhart polynomial:", ehrhart_qp(square))

# Its generating function has one term per vertex cone.
for t in gen_func(square).terms:
    print(f"  {t.sign:+d}  z^{t.num[0]} / prod(1 - z^b), b in {list(t.den)}")

# A rational polytope: the vertex (1/2, 1/2) forces period 2.
part = partition_polytope(2)
qp = ehrhart_qp(part)
print("\npartitions of k into at most 2 parts:", qp)
print("  quasipolynomial:", [qp.value(k) for k in range(10)])
print("  brute force:    ", [count_dilate(part, k) if k else 1 for k in range(10)])

# The two generating-function methods agree; barvinok trades big
# parallelepipeds for more, smaller cones.
tri = Polyhedron.from_vertices([(0, 0), (Fraction(7, 2), 0), (0, Fraction(5, 3))])
for method in ("fpp", "barvinok"):
    g = gen_func(tri, method)
    numerators = sum(len(t.num) for t in g.terms)
    print(f"\n{method:>8}: {len(g)} cones, {numerators} numerator monomials,",
          "counts", [count(tri, k, method) for k in range(1, 6)])

# Series data: numerator and denominator exponent for the 3-simplex.
s = ehrhart_series(Polyhedron.simplex(3))
print("\n3-simplex series numerator", s.hstar, "over (1 - t^%d)^%d" % (s.ell, s.d))
print("h* from the polynomial:", [str(x) for x in hstar_vector(ehrhart_qp(Polyhedron.simplex(3)), 3).h])
