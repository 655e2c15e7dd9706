"""Euclid's algorithm drawn on the integer lattice.

Writes CSV and SVG files to ``demos/output``.
"""
import os

from ehrlat.euclid import emit_plot, gcd_certificate, staircase_decomposition, stern_brocot_embedding

for a, b in [(9, 6), (3, 2), (7, 5), (1071, 462)]:
    c = gcd_certificate(a, b)
    x, y = c.bezout
    print(f"gcd({a}, {b}) = {c.g}: {x}*{a} + {y}*{b} = {x * a + y * b};"
          f" closest point {c.closest}; {c.segment_points} lattice points on the segment")

print("\nStern-Brocot, depth 3:")
for node in stern_brocot_embedding(3):
    print("  " * node.depth, node.point)

dec = staircase_decomposition(12, 7)
print(f"\nstaircase of T_(12,7): {len(dec.pieces)} pieces")
for p in dec.pieces:
    print(f"   size {p.c:2d} offset {p.offset} transform {p.transform}{'  (closed)' if p.closed else ''}")

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")
for kind, params in [("gcd_rays", {"bound": 12}), ("stern_brocot", {"depth": 5}), ("staircase", {"a": 12, "b": 7})]:
    print("wrote", *emit_plot(kind, params, out))
