"""Signed unimodular decompositions of tall cones.

The cone on (1,0,0), (0,1,0), (1,1,a) has a lattice points in its
fundamental parallelepiped, yet Barvinok's method rewrites it with three
unimodular cones for every a.  We also try a random cone of large index.
"""
import random

from ehrlat import HalfOpenCone, barvinok_decompose, parallelepiped_points
from ehrlat.cones import index
from ehrlat.exactmath import det, from_columns

for a in (2, 7, 30):
    c = HalfOpenCone((0, 0, 0), ((1, 0, 0), (0, 1, 0), (1, 1, a)))
    res = barvinok_decompose(c)
    print(f"a = {a}: index {index(c)}, |Pi| = {len(parallelepiped_points(c))}, leaves {len(res)}")
    for sign, leaf in res:
        opened = [g for g, o in zip(leaf.generators, leaf.open_flags) if o]
        print(f"   {sign:+d} cone{leaf.generators}  open along {opened}")

# Spot check the signed sum against the cone itself.
c = HalfOpenCone((0, 0, 0), ((1, 0, 0), (0, 1, 0), (1, 1, 7)))
res = barvinok_decompose(c)
pts = [(x, y, z) for x in range(-1, 4) for y in range(-1, 4) for z in range(-1, 20)]
print("\npointwise agreement on", len(pts), "points:",
      all(res.multiplicity(p) == int(c.contains(p)) for p in pts))

rng = random.Random(0)
while True:
    gens = [tuple(rng.randint(-80, 80) for _ in range(3)) for _ in range(3)]
    if 10 ** 5 < abs(det(from_columns(gens))) < 10 ** 6:
        break
edges = []
res = barvinok_decompose(HalfOpenCone((0, 0, 0), tuple(gens)), on_edge=lambda p, ch, d: edges.append((p, ch)))
print(f"\nrandom cone of index {abs(det(from_columns(gens)))}: {len(res)} leaves, depth {res.max_depth},"
      f" {res.nodes} nodes; indices drop on every edge: {all(ch < p for p, ch in edges)}")
