"""Counting problems as Ehrhart functions.

Colourings, flows, partitions and schedules each become lattice points in
dilates of a (half-open) polytope, so reciprocity comes for free.
"""
from ehrlat import Graph, SchedulingProblem, chromatic_qp, modular_flow_qp, restricted_partition_qp, scheduling_qp
from ehrlat.models import acyclic_orientation_count, chromatic_oracle, distinct_partitions_exactly
from ehrlat.polyhedra import Implies, less

# Proper colourings: lattice points of the half-open cube off the graphic arrangement.
for name, g in [("K3", Graph.complete(3)), ("P3", Graph.path(3)), ("C4", Graph.cycle(4))]:
    chi = chromatic_qp(g)
    print(f"{name}: chi = {chi};  deletion-contraction agrees: {chi == chromatic_oracle(g)};",
          f"|chi(-1)| = {abs(chi.value(-1))}, acyclic orientations = {acyclic_orientation_count(g)}")

# Partitions into at most m parts and the distinct-part count at -k.
for m in (2, 3, 4):
    p = restricted_partition_qp(m)
    print(f"\nm = {m}: period {p.period}, p(k) for k < 12: {[p.value(k) for k in range(12)]}")
    print("   |p(-k)|:", [abs(p.value(-k)) for k in range(1, 12)])
    print("   distinct:", [distinct_partitions_exactly(k, m) for k in range(1, 12)])

# Nowhere-zero flows on a directed triangle with a chord.
g = Graph(3, ((0, 1), (1, 2), (2, 0), (0, 2)), True)
phi = modular_flow_qp(g)
print("\nflows on the chorded triangle:", phi, [phi.value(k) for k in range(1, 7)])

# Schedules of three jobs: if job 1 runs before job 2, job 3 must too.
s = SchedulingProblem(3, Implies(less(3, 0, 1), less(3, 2, 1)))
q = scheduling_qp(s)
print("\nschedules:", q, [q.value(k) for k in range(1, 6)])
