"""Exact lattice point counting in rational polyhedra and Ehrhart quasipolynomials."""
from .exactmath import DimensionError, SingularMatrixError, smith_normal_form, lll_reduce
from .polyhedra import (
    EmptyError,
    Equation,
    Inequality,
    PartialComplex,
    Polyhedron,
    PolyhedronError,
    UnboundedError,
    compile_formula,
    dilate,
    vertices,
)
from .cones import HalfOpenCone, parallelepiped_points
from .barvinok import SignedConeList, barvinok_decompose, brion, triangulate_cone
from .genfunc import (
    EhrhartSeries,
    GenFunc,
    QuasiPolynomial,
    count,
    ehrhart_qp,
    ehrhart_series,
    fstar_vector,
    gen_func,
    hstar_vector,
    reciprocity,
)
from .oracle import count_dilate, count_interior, enumerate_points
from .models import (
    Graph,
    SchedulingProblem,
    chromatic_qp,
    modular_flow_qp,
    restricted_partition_qp,
    scheduling_qp,
)
from .euclid import gcd_certificate, staircase_decomposition, stern_brocot_embedding

__all__ = [
    "DimensionError",
    "SingularMatrixError",
    "smith_normal_form",
    "lll_reduce",
    "EmptyError",
    "Equation",
    "Inequality",
    "PartialComplex",
    "Polyhedron",
    "PolyhedronError",
    "UnboundedError",
    "compile_formula",
    "dilate",
    "vertices",
    "HalfOpenCone",
    "parallelepiped_points",
    "SignedConeList",
    "barvinok_decompose",
    "brion",
    "triangulate_cone",
    "EhrhartSeries",
    "GenFunc",
    "QuasiPolynomial",
    "count",
    "ehrhart_qp",
    "ehrhart_series",
    "fstar_vector",
    "gen_func",
    "hstar_vector",
    "reciprocity",
    "count_dilate",
    "count_interior",
    "enumerate_points",
    "Graph",
    "SchedulingProblem",
    "chromatic_qp",
    "modular_flow_qp",
    "restricted_partition_qp",
    "scheduling_qp",
    "gcd_certificate",
    "staircase_decomposition",
    "stern_brocot_embedding",
]

__version__ = "0.1.0"
