"""Command-line entry point: ``ehrlat <subcommand> ...``.

Output is a single JSON object with a top-level ``"format": 1``.  Exit codes:
0 success, 1 domain error (empty, unbounded, invalid input), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import euclid, genfunc, models, oracle
from .exactmath import rational_str
from .polyhedra import PartialComplex, Polyhedron, PolyhedronError, dilate, dilate_complex

FORMAT = 1
SAFE_INT = 2 ** 53


class UsageError(Exception):
    pass


def _int(x: int):
    return x if abs(x) < SAFE_INT else str(x)


def _rat(x):
    x = Fraction(x)
    if x.denominator == 1:
        return _int(x.numerator)
    return rational_str(x)


def _load(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_region(path: str):
    """Polyhedron JSON, ``{"vertices": [...]}`` or ``{"pieces": [{"sign": s, "polyhedron": ...}]}``."""
    data = _load(path)
    if "pieces" in data:
        return PartialComplex(tuple((int(p.get("sign", 1)), _polyhedron(p["polyhedron"]))
                                    for p in data["pieces"]))
    return _polyhedron(data)


def _polyhedron(data: dict) -> Polyhedron:
    if "vertices" in data:
        return Polyhedron.from_vertices(data["vertices"])
    return Polyhedron.from_json(data)


def threads() -> int:
    raw = os.environ.get("EHRLAT_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"EHRLAT_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise UsageError(f"EHRLAT_THREADS must be a positive integer, got {raw!r}")
    return n


def _qp_json(qp: genfunc.QuasiPolynomial) -> dict:
    return {"quasipolynomial": qp.to_json()}


def _qp_or_value(qp, k: Optional[int]) -> dict:
    if k is None:
        return _qp_json(qp)
    return {"k": k, "value": _rat(qp(k))}


def _region_qp(args):
    x = load_region(args.polytope)
    return genfunc.ehrhart_qp(x, args.via, args.method)


def _poly_qp(args):
    if args.qp:
        return genfunc.QuasiPolynomial.from_json(_load(args.qp))
    if not args.polytope:
        raise UsageError("need --polytope or --qp")
    return genfunc.ehrhart_qp(load_region(args.polytope), args.via)


def cmd_count(args):
    x = load_region(args.polytope)
    return {"count": _int(genfunc.count(x, args.dilate, args.method))}


def cmd_genfunc(args):
    x = load_region(args.polytope)
    if args.dilate != 1:
        x = dilate_complex(x, args.dilate) if isinstance(x, PartialComplex) else dilate(x, args.dilate)
    return genfunc.gen_func(x, args.method).to_json()


def cmd_ehrhart(args):
    return _qp_or_value(_region_qp(args), args.eval)


def cmd_series(args):
    s = genfunc.ehrhart_series(load_region(args.polytope))
    return {"hstar": [_int(h) for h in s.hstar], "ell": s.ell, "d": s.d}


def cmd_hstar(args):
    data = genfunc.hstar_vector(_poly_qp(args), args.degree)
    return {"hstar": [_rat(h) for h in data.h], "d": data.d}


def cmd_fstar(args):
    data = genfunc.fstar_vector(_poly_qp(args), args.degree)
    return {"fstar": [_rat(f) for f in data.f], "d": data.d}


def cmd_reciprocity(args):
    qp = _poly_qp(args)
    return {"k": args.k, "value": _int(genfunc.reciprocity(qp, args.k))}


def cmd_chromatic(args):
    g = models.Graph.from_json(_load(args.graph))
    return _qp_or_value(models.chromatic_qp(g, args.via), args.eval)


def cmd_partitions(args):
    return _qp_or_value(models.restricted_partition_qp(args.m, args.via), args.eval)


def cmd_flow(args):
    g = models.Graph.from_json(_load(args.graph))
    return _qp_or_value(models.modular_flow_qp(g, args.via), args.eval)


def cmd_schedule(args):
    s = models.SchedulingProblem.from_json(_load(args.problem))
    return _qp_or_value(models.scheduling_qp(s, args.via), args.eval)


def cmd_gcd(args):
    c = euclid.gcd_certificate(args.a, args.b)
    return {"a": _int(c.a), "b": _int(c.b), "g": _int(c.g), "segment_points": _int(c.segment_points),
            "closest": [_int(v) for v in c.closest], "bezout": [_int(v) for v in c.bezout]}


def cmd_sternbrocot(args):
    nodes = euclid.stern_brocot_embedding(args.depth)
    out = {"nodes": [{"point": list(n.point), "parent": None if n.parent is None else list(n.parent),
                      "depth": n.depth} for n in nodes]}
    if args.plot:
        out["files"] = list(euclid.emit_plot("stern_brocot", {"depth": args.depth}, args.plot))
    return out


def cmd_staircase(args):
    dec = euclid.staircase_decomposition(args.a, args.b)
    out = {"pieces": [{"offset": list(p.offset), "c": p.c, "transform": [list(r) for r in p.transform],
                       "closed": p.closed} for p in dec.pieces]}
    if args.plot:
        out["files"] = list(euclid.emit_plot("staircase", {"a": args.a, "b": args.b}, args.plot))
    return out


def cmd_gcd_rays(args):
    rows = euclid.gcd_rays_data(args.bound)
    out = {"rays": [{"x": a, "y": b, "depth": d} for a, b, d in rows]}
    if args.plot:
        out["files"] = list(euclid.emit_plot("gcd_rays", {"bound": args.bound}, args.plot))
    return out


def cmd_oracle_count(args):
    x = load_region(args.polytope)
    if args.interior:
        if isinstance(x, PartialComplex):
            raise UsageError("--interior needs a single polyhedron")
        return {"count": _int(oracle.count_interior(x, args.dilate))}
    return {"count": _int(oracle.count_dilate(x, args.dilate))}


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ehrlat", description="Lattice point counting and Ehrhart theory.")
    p.add_argument("--out", help="write the JSON result here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def region(sp, method=True, via=False):
        sp.add_argument("--polytope", required=True, help="polyhedron or partial complex JSON")
        if method:
            sp.add_argument("--method", choices=genfunc.METHODS, default="fpp")
        if via:
            sp.add_argument("--via", choices=("interpolation", "hstar"), default="interpolation")

    def evaluable(sp):
        sp.add_argument("--eval", type=int, help="evaluate at this k instead of printing the quasipolynomial")
        sp.add_argument("--via", choices=("interpolation", "hstar"), default="interpolation")

    sp = sub.add_parser("count", help="lattice points of a dilate")
    region(sp)
    sp.add_argument("--dilate", type=_positive, default=1)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("genfunc", help="rational generating function")
    region(sp)
    sp.add_argument("--dilate", type=_positive, default=1)
    sp.set_defaults(func=cmd_genfunc)

    sp = sub.add_parser("ehrhart", help="Ehrhart quasipolynomial")
    region(sp, via=True)
    sp.add_argument("--eval", type=int)
    sp.set_defaults(func=cmd_ehrhart)

    sp = sub.add_parser("series", help="Ehrhart series numerator")
    region(sp, method=False)
    sp.set_defaults(func=cmd_series)

    for name, fn in (("hstar", cmd_hstar), ("fstar", cmd_fstar)):
        sp = sub.add_parser(name, help=f"{name} vector of an Ehrhart polynomial")
        sp.add_argument("--polytope")
        sp.add_argument("--qp", help="quasipolynomial JSON instead of a polytope")
        sp.add_argument("--degree", type=_nonneg)
        sp.add_argument("--via", choices=("interpolation", "hstar"), default="interpolation")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("reciprocity", help="evaluate the quasipolynomial at -k")
    sp.add_argument("--polytope")
    sp.add_argument("--qp")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--via", choices=("interpolation", "hstar"), default="interpolation")
    sp.set_defaults(func=cmd_reciprocity)

    sp = sub.add_parser("chromatic", help="chromatic polynomial of a graph")
    sp.add_argument("--graph", required=True)
    evaluable(sp)
    sp.set_defaults(func=cmd_chromatic)

    sp = sub.add_parser("partitions", help="partitions into at most m parts")
    sp.add_argument("--m", type=_positive, required=True)
    evaluable(sp)
    sp.set_defaults(func=cmd_partitions)

    sp = sub.add_parser("flow", help="nowhere-zero modular flows of a digraph")
    sp.add_argument("--graph", required=True)
    evaluable(sp)
    sp.set_defaults(func=cmd_flow)

    sp = sub.add_parser("schedule", help="schedules satisfying a formula")
    sp.add_argument("--problem", required=True)
    evaluable(sp)
    sp.set_defaults(func=cmd_schedule)

    sp = sub.add_parser("gcd", help="gcd with a lattice certificate")
    sp.add_argument("--a", type=_positive, required=True)
    sp.add_argument("--b", type=_positive, required=True)
    sp.set_defaults(func=cmd_gcd)

    sp = sub.add_parser("sternbrocot", help="Stern-Brocot tree embedding")
    sp.add_argument("--depth", type=_nonneg, required=True)
    sp.add_argument("--plot", metavar="DIR", help="also write CSV and SVG into DIR")
    sp.set_defaults(func=cmd_sternbrocot)

    sp = sub.add_parser("staircase", help="staircase decomposition of T_{a,b}")
    sp.add_argument("--a", type=_positive, required=True)
    sp.add_argument("--b", type=_positive, required=True)
    sp.add_argument("--plot", metavar="DIR")
    sp.set_defaults(func=cmd_staircase)

    sp = sub.add_parser("gcd-rays", help="rays through coprime points coloured by Euclid depth")
    sp.add_argument("--bound", type=_positive, default=10)
    sp.add_argument("--plot", metavar="DIR")
    sp.set_defaults(func=cmd_gcd_rays)

    sp = sub.add_parser("oracle-count", help="brute-force count of a dilate")
    sp.add_argument("--polytope", required=True)
    sp.add_argument("--dilate", type=_positive, default=1)
    sp.add_argument("--interior", action="store_true")
    sp.set_defaults(func=cmd_oracle_count)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        threads()
        result = args.func(args)
    except UsageError as exc:
        print(f"ehrlat: usage error: {exc}", file=sys.stderr)
        return 2
    except (PolyhedronError, ValueError, ArithmeticError, OSError, KeyError, oracle.ResourceError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"ehrlat: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 1
    payload = {"format": FORMAT}
    payload.update(result)
    text = json.dumps(payload, sort_keys=True) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"ehrlat: OSError: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
