"""Euclid's algorithm seen through the integer lattice in the plane."""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Tuple

PALETTE = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666")
SCALE = 24
MAX_SB_DEPTH = 12

Point = Tuple[int, int]
Mat2 = Tuple[Tuple[int, int], Tuple[int, int]]
IDENTITY: Mat2 = ((1, 0), (0, 1))


class SizeError(ValueError):
    pass


@dataclass(frozen=True)
class GcdCertificate:
    a: int
    b: int
    g: int
    segment_points: int
    closest: Point
    bezout: Tuple[int, int]


def gcd_certificate(a: int, b: int) -> GcdCertificate:
    """gcd with the lattice point closest to the segment below it.

    With ``(a', b') = (a, b) / g`` the closest point ``(p, q)`` satisfies
    ``b' p - a' q = 1`` and ``1 <= p <= a'``; then ``-q a + p b = g``.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    g = gcd(a, b)
    a1, b1 = a // g, b // g
    p = pow(b1, -1, a1) if a1 > 1 else 1
    q = (b1 * p - 1) // a1
    return GcdCertificate(a, b, g, g + 1, (p, q), (-q, p))


def euclid_depth(a: int, b: int) -> int:
    """Steps of the centre recursion before ``(a, b)`` lies on the ray through the centre."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    v1, v2 = (1, 0), (0, 1)
    steps = 0
    while True:
        c = (v1[0] + v2[0], v1[1] + v2[1])
        side = b * c[0] - a * c[1]
        if side == 0:
            return steps
        if side < 0:
            v2 = c
        else:
            v1 = c
        steps += 1


# ---------------------------------------------------------------------------
# Stern-Brocot tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SBNode:
    point: Point
    parent: Optional[Point]
    depth: int
    basis: Tuple[Point, Point]


def stern_brocot_embedding(depth: int) -> List[SBNode]:
    """Centres of all bases reached within ``depth`` replacement steps, breadth first."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > MAX_SB_DEPTH:
        raise SizeError(f"depth {depth} exceeds the limit {MAX_SB_DEPTH}")
    return _sb_nodes(depth)


def _sb_nodes(depth: int, limit: Optional[int] = None) -> List[SBNode]:
    root = SBNode((1, 1), None, 0, ((1, 0), (0, 1)))
    out = [root]
    level = [root]
    for t in range(1, depth + 1):
        nxt = []
        for node in level:
            v1, v2 = node.basis
            c = node.point
            for basis in ((v1, c), (c, v2)):
                pt = (basis[0][0] + basis[1][0], basis[0][1] + basis[1][1])
                if limit is not None and max(pt) > limit:
                    continue
                nxt.append(SBNode(pt, c, t, basis))
        out.extend(nxt)
        level = nxt
        if not level:
            break
    return out


def stern_brocot_pruned(bound: int, depth: int) -> List[SBNode]:
    """Nodes with both coordinates at most ``bound``; subtrees beyond it are cut."""
    return _sb_nodes(depth, bound)


# ---------------------------------------------------------------------------
# Staircase
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StaircasePiece:
    """Points ``transform @ (offset + t)`` for ``t`` in ``{0 <= y < x <= c}``.

    The last piece of a decomposition is the closed triangle ``{0 <= y <= x <= c}``.
    """
    offset: Point
    c: int
    transform: Mat2
    closed: bool = False

    def local_points(self) -> List[Point]:
        c = self.c
        ox, oy = self.offset
        return [(ox + x, oy + y) for x in range(c + 1) for y in range(x + 1)
                if self.closed or y < x]

    def points(self) -> List[Point]:
        (m00, m01), (m10, m11) = self.transform
        return [(m00 * x + m01 * y, m10 * x + m11 * y) for x, y in self.local_points()]

    def corners(self) -> List[Point]:
        (m00, m01), (m10, m11) = self.transform
        ox, oy = self.offset
        c = self.c
        return [(m00 * x + m01 * y, m10 * x + m11 * y)
                for x, y in ((ox, oy), (ox + c, oy), (ox + c, oy + c))]


@dataclass(frozen=True)
class StaircaseDecomposition:
    a: int
    b: int
    pieces: Tuple[StaircasePiece, ...]


def _mul(m: Mat2, n: Mat2) -> Mat2:
    return ((m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
            (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]))


def staircase_decomposition(a: int, b: int) -> StaircaseDecomposition:
    """Split ``T_{a,b}`` (vertices (0,0), (a,0), (a,b)) into sheared half-open ``T'_{c,c}``."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    a0, b0 = a, b
    pieces = []
    m = IDENTITY
    while a != b:
        if a > b:
            # lower-right corner, then (x, y) -> (x - y, y) on the rest
            pieces.append(StaircasePiece((a - b, 0), b, m))
            m = _mul(m, ((1, 1), (0, 1)))
            a -= b
        else:
            # triangle under the diagonal, then (x, y) -> (x, y - x)
            pieces.append(StaircasePiece((0, 0), a, m))
            m = _mul(m, ((1, 0), (1, 1)))
            b -= a
    pieces.append(StaircasePiece((0, 0), a, m, closed=True))
    return StaircaseDecomposition(a0, b0, tuple(pieces))


def triangle_points(a: int, b: int) -> List[Point]:
    """Integer points of ``T_{a,b}`` by scanning."""
    return [(x, y) for x in range(a + 1) for y in range(b + 1) if a * y <= b * x]


# ---------------------------------------------------------------------------
# Plots
# ---------------------------------------------------------------------------

def _svg(width, height, body: List[str]) -> str:
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">\n'
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n')
    return head + "\n".join(body) + "\n</svg>\n"


def _xy(p, height, pad):
    return pad + p[0] * SCALE, height - pad - p[1] * SCALE


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def gcd_rays_data(bound: int):
    if bound < 1:
        raise ValueError("bound must be positive")
    return [(a, b, euclid_depth(a, b)) for a in range(1, bound + 1)
            for b in range(1, bound + 1) if gcd(a, b) == 1]


def _plot_gcd_rays(bound: int):
    rows = gcd_rays_data(bound)
    pad = SCALE
    size = bound * SCALE + 2 * pad
    body = []
    for a, b, d in rows:
        t = bound / max(a, b)
        x0, y0 = _xy((0, 0), size, pad)
        x1, y1 = _xy((a * t, b * t), size, pad)
        body.append(f'<line x1="{x0:g}" y1="{y0:g}" x2="{x1:g}" y2="{y1:g}" '
                    f'stroke="{PALETTE[d % 8]}" stroke-width="1"/>')
        cx, cy = _xy((a, b), size, pad)
        body.append(f'<circle cx="{cx:g}" cy="{cy:g}" r="2" fill="{PALETTE[d % 8]}"/>')
    return _csv(["x", "y", "depth"], rows), _svg(size, size, body)


def _plot_stern_brocot(depth: int):
    nodes = stern_brocot_embedding(depth)
    rows = [(n.point[0], n.point[1], "" if n.parent is None else n.parent[0],
             "" if n.parent is None else n.parent[1]) for n in nodes]
    top = max(max(n.point) for n in nodes)
    pad = SCALE
    size = top * SCALE + 2 * pad
    body = []
    for n in nodes:
        if n.parent is not None:
            x0, y0 = _xy(n.parent, size, pad)
            x1, y1 = _xy(n.point, size, pad)
            body.append(f'<line x1="{x0:g}" y1="{y0:g}" x2="{x1:g}" y2="{y1:g}" '
                        f'stroke="{PALETTE[n.depth % 8]}" stroke-width="1"/>')
    for n in nodes:
        cx, cy = _xy(n.point, size, pad)
        body.append(f'<circle cx="{cx:g}" cy="{cy:g}" r="3" fill="{PALETTE[n.depth % 8]}"/>')
    return _csv(["x", "y", "parent_x", "parent_y"], rows), _svg(size, size, body)


def _plot_staircase(a: int, b: int):
    dec = staircase_decomposition(a, b)
    rows = []
    for i, p in enumerate(dec.pieces):
        (m00, m01), (m10, m11) = p.transform
        rows.append((i, p.offset[0], p.offset[1], p.c, m00, m01, m10, m11))
    pad = SCALE
    width, height = a * SCALE + 2 * pad, b * SCALE + 2 * pad
    body = []
    for i, p in enumerate(dec.pieces):
        pts = " ".join("%g,%g" % _xy(q, height, pad) for q in p.corners())
        body.append(f'<polygon points="{pts}" fill="{PALETTE[i % 8]}" fill-opacity="0.35" '
                    f'stroke="{PALETTE[i % 8]}" stroke-width="1"/>')
        for q in p.points():
            cx, cy = _xy(q, height, pad)
            body.append(f'<circle cx="{cx:g}" cy="{cy:g}" r="2.5" fill="{PALETTE[i % 8]}"/>')
    return _csv(["piece", "px", "py", "c", "m00", "m01", "m10", "m11"], rows), _svg(width, height, body)


PLOT_KINDS = ("gcd_rays", "stern_brocot", "staircase")


def render_plot(kind: str, params: Dict[str, int]) -> Tuple[str, str]:
    """CSV and SVG text for one figure kind."""
    if kind == "gcd_rays":
        return _plot_gcd_rays(int(params.get("bound", 10)))
    if kind == "stern_brocot":
        return _plot_stern_brocot(int(params.get("depth", 3)))
    if kind == "staircase":
        return _plot_staircase(int(params["a"]), int(params["b"]))
    raise ValueError(f"unknown plot kind {kind!r}")


def emit_plot(kind: str, params: Dict[str, int], out_dir: str, stem: Optional[str] = None) -> Tuple[str, str]:
    """Write ``<stem>.csv`` and ``<stem>.svg`` into ``out_dir``; returns both paths."""
    csv_text, svg_text = render_plot(kind, params)
    stem = stem or kind
    os.makedirs(out_dir, exist_ok=True)
    paths = (os.path.join(out_dir, stem + ".csv"), os.path.join(out_dir, stem + ".svg"))
    for path, text in zip(paths, (csv_text, svg_text)):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return paths
