"""Max-plus kernel: tropical polynomials, corner loci, dual subdivisions.

Coefficients live as doubles, but all combinatorial decisions (which lifted
points span an upper-hull face, where edges tie) are made over exact rationals
obtained by snapping the coefficients at 2**-SNAP_BITS resolution.  The float
tie tolerance only affects diagnostic evaluation, never the combinatorics.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .lpoly import (
    ExponentVector,
    LaurentPolynomial,
    NewtonPolytope,
    hull_vertices_2d,
)

SNAP_BITS = 40  # coefficient snapping resolution for the exact upper hull

TIE_TOL = 1e-9

RationalPoint = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class TropicalPolynomial:
    """max over terms of coeff + <alpha, x>."""

    dimension: int
    terms: dict[ExponentVector, float]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a tropical polynomial needs at least one term")
        for alpha, c in self.terms.items():
            if len(alpha) != self.dimension:
                raise ValueError(f"exponent {alpha} has wrong dimension")
            if not math.isfinite(c):
                raise ValueError(f"non-finite coefficient at {alpha}")


def archimedean_tropicalization(f: LaurentPolynomial) -> TropicalPolynomial:
    """Tropical polynomial with coefficients log|a_alpha|."""
    return TropicalPolynomial(
        f.dimension, {a: math.log(abs(c)) for a, c in f.terms.items()}
    )


def trop_eval(g: TropicalPolynomial, x) -> tuple[float, set[ExponentVector]]:
    """Value and the set of exponents attaining the max within tie tolerance."""
    vals = {a: c + sum(ai * xi for ai, xi in zip(a, x)) for a, c in g.terms.items()}
    value = max(vals.values())
    tol = TIE_TOL * (1.0 + abs(value))
    argmax = {a for a, v in vals.items() if v >= value - tol}
    return value, argmax


# ---------------------------------------------------------------------------
# regular subdivision from the upper hull of lifted coefficients


@dataclass(frozen=True)
class SubdivisionCell:
    """One cell of the regular subdivision of the Newton polytope."""

    points: tuple[ExponentVector, ...]  # all support points on the face
    polygon: tuple[ExponentVector, ...]  # extreme points, CCW (or 2 for a segment)
    gradient: tuple[Fraction, ...]  # s with c = <alpha, s> + r on the face
    intercept: Fraction


@dataclass(frozen=True)
class SubdivisionEdge:
    endpoints: tuple[ExponentVector, ExponentVector]
    cells: tuple[int, ...]  # indices of the 1 or 2 incident cells


@dataclass(frozen=True)
class DualSubdivision:
    dimension: int
    cells: tuple[SubdivisionCell, ...]
    edges: tuple[SubdivisionEdge, ...]

    @property
    def vertex_set(self) -> frozenset[ExponentVector]:
        """Exponents attaining the max uniquely somewhere (Vert of the subdivision)."""
        out = set()
        for cell in self.cells:
            out.update(cell.polygon)
        return frozenset(out)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "cells": [
                {
                    "points": [list(p) for p in c.points],
                    "polygon": [list(p) for p in c.polygon],
                }
                for c in self.cells
            ],
            "edges": [
                {"endpoints": [list(e.endpoints[0]), list(e.endpoints[1])],
                 "cells": list(e.cells)}
                for e in self.edges
            ],
        }


def _snap(c: float, snap_bits: int) -> Fraction:
    scale = 1 << snap_bits
    return Fraction(round(c * scale), scale)


def _collinear(a, b, c) -> bool:
    return (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0])


def _plane_through(p1, p2, p3, c1, c2, c3):
    """Exact (s, r) with c_i = <p_i, s> + r, or None if the triple is collinear."""
    det = (p2[0] - p1[0]) * (p3[1] - p1[1]) - (p3[0] - p1[0]) * (p2[1] - p1[1])
    if det == 0:
        return None
    d1, d2 = c2 - c1, c3 - c1
    sx = (d1 * (p3[1] - p1[1]) - d2 * (p2[1] - p1[1])) / det
    sy = (d2 * (p2[0] - p1[0]) - d1 * (p3[0] - p1[0])) / det
    r = c1 - (sx * p1[0] + sy * p1[1])
    return (sx, sy), r


def dual_subdivision(g: TropicalPolynomial, snap_bits: int = SNAP_BITS) -> DualSubdivision:
    """Regular subdivision of the Newton polytope induced by the upper hull of
    the lifted points (alpha, coeff(alpha))."""
    if g.dimension != 2:
        raise NotImplementedError("dual subdivisions are implemented for n = 2")
    pts = sorted(g.terms)
    lift = {a: _snap(g.terms[a], snap_bits) for a in pts}
    hull = hull_vertices_2d(pts)

    if len(hull) == 1:
        cell = SubdivisionCell((hull[0],), (hull[0],), (Fraction(0), Fraction(0)), lift[hull[0]])
        return DualSubdivision(2, (cell,), ())
    if len(hull) == 2:
        return _segment_subdivision(pts, lift, hull)

    faces: dict[frozenset, tuple] = {}
    for tri in itertools.combinations(pts, 3):
        plane = _plane_through(*tri, *(lift[p] for p in tri))
        if plane is None:
            continue
        s, r = plane
        ok = True
        face = []
        for q in pts:
            v = s[0] * q[0] + s[1] * q[1] + r
            if lift[q] > v:
                ok = False
                break
            if lift[q] == v:
                face.append(q)
        if not ok:
            continue
        key = frozenset(face)
        if key not in faces:
            faces[key] = (tuple(face), s, r)

    cells = []
    for face, s, r in faces.values():
        poly = hull_vertices_2d(list(face))
        if len(poly) < 3:
            continue  # 1-dimensional face of the upper hull, not a cell
        cells.append(SubdivisionCell(tuple(face), tuple(poly), s, r))
    cells.sort(key=lambda c: c.polygon)

    edge_cells: dict[frozenset, list[int]] = {}
    for ci, cell in enumerate(cells):
        poly = cell.polygon
        for k in range(len(poly)):
            key = frozenset((poly[k], poly[(k + 1) % len(poly)]))
            edge_cells.setdefault(key, []).append(ci)
    edges = []
    for key, incident in sorted(edge_cells.items(), key=lambda kv: sorted(kv[0])):
        a, b = sorted(key)
        edges.append(SubdivisionEdge((a, b), tuple(incident)))
    return DualSubdivision(2, tuple(cells), tuple(edges))


def _segment_subdivision(pts, lift, hull) -> DualSubdivision:
    """Upper envelope along a 1-dimensional support (all exponents collinear)."""
    a, b = hull
    d = (b[0] - a[0], b[1] - a[1])
    gg = math.gcd(abs(d[0]), abs(d[1]))
    prim = (d[0] // gg, d[1] // gg)

    def param(p) -> int:
        # integer position of p along the primitive direction
        if prim[0] != 0:
            return (p[0] - a[0]) // prim[0]
        return (p[1] - a[1]) // prim[1]

    seq = sorted(pts, key=param)
    # upper concave envelope of (param, lift)
    env: list = []
    for p in seq:
        t, c = Fraction(param(p)), lift[p]
        while len(env) >= 2:
            (t1, c1, _), (t2, c2, _) = env[-2], env[-1]
            if (c2 - c1) * (t - t1) <= (c - c1) * (t2 - t1):
                env.pop()
            else:
                break
        env.append((t, c, p))
    cells = []
    for k in range(len(env) - 1):
        p, q = env[k][2], env[k + 1][2]
        face = tuple(r for r in seq if env[k][0] <= param(r) <= env[k + 1][0])
        # a 1-cell has no unique supporting plane; record the tie line data
        # via a gradient solving c_p + <p,s> = c_q + <q,s> with s in the span
        cells.append(SubdivisionCell(face, (p, q), _segment_gradient(p, q, lift), Fraction(0)))
    edges = tuple(
        SubdivisionEdge((c.polygon[0], c.polygon[1]), (i,)) for i, c in enumerate(cells)
    )
    return DualSubdivision(2, tuple(cells), edges)


def _segment_gradient(p, q, lift):
    # any s with <q - p, s> = c_p - c_q parametrises the dual line x = -s + t*perp
    d = (q[0] - p[0], q[1] - p[1])
    rhs = lift[p] - lift[q]
    if d[0] != 0:
        return (Fraction(rhs, d[0]), Fraction(0))
    return (Fraction(0), Fraction(rhs, d[1]))


# ---------------------------------------------------------------------------
# tropical curves (corner loci)


@dataclass(frozen=True)
class CurveEdge:
    """Bounded edge (two vertex indices) or ray (vertex index + direction)."""

    vertices: tuple[int, ...]
    direction: tuple[int, int] | None  # primitive ray direction; None for segments
    weight: int
    dual_pair: tuple[ExponentVector, ExponentVector]

    @property
    def is_ray(self) -> bool:
        return self.direction is not None


@dataclass(frozen=True)
class TropicalCurve:
    vertices: tuple[RationalPoint, ...]
    edges: tuple[CurveEdge, ...]
    vertex_cell: tuple[int, ...] = field(default=())  # vertex index -> dual cell index

    def to_json(self) -> dict:
        return {
            "vertices": [[float(v[0]), float(v[1])] for v in self.vertices],
            "edges": [
                {
                    "vertices": list(e.vertices),
                    "direction": list(e.direction) if e.direction else None,
                    "weight": e.weight,
                    "dual_pair": [list(e.dual_pair[0]), list(e.dual_pair[1])],
                }
                for e in self.edges
            ],
        }

    def edge_rows(self) -> list[tuple]:
        """Flat (x0, y0, x1-or-dx, y1-or-dy, kind, weight) rows for CSV plotting."""
        rows = []
        for e in self.edges:
            v0 = self.vertices[e.vertices[0]]
            if e.is_ray:
                rows.append((float(v0[0]), float(v0[1]), e.direction[0], e.direction[1], "ray", e.weight))
            else:
                v1 = self.vertices[e.vertices[1]]
                rows.append((float(v0[0]), float(v0[1]), float(v1[0]), float(v1[1]), "segment", e.weight))
        return rows


def _lattice_length(a: ExponentVector, b: ExponentVector) -> int:
    return math.gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))


def _primitive(d: tuple[int, int]) -> tuple[int, int]:
    g = math.gcd(abs(d[0]), abs(d[1]))
    return (d[0] // g, d[1] // g)


def corner_locus(g: TropicalPolynomial, snap_bits: int = SNAP_BITS) -> TropicalCurve:
    """The weighted tropical curve where the max is attained at least twice."""
    if g.dimension != 2:
        raise NotImplementedError("corner loci are implemented for n = 2")
    subdiv = dual_subdivision(g, snap_bits)
    pts = sorted(g.terms)
    hull = hull_vertices_2d(pts)

    if len(hull) == 1:
        return TropicalCurve((), (), ())
    if len(hull) == 2:
        return _line_family_curve(subdiv)

    vertices = []
    for cell in subdiv.cells:
        s = cell.gradient
        vertices.append((-s[0], -s[1]))
    vertex_cell = tuple(range(len(subdiv.cells)))

    # interior point of the Newton polytope for outward ray orientation
    cx = Fraction(sum(v[0] for v in hull), len(hull))
    cy = Fraction(sum(v[1] for v in hull), len(hull))

    edges = []
    for sub_edge in subdiv.edges:
        a, b = sub_edge.endpoints
        w = _lattice_length(a, b)
        if len(sub_edge.cells) == 2:
            edges.append(CurveEdge(tuple(sub_edge.cells), None, w, (a, b)))
        else:
            perp = _primitive((b[1] - a[1], a[0] - b[0]))
            mx = Fraction(a[0] + b[0], 2) - cx
            my = Fraction(a[1] + b[1], 2) - cy
            if perp[0] * mx + perp[1] * my < 0:
                perp = (-perp[0], -perp[1])
            edges.append(CurveEdge((sub_edge.cells[0],), perp, w, (a, b)))
    return TropicalCurve(tuple(vertices), tuple(edges), vertex_cell)


def _line_family_curve(subdiv: DualSubdivision) -> TropicalCurve:
    """Corner locus of a 1-d support: parallel full lines, one per envelope cell.

    Each line is modelled as a vertex with two opposite rays so the curve
    stays balanced.
    """
    vertices = []
    edges = []
    for ci, cell in enumerate(subdiv.cells):
        p, q = cell.polygon
        s = cell.gradient  # chosen with <q - p, s> = c_p - c_q, so s lies on the tie line
        vertices.append((s[0], s[1]))
        w = _lattice_length(p, q)
        perp = _primitive((q[1] - p[1], p[0] - q[0]))
        edges.append(CurveEdge((ci,), perp, w, (p, q)))
        edges.append(CurveEdge((ci,), (-perp[0], -perp[1]), w, (p, q)))
    return TropicalCurve(tuple(vertices), tuple(edges), tuple(range(len(subdiv.cells))))


def balancing_check(curve: TropicalCurve) -> tuple[bool, list[dict]]:
    """Exact integer check that weighted primitive directions sum to zero at
    every vertex."""
    sums = {i: [0, 0] for i in range(len(curve.vertices))}
    for e in curve.edges:
        if e.is_ray:
            i = e.vertices[0]
            sums[i][0] += e.weight * e.direction[0]
            sums[i][1] += e.weight * e.direction[1]
        else:
            i, j = e.vertices
            vi, vj = curve.vertices[i], curve.vertices[j]
            d = (vj[0] - vi[0], vj[1] - vi[1])
            den = math.lcm(d[0].denominator, d[1].denominator)
            di = (int(d[0] * den), int(d[1] * den))
            if di == (0, 0):
                continue
            prim = _primitive(di)
            sums[i][0] += e.weight * prim[0]
            sums[i][1] += e.weight * prim[1]
            sums[j][0] -= e.weight * prim[0]
            sums[j][1] -= e.weight * prim[1]
    violations = [
        {"vertex": i, "sum": tuple(s)} for i, s in sums.items() if s != [0, 0]
    ]
    return (not violations), violations


def solid_tropical(g: TropicalPolynomial, P: NewtonPolytope) -> bool:
    """True iff the upper-hull vertex set of g equals the vertices of P."""
    subdiv = dual_subdivision(g)
    return set(subdiv.vertex_set) == set(P.vertices)
