"""Coamoebas: argument-torus rasters, the exact standard-line model, and
unimodular transforms of it.

The coamoeba of a curve is the image of V_f under the coordinatewise argument
map, a subset of the torus [0, 2pi)^2.  For the standard linear polynomial
1 + z_1 + ... + z_n the coamoeba is a union of 2^n - 2 explicit polyhedra
(cube minus corner cone); for a maximally sparse polynomial with simplex
support the coamoeba is an integer-linear transform of that model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import ndimage

from ._roots import batched_roots
from .amoeba import FiberSolveConfig, auto_window
from .amoeba import _univariate_coeffs  # shared fiber substitution
from .lpoly import LaurentPolynomial, is_maximally_sparse, newton_polytope

TWO_PI = 2.0 * math.pi
_CHUNK = 1 << 16


class CoamoebaError(Exception):
    pass


@dataclass
class CoamoebaRaster:
    """Occupancy over the argument torus; row r = theta2 cell, col c = theta1 cell."""

    resolution: tuple[int, int]
    occupancy: np.ndarray
    samples_used: int = 0
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        rows, cols = self.resolution
        if rows < 128 or cols < 128:
            raise CoamoebaError("coamoeba rasters need resolution at least 128x128")
        if self.occupancy.shape != (rows, cols):
            raise CoamoebaError("occupancy shape does not match resolution")

    def pixel_centers(self):
        rows, cols = self.resolution
        t1 = (np.arange(cols) + 0.5) * TWO_PI / cols
        t2 = (np.arange(rows) + 0.5) * TWO_PI / rows
        return t1, t2


def raster_volume(r: CoamoebaRaster) -> float:
    """Occupied fraction of the torus times its total area (2pi)^2."""
    return float(r.occupancy.mean()) * TWO_PI * TWO_PI


# ---------------------------------------------------------------------------
# sampled coamoebas


def rasterize_coamoeba(f: LaurentPolynomial,
                       resolution: tuple[int, int] = (512, 512),
                       cfg: FiberSolveConfig = FiberSolveConfig(),
                       x_span: float = 8.0, x_samples: int = 768,
                       theta_oversample: int = 2) -> CoamoebaRaster:
    """Argument-torus raster of V_f by dual fiber sweeps.

    One sweep fixes z1 on a (x1, theta1) grid and marks (theta1, arg w) for
    every root w; the transposed sweep covers parts of the curve where w
    moves too fast in theta1.  The modulus grid spans the Log-space auto
    window widened to at least x_span on each axis.
    """
    if f.dimension != 2:
        raise CoamoebaError("coamoeba rasterization requires n = 2")
    rows, cols = resolution
    win = auto_window(f)
    occ = np.zeros((rows, cols), dtype=bool)
    samples = 0
    for fixed, n_theta, n_bins in ((0, theta_oversample * cols, rows),
                                   (1, theta_oversample * rows, cols)):
        lo, hi = (win.x_min, win.x_max) if fixed == 0 else (win.y_min, win.y_max)
        pad = max(0.0, (x_span - (hi - lo)) / 2)
        xs = np.linspace(lo - pad, hi + pad, x_samples)
        thetas = (np.arange(n_theta) + 0.5) * TWO_PI / n_theta
        grid_t = np.repeat(thetas, len(xs))
        grid_x = np.tile(xs, len(thetas))
        for start in range(0, len(grid_t), _CHUNK):
            gt = grid_t[start : start + _CHUNK]
            gx = grid_x[start : start + _CHUNK]
            z = np.exp(gx + 1j * gt)
            coeffs = _univariate_coeffs(f, fixed, z)
            roots, counts = batched_roots(coeffs, tol=cfg.root_tolerance,
                                          max_iter=cfg.max_iterations)
            samples += len(gt)
            valid = np.arange(roots.shape[1])[None, :] < counts[:, None]
            rr, cc = np.nonzero(valid & (roots != 0) & ~np.isnan(roots))
            args = np.mod(np.angle(roots[rr, cc]), TWO_PI)
            bins = np.minimum((args / TWO_PI * n_bins).astype(int), n_bins - 1)
            fixed_bins = np.minimum(
                (gt[rr] / TWO_PI * (cols if fixed == 0 else rows)).astype(int),
                (cols if fixed == 0 else rows) - 1,
            )
            if fixed == 0:
                occ[bins, fixed_bins] = True
            else:
                occ[fixed_bins, bins] = True
    return CoamoebaRaster(resolution, occ, samples)


# ---------------------------------------------------------------------------
# exact standard model (coamoeba of 1 + z_1 + ... + z_n)


@dataclass(frozen=True)
class StandardPiece:
    """One component D = tau \\ C: a pi-octant cube minus a corner cone."""

    upper: tuple[int, ...]  # coordinates ranging in [pi, 2pi]
    lower: tuple[int, ...]  # coordinates ranging in [0, pi]
    cube_vertices: tuple[tuple[float, ...], ...]
    cone_apex: tuple[float, ...]
    cone_base: tuple[tuple[float, ...], ...]

    def to_json(self) -> dict:
        return {"upper": list(self.upper), "lower": list(self.lower),
                "cube_vertices": [list(v) for v in self.cube_vertices],
                "cone_apex": list(self.cone_apex),
                "cone_base": [list(v) for v in self.cone_base]}


@dataclass
class StandardCoamoebaModel:
    n: int
    polyhedra: list[StandardPiece]

    def to_json(self) -> dict:
        return {"n": self.n, "volume": standard_volume(self.n),
                "polyhedra": [p.to_json() for p in self.polyhedra]}


def standard_volume(n: int) -> float:
    """(n-1)(2^n - 2) pi^n / n, the flat-metric volume of the model."""
    return (n - 1) * (2 ** n - 2) * math.pi ** n / n


def standard_model(n: int) -> StandardCoamoebaModel:
    """The 2^n - 2 components of the coamoeba of 1 + z_1 + ... + z_n.

    Components sit in the mixed pi-octant cubes (not all coordinates low, not
    all high).  In a cube whose sole upper coordinate is k the removed cone is
    {theta_k - pi >= max of the others}; with a sole lower coordinate k it is
    the reflection {min of the others >= theta_k + pi}.
    """
    if n not in (2, 3):
        raise CoamoebaError("the standard model is available for n in {2, 3}")
    pieces = []
    for mask in range(1, 2 ** n - 1):
        upper = tuple(j for j in range(n) if mask >> j & 1)
        lower = tuple(j for j in range(n) if not mask >> j & 1)
        cube = []
        for corner in range(2 ** n):
            v = [0.0] * n
            for j in range(n):
                base = math.pi if j in upper else 0.0
                v[j] = base + (math.pi if corner >> j & 1 else 0.0)
            cube.append(tuple(v))
        if len(upper) == 1:
            k = upper[0]
            apex = tuple(math.pi if j == k else 0.0 for j in range(n))
            base_face = [v for v in cube if v[k] == TWO_PI]
        else:
            k = lower[0]
            apex = tuple(math.pi if j == k else TWO_PI for j in range(n))
            base_face = [v for v in cube if v[k] == 0.0]
        pieces.append(StandardPiece(upper, lower, tuple(cube), apex, tuple(base_face)))
    return StandardCoamoebaModel(n, pieces)


def standard_membership(theta: np.ndarray, n: int) -> np.ndarray:
    """Vectorized membership of angles (shape (..., n), radians) in the model.

    Derivation for the cube with single upper coordinate k: with the other
    arguments in [0, pi], theta_k ranges over (pi, pi + max of the others);
    the remaining cubes follow by the theta -> -theta symmetry of the line.
    """
    if n not in (2, 3):
        raise CoamoebaError("the standard model is available for n in {2, 3}")
    t = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    if t.shape[-1] != n:
        raise CoamoebaError(f"expected angle vectors of length {n}")
    high = t > math.pi
    n_high = high.sum(axis=-1)
    out = np.zeros(t.shape[:-1], dtype=bool)

    for k in range(n):
        others = [j for j in range(n) if j != k]
        # single upper coordinate k: theta_k < pi + max over the others
        sel = high[..., k] & (n_high == 1)
        m = np.max(t[..., others], axis=-1)
        out |= sel & (t[..., k] < math.pi + m)
        # single lower coordinate k: min over the others < pi + theta_k
        sel = ~high[..., k] & (n_high == n - 1)
        m = np.min(t[..., others], axis=-1)
        out |= sel & (m < math.pi + t[..., k])
    return out


def standard_raster(resolution: tuple[int, int] = (512, 512)) -> CoamoebaRaster:
    """Exact-membership raster of the n = 2 standard model at pixel centers."""
    rows, cols = resolution
    t1 = (np.arange(cols) + 0.5) * TWO_PI / cols
    t2 = (np.arange(rows) + 0.5) * TWO_PI / rows
    g1, g2 = np.meshgrid(t1, t2)
    occ = standard_membership(np.stack([g1, g2], axis=-1), 2)
    return CoamoebaRaster(resolution, occ, rows * cols)


# ---------------------------------------------------------------------------
# unimodular transforms of the model


@dataclass(frozen=True)
class UnimodularTransformData:
    """Integer matrix L (rows = simplex edge vectors) and torus translation.

    theta lies in the transformed coamoeba iff L(theta - translation) mod 2pi
    lies in the standard model; applying L forward folds in all det(L) torus
    preimages at once.
    """

    L: tuple[tuple[int, int], tuple[int, int]]
    translation: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.det <= 0:
            raise CoamoebaError("transform matrix must have positive determinant")

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.L
        return a * d - b * c

    @staticmethod
    def from_inverse(T, translation=(0.0, 0.0)) -> "UnimodularTransformData":
        """Build from the rational inverse matrix (as printed in figures)."""
        M = [[Fraction(x) for x in row] for row in T]
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        if det == 0:
            raise CoamoebaError("transform matrix is singular")
        inv = [[M[1][1] / det, -M[0][1] / det], [-M[1][0] / det, M[0][0] / det]]
        L = []
        for row in inv:
            if any(x.denominator != 1 for x in row):
                raise CoamoebaError("inverse transform is not an integer matrix")
            L.append(tuple(int(x) for x in row))
        return UnimodularTransformData((L[0], L[1]),
                                       tuple(float(v) % TWO_PI for v in translation))

    @staticmethod
    def from_polynomial(f: LaurentPolynomial) -> "UnimodularTransformData":
        """Transform data of a maximally sparse trinomial with triangle support.

        Writing f = a_0 z^{alpha_0} (1 + u_1 + u_2) with monomials
        u_i = (a_i/a_0) z^{alpha_i - alpha_0}, the rows of L are the edge
        vectors alpha_i - alpha_0 and the translation absorbs the coefficient
        arguments.
        """
        if f.dimension != 2:
            raise CoamoebaError("transforms require n = 2")
        P = newton_polytope(f)
        if len(P.vertices) != 3 or not is_maximally_sparse(f):
            raise CoamoebaError(
                "transform construction needs a maximally sparse triangle support"
            )
        v0, v1, v2 = P.vertices
        d1 = (v1[0] - v0[0], v1[1] - v0[1])
        d2 = (v2[0] - v0[0], v2[1] - v0[1])
        if d1[0] * d2[1] - d1[1] * d2[0] < 0:
            d1, d2 = d2, d1
            v1, v2 = v2, v1
        a0 = f.coefficient(v0)
        c = np.array([np.angle(f.coefficient(v1) / a0),
                      np.angle(f.coefficient(v2) / a0)], dtype=float)
        L = np.array([d1, d2], dtype=float)
        trans = -np.linalg.solve(L, c)
        return UnimodularTransformData((tuple(d1), tuple(d2)),
                                       tuple(float(t) % TWO_PI for t in trans))

    def to_json(self) -> dict:
        return {"L": [list(r) for r in self.L], "det": self.det,
                "translation": list(self.translation)}


def transformed_membership(theta: np.ndarray, T: UnimodularTransformData) -> np.ndarray:
    t = np.asarray(theta, dtype=float)
    L = np.array(T.L, dtype=float)
    shifted = t - np.asarray(T.translation)
    mapped = shifted @ L.T
    return standard_membership(mapped, 2)


def transform_coamoeba(model: StandardCoamoebaModel, T: UnimodularTransformData,
                       resolution: tuple[int, int] = (512, 512)) -> CoamoebaRaster:
    """Raster of the union of all det(L) torus preimages of the model under L."""
    if model.n != 2:
        raise CoamoebaError("transform rasterization is implemented for n = 2")
    rows, cols = resolution
    t1 = (np.arange(cols) + 0.5) * TWO_PI / cols
    t2 = (np.arange(rows) + 0.5) * TWO_PI / rows
    g1, g2 = np.meshgrid(t1, t2)
    occ = transformed_membership(np.stack([g1, g2], axis=-1), T)
    return CoamoebaRaster(resolution, occ, rows * cols)


# ---------------------------------------------------------------------------
# extra-piece detection


def _torus_dilate(occ: np.ndarray, radius: int) -> np.ndarray:
    if radius <= 0:
        return occ.copy()
    span = np.arange(-radius, radius + 1)
    footprint = (span[:, None] ** 2 + span[None, :] ** 2) <= radius ** 2
    padded = np.pad(occ, radius, mode="wrap")
    out = ndimage.binary_dilation(padded, structure=footprint)
    return out[radius:-radius, radius:-radius]


def _torus_label(mask: np.ndarray):
    """Connected components with wraparound adjacency, via edge-label merging."""
    labels, n = ndimage.label(mask)
    parent = list(range(n + 1))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for a, b in zip(labels[0, :], labels[-1, :]):
        if a and b:
            union(a, b)
    for a, b in zip(labels[:, 0], labels[:, -1]):
        if a and b:
            union(a, b)
    flat = np.array([0] + [find(i) for i in range(1, n + 1)])
    merged = flat[labels]
    ids = sorted(set(flat[1:]))
    return merged, ids


@dataclass
class ExtraPieceReport:
    extra_area: float
    piece_count: int
    pieces: list[dict]

    def to_json(self) -> dict:
        return {"extra_area": self.extra_area, "piece_count": self.piece_count,
                "pieces": self.pieces}


def extra_piece_report(sparse: CoamoebaRaster, deformed: CoamoebaRaster,
                       dilation_px: int = 1, noise_floor_px: int = 10) -> ExtraPieceReport:
    """Positive-area regions of `deformed` absent from `sparse`.

    The sparse raster is dilated (torus-wrapped) before differencing so that
    anti-aliasing along shared boundaries does not register; remaining
    connected regions above the pixel noise floor are reported.
    """
    if sparse.resolution != deformed.resolution:
        raise CoamoebaError("rasters must share a resolution")
    rows, cols = sparse.resolution
    fat = _torus_dilate(sparse.occupancy, dilation_px)
    diff = deformed.occupancy & ~fat
    labels, ids = _torus_label(diff)
    pixel_area = (TWO_PI / rows) * (TWO_PI / cols)
    pieces = []
    for i in ids:
        count = int((labels == i).sum())
        if count <= noise_floor_px:
            continue
        rr, cc = np.nonzero(labels == i)
        pieces.append({
            "pixels": count,
            "area": count * pixel_area,
            "centroid": [float(cc.mean() + 0.5) * TWO_PI / cols,
                         float(rr.mean() + 0.5) * TWO_PI / rows],
        })
    return ExtraPieceReport(sum(p["area"] for p in pieces), len(pieces), pieces)


def raster_set_distance(a: CoamoebaRaster, b: CoamoebaRaster) -> float:
    """Symmetric Hausdorff distance between occupied sets, in pixels, with
    torus wraparound."""
    if a.resolution != b.resolution:
        raise CoamoebaError("rasters must share a resolution")

    def directed(src: np.ndarray, dst: np.ndarray) -> float:
        if not src.any():
            return 0.0
        if not dst.any():
            return math.inf
        tiled = np.tile(dst, (3, 3))
        dist = ndimage.distance_transform_edt(~tiled)
        rows, cols = dst.shape
        core = dist[rows : 2 * rows, cols : 2 * cols]
        return float(core[src].max())

    return max(directed(a.occupancy, b.occupancy),
               directed(b.occupancy, a.occupancy))
