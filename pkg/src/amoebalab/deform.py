"""Degeneration experiments: rescaled amoebas converging onto tropical limits.

As t -> 0 the amoeba of f_t = sum xi_alpha t^{nu(alpha)} z^alpha, rescaled by
h = -1/log t, converges in Hausdorff distance to the corner locus of the
max-plus polynomial with coefficients -nu.  These helpers measure that
convergence on rasters and check tropical localization near spine vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from ._roots import batched_roots
from .amoeba import FiberSolveConfig, Window, rasterize_amoeba, report_from_raster
from .amoeba import _univariate_coeffs
from .lpoly import LaurentPolynomial, newton_polytope
from .spine import DeformationFamily
from .trop import (
    SubdivisionCell,
    TropicalPolynomial,
    archimedean_tropicalization,
    corner_locus,
    dual_subdivision,
)

DEFAULT_T_SCHEDULE = tuple(math.exp(-k) for k in (1, 2, 3, 4))


class DeformError(Exception):
    pass


@dataclass
class PointCloud:
    points: np.ndarray  # (k, d)
    label: str = ""

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))


def h_rescale(cloud: PointCloud, h: float) -> PointCloud:
    """Scalar rescaling of Log coordinates; arguments are untouched."""
    if h <= 0:
        raise DeformError("rescale factor must be positive")
    return PointCloud(cloud.points * h, cloud.label)


def hausdorff(A: PointCloud, B: PointCloud) -> float:
    """Symmetric Hausdorff distance between two finite point sets."""
    if A.points.size == 0 or B.points.size == 0:
        raise DeformError("Hausdorff distance needs nonempty clouds")
    da = cKDTree(B.points).query(A.points)[0].max()
    db = cKDTree(A.points).query(B.points)[0].max()
    return float(max(da, db))


# ---------------------------------------------------------------------------
# convergence of rescaled amoebas


def sample_curve(curve, window: Window, spacing: float) -> np.ndarray:
    """Dense samples of a tropical curve clipped to the window."""
    pts = []
    verts = [(float(v[0]), float(v[1])) for v in curve.vertices]
    far = 2.0 * (window.width + window.height)
    for e in curve.edges:
        a = np.array(verts[e.vertices[0]])
        if e.is_ray:
            b = a + far * np.array(e.direction, dtype=float) / np.hypot(*e.direction)
        else:
            b = np.array(verts[e.vertices[1]])
        length = float(np.hypot(*(b - a)))
        n = max(2, int(length / spacing) + 1)
        ts = np.linspace(0.0, 1.0, n)
        seg = a[None, :] + ts[:, None] * (b - a)[None, :]
        inside = ((seg[:, 0] >= window.x_min) & (seg[:, 0] <= window.x_max)
                  & (seg[:, 1] >= window.y_min) & (seg[:, 1] <= window.y_max))
        pts.append(seg[inside])
    if not pts:
        return np.zeros((0, 2))
    return np.concatenate(pts)


def bounded_edge_length(curve) -> float:
    total = 0.0
    for e in curve.edges:
        if not e.is_ray:
            a = curve.vertices[e.vertices[0]]
            b = curve.vertices[e.vertices[1]]
            total += math.hypot(float(b[0] - a[0]), float(b[1] - a[1]))
    return total


@dataclass
class TraceRow:
    t: float
    h: float
    d_H: float
    bounded_cell_mass: float
    solid: bool
    error: str = ""

    def to_json(self) -> dict:
        return {"t": self.t, "h": self.h, "d_H": self.d_H,
                "bounded_cell_mass": self.bounded_cell_mass,
                "solid": self.solid, "error": self.error}


@dataclass
class ConvergenceTrace:
    rows: list[TraceRow]

    def csv_rows(self) -> list[str]:
        out = ["t,h,d_H,bounded_cell_mass,solid"]
        for r in self.rows:
            out.append(f"{r.t!r},{r.h!r},{r.d_H!r},{r.bounded_cell_mass!r},{str(r.solid).lower()}")
        return out

    def to_json(self) -> dict:
        return {"rows": [r.to_json() for r in self.rows]}


def limit_curve(fam: DeformationFamily):
    """Corner locus of the max-plus polynomial with coefficients -nu."""
    return corner_locus(TropicalPolynomial(2, {a: -v for a, v in fam.nu.items()}))


def convergence_study(fam: DeformationFamily, window: Window | None = None,
                      t_schedule=DEFAULT_T_SCHEDULE,
                      resolution: tuple[int, int] = (256, 256),
                      cfg: FiberSolveConfig = FiberSolveConfig(64)) -> ConvergenceTrace:
    """Hausdorff convergence of h-rescaled amoebas of f_t onto the limit curve.

    For each t the amoeba of f_t is rasterized over window/h, its occupied
    pixel centers are rescaled by h = -1/log t and compared to dense samples
    of the limit curve; bounded_cell_mass is h times the bounded edge length
    of the archimedean corner locus of f_t (the collapsing compact cells).
    """
    ts = sorted(set(float(t) for t in t_schedule), reverse=True)
    if len(ts) < 4:
        raise DeformError("the t schedule needs at least 4 entries")
    if any(t <= 0 or t > math.exp(-1) + 1e-12 for t in ts):
        raise DeformError("the t schedule must lie in (0, 1/e]")
    gamma = limit_curve(fam)
    nvert = len(newton_polytope(fam.base).vertices)
    if window is None:
        margin = 2.0
        if gamma.vertices:
            vx = [float(v[0]) for v in gamma.vertices]
            vy = [float(v[1]) for v in gamma.vertices]
        else:
            vx, vy = [0.0], [0.0]
        window = Window(min(vx) - margin, max(vx) + margin,
                        min(vy) - margin, max(vy) + margin)
    spacing = max(*window.pixel_size(resolution))
    target = PointCloud(sample_curve(gamma, window, spacing), "limit curve")

    rows = []
    for t in ts:
        h = -1.0 / math.log(t)
        f_t = fam.at(t)
        scaled = Window(window.x_min / h, window.x_max / h,
                        window.y_min / h, window.y_max / h)
        try:
            raster = rasterize_amoeba(f_t, scaled, resolution, cfg)
            pts = h_rescale(PointCloud(raster.occupied_points(), f"t={t}"), h)
            d = hausdorff(pts, target)
            arch = corner_locus(archimedean_tropicalization(f_t))
            mass = h * bounded_edge_length(arch)
            report = report_from_raster(f_t, raster, cfg)
            rows.append(TraceRow(t, h, d, mass, report.total == nvert))
        except Exception as exc:  # per-row failures recorded, not fatal
            rows.append(TraceRow(t, h, math.nan, math.nan, False, str(exc)))
    return ConvergenceTrace(rows)


# ---------------------------------------------------------------------------
# tropical localization


def _variety_samples(f: LaurentPolynomial, center: tuple[float, float],
                     radius: float, cfg: FiberSolveConfig) -> np.ndarray:
    """Samples (x1, x2, theta1, theta2) of V_f with Log within the ball."""
    n_x = 96
    xs = np.linspace(center[0] - radius, center[0] + radius, n_x)
    thetas = np.linspace(0.0, 2 * np.pi, cfg.angle_samples, endpoint=False)
    gx = np.repeat(xs, len(thetas))
    gt = np.tile(thetas, len(xs))
    z = np.exp(gx + 1j * gt)
    coeffs = _univariate_coeffs(f, 0, z)
    roots, counts = batched_roots(coeffs, tol=cfg.root_tolerance,
                                  max_iter=cfg.max_iterations)
    valid = np.arange(roots.shape[1])[None, :] < counts[:, None]
    rr, cc = np.nonzero(valid & (roots != 0) & ~np.isnan(roots))
    w = roots[rr, cc]
    x1 = gx[rr]
    t1 = gt[rr]
    x2 = np.log(np.abs(w))
    t2 = np.mod(np.angle(w), 2 * np.pi)
    inside = (x1 - center[0]) ** 2 + (x2 - center[1]) ** 2 <= radius ** 2
    return np.column_stack([x1, x2, t1, t2])[inside]


def _angle_embed(samples: np.ndarray) -> np.ndarray:
    """Embed (x1, x2, theta1, theta2) with angles on the unit circle so that
    Euclidean distance approximates the product metric for small distances."""
    return np.column_stack([
        samples[:, 0], samples[:, 1],
        np.cos(samples[:, 2]), np.sin(samples[:, 2]),
        np.cos(samples[:, 3]), np.sin(samples[:, 3]),
    ])


def localization_check(fam: DeformationFamily, t: float, cell: SubdivisionCell,
                       epsilon: float,
                       cfg: FiberSolveConfig = FiberSolveConfig(64)) -> bool:
    """Does V_{f_t} localize to the truncation of f_t at the cell's dual vertex?

    Samples of V_{f_t} over Log^-1(U(v)), with U(v) the ball around the spine
    vertex dual to the cell (radius one third of the distance to the nearest
    other vertex), must each lie within epsilon of the sampled truncated
    variety in the product metric on R^2 x T^2.
    """
    f_t = fam.at(t)
    g_t = archimedean_tropicalization(f_t)
    arch = corner_locus(g_t)
    cell_pts = set(cell.points)
    subdiv_vertex = None
    subdiv = dual_subdivision(g_t)
    for i, c in enumerate(subdiv.cells):
        if set(c.points) == cell_pts:
            subdiv_vertex = i
            break
    if subdiv_vertex is None:
        raise DeformError("cell does not appear in the subdivision of f_t")
    v = arch.vertices[subdiv_vertex]
    center = (float(v[0]), float(v[1]))
    others = [math.dist(center, (float(u[0]), float(u[1])))
              for j, u in enumerate(arch.vertices) if j != subdiv_vertex]
    radius = min(others) / 3.0 if others else 1.0

    full = _variety_samples(f_t, center, radius, cfg)
    truncation = LaurentPolynomial(
        2, {a: c for a, c in f_t.terms.items() if a in cell_pts}
    )
    trunc = _variety_samples(truncation, center, radius * 1.5, cfg)
    if full.size == 0 or trunc.size == 0:
        raise DeformError("empty sample sets in the localization neighborhood")
    tree = cKDTree(_angle_embed(trunc))
    d = tree.query(_angle_embed(full))[0]
    return bool(d.max() <= epsilon)
