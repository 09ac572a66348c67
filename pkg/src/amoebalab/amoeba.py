"""Numerical amoeba engine for curves in the 2-torus.

The amoeba of V_f is sampled fiberwise: sweep one Log coordinate across the
raster columns, solve the resulting univariate polynomial on each torus fiber,
and mark log-moduli of the roots.  Both sweep directions are unioned so that
tentacles parallel to either axis are not missed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from ._roots import DegeneratePolynomialError, batched_roots
from .lpoly import LaurentPolynomial, newton_polytope
from .trop import archimedean_tropicalization, corner_locus

_CHUNK = 1 << 16


class AmoebaError(Exception):
    pass


class GuardBandError(AmoebaError):
    """A putative complement point has a sampled variety point too close by."""


class AmbiguousOrderError(AmoebaError):
    """The averaged root count does not round convincingly to an integer."""


@dataclass(frozen=True)
class FiberSolveConfig:
    angle_samples: int = 128
    root_tolerance: float = 1e-10
    max_iterations: int = 40

    def __post_init__(self):
        if self.angle_samples < 16:
            raise ValueError("angle_samples must be at least 16")
        if not (0.0 < self.root_tolerance <= 1e-6):
            raise ValueError("root_tolerance must lie in (0, 1e-6]")

    def to_dict(self) -> dict:
        return {
            "angle_samples": self.angle_samples,
            "root_tolerance": self.root_tolerance,
            "max_iterations": self.max_iterations,
        }


@dataclass(frozen=True)
class Window:
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("window must have positive area")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    def pixel_size(self, resolution: tuple[int, int]) -> tuple[float, float]:
        rows, cols = resolution
        return self.height / rows, self.width / cols

    def to_json(self) -> dict:
        return {"x_min": self.x_min, "x_max": self.x_max,
                "y_min": self.y_min, "y_max": self.y_max}


@dataclass
class AmoebaRaster:
    """Occupancy grid over a Log-space window; row 0 is y_min, col 0 is x_min."""

    window: Window
    resolution: tuple[int, int]
    occupancy: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.occupancy.shape != tuple(self.resolution):
            raise ValueError("occupancy shape does not match resolution")

    def pixel_centers(self):
        rows, cols = self.resolution
        dy, dx = self.window.pixel_size(self.resolution)
        xs = self.window.x_min + (np.arange(cols) + 0.5) * dx
        ys = self.window.y_min + (np.arange(rows) + 0.5) * dy
        return xs, ys

    def occupied_points(self) -> np.ndarray:
        """(k, 2) array of Log-space centers of the occupied pixels."""
        xs, ys = self.pixel_centers()
        r, c = np.nonzero(self.occupancy)
        return np.column_stack([xs[c], ys[r]])

    def contains_point(self, x: float, y: float) -> bool:
        rows, cols = self.resolution
        dy, dx = self.window.pixel_size(self.resolution)
        c = int((x - self.window.x_min) / dx)
        r = int((y - self.window.y_min) / dy)
        if 0 <= r < rows and 0 <= c < cols:
            return bool(self.occupancy[r, c])
        return False


@dataclass
class ComponentInfo:
    order: tuple[int, int]
    bounded: bool
    witness: tuple[float, float]
    pixel_count: int

    def to_json(self) -> dict:
        return {"order": list(self.order), "bounded": self.bounded,
                "witness": list(self.witness), "pixel_count": self.pixel_count}


@dataclass
class ComponentReport:
    components: list[ComponentInfo]
    window: Window
    total: int

    def orders(self) -> set[tuple[int, int]]:
        return {c.order for c in self.components}

    def to_json(self) -> dict:
        return {"window": self.window.to_json(), "total": self.total,
                "components": [c.to_json() for c in self.components]}


# ---------------------------------------------------------------------------
# fiber solving


def _univariate_coeffs(f: LaurentPolynomial, fixed: int, zfixed: np.ndarray):
    """Coefficient rows (ascending) of f with variable `fixed` substituted.

    Exponents in the free variable are shifted so the lowest becomes zero;
    the dropped monomial factor only removes roots at the origin, which the
    torus setting discards anyway.
    """
    free = 1 - fixed
    lo = min(a[free] for a in f.terms)
    hi = max(a[free] for a in f.terms)
    coeffs = np.zeros((len(zfixed), hi - lo + 1), dtype=complex)
    for alpha, a in f.terms.items():
        coeffs[:, alpha[free] - lo] += a * zfixed ** alpha[fixed]
    return coeffs


def fiber_roots(f: LaurentPolynomial, x1: float, theta1: float,
                cfg: FiberSolveConfig = FiberSolveConfig()) -> list[complex]:
    """All torus roots in the second variable over the fiber z1 = e^{x1+i*theta1}."""
    if f.dimension != 2:
        raise AmoebaError("fiber solving requires n = 2")
    z1 = np.array([np.exp(x1 + 1j * theta1)])
    coeffs = _univariate_coeffs(f, fixed=0, zfixed=z1)
    roots, counts = batched_roots(coeffs, tol=cfg.root_tolerance,
                                  max_iter=cfg.max_iterations, strict=True)
    return [complex(r) for r in roots[0, : counts[0]]]


def _solve_sweep(f, fixed: int, xs: np.ndarray, thetas: np.ndarray, cfg):
    """Roots of f over the grid xs x thetas in the fixed variable.

    Returns (fiber_index, log|root|) arrays; fiber_index refers to xs.
    """
    idx_parts, logs_parts = [], []
    grid_x = np.repeat(xs, len(thetas))
    grid_t = np.tile(thetas, len(xs))
    for start in range(0, len(grid_x), _CHUNK):
        gx = grid_x[start : start + _CHUNK]
        gt = grid_t[start : start + _CHUNK]
        z = np.exp(gx + 1j * gt)
        coeffs = _univariate_coeffs(f, fixed, z)
        roots, counts = batched_roots(coeffs, tol=cfg.root_tolerance,
                                      max_iter=cfg.max_iterations)
        valid = np.arange(roots.shape[1])[None, :] < counts[:, None]
        rr, cc = np.nonzero(valid)
        mods = np.abs(roots[rr, cc])
        keep = mods > 0
        idx_parts.append((start + rr[keep]) // len(thetas))
        logs_parts.append(np.log(mods[keep]))
    if not idx_parts:
        return np.array([], dtype=int), np.array([])
    return np.concatenate(idx_parts), np.concatenate(logs_parts)


def rasterize_amoeba(f: LaurentPolynomial, window: Window,
                     resolution: tuple[int, int] = (512, 512),
                     cfg: FiberSolveConfig = FiberSolveConfig(),
                     close_pinholes: bool = True) -> AmoebaRaster:
    """Occupancy raster of Log(V_f) over the window, dual-sweep union."""
    if f.dimension != 2:
        raise AmoebaError("amoeba rasterization requires n = 2")
    rows, cols = resolution
    dy, dx = window.pixel_size(resolution)
    occ = np.zeros((rows, cols), dtype=bool)
    # interior pixels are only hit by sampled roots, so the angular sweep must
    # outpace the raster resolution or the amoeba interior develops holes
    n_theta = max(cfg.angle_samples, 2 * max(rows, cols))
    thetas = np.linspace(0.0, 2 * np.pi, n_theta, endpoint=False)

    xs = window.x_min + (np.arange(cols) + 0.5) * dx
    ci, logs = _solve_sweep(f, fixed=0, xs=xs, thetas=thetas, cfg=cfg)
    ri = np.floor((logs - window.y_min) / dy).astype(int)
    keep = (ri >= 0) & (ri < rows)
    occ[ri[keep], ci[keep]] = True

    ys = window.y_min + (np.arange(rows) + 0.5) * dy
    ri2, logs2 = _solve_sweep(f, fixed=1, xs=ys, thetas=thetas, cfg=cfg)
    ci2 = np.floor((logs2 - window.x_min) / dx).astype(int)
    keep = (ci2 >= 0) & (ci2 < cols)
    occ[ri2[keep], ci2[keep]] = True

    if close_pinholes:
        # pad with replicated edges so the closing's erosion step does not
        # eat tentacle pixels on the window boundary
        padded = np.pad(occ, 2, mode="edge")
        closed = ndimage.binary_closing(padded, structure=np.ones((3, 3), dtype=bool))
        occ = closed[2:-2, 2:-2]
    return AmoebaRaster(window, resolution, occ)


# ---------------------------------------------------------------------------
# orders and components


def order_of_point(f: LaurentPolynomial, x: tuple[float, float],
                   cfg: FiberSolveConfig = FiberSolveConfig(),
                   guard_band: float = 0.05,
                   residue_threshold: float = 0.1) -> tuple[int, int]:
    """Order vector of a complement point: per-variable averaged root counts.

    Component j averages, over torus fibers in the other variable, the number
    of roots in variable j with modulus below e^{x_j}.  The average must round
    with residue below `residue_threshold` and no sampled root may Log within
    `guard_band` of x_j.
    """
    if f.dimension != 2:
        raise AmoebaError("orders require n = 2")
    thetas = np.linspace(0.0, 2 * np.pi, cfg.angle_samples, endpoint=False)
    order = []
    for j in (0, 1):
        other = 1 - j
        z_other = np.exp(x[other] + 1j * thetas)
        coeffs = _univariate_coeffs(f, fixed=other, zfixed=z_other)
        roots, counts, low_trim = batched_roots(coeffs, tol=cfg.root_tolerance,
                                                max_iter=cfg.max_iterations,
                                                with_low_trim=True)
        if np.any(counts < 0):
            raise DegeneratePolynomialError(
                "fiber polynomial vanished identically; resample the angle"
            )
        valid = np.arange(roots.shape[1])[None, :] < counts[:, None]
        mods = np.abs(roots)
        mods[~valid] = np.nan
        mods[mods == 0] = np.nan
        logs = np.log(mods)
        gaps = np.abs(logs - x[j])
        if gaps.size and np.nanmin(gaps, initial=np.inf) < guard_band:
            raise GuardBandError(
                f"point {x} is within {guard_band} of a sampled variety point"
            )
        # trimmed trailing coefficients are roots of vanishing modulus,
        # always below the threshold e^{x_j}
        below = np.nansum((logs < x[j]).astype(float), axis=1) + low_trim
        avg = float(np.mean(below))
        rounded = round(avg)
        if abs(avg - rounded) >= residue_threshold:
            raise AmbiguousOrderError(
                f"order component {j} at {x}: average {avg:.4f} is ambiguous"
            )
        # the root count is taken after shifting out the monomial factor
        # z_j^{lo_j}; by the argument principle that factor contributes lo_j
        lo = min(a[j] for a in f.terms)
        order.append(lo + int(rounded))
    return tuple(order)


def component_report(f: LaurentPolynomial, window: Window,
                     resolution: tuple[int, int] = (512, 512),
                     cfg: FiberSolveConfig = FiberSolveConfig()) -> ComponentReport:
    """Complement components of the rasterized amoeba with their orders.

    Raster regions are flood-filled, each region is probed at its deepest
    interior pixel, and regions sharing an order vector are merged: the order
    map is injective on true components, so equal orders mean one component
    split by tentacles leaving the window.
    """
    raster = rasterize_amoeba(f, window, resolution, cfg)
    return report_from_raster(f, raster, cfg)


def report_from_raster(f: LaurentPolynomial, raster: AmoebaRaster,
                       cfg: FiberSolveConfig = FiberSolveConfig()) -> ComponentReport:
    rows, cols = raster.resolution
    dy, dx = raster.window.pixel_size(raster.resolution)
    complement = ~raster.occupancy
    labels, nlab = ndimage.label(complement)
    depth = ndimage.distance_transform_edt(complement)
    xs, ys = raster.pixel_centers()
    guard = 2.0 * max(dx, dy)

    merged: dict[tuple[int, int], ComponentInfo] = {}
    for lab in range(1, nlab + 1):
        mask = labels == lab
        count = int(mask.sum())
        rr, cc = np.nonzero(mask)
        touches = bool(rr.min() == 0 or rr.max() == rows - 1
                       or cc.min() == 0 or cc.max() == cols - 1)
        k = np.argmax(depth[rr, cc])
        witness = (float(xs[cc[k]]), float(ys[rr[k]]))
        if depth[rr[k], cc[k]] <= 2.5:
            # no pixel clears the guard band: a sampling sliver, not a
            # component resolvable at this raster resolution
            continue
        order = order_of_point(f, witness, cfg, guard_band=guard)
        if order in merged:
            prev = merged[order]
            prev.pixel_count += count
            prev.bounded = prev.bounded and not touches
        else:
            merged[order] = ComponentInfo(order, not touches, witness, count)
    comps = sorted(merged.values(), key=lambda c: c.order)
    return ComponentReport(comps, raster.window, len(comps))


# ---------------------------------------------------------------------------
# solidity


def auto_window(f: LaurentPolynomial, margin: float | None = None) -> Window:
    """Window from the corner locus of the log|a|-tropicalization plus margin."""
    curve = corner_locus(archimedean_tropicalization(f))
    if curve.vertices:
        vx = [float(v[0]) for v in curve.vertices]
        vy = [float(v[1]) for v in curve.vertices]
    else:
        vx, vy = [0.0], [0.0]
    P = newton_polytope(f)
    verts = P.vertices
    diam = max(
        (math.dist(a, b) for a in verts for b in verts), default=0.0
    )
    if margin is None:
        margin = max(3.0, diam)
    return Window(min(vx) - margin, max(vx) + margin,
                  min(vy) - margin, max(vy) + margin)


@dataclass
class SolidityReport:
    solid: bool
    components: int
    vertices: int
    maximally_sparse: bool
    report: ComponentReport

    def to_json(self) -> dict:
        return {"solid": self.solid, "components": self.components,
                "vertices": self.vertices,
                "maximally_sparse": self.maximally_sparse,
                "report": self.report.to_json()}


def verify_solid(f: LaurentPolynomial,
                 resolution: tuple[int, int] = (256, 256),
                 cfg: FiberSolveConfig = FiberSolveConfig(),
                 window: Window | None = None) -> SolidityReport:
    """Count amoeba complement components against Newton polytope vertices."""
    from .lpoly import is_maximally_sparse

    if window is None:
        window = auto_window(f)
    report = component_report(f, window, resolution, cfg)
    nvert = len(newton_polytope(f).vertices)
    return SolidityReport(
        solid=report.total == nvert,
        components=report.total,
        vertices=nvert,
        maximally_sparse=is_maximally_sparse(f),
        report=report,
    )
