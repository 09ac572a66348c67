"""Spines of amoebas via Ronkin quadrature.

The Ronkin function of f is the torus average of log|f| at fixed modulus
vector x.  On each complement component of order alpha it is affine with
gradient alpha, so N_f(x) - <alpha, x> is a constant c_alpha.  The spine of
the amoeba is the corner locus of max over components of c_alpha + <alpha, x>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .amoeba import (
    ComponentReport,
    FiberSolveConfig,
    Window,
    auto_window,
    component_report,
)
from .lpoly import ExponentVector, LaurentPolynomial, hull_vertices_2d, lattice_points, newton_polytope
from .trop import TropicalCurve, TropicalPolynomial, corner_locus, dual_subdivision


class SpineError(Exception):
    pass


class QuadratureError(SpineError):
    """The doubling certificate did not reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureCertificate:
    quad_n: int
    error_estimate: float
    certified: bool

    def to_json(self) -> dict:
        return {"quad_n": self.quad_n, "error_estimate": self.error_estimate,
                "certified": self.certified}


def ronkin_value(f: LaurentPolynomial, x: tuple[float, float], quad_n: int) -> float:
    """Torus average of log|f| at modulus vector e^x, rectangle rule quad_n^2.

    The integrand is periodic and smooth away from the amoeba, so the
    rectangle (= periodic trapezoid) rule converges spectrally for x in the
    complement.
    """
    if f.dimension != 2:
        raise SpineError("Ronkin quadrature requires n = 2")
    theta = np.linspace(0.0, 2 * np.pi, quad_n, endpoint=False)
    t1, t2 = np.meshgrid(theta, theta, indexing="ij")
    vals = np.zeros_like(t1, dtype=complex)
    for alpha, a in f.terms.items():
        mod = math.exp(alpha[0] * x[0] + alpha[1] * x[1])
        vals += (a * mod) * np.exp(1j * (alpha[0] * t1 + alpha[1] * t2))
    mags = np.abs(vals)
    if np.any(mags == 0):
        raise SpineError(f"f vanishes on the torus fiber over {x}")
    return float(np.mean(np.log(mags)))


def ronkin_certified(f: LaurentPolynomial, x: tuple[float, float],
                     quad_n: int = 256, tol: float = 1e-6,
                     max_doublings: int = 3) -> tuple[float, QuadratureCertificate]:
    """Ronkin value with a grid-doubling error certificate."""
    coarse = ronkin_value(f, x, quad_n)
    n = quad_n
    for _ in range(max_doublings):
        n *= 2
        fine = ronkin_value(f, x, n)
        err = abs(fine - coarse)
        if err < tol:
            return fine, QuadratureCertificate(n, err, True)
        coarse = fine
    return coarse, QuadratureCertificate(n, err, False)


@dataclass
class SpineResult:
    constants: dict[ExponentVector, float]
    certificates: dict[ExponentVector, QuadratureCertificate]
    tropical: TropicalPolynomial
    curve: TropicalCurve
    report: ComponentReport

    def to_json(self) -> dict:
        return {
            "constants": [
                {"order": list(a), "c": c,
                 "certificate": self.certificates[a].to_json()}
                for a, c in sorted(self.constants.items())
            ],
            "curve": self.curve.to_json(),
            "components": self.report.to_json(),
        }


def build_spine(f: LaurentPolynomial, window: Window | None = None,
                resolution: tuple[int, int] = (512, 512),
                cfg: FiberSolveConfig = FiberSolveConfig(),
                quad_n: int = 256, tol: float = 1e-6,
                strict: bool = False) -> SpineResult:
    """Spine of the amoeba of f as a weighted tropical curve.

    Complement components are located on a raster, one Ronkin constant is
    computed per component at its witness point, and the corner locus of the
    resulting max-plus polynomial is the spine.
    """
    if window is None:
        window = auto_window(f)
    report = component_report(f, window, resolution, cfg)
    if not report.components:
        raise SpineError("no complement components found inside the window")
    constants: dict[ExponentVector, float] = {}
    certificates: dict[ExponentVector, QuadratureCertificate] = {}
    for comp in report.components:
        value, cert = ronkin_certified(f, comp.witness, quad_n, tol)
        alpha = comp.order
        constants[alpha] = value - (alpha[0] * comp.witness[0] + alpha[1] * comp.witness[1])
        certificates[alpha] = cert
        if strict and not cert.certified:
            raise QuadratureError(
                f"Ronkin constant at order {alpha} not certified to {tol}"
            )
    tropical = TropicalPolynomial(2, dict(constants))
    return SpineResult(constants, certificates, tropical, corner_locus(tropical), report)


# ---------------------------------------------------------------------------
# convex exponent function and coefficient deformation


def convex_exponents(constants: dict[ExponentVector, float]) -> dict[ExponentVector, float]:
    """The convex function nu on lattice points of the convex hull of the
    orders: nu = -(concave upper envelope of the constants).

    At envelope vertices nu(alpha) = -c_alpha; elsewhere nu interpolates
    affinely over the cells of the induced subdivision.
    """
    pts = sorted(constants)
    hull = hull_vertices_2d(pts)
    if len(hull) == 1:
        return {hull[0]: -constants[hull[0]]}
    trop = TropicalPolynomial(2, dict(constants))
    subdiv = dual_subdivision(trop)
    targets = _hull_lattice_points(hull)
    if len(hull) == 2:
        return {p: -_segment_envelope(p, subdiv, constants) for p in targets}
    out = {}
    for p in targets:
        # a concave piecewise-affine function is the min of its cell planes
        val = min(
            float(c.gradient[0]) * p[0] + float(c.gradient[1]) * p[1] + float(c.intercept)
            for c in subdiv.cells
        )
        out[p] = -val
    return out


def _hull_lattice_points(hull) -> list[ExponentVector]:
    from .lpoly import NewtonPolytope

    if len(hull) == 2:
        a, b = hull
        g = math.gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))
        step = ((b[0] - a[0]) // g, (b[1] - a[1]) // g)
        return [(a[0] + k * step[0], a[1] + k * step[1]) for k in range(g + 1)]
    return lattice_points(NewtonPolytope(2, tuple(hull), tuple(hull)))


def _segment_envelope(p, subdiv, constants) -> float:
    """Affine interpolation of the upper envelope along a collinear support."""
    for cell in subdiv.cells:
        a, b = cell.polygon
        d = (b[0] - a[0], b[1] - a[1])
        den = d[0] ** 2 + d[1] ** 2
        num = (p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]
        cross = (p[0] - a[0]) * d[1] - (p[1] - a[1]) * d[0]
        if cross == 0 and 0 <= num <= den:
            t = num / den
            return (1 - t) * constants[a] + t * constants[b]
    raise SpineError(f"point {p} is outside the support segment")


@dataclass
class DeformationFamily:
    """f_t = sum of xi_alpha * t^{nu(alpha)} * z^alpha; f_{1/e} recovers f."""

    base: LaurentPolynomial
    nu: dict[ExponentVector, float]
    xi: dict[ExponentVector, complex]

    def at(self, t: float) -> LaurentPolynomial:
        if t <= 0:
            raise ValueError("t must be positive")
        terms = {a: self.xi[a] * t ** self.nu[a] for a in self.xi}
        return LaurentPolynomial(self.base.dimension, terms)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"exponents": list(a), "nu": self.nu[a],
                 "xi_re": self.xi[a].real, "xi_im": self.xi[a].imag}
                for a in sorted(self.xi)
            ]
        }


def deformation_family(f: LaurentPolynomial,
                       spine: SpineResult) -> DeformationFamily:
    """Coefficient deformation driven by the spine's convex exponent function.

    Each coefficient a_alpha is rescaled to xi_alpha = a_alpha * e^{nu(alpha)}
    so that at t = 1/e the family reproduces f exactly; as t -> 0 the amoeba
    of f_t contracts onto the spine.
    """
    nu_all = convex_exponents(spine.constants)
    nu = {}
    xi = {}
    for alpha, a in f.terms.items():
        if alpha not in nu_all:
            raise SpineError(
                f"support point {alpha} lies outside the hull of detected orders"
            )
        nu[alpha] = nu_all[alpha]
        xi[alpha] = a * math.exp(nu_all[alpha])
    return DeformationFamily(f, nu, xi)
