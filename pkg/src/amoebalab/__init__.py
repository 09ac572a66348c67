"""Amoebas, coamoebas and tropical curves of Laurent polynomials."""

from .lpoly import (
    EmptyPolynomialError,
    LaurentPolynomial,
    NewtonPolytope,
    ParseError,
    is_maximally_sparse,
    lattice_points,
    newton_polytope,
    parse_polynomial,
)
from .trop import (
    DualSubdivision,
    TropicalCurve,
    TropicalPolynomial,
    archimedean_tropicalization,
    balancing_check,
    corner_locus,
    dual_subdivision,
    solid_tropical,
    trop_eval,
)
from .amoeba import (
    AmbiguousOrderError,
    AmoebaRaster,
    ComponentReport,
    FiberSolveConfig,
    GuardBandError,
    SolidityReport,
    Window,
    auto_window,
    component_report,
    fiber_roots,
    order_of_point,
    rasterize_amoeba,
    verify_solid,
)
from .spine import (
    DeformationFamily,
    SpineResult,
    build_spine,
    convex_exponents,
    deformation_family,
    ronkin_certified,
    ronkin_value,
)
from .coam import (
    CoamoebaRaster,
    StandardCoamoebaModel,
    UnimodularTransformData,
    extra_piece_report,
    raster_volume,
    rasterize_coamoeba,
    standard_membership,
    standard_model,
    standard_raster,
    standard_volume,
    transform_coamoeba,
)
from .deform import (
    ConvergenceTrace,
    PointCloud,
    convergence_study,
    h_rescale,
    hausdorff,
    localization_check,
)
from .puiseux import PuiseuxScalar, W_map, univariate_W_roots, val, w_map

__version__ = "0.1.0"
