"""FastAPI service exposing the pipeline stages over HTTP.

Each endpoint parses the request, delegates to the core package and returns
plain JSON; rasters are summarized (volumes, reports) rather than streamed.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException

from ..amoeba import (
    AmbiguousOrderError,
    AmoebaError,
    FiberSolveConfig,
    Window,
    auto_window,
    component_report,
    verify_solid,
)
from ..artifacts import parse_t_schedule
from ..coam import (
    CoamoebaError,
    UnimodularTransformData,
    extra_piece_report,
    raster_volume,
    rasterize_coamoeba,
    standard_model,
    transform_coamoeba,
)
from ..deform import DeformError, convergence_study
from ..lpoly import ParseError, parse_polynomial
from ..puiseux import PuiseuxError, PuiseuxScalar, univariate_W_roots
from ..spine import SpineError, build_spine, deformation_family
from ..trop import (
    archimedean_tropicalization,
    balancing_check,
    corner_locus,
    dual_subdivision,
)
from .schemas import (
    CoamoebaResponse,
    ComponentResponse,
    DeformRequest,
    DeformResponse,
    ExtraPiecesRequest,
    ExtraPiecesResponse,
    PolynomialRequest,
    PuiseuxRequest,
    PuiseuxResponse,
    SpineRequest,
    SpineResponse,
    StandardModelResponse,
    TransformRequest,
    TransformResponse,
    TropicalResponse,
)

app = FastAPI(title="amoebalab", version="0.1.0")


def _parse(text: str):
    try:
        return parse_polynomial(text, allow_negative_exponents=True)
    except ParseError as exc:
        raise HTTPException(status_code=422, detail=f"parse error: {exc}")


def _window(req: PolynomialRequest, f) -> Window:
    if req.window == "auto":
        return auto_window(f)
    try:
        x0, x1, y0, y1 = (float(v) for v in req.window.split(","))
        return Window(x0, x1, y0, y1)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=f"bad window: {exc}")


def _cfg(req: PolynomialRequest) -> FiberSolveConfig:
    return FiberSolveConfig(angle_samples=req.angle_samples)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/tropical", response_model=TropicalResponse)
def tropical(req: PolynomialRequest) -> TropicalResponse:
    f = _parse(req.polynomial)
    g = archimedean_tropicalization(f)
    curve = corner_locus(g)
    balanced, violations = balancing_check(curve)
    return TropicalResponse(
        curve=curve.to_json(), subdivision=dual_subdivision(g).to_json(),
        balanced=balanced,
        violations=[{"vertex": v["vertex"], "sum": list(v["sum"])} for v in violations],
    )


@app.post("/amoeba", response_model=ComponentResponse)
def amoeba(req: PolynomialRequest) -> ComponentResponse:
    f = _parse(req.polynomial)
    try:
        report = component_report(f, _window(req, f), (req.resolution,) * 2, _cfg(req))
    except (AmbiguousOrderError, AmoebaError) as exc:
        raise HTTPException(status_code=409, detail=str(exc))
    return ComponentResponse(total=report.total,
                             components=[c.to_json() for c in report.components])


@app.post("/verify-solid", response_model=ComponentResponse)
def verify(req: PolynomialRequest) -> ComponentResponse:
    f = _parse(req.polynomial)
    try:
        result = verify_solid(f, (req.resolution,) * 2, _cfg(req))
    except (AmbiguousOrderError, AmoebaError) as exc:
        raise HTTPException(status_code=409, detail=str(exc))
    return ComponentResponse(
        total=result.components,
        components=[c.to_json() for c in result.report.components],
        solid=result.solid, maximally_sparse=result.maximally_sparse,
    )


@app.post("/spine", response_model=SpineResponse)
def spine(req: SpineRequest) -> SpineResponse:
    f = _parse(req.polynomial)
    try:
        result = build_spine(f, _window(req, f), (req.resolution,) * 2,
                             _cfg(req), req.quad_n)
    except (SpineError, AmoebaError) as exc:
        raise HTTPException(status_code=409, detail=str(exc))
    payload = result.to_json()
    return SpineResponse(constants=payload["constants"], curve=payload["curve"])


@app.post("/deform", response_model=DeformResponse)
def deform(req: DeformRequest) -> DeformResponse:
    f = _parse(req.polynomial)
    try:
        fam = deformation_family(
            f, build_spine(f, resolution=(req.resolution,) * 2, cfg=_cfg(req))
        )
        trace = convergence_study(fam, t_schedule=parse_t_schedule(req.t_schedule),
                                  resolution=(req.resolution,) * 2)
    except (SpineError, DeformError, AmoebaError) as exc:
        raise HTTPException(status_code=409, detail=str(exc))
    return DeformResponse(rows=[r.to_json() for r in trace.rows])


@app.post("/coamoeba", response_model=CoamoebaResponse)
def coamoeba(req: PolynomialRequest) -> CoamoebaResponse:
    f = _parse(req.polynomial)
    raster = rasterize_coamoeba(f, (req.resolution,) * 2, _cfg(req))
    return CoamoebaResponse(volume=raster_volume(raster),
                            samples_used=raster.samples_used)


@app.get("/standard-coamoeba/{n}", response_model=StandardModelResponse)
def standard(n: int) -> StandardModelResponse:
    try:
        model = standard_model(n)
    except CoamoebaError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    payload = model.to_json()
    return StandardModelResponse(n=n, volume=payload["volume"],
                                 polyhedra=payload["polyhedra"])


@app.post("/transform-coamoeba", response_model=TransformResponse)
def transform(req: TransformRequest) -> TransformResponse:
    try:
        if req.polynomial is not None:
            T = UnimodularTransformData.from_polynomial(_parse(req.polynomial))
        elif req.matrix is not None:
            T = UnimodularTransformData(
                tuple(tuple(int(v) for v in row) for row in req.matrix),
                tuple(req.translation),
            )
        else:
            raise HTTPException(status_code=422,
                                detail="give a polynomial or a matrix")
        raster = transform_coamoeba(standard_model(2), T, (req.resolution,) * 2)
    except CoamoebaError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return TransformResponse(transform=T.to_json(), volume=raster_volume(raster))


@app.post("/extra-pieces", response_model=ExtraPiecesResponse)
def extra_pieces(req: ExtraPiecesRequest) -> ExtraPiecesResponse:
    fs = _parse(req.sparse)
    fd = _parse(req.deformed)
    res = (req.resolution,) * 2
    report = extra_piece_report(rasterize_coamoeba(fs, res),
                                rasterize_coamoeba(fd, res))
    return ExtraPiecesResponse(extra_area=report.extra_area,
                               piece_count=report.piece_count,
                               pieces=report.pieces)


@app.post("/puiseux/w-roots", response_model=PuiseuxResponse)
def puiseux_roots(req: PuiseuxRequest) -> PuiseuxResponse:
    try:
        series = PuiseuxScalar.from_terms({
            Fraction(str(t["exponent"])): complex(t.get("re", 0.0), t.get("im", 0.0))
            for t in req.terms
        })
        roots = univariate_W_roots(req.k, series)
        return PuiseuxResponse(val=float(series.val()),
                               roots=[[r.real, r.imag] for r in roots])
    except (PuiseuxError, ValueError, KeyError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
