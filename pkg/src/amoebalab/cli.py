"""Command-line front end.

Every subcommand parses a polynomial, runs one pipeline stage and writes its
artifacts (JSON / CSV / PGM) into the output directory.  Exit codes: 0 ok,
2 parse or usage error, 3 balancing violation, 4 ambiguous order, 5 a
maximally sparse input found non-solid.
"""

from __future__ import annotations

import math
import sys

import click
import numpy as np

from . import artifacts
from .amoeba import (
    AmbiguousOrderError,
    FiberSolveConfig,
    GuardBandError,
    Window,
    auto_window,
    component_report,
    rasterize_amoeba,
    verify_solid,
)
from .artifacts import (
    DEFAULT_CONFIG,
    parse_config_file,
    parse_t_schedule,
    provenance,
    write_json,
    write_pgm,
)
from .coam import (
    UnimodularTransformData,
    extra_piece_report,
    raster_volume,
    rasterize_coamoeba,
    standard_model,
    standard_raster,
    transform_coamoeba,
)
from .deform import convergence_study
from .lpoly import ParseError, is_maximally_sparse, parse_polynomial
from .puiseux import PuiseuxScalar, univariate_W_roots, val, w_map
from .spine import build_spine, deformation_family
from .trop import (
    CurveEdge,
    TropicalCurve,
    TropicalPolynomial,
    archimedean_tropicalization,
    balancing_check,
    corner_locus,
    dual_subdivision,
)

EXIT_PARSE = 2
EXIT_BALANCE = 3
EXIT_AMBIGUOUS = 4
EXIT_FALSIFIED = 5


def _load_config(config_path, **overrides) -> dict:
    cfg = dict(DEFAULT_CONFIG)
    if config_path:
        cfg.update(parse_config_file(config_path))
    for key, value in overrides.items():
        if value is not None:
            cfg[key] = value
    return cfg


def _parse(text: str):
    try:
        return parse_polynomial(text, allow_negative_exponents=True)
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(EXIT_PARSE)


def _window(cfg, f) -> Window:
    spec = str(cfg["window"])
    if spec == "auto":
        return auto_window(f)
    try:
        x0, x1, y0, y1 = (float(v) for v in spec.split(","))
        return Window(x0, x1, y0, y1)
    except ValueError as exc:
        click.echo(f"bad window {spec!r}: {exc}", err=True)
        sys.exit(EXIT_PARSE)


def _solve_cfg(cfg) -> FiberSolveConfig:
    return FiberSolveConfig(angle_samples=int(cfg["angle_samples"]),
                            root_tolerance=float(cfg["root_tolerance"]))


def _slug(name: str) -> str:
    keep = [c if c.isalnum() else "-" for c in name]
    out = "".join(keep).strip("-")
    return out[:48] or "poly"


def _common(fn):
    fn = click.option("--out", "out_dir", default=None, help="Output directory.")(fn)
    fn = click.option("--config", "config_path", default=None,
                      type=click.Path(exists=True), help="key=value config file.")(fn)
    fn = click.option("--resolution", type=int, default=None,
                      help="Raster resolution (square).")(fn)
    fn = click.option("--window", default=None,
                      help="x_min,x_max,y_min,y_max or 'auto'.")(fn)
    return fn


@click.group()
def main():
    """Amoebas, coamoebas, spines and tropical curves of Laurent polynomials."""


@main.command()
@click.argument("poly")
@click.option("--coeffs", default=None,
              help="Tropical coefficient overrides 'i,j=c;i,j=c' (default log|a|).")
@click.option("--debug-perturb-weight", is_flag=True, hidden=True)
@_common
def tropical(poly, coeffs, debug_perturb_weight, out_dir, config_path, resolution, window):
    """Corner locus, dual subdivision and balancing report of a polynomial."""
    cfg = _load_config(config_path, out_dir=out_dir)
    f = _parse(poly)
    g = archimedean_tropicalization(f)
    if coeffs:
        terms = dict(g.terms)
        try:
            for piece in coeffs.split(";"):
                key, value = piece.split("=")
                i, j = (int(v) for v in key.split(","))
                terms[(i, j)] = float(value)
        except ValueError as exc:
            click.echo(f"bad coefficient override: {exc}", err=True)
            sys.exit(EXIT_PARSE)
        g = TropicalPolynomial(2, terms)
    curve = corner_locus(g)
    subdiv = dual_subdivision(g)
    if debug_perturb_weight and curve.edges:
        bad = CurveEdge(curve.edges[0].vertices, curve.edges[0].direction,
                        curve.edges[0].weight + 1, curve.edges[0].dual_pair)
        curve = TropicalCurve(curve.vertices, (bad,) + curve.edges[1:],
                              curve.vertex_cell)
    balanced, violations = balancing_check(curve)
    base = f"{cfg['out_dir']}/{_slug(poly)}"
    prov = provenance(f, cfg)
    write_json(f"{base}-curve.json", {"curve": curve.to_json(), "provenance": prov})
    write_json(f"{base}-subdivision.json",
               {"subdivision": subdiv.to_json(), "provenance": prov})
    write_json(f"{base}-balancing.json",
               {"balanced": balanced,
                "violations": [{"vertex": v["vertex"], "sum": list(v["sum"])}
                               for v in violations],
                "provenance": prov})
    if not balanced:
        click.echo("balancing violated", err=True)
        sys.exit(EXIT_BALANCE)
    click.echo(f"wrote {base}-curve.json")


@main.command()
@click.argument("poly")
@_common
def amoeba(poly, out_dir, config_path, resolution, window):
    """Amoeba raster (PGM) and complement component report (JSON)."""
    cfg = _load_config(config_path, out_dir=out_dir, resolution=resolution,
                       window=window)
    f = _parse(poly)
    res = (int(cfg["resolution"]),) * 2
    win = _window(cfg, f)
    try:
        raster = rasterize_amoeba(f, win, res, _solve_cfg(cfg))
        from .amoeba import report_from_raster

        report = report_from_raster(f, raster, _solve_cfg(cfg))
    except (AmbiguousOrderError, GuardBandError) as exc:
        click.echo(f"order ambiguity: {exc}", err=True)
        sys.exit(EXIT_AMBIGUOUS)
    base = f"{cfg['out_dir']}/{_slug(poly)}"
    write_pgm(f"{base}-amoeba.pgm", raster.occupancy)
    write_json(f"{base}-components.json",
               {"report": report.to_json(), "provenance": provenance(f, cfg)})
    click.echo(f"components: {report.total}")


@main.command(name="verify-solid")
@click.argument("poly", required=False)
@click.option("--random", "random_n", type=int, default=None,
              help="Verify N seeded random maximally sparse polynomials.")
@click.option("--seed", type=int, default=None)
@_common
def verify_solid_cmd(poly, random_n, seed, out_dir, config_path, resolution, window):
    """Check the solidity prediction for maximally sparse polynomials.

    Exits 5 only if a maximally sparse input is found non-solid; non-sparse
    inputs report their solidity without judgment.
    """
    cfg = _load_config(config_path, out_dir=out_dir, resolution=resolution,
                       window=window, seed=seed)
    if poly is None and not random_n:
        click.echo("give a polynomial or --random N", err=True)
        sys.exit(EXIT_PARSE)
    polys = []
    if poly is not None:
        polys.append((poly, _parse(poly)))
    if random_n:
        for i, f in enumerate(artifacts.corpus(int(cfg["seed"]), random_n)):
            polys.append((f"random-{cfg['seed']}-{i}", f))
    res = (min(int(cfg["resolution"]), 256),) * 2
    results = []
    falsified = False
    for name, f in polys:
        try:
            report = verify_solid(f, res, _solve_cfg(cfg))
        except (AmbiguousOrderError, GuardBandError) as exc:
            click.echo(f"{name}: order ambiguity: {exc}", err=True)
            sys.exit(EXIT_AMBIGUOUS)
        row = {"name": name, "terms": f.to_json(), **report.to_json()}
        del row["report"]
        results.append(row)
        if report.maximally_sparse and not report.solid:
            falsified = True
            click.echo(f"{name}: maximally sparse but NOT solid", err=True)
        else:
            click.echo(f"{name}: solid={report.solid} sparse={report.maximally_sparse}")
    write_json(f"{cfg['out_dir']}/verify-solid.json",
               {"results": results, "provenance": provenance(None, cfg)})
    if falsified:
        sys.exit(EXIT_FALSIFIED)


@main.command()
@click.argument("poly")
@click.option("--quad", "quad_n", type=int, default=None)
@_common
def spine(poly, quad_n, out_dir, config_path, resolution, window):
    """Spine of the amoeba: component constants and the dual tropical curve."""
    cfg = _load_config(config_path, out_dir=out_dir, resolution=resolution,
                       window=window, quad_n=quad_n)
    f = _parse(poly)
    win = _window(cfg, f)
    res = (min(int(cfg["resolution"]), 256),) * 2
    try:
        result = build_spine(f, win, res, _solve_cfg(cfg), int(cfg["quad_n"]),
                             float(cfg["quad_tolerance"]))
    except (AmbiguousOrderError, GuardBandError) as exc:
        click.echo(f"order ambiguity: {exc}", err=True)
        sys.exit(EXIT_AMBIGUOUS)
    base = f"{cfg['out_dir']}/{_slug(poly)}"
    write_json(f"{base}-spine.json",
               {"spine": result.to_json(), "provenance": provenance(f, cfg)})
    for alpha, c in sorted(result.constants.items()):
        click.echo(f"c{alpha} = {c:.8f}")


@main.command()
@click.argument("poly")
@click.option("--t-schedule", default=None, help="Comma list, e.g. 'e-1,e-2,e-3,e-4'.")
@_common
def deform(poly, t_schedule, out_dir, config_path, resolution, window):
    """Convergence trace of h-rescaled amoebas of the spine deformation."""
    cfg = _load_config(config_path, out_dir=out_dir, resolution=resolution,
                       window=window, t_schedule=t_schedule)
    f = _parse(poly)
    res = (min(int(cfg["resolution"]), 256),) * 2
    fam = deformation_family(f, build_spine(f, resolution=res, cfg=_solve_cfg(cfg)))
    schedule = parse_t_schedule(str(cfg["t_schedule"]))
    trace = convergence_study(fam, t_schedule=schedule, resolution=res)
    base = f"{cfg['out_dir']}/{_slug(poly)}"
    artifacts.atomic_write_text(f"{base}-trace.csv", "\n".join(trace.csv_rows()) + "\n")
    write_json(f"{base}-trace.json",
               {"trace": trace.to_json(), "provenance": provenance(f, cfg)})
    for row in trace.rows:
        click.echo(f"t={row.t:.6f} d_H={row.d_H:.4f} mass={row.bounded_cell_mass:.4f} "
                   f"solid={row.solid}")


@main.command()
@click.argument("poly")
@_common
def coamoeba(poly, out_dir, config_path, resolution, window):
    """Coamoeba raster (PGM) and its torus volume (JSON)."""
    cfg = _load_config(config_path, out_dir=out_dir, resolution=resolution,
                       window=window)
    f = _parse(poly)
    res = (int(cfg["resolution"]),) * 2
    raster = rasterize_coamoeba(f, res, _solve_cfg(cfg))
    base = f"{cfg['out_dir']}/{_slug(poly)}"
    write_pgm(f"{base}-coamoeba.pgm", raster.occupancy)
    write_json(f"{base}-coamoeba.json",
               {"volume": raster_volume(raster), "samples_used": raster.samples_used,
                "provenance": provenance(f, cfg)})
    click.echo(f"volume = {raster_volume(raster):.6f}")


@main.command(name="standard-coamoeba")
@click.option("--n", "n", type=click.IntRange(2, 3), default=2)
@_common
def standard_coamoeba(n, out_dir, config_path, resolution, window):
    """The exact model of the standard-line coamoeba (n = 2 or 3)."""
    cfg = _load_config(config_path, out_dir=out_dir, resolution=resolution)
    model = standard_model(n)
    write_json(f"{cfg['out_dir']}/standard-coamoeba-{n}.json",
               {"model": model.to_json(), "provenance": provenance(None, cfg)})
    if n == 2:
        raster = standard_raster((int(cfg["resolution"]),) * 2)
        write_pgm(f"{cfg['out_dir']}/standard-coamoeba-2.pgm", raster.occupancy)
    click.echo(f"pieces: {len(model.polyhedra)}")


@main.command(name="transform-coamoeba")
@click.argument("poly", required=False)
@click.option("--matrix", default=None, help="Integer rows 'a,b;c,d' of L.")
@click.option("--translation", default="0,0")
@_common
def transform_coamoeba_cmd(poly, matrix, translation, out_dir, config_path,
                           resolution, window):
    """Raster of the standard model pushed through an integer transform."""
    cfg = _load_config(config_path, out_dir=out_dir, resolution=resolution)
    if poly is not None:
        f = _parse(poly)
        T = UnimodularTransformData.from_polynomial(f)
        name = _slug(poly)
    elif matrix:
        try:
            rows = [tuple(int(v) for v in r.split(",")) for r in matrix.split(";")]
            shift = tuple(float(v) for v in translation.split(","))
            T = UnimodularTransformData((rows[0], rows[1]), shift)
        except (ValueError, IndexError) as exc:
            click.echo(f"bad matrix: {exc}", err=True)
            sys.exit(EXIT_PARSE)
        name = "matrix"
    else:
        click.echo("give a polynomial or --matrix", err=True)
        sys.exit(EXIT_PARSE)
    raster = transform_coamoeba(standard_model(2), T, (int(cfg["resolution"]),) * 2)
    base = f"{cfg['out_dir']}/{name}-transformed"
    write_pgm(f"{base}.pgm", raster.occupancy)
    write_json(f"{base}.json",
               {"transform": T.to_json(), "volume": raster_volume(raster),
                "provenance": provenance(None, cfg)})
    click.echo(f"det = {T.det}, volume = {raster_volume(raster):.6f}")


@main.command(name="extra-pieces")
@click.argument("sparse_poly")
@click.argument("deformed_poly")
@_common
def extra_pieces(sparse_poly, deformed_poly, out_dir, config_path, resolution, window):
    """Coamoeba pieces of the second polynomial missing from the first."""
    cfg = _load_config(config_path, out_dir=out_dir, resolution=resolution)
    fs = _parse(sparse_poly)
    fd = _parse(deformed_poly)
    res = (int(cfg["resolution"]),) * 2
    solve = _solve_cfg(cfg)
    report = extra_piece_report(rasterize_coamoeba(fs, res, solve),
                                rasterize_coamoeba(fd, res, solve))
    write_json(f"{cfg['out_dir']}/extra-pieces.json",
               {"report": report.to_json(), "provenance": provenance(fd, cfg)})
    click.echo(f"pieces: {report.piece_count}, area: {report.extra_area:.6f}")


@main.command(name="puiseux-demo")
@click.option("--k", type=int, default=3)
@click.option("--a0", default="1@0",
              help="Series terms 'coeff@exponent' joined by '+', e.g. '-1@-1+2@0'.")
@_common
def puiseux_demo(k, a0, out_dir, config_path, resolution, window):
    """Closed-form torus limits of the roots of z^k + a0 over the series field."""
    cfg = _load_config(config_path, out_dir=out_dir)
    try:
        terms = {}
        for piece in a0.split("+"):
            c, e = piece.split("@")
            terms[e] = complex(c.replace("i", "j"))
        from fractions import Fraction

        series = PuiseuxScalar.from_terms({Fraction(e): c for e, c in terms.items()})
    except (ValueError, ZeroDivisionError) as exc:
        click.echo(f"bad series: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    roots = univariate_W_roots(k, series)
    payload = {
        "k": k,
        "val": float(val(series)),
        "w": [w_map(series).real, w_map(series).imag],
        "roots": [[r.real, r.imag] for r in roots],
        "provenance": provenance(None, cfg),
    }
    write_json(f"{cfg['out_dir']}/puiseux-demo.json", payload)
    for r in roots:
        click.echo(f"{r.real:+.6f}{r.imag:+.6f}i  |.| = {abs(r):.6f}")


if __name__ == "__main__":
    main()
