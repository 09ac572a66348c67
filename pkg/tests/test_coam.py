"""Coamoeba rasters, the exact standard model, transforms and extra pieces."""

import math

import numpy as np
import pytest

from amoebalab.coam import (
    CoamoebaError,
    CoamoebaRaster,
    UnimodularTransformData,
    extra_piece_report,
    raster_set_distance,
    raster_volume,
    rasterize_coamoeba,
    standard_membership,
    standard_model,
    standard_raster,
    standard_volume,
    transform_coamoeba,
    transformed_membership,
)
from amoebalab.lpoly import parse_polynomial

PI = math.pi
RES = (256, 256)


class TestStandardModel:
    def test_piece_counts(self):
        assert len(standard_model(2).polyhedra) == 2
        assert len(standard_model(3).polyhedra) == 6

    def test_volume_formula(self):
        assert abs(standard_volume(2) - PI ** 2) < 1e-12
        assert abs(standard_volume(3) - 4 * PI ** 3) < 1e-12

    def test_rejects_other_n(self):
        with pytest.raises(CoamoebaError):
            standard_model(4)

    def test_n2_triangles(self):
        model = standard_model(2)
        tri_vertex_sets = []
        for piece in model.polyhedra:
            # cube minus cone leaves a triangle: cube corners minus cone body
            corners = {v for v in piece.cube_vertices}
            tri = {v for v in corners
                   if standard_membership(np.array(v) - 1e-6 * (np.array(v) - PI), 2)}
            tri_vertex_sets.append(corners)
        assert {frozenset(c) for c in tri_vertex_sets} == {
            frozenset({(0.0, PI), (PI, PI), (0.0, 2 * PI), (PI, 2 * PI)}),
            frozenset({(PI, 0.0), (PI, PI), (2 * PI, 0.0), (2 * PI, PI)}),
        }

    def test_membership_n2_triangle_interior(self):
        # the component over theta1 in (0, pi) satisfies pi < theta2 < pi + theta1
        assert standard_membership(np.array([1.0, PI + 0.5]), 2)
        assert not standard_membership(np.array([1.0, PI + 1.5]), 2)
        assert standard_membership(np.array([PI + 0.5, 1.0]), 2)
        # the two excluded cubes are empty
        assert not standard_membership(np.array([1.0, 1.0]), 2)
        assert not standard_membership(np.array([PI + 1, PI + 1]), 2)

    def test_membership_n3_cone_removed(self):
        # cube with single upper coordinate 2: cone is theta3 - pi >= max(theta1, theta2)
        inside = np.array([1.0, 2.0, PI + 1.5])
        in_cone = np.array([0.2, 0.3, PI + 2.5])
        assert standard_membership(inside, 3)
        assert not standard_membership(in_cone, 3)

    def test_raster_volume_n2(self):
        r = standard_raster((512, 512))
        assert abs(raster_volume(r) - PI ** 2) <= 0.02 * PI ** 2

    def test_monte_carlo_volume_n3(self):
        rng = np.random.default_rng(11)
        pts = rng.uniform(0, 2 * PI, size=(200000, 3))
        vol = standard_membership(pts, 3).mean() * (2 * PI) ** 3
        assert abs(vol - 4 * PI ** 3) <= 0.05 * 4 * PI ** 3

    def test_sampled_line_matches_model(self):
        sampled = rasterize_coamoeba(parse_polynomial("1+z+w"), (512, 512))
        assert raster_set_distance(sampled, standard_raster((512, 512))) <= 2.0


class TestRasterize:
    def test_diagonal_binomial_thin(self):
        r = rasterize_coamoeba(parse_polynomial("z-w"), RES)
        # arg(z) = arg(w): a circle on the torus, area -> 0 with resolution
        assert raster_volume(r) < 0.05 * (2 * PI) ** 2
        t1, t2 = r.pixel_centers()
        occ_rows, occ_cols = np.nonzero(r.occupancy)
        diffs = np.abs(t2[occ_rows] - t1[occ_cols])
        assert np.all(np.minimum(diffs, 2 * PI - diffs) < 0.1)

    def test_line_volume(self):
        r = rasterize_coamoeba(parse_polynomial("1+z+w"), RES)
        assert abs(raster_volume(r) - PI ** 2) <= 0.05 * PI ** 2

    def test_resolution_floor(self):
        with pytest.raises(CoamoebaError):
            CoamoebaRaster((64, 64), np.zeros((64, 64), dtype=bool))


class TestTransforms:
    def test_identity(self):
        T = UnimodularTransformData(((1, 0), (0, 1)))
        r = transform_coamoeba(standard_model(2), T, RES)
        assert np.array_equal(r.occupancy, standard_raster(RES).occupancy)

    def test_from_inverse_first_matrix(self):
        T = UnimodularTransformData.from_inverse([["3/7", "-1/7"], ["-2/7", "3/7"]])
        assert T.L == ((3, 1), (2, 3)) and T.det == 7

    def test_from_inverse_second_matrix(self):
        T = UnimodularTransformData.from_inverse([["1/3", "1/3"], ["-2/3", "1/3"]])
        assert T.det == 3

    def test_from_inverse_singular(self):
        with pytest.raises(CoamoebaError):
            UnimodularTransformData.from_inverse([[1, 1], [1, 1]])

    def test_from_polynomial_trinomial(self):
        f = parse_polynomial("w*z^3+z^2*w^3+1")
        T = UnimodularTransformData.from_polynomial(f)
        assert T.det == 7
        assert T.translation == (0.0, 0.0)

    def test_from_polynomial_rejects_square(self):
        with pytest.raises(CoamoebaError):
            UnimodularTransformData.from_polynomial(parse_polynomial("1+z+w+z*w"))

    def test_volume_preserved(self):
        model = standard_model(2)
        for T in (UnimodularTransformData(((3, 1), (2, 3))),
                  UnimodularTransformData(((1, -1), (2, 1)))):
            r = transform_coamoeba(model, T, (512, 512))
            assert abs(raster_volume(r) - PI ** 2) <= 0.03 * PI ** 2

    def test_transform_matches_sampled_curve(self):
        f = parse_polynomial("w*z^3+z^2*w^3+1")
        T = UnimodularTransformData.from_polynomial(f)
        model_r = transform_coamoeba(standard_model(2), T, RES)
        sampled = rasterize_coamoeba(f, RES)
        assert raster_set_distance(sampled, model_r) <= 3.0

    def test_membership_translation(self):
        T0 = UnimodularTransformData(((1, 0), (0, 1)))
        T1 = UnimodularTransformData(((1, 0), (0, 1)), (0.5, 0.0))
        theta = np.array([1.0 + 0.5, PI + 0.5])
        assert transformed_membership(theta, T1) == transformed_membership(
            np.array([1.0, PI + 0.5]), T0)


class TestExtraPieces:
    def test_self_comparison_empty(self):
        r = rasterize_coamoeba(parse_polynomial("z+w+z^2*w^2"), RES)
        rep = extra_piece_report(r, r)
        assert rep.piece_count == 0 and rep.extra_area == 0.0

    def test_resolution_mismatch(self):
        a = rasterize_coamoeba(parse_polynomial("z-w"), (128, 128))
        b = rasterize_coamoeba(parse_polynomial("z-w"), (256, 256))
        with pytest.raises(CoamoebaError):
            extra_piece_report(a, b)

    def test_deformed_coefficient_grows_pieces(self):
        sparse = rasterize_coamoeba(parse_polynomial("z+w+z^2*w^2"), RES)
        deformed = rasterize_coamoeba(parse_polynomial("z+w+(1/2)*z*w+z^2*w^2"), RES)
        rep = extra_piece_report(sparse, deformed)
        assert rep.piece_count >= 1
        assert rep.extra_area > 0.01 * PI ** 2

    def test_sampling_noise_below_floor(self):
        f = parse_polynomial("z+w+z^2*w^2")
        a = rasterize_coamoeba(f, RES)
        b = rasterize_coamoeba(f, RES, x_samples=384, theta_oversample=1)
        rep = extra_piece_report(a, b)
        assert rep.extra_area <= 0.01 * PI ** 2

    def test_wraparound_labeling(self):
        occ = np.zeros((128, 128), dtype=bool)
        occ[:3, 10:30] = True
        occ[-3:, 10:30] = True  # same piece across the seam
        a = CoamoebaRaster((128, 128), np.zeros((128, 128), dtype=bool))
        b = CoamoebaRaster((128, 128), occ)
        rep = extra_piece_report(a, b)
        assert rep.piece_count == 1


def test_raster_volume_extremes():
    full = CoamoebaRaster((128, 128), np.ones((128, 128), dtype=bool))
    empty = CoamoebaRaster((128, 128), np.zeros((128, 128), dtype=bool))
    assert abs(raster_volume(full) - 4 * PI ** 2) < 1e-9
    assert raster_volume(empty) == 0.0
