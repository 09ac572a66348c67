"""Tropical polynomials, regular subdivisions, corner loci and balancing."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amoebalab.lpoly import newton_polytope, parse_polynomial
from amoebalab.trop import (
    TropicalPolynomial,
    archimedean_tropicalization,
    balancing_check,
    corner_locus,
    dual_subdivision,
    solid_tropical,
    trop_eval,
)


def T(terms):
    return TropicalPolynomial(2, terms)


LINE = T({(0, 0): 0.0, (1, 0): 0.0, (0, 1): 0.0})


class TestEval:
    def test_value_and_argmax(self):
        v, arg = trop_eval(LINE, (2.0, -1.0))
        assert v == 2.0 and arg == {(1, 0)}

    def test_tie_detection(self):
        _, arg = trop_eval(LINE, (0.0, 0.0))
        assert arg == {(0, 0), (1, 0), (0, 1)}

    @given(st.tuples(st.floats(-5, 5), st.floats(-5, 5)),
           st.tuples(st.floats(-5, 5), st.floats(-5, 5)))
    @settings(max_examples=100, deadline=None)
    def test_midpoint_convexity(self, x, y):
        mid = ((x[0] + y[0]) / 2, (x[1] + y[1]) / 2)
        vm = trop_eval(LINE, mid)[0]
        assert vm <= (trop_eval(LINE, x)[0] + trop_eval(LINE, y)[0]) / 2 + 1e-9


class TestSubdivision:
    def test_triangle_single_cell(self):
        sub = dual_subdivision(LINE)
        assert len(sub.cells) == 1
        assert set(sub.cells[0].polygon) == {(0, 0), (1, 0), (0, 1)}
        assert len(sub.edges) == 3
        assert all(len(e.cells) == 1 for e in sub.edges)

    def test_flat_square_single_cell(self):
        g = T({(0, 0): 0.0, (1, 0): 0.0, (0, 1): 0.0, (1, 1): 0.0})
        sub = dual_subdivision(g)
        assert len(sub.cells) == 1
        assert set(sub.vertex_set) == {(0, 0), (1, 0), (0, 1), (1, 1)}

    def test_lifted_square_splits_into_triangles(self):
        g = T({(0, 0): 0.0, (1, 0): 0.0, (0, 1): 0.0, (1, 1): math.log(2)})
        sub = dual_subdivision(g)
        assert len(sub.cells) == 2
        interior = [e for e in sub.edges if len(e.cells) == 2]
        assert len(interior) == 1
        # the crease passes through the lifted vertex (1, 1)
        assert set(interior[0].endpoints) == {(0, 0), (1, 1)}

    def test_low_interior_point_not_a_vertex(self):
        g = T({(0, 0): 0.0, (2, 0): 0.0, (0, 2): 0.0, (1, 0): -5.0})
        sub = dual_subdivision(g)
        assert (1, 0) not in sub.vertex_set

    def test_high_interior_point_is_a_vertex(self):
        g = T({(0, 0): 0.0, (2, 0): 0.0, (0, 2): 0.0, (1, 0): 1.0})
        sub = dual_subdivision(g)
        assert (1, 0) in sub.vertex_set

    def test_gradient_interpolates_lift(self):
        g = T({(0, 0): 1.0, (1, 0): 0.25, (0, 1): -0.5})
        cell = dual_subdivision(g).cells[0]
        for p in cell.points:
            val = cell.gradient[0] * p[0] + cell.gradient[1] * p[1] + cell.intercept
            assert abs(float(val) - g.terms[p]) < 2 ** -38

    def test_segment_support(self):
        g = T({(0, 0): 0.0, (1, 2): 1.0, (2, 4): 0.0})
        sub = dual_subdivision(g)
        assert len(sub.cells) == 2  # envelope creased at the middle point


class TestCornerLocus:
    def test_line_curve(self):
        curve = corner_locus(LINE)
        assert [tuple(map(float, v)) for v in curve.vertices] == [(0.0, 0.0)]
        dirs = {e.direction for e in curve.edges}
        assert dirs == {(-1, 0), (0, -1), (1, 1)}
        assert all(e.weight == 1 for e in curve.edges)

    def test_vertex_is_minus_gradient(self):
        g = T({(0, 0): 3.0, (1, 0): 0.0, (0, 1): -1.0})
        curve = corner_locus(g)
        # ties: 3 = x1 = x2 - 1 at the vertex
        assert [tuple(map(float, v)) for v in curve.vertices] == [(3.0, 4.0)]

    def test_weighted_edge(self):
        g = T({(0, 0): 0.0, (2, 0): 0.0, (0, 1): 0.0})
        curve = corner_locus(g)
        by_dual = {frozenset(e.dual_pair): e.weight for e in curve.edges}
        assert by_dual[frozenset({(0, 0), (2, 0)})] == 2

    def test_binomial_line_family(self):
        g = T({(0, 0): 1.0, (2, 0): 0.0})
        curve = corner_locus(g)
        assert len(curve.vertices) == 1
        (v,) = curve.vertices
        assert float(v[0]) == 0.5  # 1 + 0 = 0 + 2 x1
        assert sorted(e.direction for e in curve.edges) == [(0, -1), (0, 1)]
        assert all(e.weight == 2 for e in curve.edges)

    def test_monomial_empty_curve(self):
        g = T({(2, 3): 1.0})
        curve = corner_locus(g)
        assert curve.vertices == () and curve.edges == ()

    def test_bounded_edge_between_cells(self):
        g = T({(0, 0): 0.0, (1, 0): 0.0, (0, 1): 0.0, (1, 1): math.log(2)})
        curve = corner_locus(g)
        bounded = [e for e in curve.edges if not e.is_ray]
        assert len(bounded) == 1
        rays = [e for e in curve.edges if e.is_ray]
        assert len(rays) == 4


class TestBalancing:
    def test_known_curves_balance(self):
        for g in (
            LINE,
            T({(0, 0): 0.0, (1, 0): 0.0, (0, 1): 0.0, (1, 1): math.log(2)}),
            T({(0, 0): 0.3, (2, 0): 0.0, (0, 2): -0.7, (1, 1): 0.9}),
            T({(1, 2): 0.0, (3, 1): 0.5, (1, 1): 1.9, (0, 1): 1.8, (1, 0): 0.0}),
        ):
            ok, violations = balancing_check(corner_locus(g))
            assert ok, violations

    @given(st.dictionaries(
        st.tuples(st.integers(0, 4), st.integers(0, 4)),
        st.integers(-8, 8).map(lambda k: k / 4),
        min_size=3, max_size=7,
    ))
    @settings(max_examples=120, deadline=None)
    def test_random_corner_loci_balance(self, terms):
        g = T(terms)
        ok, violations = balancing_check(corner_locus(g))
        assert ok, violations

    def test_violation_detected(self):
        from amoebalab.trop import CurveEdge, TropicalCurve

        curve = corner_locus(LINE)
        bad = CurveEdge(curve.edges[0].vertices, curve.edges[0].direction, 2,
                        curve.edges[0].dual_pair)
        ok, violations = balancing_check(
            TropicalCurve(curve.vertices, (bad,) + curve.edges[1:], curve.vertex_cell)
        )
        assert not ok and violations


class TestSolidity:
    def test_sparse_support_is_solid(self):
        f = parse_polynomial("1+z+w")
        g = archimedean_tropicalization(f)
        assert solid_tropical(g, newton_polytope(f))

    def test_high_interior_lift_not_solid(self):
        f = parse_polynomial("z+w+9*z*w+z^2*w^2")
        g = archimedean_tropicalization(f)
        assert not solid_tropical(g, newton_polytope(f))

    def test_low_interior_lift_solid(self):
        f = parse_polynomial("z+w+(1/10)*z*w+z^2*w^2")
        g = archimedean_tropicalization(f)
        assert solid_tropical(g, newton_polytope(f))
