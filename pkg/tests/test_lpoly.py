"""Exact lattice/hull combinatorics and the polynomial parser."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amoebalab.lpoly import (
    EmptyPolynomialError,
    LaurentPolynomial,
    NewtonPolytope,
    ParseError,
    hull_vertices_2d,
    is_maximally_sparse,
    lattice_points,
    newton_polytope,
    parse_polynomial,
    point_in_hull_2d,
    strip_monomial_factor,
)


def brute_force_hull(points):
    """Oracle: a point is extreme iff it is not a convex combination of others,
    which in the plane reduces to triangle/segment containment tests."""
    pts = sorted(set(points))
    extreme = []
    for p in pts:
        others = [q for q in pts if q != p]
        inside = False
        for i in range(len(others)):
            for j in range(i + 1, len(others)):
                for k in range(j + 1, len(others)):
                    if point_in_hull_2d(p, hull_vertices_2d([others[i], others[j], others[k]])):
                        inside = True
        for i in range(len(others)):
            for j in range(i + 1, len(others)):
                if point_in_hull_2d(p, [others[i], others[j]]):
                    inside = True
        if not inside:
            extreme.append(p)
    return set(extreme)


class TestHull:
    def test_triangle(self):
        assert hull_vertices_2d([(0, 0), (1, 0), (0, 1)]) == [(0, 0), (1, 0), (0, 1)]

    def test_interior_point_dropped(self):
        assert set(hull_vertices_2d([(0, 0), (4, 0), (0, 4), (1, 1)])) == {(0, 0), (4, 0), (0, 4)}

    def test_collinear_point_on_edge_dropped(self):
        assert set(hull_vertices_2d([(0, 0), (2, 0), (4, 0), (0, 4)])) == {(0, 0), (4, 0), (0, 4)}

    def test_degenerate_segment(self):
        assert hull_vertices_2d([(0, 0), (1, 2), (2, 4)]) == [(0, 0), (2, 4)]

    def test_single_point(self):
        assert hull_vertices_2d([(3, 5)]) == [(3, 5)]

    def test_ccw_from_lex_min(self):
        verts = hull_vertices_2d([(0, 0), (2, 0), (2, 2), (0, 2)])
        assert verts[0] == (0, 0)
        area2 = sum(verts[i][0] * verts[(i + 1) % 4][1] - verts[(i + 1) % 4][0] * verts[i][1]
                    for i in range(4))
        assert area2 > 0

    @given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
                    min_size=1, max_size=9))
    @settings(max_examples=120, deadline=None)
    def test_against_brute_force(self, pts):
        assert set(hull_vertices_2d(pts)) == brute_force_hull(pts)

    @given(st.lists(st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
                    min_size=1, max_size=12))
    @settings(max_examples=80, deadline=None)
    def test_idempotent(self, pts):
        once = hull_vertices_2d(pts)
        assert hull_vertices_2d(once) == once


class TestMembership:
    def test_inside(self):
        assert point_in_hull_2d((1, 1), [(0, 0), (3, 0), (0, 3)])

    def test_boundary(self):
        assert point_in_hull_2d((1, 0), [(0, 0), (3, 0), (0, 3)])

    def test_outside(self):
        assert not point_in_hull_2d((2, 2), [(0, 0), (3, 0), (0, 3)])

    def test_segment_cases(self):
        assert point_in_hull_2d((1, 1), [(0, 0), (2, 2)])
        assert not point_in_hull_2d((1, 2), [(0, 0), (2, 2)])
        assert not point_in_hull_2d((3, 3), [(0, 0), (2, 2)])


class TestNewtonPolytope:
    def test_line(self):
        f = parse_polynomial("1+z+w")
        P = newton_polytope(f)
        assert set(P.vertices) == {(0, 0), (1, 0), (0, 1)}
        assert is_maximally_sparse(f)

    def test_interior_term_not_sparse(self):
        f = parse_polynomial("z+w+z*w+z^2*w^2")
        assert not is_maximally_sparse(f)
        g = parse_polynomial("z+w+z^2*w^2")
        assert is_maximally_sparse(g)

    def test_lattice_points_scan_oracle(self):
        P = NewtonPolytope(2, ((0, 0), (3, 1), (1, 3)), ((0, 0), (3, 1), (1, 3)))
        expected = [(x, y) for x in range(0, 4) for y in range(0, 4)
                    if point_in_hull_2d((x, y), list(P.vertices))]
        assert lattice_points(P) == sorted(expected)

    def test_lattice_points_segment(self):
        P = NewtonPolytope(2, ((0, 0), (4, 2)), ((0, 0), (4, 2)))
        assert lattice_points(P) == [(0, 0), (2, 1), (4, 2)]

    def test_strip_monomial_factor(self):
        f = parse_polynomial("z*w+z^2*w")
        g = strip_monomial_factor(f)
        assert set(g.support) == {(0, 0), (1, 0)}

    def test_strip_noop_when_minimum_not_positive(self):
        f = parse_polynomial("1+z")
        assert strip_monomial_factor(f) is f


class TestParser:
    def test_basic(self):
        f = parse_polynomial("1+z+w")
        assert f.terms == {(0, 0): 1 + 0j, (1, 0): 1 + 0j, (0, 1): 1 + 0j}

    def test_signs_and_coefficients(self):
        f = parse_polynomial("-z*w^2+z^3*w-7*z*w+6*w+z")
        assert f.coefficient((1, 2)) == -1
        assert f.coefficient((1, 1)) == -7
        assert f.coefficient((0, 1)) == 6

    def test_complex_and_rational_literals(self):
        f = parse_polynomial("(1/2)*z*w+(2+3i)*w")
        assert f.coefficient((1, 1)) == 0.5
        assert f.coefficient((0, 1)) == 2 + 3j

    def test_indexed_variables(self):
        f = parse_polynomial("z1+z2^2")
        assert f.dimension == 2
        assert f.coefficient((0, 2)) == 1

    def test_like_terms_merge(self):
        f = parse_polynomial("z+2*z")
        assert f.coefficient((1, 0)) == 3

    def test_negative_exponent_policy(self):
        with pytest.raises(ParseError):
            parse_polynomial("z^-1")
        f = parse_polynomial("z^-1+w", allow_negative_exponents=True)
        assert f.coefficient((-1, 0)) == 1

    def test_parse_errors(self):
        for bad in ["", "1+++", "z^", "(2+", "q+1", "z**2"]:
            with pytest.raises((ParseError, EmptyPolynomialError)):
                parse_polynomial(bad)

    def test_cancellation_to_zero_rejected(self):
        with pytest.raises(EmptyPolynomialError):
            parse_polynomial("z-z")

    def test_json_roundtrip(self):
        f = parse_polynomial("(2+3i)*z^2*w - w + 5")
        g = LaurentPolynomial.from_json(f.to_json())
        assert g.terms == f.terms

    def test_canonical_text_deterministic(self):
        f = parse_polynomial("w+z+1")
        g = parse_polynomial("1+z+w")
        assert f.canonical_text() == g.canonical_text()


def test_degree_in():
    f = parse_polynomial("1+z^3*w+w^2")
    assert f.degree_in(0) == 3
    assert f.degree_in(1) == 2


def test_unicode_minus():
    f = parse_polynomial("1−z")
    assert f.coefficient((1, 0)) == -1
