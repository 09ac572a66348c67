"""Batched root solver against numpy's reference solver."""

import numpy as np
import pytest

from amoebalab._roots import (
    DegeneratePolynomialError,
    batched_roots,
)


def assert_same_multiset(a, b, tol=1e-8):
    a = sorted(np.asarray(a), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    b = sorted(np.asarray(b), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    assert len(a) == len(b)
    for x, y in zip(a, b):
        assert abs(x - y) < tol, (a, b)


def test_matches_numpy_on_random_batch():
    rng = np.random.default_rng(42)
    coeffs = rng.normal(size=(40, 6)) + 1j * rng.normal(size=(40, 6))
    roots, counts = batched_roots(coeffs)
    for i in range(40):
        ref = np.roots(coeffs[i, ::-1])
        assert_same_multiset(roots[i, : counts[i]], ref)


def test_mixed_degrees():
    coeffs = np.array([
        [1.0, 1.0, 0.0, 0.0],   # degree 1
        [2.0, 0.0, 1.0, 0.0],   # degree 2
        [1.0, 0.0, 0.0, 1.0],   # degree 3
    ], dtype=complex)
    roots, counts = batched_roots(coeffs)
    assert list(counts) == [1, 2, 3]
    assert_same_multiset(roots[0, :1], [-1.0])
    assert_same_multiset(roots[1, :2], np.roots([1, 0, 2]))
    assert_same_multiset(roots[2, :3], np.roots([1, 0, 0, 1]))


def test_roots_at_zero_dropped():
    # z^3 + z^2 = z^2 (z + 1): torus roots exclude the origin
    coeffs = np.array([[0.0, 0.0, 1.0, 1.0]], dtype=complex)
    roots, counts = batched_roots(coeffs)
    assert counts[0] == 1
    assert_same_multiset(roots[0, :1], [-1.0])


def test_zero_row_flagged():
    coeffs = np.array([[0.0, 0.0], [1.0, 1.0]], dtype=complex)
    roots, counts = batched_roots(coeffs)
    assert counts[0] == -1 and counts[1] == 1


def test_zero_row_strict_raises():
    with pytest.raises(DegeneratePolynomialError):
        batched_roots(np.zeros((1, 3), dtype=complex), strict=True)


def test_tiny_leading_coefficient_trimmed():
    # effectively degree 1 despite the 1e-18 quadratic term
    coeffs = np.array([[1.0, 1.0, 1e-18]], dtype=complex)
    roots, counts = batched_roots(coeffs)
    assert counts[0] == 1
    assert_same_multiset(roots[0, :1], [-1.0])


def test_clustered_roots_polish():
    # (z - 1)^2 (z + 2), coefficients ascending
    coeffs = np.array([[2.0, -3.0, 0.0, 1.0]], dtype=complex)
    roots, counts = batched_roots(coeffs)
    assert counts[0] == 3
    assert_same_multiset(roots[0, :3], [1.0, 1.0, -2.0], tol=1e-5)


def test_large_modulus_spread():
    # roots 1e-4 and 1e4: (z - 1e-4)(z - 1e4)
    coeffs = np.array([[1.0, -(1e4 + 1e-4), 1.0]], dtype=complex)
    roots, counts = batched_roots(coeffs)
    assert_same_multiset(np.sort_complex(roots[0, :2]), [1e-4, 1e4], tol=1e-4)
