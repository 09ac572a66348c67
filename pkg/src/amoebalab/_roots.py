"""Batched univariate complex root finding.

Companion-matrix eigenvalues seed a vectorized Aberth (simultaneous
Newton-with-repulsion) polish.  Fibers are processed in bulk: the callers
sweep thousands of torus fibers per raster and per-call numpy dispatch would
dominate otherwise.
"""

from __future__ import annotations

import numpy as np

# relative magnitude below which a coefficient counts as zero when trimming
COEFF_TRIM = 1e-12


class RootSolveError(Exception):
    pass


class DegeneratePolynomialError(RootSolveError):
    """The substituted polynomial is (numerically) identically zero."""


class NonconvergenceError(RootSolveError):
    pass


def _eval_many(coeffs: np.ndarray, w: np.ndarray):
    """Horner evaluation of p and p' at (N, d) points; coeffs ascending (N, m)."""
    m = coeffs.shape[1]
    p = np.broadcast_to(coeffs[:, -1:], w.shape).astype(complex).copy()
    dp = np.zeros_like(w)
    for k in range(m - 2, -1, -1):
        dp = dp * w + p
        p = p * w + coeffs[:, k : k + 1]
    return p, dp


def _aberth_polish(coeffs: np.ndarray, w: np.ndarray, tol: float, max_iter: int):
    """Polish all roots of each row in place; returns max relative residual."""
    n, d = w.shape
    scale = np.sum(np.abs(coeffs), axis=1, keepdims=True)
    resid = np.zeros_like(w, dtype=float)
    for _ in range(max_iter):
        p, dp = _eval_many(coeffs, w)
        denom_scale = scale * np.maximum(np.abs(w), 1.0) ** (coeffs.shape[1] - 1)
        resid = np.abs(p) / denom_scale
        if np.all(resid < tol):
            break
        newton = p / np.where(dp == 0, 1e-300, dp)
        if d > 1:
            diff = w[:, :, None] - w[:, None, :]
            np.einsum("nii->ni", diff)[:] = np.inf
            repulse = np.sum(1.0 / diff, axis=2)
        else:
            repulse = np.zeros_like(w)
        corr = newton / (1.0 - newton * repulse)
        bad = ~np.isfinite(corr)
        corr[bad] = newton[bad]
        w = w - corr
    return w, float(resid.max(initial=0.0))


def batched_roots(coeffs: np.ndarray, tol: float = 1e-10, max_iter: int = 40,
                  strict: bool = False, with_low_trim: bool = False):
    """Roots of N polynomials given by ascending coefficient rows.

    Returns (roots, counts): roots is (N, dmax) complex with NaN padding and
    counts the number of valid roots per row.  Roots at zero (vanishing
    trailing coefficients) are dropped: the torus setting discards them.
    Rows that are numerically identically zero get count -1 (strict=False)
    or raise DegeneratePolynomialError.

    With `with_low_trim` a third array reports, per row, how many trailing
    coefficients were trimmed as numerically zero — i.e. how many roots of
    vanishingly small modulus were dropped.  Callers counting roots below a
    modulus threshold need these back.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n, m = coeffs.shape
    mags = np.abs(coeffs)
    rowmax = mags.max(axis=1)
    zero_rows = rowmax == 0
    if strict and np.any(zero_rows):
        raise DegeneratePolynomialError("substituted polynomial is identically zero")
    sig = mags > COEFF_TRIM * np.maximum(rowmax, 1e-300)[:, None]
    hi = np.where(sig.any(axis=1), m - 1 - np.argmax(sig[:, ::-1], axis=1), 0)
    lo = np.where(sig.any(axis=1), np.argmax(sig, axis=1), 0)
    deg = hi - lo

    dmax = int(deg.max(initial=0))
    roots = np.full((n, dmax), np.nan, dtype=complex)
    counts = deg.astype(int)
    counts[zero_rows] = -1

    worst = 0.0
    for d in range(1, dmax + 1):
        rows = np.nonzero((deg == d) & ~zero_rows)[0]
        if rows.size == 0:
            continue
        sub = np.zeros((rows.size, d + 1), dtype=complex)
        for i, r in enumerate(rows):
            sub[i] = coeffs[r, lo[r] : lo[r] + d + 1]
        monic = sub / sub[:, -1:]
        if d == 1:
            w = (-monic[:, 0])[:, None]
        else:
            comp = np.zeros((rows.size, d, d), dtype=complex)
            idx = np.arange(d - 1)
            comp[:, idx + 1, idx] = 1.0
            comp[:, :, -1] = -monic[:, :d]
            w = np.linalg.eigvals(comp)
        w, resid = _aberth_polish(sub, w, tol, max_iter)
        worst = max(worst, resid)
        roots[rows, :d] = w
    if strict and worst > tol:
        raise NonconvergenceError(f"root residual {worst:.3e} exceeds tolerance {tol:.3e}")
    if with_low_trim:
        low = lo.astype(int)
        low[zero_rows] = 0
        return roots, counts, low
    return roots, counts
