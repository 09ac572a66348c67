"""Finite Puiseux series, valuations, and the limit map onto the torus.

Scalars are finite sums of complex multiples of rational powers of the
parameter t.  The valuation is minus the lowest exponent, so it is large for
series blowing up as t -> 0, and the map w(a) = exp(val(a) + i*arg(lc(a)))
records the leading modulus growth rate together with the leading argument.
Applied coordinatewise it sends points over the Puiseux field to the complex
torus, where tropical curves arise as limits of amoebas.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

# relative size below which an additive cancellation counts as exact
CANCEL_TOL = 1e-12


class PuiseuxError(Exception):
    pass


class ZeroLeadingTermError(PuiseuxError):
    """The zero series has no valuation or leading argument."""


class TruncationExhaustedError(PuiseuxError):
    """Addition cancelled every stored term of nonzero operands.

    Truncated series cannot tell an exact zero from a sum whose leading term
    lies beyond the truncation, so the result is refused rather than silently
    reported as zero.
    """


def _coerce(value) -> "PuiseuxScalar":
    if isinstance(value, PuiseuxScalar):
        return value
    if isinstance(value, (int, float, complex)):
        return PuiseuxScalar.constant(complex(value))
    raise TypeError(f"cannot coerce {type(value).__name__} to a Puiseux scalar")


@dataclass(frozen=True)
class PuiseuxScalar:
    """Finite Puiseux series: exponent (Fraction) -> nonzero complex coefficient."""

    terms: tuple[tuple[Fraction, complex], ...]

    @staticmethod
    def from_terms(terms: dict[Fraction, complex]) -> "PuiseuxScalar":
        clean = tuple(sorted((Fraction(e), complex(c)) for e, c in terms.items() if c != 0))
        return PuiseuxScalar(clean)

    @staticmethod
    def constant(c: complex) -> "PuiseuxScalar":
        return PuiseuxScalar.from_terms({Fraction(0): c})

    @staticmethod
    def monomial(coeff: complex, exponent) -> "PuiseuxScalar":
        return PuiseuxScalar.from_terms({Fraction(exponent): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> tuple[Fraction, complex]:
        if self.is_zero:
            raise ZeroLeadingTermError("the zero series has no leading term")
        return self.terms[0]

    # ---- arithmetic ----

    def __add__(self, other) -> "PuiseuxScalar":
        other = _coerce(other)
        acc: dict[Fraction, complex] = dict(self.terms)
        for e, c in other.terms:
            if e in acc:
                s = acc[e] + c
                if abs(s) <= CANCEL_TOL * max(abs(acc[e]), abs(c)):
                    s = 0.0
                acc[e] = s
            else:
                acc[e] = c
        out = PuiseuxScalar.from_terms(acc)
        if out.is_zero and not (self.is_zero and other.is_zero):
            raise TruncationExhaustedError(
                "every stored term cancelled; the true leading term is unknown"
            )
        return out

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxScalar":
        return PuiseuxScalar(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> "PuiseuxScalar":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "PuiseuxScalar":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "PuiseuxScalar":
        other = _coerce(other)
        acc: dict[Fraction, complex] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0.0) + c1 * c2
        return PuiseuxScalar.from_terms(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PuiseuxScalar":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = PuiseuxScalar.constant(1.0)
        for _ in range(k):
            out = out * self
        return out

    # ---- valuation and limit data ----

    def val(self) -> Fraction | float:
        """Minus the lowest exponent; -inf for the zero series."""
        if self.is_zero:
            return -math.inf
        return -self.terms[0][0]

    def leading_argument(self) -> float:
        _, c = self.leading()
        return math.atan2(c.imag, c.real)

    def at(self, t: float) -> complex:
        """Numerical evaluation at a real parameter value t > 0."""
        if t <= 0:
            raise ValueError("t must be positive")
        return sum(c * t ** float(e) for e, c in self.terms) + 0j


def val(a: PuiseuxScalar) -> Fraction | float:
    return _coerce(a).val()


def w_map(a: PuiseuxScalar) -> complex:
    """exp(val(a) + i * arg of the leading coefficient); undefined at zero."""
    a = _coerce(a)
    if a.is_zero:
        raise ZeroLeadingTermError("w is undefined on the zero series")
    return cmath.exp(float(a.val()) + 1j * a.leading_argument())


def W_map(point) -> tuple[complex, ...]:
    """Coordinatewise w on a tuple of Puiseux scalars."""
    return tuple(w_map(a) for a in point)


def univariate_W_roots(k: int, a0: PuiseuxScalar) -> list[complex]:
    """W images of the k roots of z^k + a0 = 0, in closed form.

    Each root has valuation val(a0)/k and leading arguments
    (arg(lc(a0)) + (2l+1)*pi)/k, so the images are k equally spaced points on
    the circle of radius e^{val(a0)/k}.
    """
    a = _coerce(a0)
    if a.is_zero:
        raise ZeroLeadingTermError("z^k = 0 has no torus roots")
    if k < 1:
        raise ValueError("k must be a positive integer")
    v = float(a.val()) / k
    base = a.leading_argument()
    return [cmath.exp(v + 1j * (base + (2 * l + 1) * math.pi) / k) for l in range(k)]
