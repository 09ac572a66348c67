"""Laurent polynomials with complex coefficients and their Newton polytopes.

All lattice combinatorics (hull vertices, membership, lattice points) is done
in exact integer arithmetic; floating point only ever touches coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

ExponentVector = tuple[int, ...]


class PolynomialError(Exception):
    """Base class for errors raised by this module."""


class ParseError(PolynomialError):
    """Syntax error in a polynomial expression, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EmptyPolynomialError(PolynomialError):
    """All terms cancelled, or the input contained no terms."""


@dataclass(frozen=True)
class LaurentPolynomial:
    """A finite sum of monomials a_alpha * z^alpha with nonzero complex a_alpha."""

    dimension: int
    terms: dict[ExponentVector, complex]

    def __post_init__(self):
        if not self.terms:
            raise EmptyPolynomialError("a polynomial must have at least one term")
        for alpha, a in self.terms.items():
            if len(alpha) != self.dimension:
                raise PolynomialError(
                    f"exponent {alpha} does not have dimension {self.dimension}"
                )
            if a == 0:
                raise PolynomialError(f"zero coefficient stored at {alpha}")

    @property
    def support(self) -> frozenset[ExponentVector]:
        return frozenset(self.terms)

    def coefficient(self, alpha: ExponentVector) -> complex:
        return self.terms.get(tuple(alpha), 0j)

    def degree_in(self, j: int) -> int:
        return max(alpha[j] for alpha in self.terms)

    def to_json(self) -> list[dict]:
        entries = sorted(self.terms.items())
        return [
            {"re": a.real, "im": a.imag, "exponents": list(alpha)}
            for alpha, a in entries
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "LaurentPolynomial":
        terms = {}
        dim = None
        for entry in data:
            alpha = tuple(int(e) for e in entry["exponents"])
            dim = len(alpha) if dim is None else dim
            terms[alpha] = complex(entry["re"], entry["im"])
        if dim is None:
            raise EmptyPolynomialError("no terms in JSON payload")
        return cls(dim, terms)

    def canonical_text(self) -> str:
        """Deterministic text form, used for hashing and provenance."""
        parts = [
            f"{alpha}:({a.real!r},{a.imag!r})" for alpha, a in sorted(self.terms.items())
        ]
        return ";".join(parts)


@dataclass(frozen=True)
class NewtonPolytope:
    """Convex hull of a support set; vertices CCW from the lexicographic minimum."""

    dimension: int
    vertices: tuple[ExponentVector, ...]
    support: tuple[ExponentVector, ...] = field(default=())

    @property
    def lattice_points(self) -> list[ExponentVector]:
        return lattice_points(self)


# ---------------------------------------------------------------------------
# exact 2-d hull machinery


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_vertices_2d(points: list[ExponentVector]) -> list[ExponentVector]:
    """Strict extreme points of conv(points), CCW starting at the lex minimum.

    Collinear points interior to a hull edge are dropped.  Degenerate inputs
    (single point, collinear set) yield the point or the two segment ends.
    """
    pts = sorted(set(map(tuple, points)))
    if len(pts) == 1:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) > 1 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    if len(lower) == 2 and len(upper) == 2:
        # all points collinear: segment with two vertices
        return [pts[0], pts[-1]]
    hull = lower[:-1] + upper[:-1]
    # lower-then-upper chains traverse the boundary counterclockwise already;
    # rotate so the lexicographic minimum comes first
    k = hull.index(min(hull))
    return hull[k:] + hull[:k]


def point_in_hull_2d(p: ExponentVector, vertices: list[ExponentVector]) -> bool:
    """Exact membership of p in the convex hull given by CCW vertices."""
    if len(vertices) == 1:
        return tuple(p) == tuple(vertices[0])
    if len(vertices) == 2:
        a, b = vertices
        if _cross(a, b, p) != 0:
            return False
        lo = min(a, b)
        hi = max(a, b)
        return lo <= tuple(p) <= hi
    for i in range(len(vertices)):
        a = vertices[i]
        b = vertices[(i + 1) % len(vertices)]
        if _cross(a, b, p) < 0:
            return False
    return True


def newton_polytope(f: LaurentPolynomial) -> NewtonPolytope:
    """Newton polytope of f with exact integer hull predicates (n <= 2)."""
    supp = sorted(f.support)
    if f.dimension == 1:
        es = [a[0] for a in supp]
        lo, hi = min(es), max(es)
        verts = [(lo,)] if lo == hi else [(lo,), (hi,)]
        return NewtonPolytope(1, tuple(verts), tuple(supp))
    if f.dimension == 2:
        verts = hull_vertices_2d(supp)
        return NewtonPolytope(2, tuple(verts), tuple(supp))
    raise NotImplementedError(
        "Newton polytopes are implemented for dimension <= 2"
    )


def is_maximally_sparse(f: LaurentPolynomial) -> bool:
    """True iff the support equals the vertex set of the Newton polytope."""
    P = newton_polytope(f)
    return set(P.vertices) == set(f.support)


def lattice_points(P: NewtonPolytope) -> list[ExponentVector]:
    """All integer points of the hull, sorted lexicographically (n <= 3)."""
    if P.dimension > 3:
        raise NotImplementedError("lattice point enumeration requires n <= 3")
    if P.dimension == 1:
        lo = min(v[0] for v in P.vertices)
        hi = max(v[0] for v in P.vertices)
        return [(k,) for k in range(lo, hi + 1)]
    if P.dimension == 2:
        xs = [v[0] for v in P.vertices]
        ys = [v[1] for v in P.vertices]
        out = []
        for x in range(min(xs), max(xs) + 1):
            for y in range(min(ys), max(ys) + 1):
                if point_in_hull_2d((x, y), list(P.vertices)):
                    out.append((x, y))
        return out
    raise NotImplementedError("3-d hulls are not constructed by this toolkit")


def strip_monomial_factor(f: LaurentPolynomial) -> LaurentPolynomial:
    """Divide out z^gamma when every exponent shares the offset gamma > 0.

    Only the coordinatewise minimum is removed, and only where it is positive;
    the hypersurface in the torus is unchanged.  Callers remain responsible
    for any further common factors.
    """
    mins = [min(a[j] for a in f.terms) for j in range(f.dimension)]
    gamma = tuple(m if m > 0 else 0 for m in mins)
    if all(g == 0 for g in gamma):
        return f
    terms = {
        tuple(a - g for a, g in zip(alpha, gamma)): c for alpha, c in f.terms.items()
    }
    return LaurentPolynomial(f.dimension, terms)


# ---------------------------------------------------------------------------
# parsing

_NUMBER_RE = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_VAR_RE = re.compile(r"[zw]\d*")


def _parse_complex_literal(body: str, pos: int) -> complex:
    """Parse the inside of a parenthesised coefficient: a, a/b, a+bi, bi, ..."""
    s = body.replace(" ", "").replace("−", "-")
    if not s:
        raise ParseError("empty coefficient literal", pos)

    def _real(part: str) -> float:
        if "/" in part:
            num, _, den = part.partition("/")
            try:
                return float(Fraction(num) / Fraction(den))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational literal '{part}'", pos) from exc
        try:
            return float(part)
        except ValueError as exc:
            raise ParseError(f"bad numeric literal '{part}'", pos) from exc

    if not s.endswith("i") and not s.endswith("j"):
        return complex(_real(s), 0.0)
    s = s[:-1]
    # locate the sign separating real and imaginary parts (not a leading sign
    # and not part of an exponent like 1e-3)
    split = -1
    for k in range(len(s) - 1, 0, -1):
        if s[k] in "+-" and s[k - 1] not in "eE":
            split = k
            break
    if split == -1:
        imag = _real(s) if s not in ("", "+", "-") else float(s + "1")
        return complex(0.0, imag)
    re_part, im_part = s[:split], s[split:]
    if im_part in ("+", "-"):
        im_part += "1"
    return complex(_real(re_part), _real(im_part))


def parse_polynomial(text: str, allow_negative_exponents: bool = False) -> LaurentPolynomial:
    """Parse a term-list expression into a LaurentPolynomial.

    Grammar: signed terms joined by + or -; a term is an optional coefficient
    (number or parenthesised complex literal) followed by variable factors
    ``z``/``w`` (dimension 2) or ``z1..zn``, each with an optional ``^int``.
    Terms with equal exponents are summed and zero sums dropped.
    """
    s = text.replace("−", "-")
    n_total = len(s)
    i = 0
    dim: int | None = None
    indexed: bool | None = None
    raw_terms: list[tuple[dict[int, int], complex]] = []

    def skip_ws(k: int) -> int:
        while k < n_total and s[k].isspace():
            k += 1
        return k

    i = skip_ws(i)
    if i >= n_total:
        raise ParseError("empty input", 0)

    while i < n_total:
        sign = 1.0
        i = skip_ws(i)
        while i < n_total and s[i] in "+-":
            if s[i] == "-":
                sign = -sign
            i = skip_ws(i + 1)
        if i >= n_total:
            raise ParseError("dangling sign", i)

        coeff = complex(sign, 0.0)
        have_factor = False
        exps: dict[int, int] = {}

        while i < n_total:
            i = skip_ws(i)
            if i >= n_total or s[i] in "+-":
                break
            if s[i] == "*":
                i = skip_ws(i + 1)
                if i < n_total and s[i] == "*":
                    raise ParseError("use '^' for powers, not '**'", i)
                if i >= n_total or s[i] in "+-":
                    raise ParseError("dangling '*'", i)
                continue
            if s[i] == "(":
                j = s.find(")", i)
                if j == -1:
                    raise ParseError("unbalanced parenthesis", i)
                coeff *= _parse_complex_literal(s[i + 1 : j], i)
                i = j + 1
                have_factor = True
                continue
            m = _NUMBER_RE.match(s, i)
            if m:
                coeff *= float(m.group())
                i = m.end()
                have_factor = True
                continue
            m = _VAR_RE.match(s, i)
            if m:
                name = m.group()
                i = m.end()
                if len(name) > 1:
                    if indexed is False:
                        raise ParseError("cannot mix z/w with indexed variables", m.start())
                    indexed = True
                    var = int(name[1:]) - 1
                    if var < 0:
                        raise ParseError("variable indices start at 1", m.start())
                else:
                    if indexed is True:
                        raise ParseError("cannot mix z/w with indexed variables", m.start())
                    indexed = False
                    var = 0 if name == "z" else 1
                power = 1
                if i < n_total and s[i] == "^":
                    i += 1
                    neg = False
                    if i < n_total and s[i] == "-":
                        neg = True
                        i += 1
                    m2 = re.match(r"\d+", s[i:])
                    if not m2:
                        raise ParseError("expected integer exponent after '^'", i)
                    power = int(m2.group())
                    i += m2.end()
                    if neg:
                        power = -power
                exps[var] = exps.get(var, 0) + power
                have_factor = True
                continue
            raise ParseError(f"unexpected character {s[i]!r}", i)

        if not have_factor:
            raise ParseError("empty term", i)
        raw_terms.append((exps, coeff))

    if indexed:
        dim = max((max(e) + 1 for e, _ in raw_terms if e), default=1)
    else:
        dim = 2

    terms: dict[ExponentVector, complex] = {}
    for exps, coeff in raw_terms:
        alpha = tuple(exps.get(j, 0) for j in range(dim))
        if not allow_negative_exponents and any(a < 0 for a in alpha):
            raise ParseError(
                f"negative exponent in {alpha}; pass allow_negative_exponents=True "
                "for Laurent terms",
                0,
            )
        terms[alpha] = terms.get(alpha, 0j) + coeff
    terms = {a: c for a, c in terms.items() if c != 0}
    if not terms:
        raise EmptyPolynomialError("all terms cancelled")
    return LaurentPolynomial(dim, terms)
