"""Dense univariate polynomials over a prime field.

Coefficients are stored low-degree-first as raw ints in [0, p), with no
trailing zeros, so two polynomials are equal iff their coefficient tuples
are equal.  The zero polynomial is the empty tuple and its degree is the
distinguished marker ``NEG_INFINITY`` rather than any integer.

Interpolation is plain O(k^2) Lagrange; the sizes handled through this
public type do not justify anything fancier, and nothing here assumes any
root-of-unity structure of p.  (The QAP layer has separate vectorized
kernels for its large dense workloads; see zkpin.fastpoly.)
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    DivisionByZeroPolynomial,
    DuplicateAbscissa,
    FieldTooSmall,
    ModulusMismatch,
)
from .fields import FieldElement, PrimeField

NEG_INFINITY = float("-inf")


def _as_int(field: PrimeField, v) -> int:
    if isinstance(v, FieldElement):
        if v.field != field:
            raise ModulusMismatch("coefficient from a different field")
        return v.value
    return v % field.p


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Iterable = ()):
        c = [_as_int(field, v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    # --- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, field: PrimeField) -> "Polynomial":
        return cls(field, ())

    @classmethod
    def constant(cls, field: PrimeField, v) -> "Polynomial":
        return cls(field, (v,))

    @classmethod
    def x(cls, field: PrimeField) -> "Polynomial":
        return cls(field, (0, 1))

    # --- structure --------------------------------------------------------

    @property
    def degree(self):
        """Degree of the polynomial; NEG_INFINITY for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> FieldElement:
        v = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElement(self.field, v)

    def _check(self, other: "Polynomial"):
        if self.field != other.field:
            raise ModulusMismatch("polynomials over different fields")

    # --- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.field.p
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = (out[i] + v) % p
        return Polynomial(self.field, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.field.p
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0] * n
        for i in range(n):
            x = self.coeffs[i] if i < len(self.coeffs) else 0
            y = other.coeffs[i] if i < len(other.coeffs) else 0
            out[i] = (x - y) % p
        return Polynomial(self.field, out)

    def __neg__(self) -> "Polynomial":
        p = self.field.p
        return Polynomial(self.field, [(-v) % p for v in self.coeffs])

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, FieldElement)):
            s = _as_int(self.field, other)
            p = self.field.p
            return Polynomial(self.field, [v * s % p for v in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(self.field)
        p = self.field.p
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % p
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, den: "Polynomial"):
        """Euclidean division: self = quot * den + rem, deg rem < deg den."""
        self._check(den)
        if den.is_zero():
            raise DivisionByZeroPolynomial("polynomial division by zero")
        p = self.field.p
        rem = list(self.coeffs)
        d = len(den.coeffs) - 1
        lead_inv = pow(den.coeffs[-1], -1, p)
        if len(rem) - 1 < d:
            return Polynomial.zero(self.field), Polynomial(self.field, rem)
        quot = [0] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c * lead_inv % p
            quot[i - d] = f
            for j, dv in enumerate(den.coeffs):
                rem[i - d + j] = (rem[i - d + j] - f * dv) % p
        return Polynomial(self.field, quot), Polynomial(self.field, rem)

    def __floordiv__(self, den: "Polynomial") -> "Polynomial":
        return divmod(self, den)[0]

    def __mod__(self, den: "Polynomial") -> "Polynomial":
        return divmod(self, den)[1]

    # --- evaluation ---------------------------------------------------------

    def __call__(self, x) -> FieldElement:
        """Horner evaluation at ``x`` (FieldElement or int)."""
        xv = _as_int(self.field, x)
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * xv + c) % p
        return FieldElement(self.field, acc)

    # --- comparison / display ------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "Poly(" + " + ".join(terms) + f" mod {self.field.p})"


def interpolate(field: PrimeField, points: Sequence[tuple]) -> Polynomial:
    """Lagrange interpolation through ``points`` [(x, y), ...].

    Returns the unique polynomial of degree < len(points) passing through
    every point; all abscissas must be distinct.
    """
    if not points:
        raise ValueError("interpolation needs at least one point")
    p = field.p
    xs = [_as_int(field, x) for x, _ in points]
    ys = [_as_int(field, y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("interpolation points share an x-coordinate")
    result = Polynomial.zero(field)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = Polynomial.constant(field, 1)
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = basis * Polynomial(field, (-xj, 1))
            denom = denom * (xi - xj) % p
        result = result + basis * (yi * pow(denom, -1, p) % p)
    return result


def vanishing_poly(field: PrimeField, m: int) -> Polynomial:
    """Monic degree-m polynomial with roots exactly {1, ..., m}."""
    if m < 1:
        raise ValueError("need at least one root")
    if 2 * m >= field.p:
        raise FieldTooSmall(f"need 2*{m} < {field.p}")
    t = Polynomial.constant(field, 1)
    for q in range(1, m + 1):
        t = t * Polynomial(field, (-q, 1))
    return t
