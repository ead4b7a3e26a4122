"""Exact integer/rational helpers and a small dense polynomial type.

Python ints are already arbitrary precision and ``fractions.Fraction`` keeps
rationals reduced with a positive denominator, so those serve directly as the
big-integer and big-rational types.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def binomial(n: int, r: int) -> int:
    """Binomial coefficient C(n, r) for any integers.

    Zero when ``r < 0`` or ``0 <= n < r``.  A negative upper index uses
    C(n, r) = (-1)^r C(r - n - 1, r), which keeps series identities such as
    1/(1-x)^s = sum C(s + i - 1, i) x^i valid verbatim.
    """
    if r < 0:
        return 0
    if n >= 0:
        return comb(n, r) if r <= n else 0
    value = comb(r - n - 1, r)
    return -value if r % 2 else value


class Polynomial:
    """Dense univariate polynomial with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of x^i.  Trailing zeros are stripped, so
    the zero polynomial has an empty coefficient tuple.  Instances are
    immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Number) -> Fraction:
        return poly_eval(self, x)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"({c})*{mono}")
        return " + ".join(terms)

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def reflect(self) -> "Polynomial":
        """p(-x)."""
        return Polynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def scale(self, c: Number) -> "Polynomial":
        return Polynomial(c * a for a in self.coeffs)


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, (int, Fraction)):
        return Polynomial([p])
    raise TypeError(f"cannot treat {type(p).__name__} as a polynomial")


def poly_eval(p: Polynomial, x: Number) -> Fraction:
    """Horner evaluation; exact for any rational (including negative) x."""
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def interpolate(points: Sequence[tuple[int, Number]]) -> Polynomial:
    """Lagrange interpolation through ``points`` over the rationals.

    Returns the unique polynomial of degree < len(points) through all nodes.
    """
    if not points:
        raise ValueError("interpolation needs at least one point")
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("degenerate interpolation nodes")
    result = Polynomial()
    for j, (xj, (_, yj)) in enumerate(zip(xs, points)):
        if yj == 0:
            continue
        basis = Polynomial([1])
        denom = Fraction(1)
        for i, xi in enumerate(xs):
            if i != j:
                basis = basis * Polynomial([-xi, 1])
                denom *= xj - xi
        result = result + basis.scale(Fraction(yj) / denom)
    return result


def falling_basis(nodes: Sequence[Number]) -> Polynomial:
    """prod (x - c) over ``nodes``."""
    p = Polynomial([1])
    for c in nodes:
        p = p * Polynomial([-c, 1])
    return p
