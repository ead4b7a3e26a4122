"""Stirling polynomials B_k(m) and b_k(m).

Four independent routes compute the values:

* ``series``: coefficients of sum_i A_{k,i} x^i / (1-x)^(K+1) and of its
  reversed counterpart, from the Eulerian table;
* ``rec``: B_k(m) = B_k(m-1) + B_k'(m) (k_n > 1) or m B_k'(m) (k_n = 1),
  where k' lowers the last multiplicity by one;
* ``conv``: a convolution against B_{k \\ k_n}, stripping the last component;
* ``closed``: nested sums over weakly/strictly increasing index tuples built
  from the weight decomposition.

Routes share nothing beyond :mod:`stirpoly.arith`, so agreement between them
is a meaningful check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import factorial, prod

from .arith import Polynomial, binomial, interpolate
from .errors import ConsistencyError
from .permutations import eulerian_rec
from .shapes import Shape, sp_count

ROUTES = ("series", "rec", "conv", "closed")


def _check_m(m: int) -> None:
    if m < 0:
        raise ValueError(f"m must be nonnegative for the counting routes, got {m}")


# series route


def B_series(shape: Shape, m: int) -> int:
    _check_m(m)
    if shape.n == 0:
        return 1
    K = shape.K
    table = eulerian_rec(shape)
    return sum(a * binomial(K + m - i, K) for i, a in enumerate(table.counts, start=1))


def b_series(shape: Shape, m: int) -> int:
    _check_m(m)
    if shape.n == 0:
        return 1
    K, n = shape.K, shape.n
    table = eulerian_rec(shape)
    return sum(table[K + 1 - i] * binomial(K + m - i, K) for i in range(K - n + 1, K + 1))


# recurrence route


@lru_cache(maxsize=None)
def _B_rec_row(ks: tuple[int, ...], top: int) -> tuple[int, ...]:
    if not ks:
        return (1,) * (top + 1)
    prev = _B_rec_row(Shape(ks).decrement_last().ks, top)
    if ks[-1] == 1:
        return tuple(m * prev[m] for m in range(top + 1))
    row = [0]
    for m in range(1, top + 1):
        row.append(row[-1] + prev[m])
    return tuple(row)


@lru_cache(maxsize=None)
def _b_rec_row(ks: tuple[int, ...], top: int) -> tuple[int, ...]:
    if not ks:
        return (1,) * (top + 1)
    prev = _b_rec_row(Shape(ks).decrement_last().ks, top)
    if ks[-1] == 1:
        return tuple(m * prev[m] for m in range(top + 1))
    row = [0]
    for m in range(1, top + 1):
        row.append(row[-1] + prev[m - 1])
    return tuple(row)


def B_rec(shape: Shape, m: int) -> int:
    _check_m(m)
    return _B_rec_row(shape.ks, m)[m]


def b_rec(shape: Shape, m: int) -> int:
    _check_m(m)
    return _b_rec_row(shape.ks, m)[m]


# convolution route


@lru_cache(maxsize=None)
def _B_conv_row(ks: tuple[int, ...], top: int) -> tuple[int, ...]:
    if not ks:
        return (1,) * (top + 1)
    prev = _B_conv_row(ks[:-1], top)
    kn = ks[-1]
    if kn == 1:
        return tuple(m * prev[m] for m in range(top + 1))
    return tuple(
        sum(i * prev[i] * binomial(kn + m - i - 2, kn - 2) for i in range(m + 1))
        for m in range(top + 1)
    )


@lru_cache(maxsize=None)
def _b_conv_row(ks: tuple[int, ...], top: int) -> tuple[int, ...]:
    if not ks:
        return (1,) * (top + 1)
    prev = _b_conv_row(ks[:-1], top)
    kn = ks[-1]
    if kn == 1:
        return tuple(m * prev[m] for m in range(top + 1))
    return tuple(
        sum(i * prev[i] * binomial(m - i - 1, kn - 2) for i in range(m))
        for m in range(top + 1)
    )


def _check_conv(shape: Shape) -> None:
    if shape.n == 0 or shape.last < 2:
        raise ValueError("convolution requires k_n > 1")


def B_conv(shape: Shape, m: int) -> int:
    _check_conv(shape)
    _check_m(m)
    return _B_conv_row(shape.ks, m)[m]


def b_conv(shape: Shape, m: int) -> int:
    _check_conv(shape)
    _check_m(m)
    return _b_conv_row(shape.ks, m)[m]


# closed-form route


def _weak_sum(a: tuple[int, ...], t: tuple[int, ...], m: int) -> int:
    total = 0
    for idx in combinations_with_replacement(range(1, m + 1), len(a)):
        ends = idx[1:] + (m,)
        term = prod(i**e for i, e in zip(idx, a))
        for i, j, tj in zip(idx, ends, t):
            term *= binomial(tj + j - i - 2, j - i)
        total += term
    return total


def _strict_sum(a: tuple[int, ...], t: tuple[int, ...], m: int) -> int:
    total = 0
    for idx in combinations(range(1, m), len(a)):
        ends = idx[1:] + (m,)
        term = prod(i**e for i, e in zip(idx, a))
        for i, j, tj in zip(idx, ends, t):
            term *= binomial(j - i - 1, tj - 2)
        total += term
    return total


def closed_form_S(shape: Shape, m: int) -> int:
    """Nested weak sum; a trailing run of a ones contributes a factor m^a."""
    _check_m(m)
    w = shape.weight
    return m**w.trailing * _weak_sum(w.a, w.t, m)


def closed_form_s(shape: Shape, m: int) -> int:
    """Nested strict sum; a trailing run of a ones contributes a factor m^a."""
    _check_m(m)
    w = shape.weight
    return m**w.trailing * _strict_sum(w.a, w.t, m)


_B_ROUTES = {"series": B_series, "rec": B_rec, "conv": B_conv, "closed": closed_form_S}
_b_ROUTES = {"series": b_series, "rec": b_rec, "conv": b_conv, "closed": closed_form_s}


def B_value(shape: Shape, m: int, route: str = "rec") -> int:
    """B_k(m) by the chosen route; negative m goes through the polynomial."""
    if m < 0:
        return _as_int(stirling_polys(shape).B(m))
    return _B_ROUTES[route](shape, m)


def b_value(shape: Shape, m: int, route: str = "rec") -> int:
    if m < 0:
        return _as_int(stirling_polys(shape).b(m))
    return _b_ROUTES[route](shape, m)


def _as_int(q: Fraction) -> int:
    if q.denominator != 1:
        raise ConsistencyError(f"polynomial value {q} at an integer is not an integer")
    return q.numerator


# polynomial recovery


@dataclass(frozen=True)
class StirlingPolyPair:
    shape: Shape
    B: Polynomial
    b: Polynomial


def check_pair(pair: StirlingPolyPair) -> None:
    """Raise ConsistencyError naming the first structural claim that fails."""
    shape, B, b = pair.shape, pair.B, pair.b
    K, n = shape.K, shape.n
    if B.degree != K or b.degree != K:
        raise ConsistencyError(f"degree: deg B = {B.degree}, deg b = {b.degree}, expected {K} for {shape}")
    lead = Fraction(sp_count(shape), factorial(K))
    if B.leading != lead or b.leading != lead:
        raise ConsistencyError(f"leading coefficient: expected {lead} for {shape}")
    if n:
        for j in range(0, K - n + 1):
            if B(-j) != 0:
                raise ConsistencyError(f"zero pattern: B({-j}) != 0 for {shape}")
            if b(j) != 0:
                raise ConsistencyError(f"zero pattern: b({j}) != 0 for {shape}")
    reflected = b.reflect().scale(-1 if K % 2 else 1)
    if B != reflected:
        raise ConsistencyError(f"reciprocity: B(x) != (-1)^K b(-x) for {shape}")


@lru_cache(maxsize=None)
def stirling_polys(shape: Shape, route: str = "rec") -> StirlingPolyPair:
    """Interpolate B and b at m = 0..K and check the structural claims."""
    K = shape.K
    B = interpolate([(m, _B_ROUTES[route](shape, m)) for m in range(K + 1)])
    b = interpolate([(m, _b_ROUTES[route](shape, m)) for m in range(K + 1)])
    pair = StirlingPolyPair(shape, B, b)
    check_pair(pair)
    return pair


def to_polynomial(shape: Shape) -> StirlingPolyPair:
    return stirling_polys(shape)
