from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import pascal
from stirpoly import Polynomial, binomial, interpolate
from stirpoly.arith import falling_basis, poly_eval


def test_binomial_matches_pascal_triangle():
    for n in range(0, 25):
        for r in range(-2, n + 3):
            assert binomial(n, r) == pascal(n, r)


def test_binomial_negative_upper_index():
    # C(-n, r) = (-1)^r C(n+r-1, r)
    for n in range(1, 8):
        for r in range(0, 8):
            assert binomial(-n, r) == (-1) ** r * pascal(n + r - 1, r)
    assert binomial(-1, 3) == -1
    assert binomial(5, -1) == 0


def test_pascal_identity_all_integers():
    for n in range(-10, 15):
        for r in range(1, 12):
            assert binomial(n, r) == binomial(n - 1, r) + binomial(n - 1, r - 1)


def test_polynomial_basics():
    x = Polynomial.x()
    p = (x + 1) ** 3
    assert p.coeffs == (1, 3, 3, 1)
    assert p.degree == 3 and p.leading == 1
    assert Polynomial().degree == -1 and Polynomial().is_zero()
    assert Polynomial([0, 0]) == Polynomial() == 0
    assert Polynomial([5]) == 5
    assert p(Fraction(1, 2)) == Fraction(27, 8)
    assert p.reflect() == (1 - x) ** 3
    assert (p - p).is_zero()
    assert p.scale(2) == 2 * p
    assert hash(Polynomial([1, 2])) == hash(Polynomial([Fraction(1), 2, 0]))
    with pytest.raises(AttributeError):
        p.coeffs = ()


def test_interpolate_recovers_polynomial():
    p = Polynomial([Fraction(1, 3), -2, 0, Fraction(5, 7)])
    pts = [(i, p(i)) for i in range(-2, 2)]
    assert interpolate(pts) == p


def test_interpolate_rejects_degenerate_nodes():
    with pytest.raises(ValueError, match="degenerate"):
        interpolate([(1, 2), (1, 3)])
    with pytest.raises(ValueError):
        interpolate([])


def test_falling_basis():
    x = Polynomial.x()
    assert falling_basis([0, 1, 2]) == x * (x - 1) * (x - 2)
    assert falling_basis([]) == 1


ints = st.integers(min_value=-50, max_value=50)
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@settings(max_examples=200, deadline=None)
@given(st.lists(fracs, max_size=6), st.lists(fracs, max_size=6), fracs)
def test_multiplication_is_exact(a, b, x):
    p, q = Polynomial(a), Polynomial(b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert poly_eval(p, x) == sum(c * x**i for i, c in enumerate(a))


@settings(max_examples=100, deadline=None)
@given(st.lists(ints, min_size=1, max_size=7))
def test_interpolation_round_trip(values):
    pts = list(enumerate(values))
    p = interpolate(pts)
    assert p.degree < len(values)
    assert all(p(i) == v for i, v in pts)
