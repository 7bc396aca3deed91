from fractions import Fraction

import pytest

from filiform import QuadPoly


x = QuadPoly.var((1, 1))
y = QuadPoly.var((2, 1))


def test_arithmetic_and_evaluation():
    p = x * y * 3 - y * y + Fraction(1, 2) * x
    assert p.degree() == 2
    assert p.evaluate({(1, 1): 2, (2, 1): 5}) == 30 - 25 + 1
    assert p - p == QuadPoly()
    assert not (p - p)


def test_degree_cap():
    with pytest.raises(ValueError):
        x * x * y


def test_monic_and_zero_substitution():
    p = 4 * x * y - 2 * y * y
    assert p.monic() == x * y - Fraction(1, 2) * y * y
    assert p.substitute_zero(lambda v: v[0] > 1) == QuadPoly()


def test_str():
    assert str(x * y - 2 * x * x) == "- 2*x1_1*x1_1 + x1_1*x2_1"
