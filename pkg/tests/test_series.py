from __future__ import annotations

from fractions import Fraction

import pytest

from colorednc.series import FormalSeries


def test_arithmetic_truncates():
    a = FormalSeries.of((1, 1), 3)
    b = a * a * a * a
    assert b.coefficients == (1, 4, 6, 4)
    assert (a + 1).coefficients == (2, 1, 0, 0)
    assert (a - a).coefficients == (0, 0, 0, 0)
    assert a.shift(2).coefficients == (0, 0, 1, 1)


def test_reciprocal_geometric():
    r = FormalSeries.of((1, -1), 5).reciprocal()
    assert r.coefficients == (1, 1, 1, 1, 1, 1)
    with pytest.raises(ZeroDivisionError):
        FormalSeries.of((0, 1), 3).reciprocal()


def test_compose():
    outer = FormalSeries.of((0, 1, 1), 4)
    inner = FormalSeries.of((0, 2), 4)
    assert outer.compose(inner).coefficients == (0, 2, 4, 0, 0)
    with pytest.raises(ValueError):
        outer.compose(FormalSeries.of((1, 1), 4))


def test_reverse_catalan():
    # y - y^2 inverts to the Catalan generating function y C(y)
    f = FormalSeries.of((0, 1, -1), 8)
    g = f.reverse()
    assert g.coefficients == (0, 1, 1, 2, 5, 14, 42, 132, 429)
    assert f.compose(g).coefficients == (0, 1) + (0,) * 7


def test_reverse_exact_rationals():
    f = FormalSeries.of((0, Fraction(2), Fraction(1, 3)), 5)
    g = f.reverse()
    assert f.compose(g).coefficients[1] == 1
    assert all(c == 0 for c in f.compose(g).coefficients[2:])
    assert g.exact


def test_reverse_rejects_bad_input():
    with pytest.raises(ValueError):
        FormalSeries.of((0, 0, 1), 3).reverse()
