from fractions import Fraction

import pytest

from ncst.scalars import CoeffPoly, GaussianRational


def test_gaussian_rational_ops():
    a = GaussianRational(1, 2)
    b = GaussianRational(Fraction(1, 3), -1)
    assert a + b == GaussianRational(Fraction(4, 3), 1)
    assert a * b == GaussianRational(Fraction(1, 3) + 2, Fraction(2, 3) - 1)
    assert (a / a) == GaussianRational(1, 0)
    assert (-a).re == -1
    assert a.conjugate().im == -2


def test_coeffpoly_ring_ops():
    two_ell = CoeffPoly.ell(1, 2)
    invr = CoeffPoly.inv_radius(2)
    prod = two_ell * invr
    assert prod.terms == {(1, 2): GaussianRational(2)}
    assert (two_ell + two_ell.scale(-1)).is_zero()
    assert (CoeffPoly.i_unit() * CoeffPoly.i_unit()) == CoeffPoly.scalar(-1)


def test_contraction_and_order():
    c = CoeffPoly.scalar(3) + CoeffPoly.ell(2, 5) + CoeffPoly.inv_radius(1, 7)
    assert c.contract() == CoeffPoly.scalar(3)
    assert c.min_ell_power() == 0
    assert CoeffPoly.ell(2, 5).min_ell_power() == 2
    laurent = CoeffPoly.ell(-1)
    with pytest.raises(ZeroDivisionError):
        laurent.contract()


def test_evaluate_and_str_deterministic():
    c = CoeffPoly.ell(2, GaussianRational(0, 1)) + CoeffPoly.scalar(Fraction(1, 2))
    val = c.evaluate(ell=2.0)
    assert abs(val - (0.5 + 4j)) < 1e-15
    assert str(c) == "1/2 + 1*i*ell^2"


def test_inv_radius_nonnegative():
    with pytest.raises(ValueError):
        CoeffPoly({(0, -1): GaussianRational(1)})
