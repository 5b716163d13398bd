import math
import random

import numpy as np
import pytest

from ncst import specfun as sf


def test_cylinder_basic_values():
    assert sf.bessel_j(0, 0.0) == 1.0
    assert sf.bessel_j(3, 0.0) == 0.0
    for n in (1, 2, 5):
        for x in (0.7, 2.5, 9.0):
            assert sf.bessel_j(-n, x) == pytest.approx(
                (-1) ** n * sf.bessel_j(n, x), abs=1e-15)


def test_macdonald_normalization_value():
    assert 2.0 * sf.bessel_k0(2.0) == pytest.approx(0.2277877, abs=5e-8)


def test_modified_series_oracle():
    # power series of the order-zero modified function at argument two
    total = sum(1.0 / (math.factorial(k) ** 2) for k in range(40))
    assert sf.bessel_i(0, 2.0) == pytest.approx(total, rel=1e-14)
    assert sf.bessel_i(0, 2.0) == pytest.approx(2.2795853, abs=5e-8)


def test_sum_rule():
    for x in (0.5, 3.7, 11.0):
        total = sf.bessel_j(0, x) ** 2 + 2.0 * sum(
            sf.bessel_j(k, x) ** 2 for k in range(1, 80))
        assert total == pytest.approx(1.0, abs=1e-10)


def test_macdonald_i_product_vs_quadrature():
    # independent integral representations at sample points
    for x in (0.8, 2.0, 5.0, 12.0):
        t = np.linspace(0.0, math.acosh(745.0 / x + 1.0), 200001)
        ref = float(np.trapezoid(np.exp(x - x * np.cosh(t)), t) * math.exp(-x))
        assert sf.bessel_k0(x) == pytest.approx(ref, rel=1e-12)
    for x in (1.0, 2.0):
        th = np.linspace(0.0, math.pi, 200001)
        ref = float(np.trapezoid(np.exp(x * np.cos(th)), th) / math.pi)
        assert sf.bessel_i(0, x) == pytest.approx(ref, rel=1e-12)


def test_chebyshev_values_and_dual_definition():
    assert sf.chebyshev_t(7, 1.0) == pytest.approx(1.0, abs=1e-14)
    assert sf.chebyshev_t(2, 0.5) == pytest.approx(-0.5, abs=1e-15)
    rng = random.Random(7)
    for _ in range(50):
        x = rng.uniform(-1.0, 1.0)
        n = rng.randint(0, 100)
        assert sf.chebyshev_t(n, x) == pytest.approx(
            math.cos(n * math.acos(x)), abs=1e-13)


def test_characteristic_values_free_limit():
    spec = sf.mathieu_char(0.0, 8)
    for r in range(9):
        assert float(spec.even(r)) == pytest.approx(r * r, abs=1e-10)
    for r in range(1, 9):
        assert float(spec.odd(r)) == pytest.approx(r * r, abs=1e-10)


def test_characteristic_values_interlace_positive_strength():
    spec = sf.mathieu_char(5.0, 6)
    for r in range(5):
        assert spec.even(r) < spec.odd(r + 1) < spec.even(r + 1)
    # strictly increasing within each parity family
    evens = [spec.even(r) for r in range(7)]
    odds = [spec.odd(r) for r in range(1, 7)]
    assert all(a < b for a, b in zip(evens, evens[1:]))
    assert all(a < b for a, b in zip(odds, odds[1:]))


def test_strong_coupling_asymptotics_scaling():
    errs = []
    for q in (100.0, 400.0, 1600.0):
        spec = sf.mathieu_char(q, 2)
        errs.append(abs(float(spec.even(0)) - sf.mathieu_asymptotic(0, q)))
    # the next omitted term scales as 1/q, so quadrupling q divides the error by ~4
    assert errs[0] > errs[1] > errs[2]
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.25)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.25)


def test_ground_value_against_shooting():
    a0 = float(sf.mathieu_char(-10.0, 2).even(0))
    a0_shoot = sf.mathieu_ground_shooting(-10.0)
    assert a0 == pytest.approx(a0_shoot, abs=1e-8)


def test_negative_strength_parity_exchange():
    # within machine accuracy the merged spectrum is even under sign flip
    m_plus = sf.mathieu_char(7.0, 5).merged()
    m_minus = sf.mathieu_char(-7.0, 5).merged()
    assert np.max(np.abs(np.asarray(m_plus, float) - np.asarray(m_minus, float))) < 1e-9


def test_lattice_polynomials():
    p = sf.pollaczek_meixner(5, 1.25)
    assert p[0] == 1.0
    assert p[1] == 2.5
    # dual construction through the contour integral
    for x in (0.5, 1.0, 2.0):
        rec = sf.pollaczek_meixner(50, x)
        cau = sf.pollaczek_meixner_cauchy(50, x)
        assert np.max(np.abs(rec - cau)) < 1e-10
    # three-term relation residual
    for x in (0.5, 2.0):
        p = sf.pollaczek_meixner(100, x)
        for n in range(1, 99):
            res = (n + 1) * p[n + 1] - 2 * x * p[n] + (n - 1) * p[n - 1]
            assert abs(res) < 1e-10


def test_guards():
    with pytest.raises(ValueError):
        sf.bessel_k0(0.0)
    with pytest.raises(ValueError):
        sf.mathieu_char(0.0, 99)
    with pytest.raises(ValueError):
        sf.pollaczek_meixner(1000, 1.0)
