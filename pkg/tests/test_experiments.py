import cmath
import math

import numpy as np
import pytest

from ncst import experiments as ex
from ncst import reps, specfun


# ---------------------------------------------------------------------------
# oscillator

def test_levels_approach_flat_limit():
    p = ex.OscillatorParams(mass=1.0, omega=1.0, ell=2 ** -5, levels=4)
    energies = ex.oscillator_spectrum(p)
    flat = np.arange(4) + 0.5
    assert np.all(np.abs(energies - flat) < 0.01)
    assert np.all(np.diff(energies) > 0)


def test_ground_level_leading_correction():
    m, w = 1.0, 1.0
    ell = 2 ** -5
    p = ex.OscillatorParams(mass=m, omega=w, ell=ell, levels=1)
    e0 = ex.oscillator_spectrum(p)[0]
    correction = e0 - 0.5 * w
    # leading shift -m w^2 ell^2 / 8; the quartic term enters at relative ell^2/4
    assert correction == pytest.approx(-m * w ** 2 * ell ** 2 / 8.0, rel=1e-3)


def test_series_coefficients():
    # the closed form is base + c2 ell^2 + c4 ell^4; extract c2 and c4 exactly
    m, w = 1.3, 0.7
    for n in (0, 2, 5):
        s = 2 * n + 1
        base = ex.oscillator_asymptotic(n, m, w, 0.0)
        assert base == pytest.approx((n + 0.5) * w, abs=1e-15)
        d1 = ex.oscillator_asymptotic(n, m, w, 1.0) - base
        d2 = ex.oscillator_asymptotic(n, m, w, 2.0) - base
        c2 = (16.0 * d1 - d2) / 12.0
        c4 = (d2 - 4.0 * d1) / 12.0
        assert c2 == pytest.approx(-(s * s + 1) / 16.0 * m * w ** 2, rel=1e-12)
        assert c4 == pytest.approx(-(s ** 3 + 3 * s) / 128.0 * m ** 2 * w ** 3,
                                   rel=1e-12)


def test_residual_sixth_order_scaling():
    p1 = ex.OscillatorParams(mass=1.0, omega=1.0, ell=2 ** -5, levels=6)
    p2 = ex.OscillatorParams(mass=1.0, omega=1.0, ell=2 ** -6, levels=6)
    r1 = np.abs(ex.oscillator_residuals(p1))
    r2 = np.abs(ex.oscillator_residuals(p2))
    ratios = r1 / r2
    assert np.all(ratios > 64 * 0.8)
    assert np.all(ratios < 64 * 1.2)


# ---------------------------------------------------------------------------
# barrier

def test_barrier_recurrence_residual():
    sol = ex.barrier_solve(0.01, 0.5)
    worst = max(abs(sol.recurrence_residual(n))
                for n in range(-25, 26) if abs(n) >= 3)
    assert worst < 1e-12
    assert all(sol.coefficient(n) == 0 for n in range(-6, 7, 2))


def test_barrier_amplitude_balance():
    for lam, v in ((0.01, 0.5), (0.11, 0.3), (0.24, 0.9)):
        sol = ex.barrier_solve(lam, v)
        assert abs(sol.amp_left) == pytest.approx(abs(sol.amp_right), abs=1e-13)
        # outgoing amplitude is the conjugate of the incoming one
        assert sol.amp_left == pytest.approx(sol.amp_right.conjugate(), abs=1e-13)


def test_barrier_phase_is_inverse_sine():
    for lam in (0.003, 0.02, 0.3):
        sol = ex.barrier_solve(lam, 0.95)
        assert sol.delta == pytest.approx(math.asin(math.sqrt(lam)), abs=1e-14)
        assert sol.gamma > 0


def test_barrier_branch_guards():
    with pytest.raises(ValueError):
        ex.barrier_solve(0.5, 0.4)       # energy above the step
    with pytest.raises(ValueError):
        ex.barrier_solve(1.2, 2.0)       # outside the oscillatory window
    with pytest.raises(ValueError):
        ex.barrier_solve(-0.1, 0.5)


def test_barrier_wavelength_fit_matches_series():
    fitted = ex.barrier_wavelength_fit(0.5)
    # independent oracle: cubic coefficient of the inverse-sine series
    h = 1e-3
    series_c = (math.asin(h) / h - 1.0) / h ** 2
    assert fitted == pytest.approx(series_c, rel=1e-3)
    assert fitted == pytest.approx(1.0 / 6.0, rel=1e-3)


# ---------------------------------------------------------------------------
# diffraction

def test_slit_projection_dual_forms():
    ks = np.linspace(-0.95, 0.95, 39)
    worst = max(abs(ex.slit_projection_dirichlet(50, float(k))
                    - ex.slit_projection_chebyshev(50, float(k))) for k in ks)
    assert worst < 1e-12


def test_profile_even_and_peak():
    ks = np.linspace(-0.8, 0.8, 33)
    prof = ex.diffraction_profile(40, ks)
    assert np.max(np.abs(prof[:, 1] - prof[::-1, 1])) < 1e-13
    center = ex.slit_projection_dirichlet(40, 0.0)
    assert center == pytest.approx((2 * 40 + 1) / (2 * 40), abs=1e-14)


def test_ring_compression_fit():
    fitted = ex.diffraction_zero_fit(300)
    assert abs(fitted - 1.0 / 6.0) <= 0.02 * (1.0 / 6.0)


def test_char_function_vs_matrix_oracle():
    n_half = 10
    rep = reps.iso2_circle(80)
    psi = np.zeros(2 * 80 + 1, dtype=complex)
    for n in range(-n_half, n_half + 1):
        psi[n + 80] = 1.0 / math.sqrt(2 * n_half)
    p = rep.matrices["P"]
    evals, evecs = np.linalg.eigh(p)
    coeff = evecs.conj().T @ psi
    for s in np.linspace(0.0, 4.0, 9):
        direct = ex.slit_char_function(n_half, float(s))
        rotated = evecs @ (np.exp(1j * float(s) * evals) * coeff)
        oracle = float(np.real(np.vdot(psi, rotated)))
        assert direct == pytest.approx(oracle, abs=1e-8)


def test_char_function_normalization_and_moment():
    n_half = 10
    c0 = ex.slit_char_function(n_half, 0.0)
    # only the k = 0 cylinder value survives at the origin, leaving the
    # squared norm of the slit state under its square-root normalization
    assert c0 == pytest.approx((2 * n_half + 1) / (2 * n_half), abs=1e-12)
    # curvature at the origin equals minus the second moment of the momentum
    h = 1e-3
    second = (ex.slit_char_function(n_half, h) - 2 * c0
              + ex.slit_char_function(n_half, -h)) / h ** 2
    rep = reps.iso2_circle(80)
    psi = np.zeros(161, dtype=complex)
    for n in range(-n_half, n_half + 1):
        psi[n + 80] = 1.0 / math.sqrt(2 * n_half)
    p = rep.matrices["P"]
    moment = float(np.real(np.vdot(psi, p @ (p @ psi))))
    assert -second == pytest.approx(moment, abs=1e-5)


# ---------------------------------------------------------------------------
# walk

def test_walk_initial_condition():
    st = ex.time_process(0.0, n_max=40)
    assert st.coefficients[0] == pytest.approx(1.0, abs=1e-15)
    assert np.max(np.abs(st.coefficients[1:])) < 1e-15
    assert st.norm_partial() == pytest.approx(1.0, abs=1e-15)


def test_walk_origin_amplitude_decay():
    st = ex.time_process(1.0, n_max=10)
    assert st.coefficients[0].real == pytest.approx(math.exp(-math.pi / 2), abs=1e-15)
    st2 = ex.time_process(2.0, n_max=10)
    assert st2.coefficients[0].real == pytest.approx(math.exp(-math.pi), abs=1e-15)


def test_walk_recurrence():
    for t in (0.5, 1.0, 2.0):
        st = ex.time_process(t, n_max=120)
        assert ex.walk_recurrence_residual(st) < 1e-10


def test_walk_site_symmetry_and_probabilities():
    st = ex.time_process(1.0, n_max=30)
    for n in range(5):
        assert st.probability(n) == st.probability(-n)
        assert st.probability(n) >= 0.0
    # quarter-turn phase per site
    for n in range(1, 5):
        expected = 0.5 * (1j ** n) * math.exp(-math.pi / 2) \
            * specfun.pollaczek_meixner(n, 1.0)[n]
        assert st.coefficients[n] == pytest.approx(expected, abs=1e-14)


def test_walk_quadrature_oracle_structure():
    """The projection integral is one-sided: the positive sites carry twice
    the symmetric-split amplitude and the negative sites none."""
    t = 1.0
    st = ex.time_process(t, n_max=10)
    q0 = ex.walk_amplitude_quadrature(0, t)
    assert q0.real == pytest.approx(math.exp(-math.pi / 2), abs=1e-10)
    assert abs(q0.imag) < 1e-10
    for n in (1, 2, 3):
        q = ex.walk_amplitude_quadrature(n, t)
        assert abs(q) == pytest.approx(2.0 * abs(st.coefficients[n]), abs=1e-9)
        assert abs(ex.walk_amplitude_quadrature(-n, t)) < 1e-9


def test_walk_norm_value():
    """Two-sided splitting of a one-sided walk leaves the amplitude set
    sub-normalized; the partial sums approach the closed-form value."""
    for t in (0.5, 1.0):
        st = ex.time_process(t, n_max=500)
        closed = 0.25 * (1.0 + math.exp(-math.pi * t)) ** 2
        assert st.norm_partial() == pytest.approx(closed, abs=0.01)
        assert st.norm_partial() < 0.999
