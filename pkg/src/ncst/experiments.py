"""Physics computations on the circle representation.

Four desk-scale experiments: harmonic-oscillator level corrections from the
cosine-potential spectrum, reflection off a step barrier on the momentum
lattice, single-slit diffraction with the bounded momentum, and the
time-operator lattice walk.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import specfun


# ---------------------------------------------------------------------------
# oscillator

@dataclass(frozen=True)
class OscillatorParams:
    mass: float
    omega: float
    ell: float
    levels: int

    def __post_init__(self):
        if min(self.mass, self.omega, self.ell) <= 0 or self.levels < 1:
            raise ValueError("parameters must be positive and levels >= 1")


def oscillator_spectrum(p: OscillatorParams) -> np.ndarray:
    """Low-lying energies from the exact periodic spectrum.

    In circle variables the eigenvalue problem is the cosine-potential
    equation with strength q = -1/(4 m^2 w^2 ell^4) and energy
    E = (m w^2 ell^2 / 2)(a - 2q).  Characteristic values of even and odd
    periodic solutions interleave; for strong coupling they form
    exponentially split doublets, and the doublet floor is reported as the
    level energy.
    """
    m, w, ell, n_levels = p.mass, p.omega, p.ell, p.levels
    q = -1.0 / (4.0 * m * m * w * w * ell ** 4)
    r_needed = 2 * n_levels + 2
    spec = specfun.mathieu_char(q, r_needed)
    merged = spec.merged()
    # the level data is the tiny remainder of a huge cancellation; subtract
    # in extended precision before narrowing
    scale = np.longdouble(0.5 * m * w * w) * np.longdouble(ell) ** 2
    shifted = merged[0:2 * n_levels:2] - 2 * np.longdouble(q)
    return (scale * shifted).astype(float)


def oscillator_asymptotic(n: int, mass: float, omega: float, ell: float) -> float:
    """Closed-form level energy through fourth order in the length."""
    s = 2 * n + 1
    return (n + 0.5) * omega \
        - (s * s + 1) / 16.0 * mass * omega ** 2 * ell ** 2 \
        - (s ** 3 + 3 * s) / 128.0 * mass ** 2 * omega ** 3 * ell ** 4


def oscillator_residuals(p: OscillatorParams) -> np.ndarray:
    exact = oscillator_spectrum(p)
    approx = np.array([oscillator_asymptotic(n, p.mass, p.omega, p.ell)
                       for n in range(p.levels)])
    return exact - approx


# ---------------------------------------------------------------------------
# barrier

@dataclass(frozen=True)
class BarrierSolution:
    lam: float
    barrier: float
    gamma: float
    delta: float
    amp_left: complex      # outgoing amplitude on the free side
    amp_right: complex     # incoming amplitude on the free side
    n_max: int

    def coefficient(self, n: int) -> complex:
        """Mode coefficient of the scattering eigenvector."""
        if n % 2 == 0:
            return 0.0 + 0.0j
        if n >= 1:
            return cmath.exp(-(n + 1) * self.gamma)
        return (self.amp_left * cmath.exp(-1j * n * self.delta)
                + self.amp_right * cmath.exp(1j * n * self.delta))

    def recurrence_residual(self, n: int) -> complex:
        """Defect of the three-term relation at site n (away from matching sites)."""
        z = 2.0 - 4.0 * self.lam
        zp = 2.0 + 4.0 * self.barrier - 4.0 * self.lam
        factor = zp if n > 0 else z
        return self.coefficient(n - 2) + self.coefficient(n + 2) \
            - factor * self.coefficient(n)


def barrier_solve(lam: float, barrier: float, n_max: int = 25) -> BarrierSolution:
    """Reflection solution for energy below the barrier top.

    Requires 0 < lam < min(barrier, 1) so the free side is oscillatory and
    the barrier side is evanescent on the principal branches.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError("energy must satisfy 0 < lam < 1 for an oscillatory free side")
    if lam >= barrier:
        raise ValueError("energy must lie below the barrier")
    z = 2.0 - 4.0 * lam
    zp = 2.0 + 4.0 * barrier - 4.0 * lam
    if not (abs(z) < 2.0 and zp > 2.0):
        raise ValueError("branch conditions violated")
    gamma = 0.5 * math.acosh(zp / 2.0)
    delta = 0.5 * math.acos(z / 2.0)
    e2g = math.exp(-2.0 * gamma)
    e4g = math.exp(-4.0 * gamma)
    beta1 = zp * e2g - e4g
    beta2 = z * zp * e2g - z * e4g - e2g
    denom = 2j * math.sin(2.0 * delta)
    a = -(beta1 * cmath.exp(-3j * delta) - beta2 * cmath.exp(-1j * delta)) / denom
    b = (beta1 * cmath.exp(3j * delta) - beta2 * cmath.exp(1j * delta)) / denom
    return BarrierSolution(lam=lam, barrier=barrier, gamma=gamma, delta=delta,
                           amp_left=a, amp_right=b, n_max=n_max)


def barrier_wavelength_fit(barrier: float = 0.5, ell: float = 1.0,
                           lam_values=None) -> float:
    """Quadratic coefficient of the phase-per-momentum expansion.

    Fits delta/(ell p) - 1 against (ell p)^2 and (ell p)^4 over a window of
    small energies, with p = sqrt(lam)/ell the incident momentum.
    """
    if lam_values is None:
        lam_values = np.linspace(1e-4, 0.04, 25)
    lam_values = np.asarray(lam_values, dtype=float)
    deltas = np.array([barrier_solve(l, barrier).delta for l in lam_values])
    lp = np.sqrt(lam_values)
    ratio = deltas / lp - 1.0
    basis = np.vstack([lp ** 2, lp ** 4]).T
    coeffs, *_ = np.linalg.lstsq(basis, ratio, rcond=None)
    return float(coeffs[0])


# ---------------------------------------------------------------------------
# diffraction

def slit_projection_dirichlet(n_half: int, k: float) -> float:
    """Momentum projection of the slit state as a finite phase sum."""
    if not -1.0 < k < 1.0:
        raise ValueError("momentum must lie inside the band")
    phi = math.asin(k)
    total = 1.0 + 2.0 * sum(math.cos(n * phi) for n in range(1, n_half + 1))
    return (1.0 - k * k) ** -0.25 * total / (2.0 * n_half)


def slit_projection_chebyshev(n_half: int, k: float) -> float:
    """Same projection through first-kind polynomials at sqrt(1 - k^2)."""
    if not -1.0 < k < 1.0:
        raise ValueError("momentum must lie inside the band")
    c = math.sqrt(1.0 - k * k)
    total = 1.0 + 2.0 * sum(specfun.chebyshev_t(n, c) for n in range(1, n_half + 1))
    return (1.0 - k * k) ** -0.25 * total / (2.0 * n_half)


def diffraction_profile(n_half: int, k_values) -> np.ndarray:
    """Columns (k, exact intensity, wide-slit approximation)."""
    rows = []
    for k in np.asarray(k_values, dtype=float):
        exact = slit_projection_dirichlet(n_half, k) ** 2
        phi = math.asin(k)
        if abs(phi) < 1e-12:
            sinc = 1.0
        else:
            sinc = math.sin(n_half * phi) / (n_half * phi)
        approx = (1.0 - k * k) ** -0.5 * sinc ** 2
        rows.append((k, exact, approx))
    return np.array(rows)


def diffraction_zero_fit(n_half: int = 300, m_max: int | None = None) -> float:
    """Ring-compression coefficient from the exact intensity zeros.

    The phase sum vanishes at phi = 2 m pi / (2 n_half + 1); expanding the
    inverse sine map of the zero positions k_m fits
    phi/k - 1 = C2 k^2 + C4 k^4 and returns C2.
    """
    if m_max is None:
        m_max = int(0.45 * (2 * n_half + 1) / (2 * math.pi))
    ms = np.arange(1, m_max + 1)
    phis = 2.0 * np.pi * ms / (2 * n_half + 1)
    ks = np.sin(phis)
    ratio = phis / ks - 1.0
    basis = np.vstack([ks ** 2, ks ** 4]).T
    coeffs, *_ = np.linalg.lstsq(basis, ratio, rcond=None)
    return float(coeffs[0])


def slit_char_function(n_half: int, s: float) -> float:
    """Momentum characteristic function of the slit state as a cylinder-function sum."""
    total = 0.0
    for k in range(-2 * n_half, 2 * n_half + 1):
        total += (2 * n_half - abs(k) + 1) * specfun.bessel_j(k, s)
    return total / (2.0 * n_half)


# ---------------------------------------------------------------------------
# time-operator walk

@dataclass(frozen=True)
class WalkState:
    t_over_ell: float
    coefficients: np.ndarray   # c_0 .. c_{n_max}; the walk is symmetric in n
    n_max: int

    def probability(self, n: int) -> float:
        """Probability of finding the walker at site +n (or -n) times ell."""
        c = self.coefficients[abs(n)]
        return float(abs(c) ** 2)

    def norm_partial(self) -> float:
        """Partial sum of |c_n|^2 over the stored two-sided range."""
        return float(abs(self.coefficients[0]) ** 2
                     + 2.0 * np.sum(np.abs(self.coefficients[1:]) ** 2))


def time_process(t_over_ell: float, n_max: int = 200) -> WalkState:
    """Site amplitudes of the process started at the origin.

    c_0 decays exponentially at rate pi/2; the other sites carry half the
    lattice polynomial amplitude with a quarter-turn phase per site.
    """
    if t_over_ell < 0:
        raise ValueError("the time parameter must be non-negative")
    x = t_over_ell
    decay = math.exp(-0.5 * math.pi * x)
    poly = specfun.pollaczek_meixner(n_max, x)
    coeffs = np.empty(n_max + 1, dtype=complex)
    coeffs[0] = decay
    phases = np.array([1j ** n for n in range(1, n_max + 1)])
    coeffs[1:] = 0.5 * phases * decay * poly[1:]
    return WalkState(t_over_ell=x, coefficients=coeffs, n_max=n_max)


def walk_recurrence_residual(state: WalkState) -> float:
    """Worst defect of the three-term relation among the stored amplitudes."""
    c = state.coefficients
    x = state.t_over_ell

    def coeff(n: int) -> complex:
        return c[abs(n)]

    worst = 0.0
    for n in range(-(state.n_max - 1), state.n_max - 1):
        res = (n - 1) * coeff(n - 1) - (n + 1) * coeff(n + 1) + 2j * x * coeff(n)
        worst = max(worst, abs(res))
    return worst


def walk_amplitude_quadrature(n: int, t_over_ell: float,
                              u_max: float = 45.0, n_nodes: int = 6001) -> complex:
    """Projection integral for the amplitude at site n, done directly.

    Written in the log-cotangent variable the integrand is a smooth
    exponentially decaying oscillation, so a plain trapezoid sum converges
    fast; a constant angular profile is only integrable thanks to this
    regularizing substitution, and an insufficient reach is reported
    rather than silently truncated.  The eigenfunction branch on the lower
    half circle is fixed by the decaying continuation, which makes the
    walk one-sided: positive sites receive twice the symmetric-split
    amplitude, negative sites none.
    """
    x = t_over_ell
    if 1.0 / math.cosh(u_max) > 1e-12:
        raise ValueError("quadrature reach too short for a converged projection")
    u = np.linspace(-u_max, u_max, n_nodes)
    theta = 2.0 * np.arctan(np.exp(-u))     # upper-half circle parameterization
    sech = 1.0 / np.cosh(u)
    base = np.exp(1j * x * u) * sech
    # site amplitude at +n picks e^{i n theta}; the reflected half carries
    # the decaying branch weight
    upper = np.trapezoid(base * np.exp(1j * n * theta), u)
    lower = np.trapezoid(base * np.exp(-1j * n * theta), u) * math.exp(-math.pi * x)
    return (upper + lower) / (2.0 * math.pi)
