"""Quantum stochastic calculus on the hyperbolic and circular channel algebras.

The hyperbolic side works in the rapidity representation where the three
channel operators act as a derivative and two exponential multipliers.
States of a process are discretized direct integrals: arrays over time
slots times the rapidity grid, with the scalar product additive over
slots.  Adapted step processes, their stochastic integrals, and the two
fundamental identities live here, together with the antisymmetric table of
increment products.

The circular analog carries the same structure with the angle grid and
unimodular exponential multipliers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# rapidity grid and vacuum

@dataclass(frozen=True)
class OmegaGrid:
    """Uniform symmetric grid; the default reach makes exp(-cosh) underflow."""

    omega_max: float = 7.5
    n_points: int = 512

    def __post_init__(self):
        if math.exp(-min(math.cosh(self.omega_max), 700.0)) >= 1e-300:
            raise ValueError("grid too small: the vacuum tail must underflow")

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(-self.omega_max, self.omega_max, self.n_points)

    @property
    def h(self) -> float:
        return 2.0 * self.omega_max / (self.n_points - 1)

    def inner(self, a: np.ndarray, b: np.ndarray) -> complex:
        return complex(np.sum(np.conj(a) * b) * self.h)

    def diff4(self) -> np.ndarray:
        """Fourth-order central differences; edge rows fall back to second order.

        Everything of interest decays double-exponentially, so the edge rows
        never see data.
        """
        n = self.n_points
        h = self.h
        d = np.zeros((n, n))
        for i in range(2, n - 2):
            d[i, i - 2] = 1.0 / (12 * h)
            d[i, i - 1] = -8.0 / (12 * h)
            d[i, i + 1] = 8.0 / (12 * h)
            d[i, i + 2] = -1.0 / (12 * h)
        d[0, 0:2] = np.array([-1.0, 1.0]) / h
        d[1, 0:3] = np.array([-0.5, 0.0, 0.5]) / h
        d[n - 2, n - 3:n] = np.array([-0.5, 0.0, 0.5]) / h
        d[n - 1, n - 2:n] = np.array([-1.0, 1.0]) / h
        return d


def vacuum_iso11(grid: OmegaGrid) -> np.ndarray:
    """Grid-normalized vacuum exp(-cosh), the state killed by the lowering operator."""
    phi = np.exp(-np.cosh(grid.nodes))
    norm = math.sqrt(float(np.sum(phi * phi)) * grid.h)
    return (phi / norm).astype(complex)


def vacuum_norm_constant(grid: OmegaGrid) -> float:
    """Quadrature of exp(-2 cosh); equals twice the Macdonald value at 2."""
    return float(np.sum(np.exp(-2.0 * np.cosh(grid.nodes))) * grid.h)


def lowering_apply(grid: OmegaGrid, psi: np.ndarray, d: np.ndarray | None = None) -> np.ndarray:
    d = d if d is not None else grid.diff4()
    return (-1j / SQRT2) * (d @ psi + np.sinh(grid.nodes) * psi)


def raising_apply(grid: OmegaGrid, psi: np.ndarray, d: np.ndarray | None = None) -> np.ndarray:
    d = d if d is not None else grid.diff4()
    return (-1j / SQRT2) * (d @ psi - np.sinh(grid.nodes) * psi)


def ladder_gram(grid: OmegaGrid, n_max: int) -> np.ndarray:
    """Gram matrix of repeated raisings of the vacuum."""
    if n_max > 8:
        raise ValueError("raising powers beyond eight grow too fast for the grid")
    d = grid.diff4()
    states = [vacuum_iso11(grid)]
    for _ in range(n_max):
        states.append(raising_apply(grid, states[-1], d))
    g = np.empty((n_max + 1, n_max + 1), dtype=complex)
    for i in range(n_max + 1):
        for j in range(n_max + 1):
            g[i, j] = grid.inner(states[i], states[j])
    return g


def gram_offdiag_ratio(g: np.ndarray) -> float:
    diag = np.abs(np.diag(g))
    off = np.abs(g - np.diag(np.diag(g)))
    scale = np.sqrt(np.outer(diag, diag))
    return float(np.max(off / scale))


def ladder_states_analytic(grid: OmegaGrid, n_max: int) -> list:
    """Closed-form raised vacua, free of differencing error.

    Each raised state is a polynomial in (sinh, cosh) times the vacuum; the
    recursion acts on the polynomial coefficients exactly, so the only
    numerical step is the final quadrature.  This is the oracle that shows
    which Gram entries vanish identically and which do not: entries of
    equal parity separation beyond two are genuinely nonzero, so repeated
    raisings do not produce an orthogonal set.
    """
    mu = grid.nodes
    s, c = np.sinh(mu), np.cosh(mu)
    phi = np.exp(-c)
    norm = math.sqrt(float(np.sum(phi * phi)) * grid.h)
    phi = phi / norm

    def d_poly(p: dict) -> dict:
        out: dict = {}
        for (i, j), v in p.items():
            if i:
                out[(i - 1, j + 1)] = out.get((i - 1, j + 1), 0.0) + i * v
            if j:
                out[(i + 1, j - 1)] = out.get((i + 1, j - 1), 0.0) + j * v
        return out

    def s_mul(p: dict, factor: float = 1.0) -> dict:
        return {(i + 1, j): factor * v for (i, j), v in p.items()}

    polys = [{(0, 0): 1.0}]
    for _ in range(n_max):
        p = polys[-1]
        nxt = d_poly(p)
        for key, v in s_mul(p, -2.0).items():
            nxt[key] = nxt.get(key, 0.0) + v
        polys.append(nxt)

    states = []
    for n, p in enumerate(polys):
        vals = np.zeros_like(mu)
        for (i, j), v in p.items():
            vals = vals + v * s ** i * c ** j
        states.append(((-1j / SQRT2) ** n) * vals * phi)
    return states


def ladder_gram_analytic(grid: OmegaGrid, n_max: int) -> np.ndarray:
    states = ladder_states_analytic(grid, n_max)
    g = np.empty((n_max + 1, n_max + 1), dtype=complex)
    for i in range(n_max + 1):
        for j in range(n_max + 1):
            g[i, j] = grid.inner(states[i], states[j])
    return g


def char_function_x0(y: float) -> float:
    """Characteristic function of the time operator in the vacuum state."""
    if abs(y) > 10.0:
        raise ValueError("argument out of the supported window")
    return specfun.bessel_k0(2.0 * math.cosh(0.5 * y)) / specfun.bessel_k0(2.0)


def char_function_x0_grid(grid: OmegaGrid, y: float) -> float:
    """Same overlap from the grid: the time operator generates rapidity shifts."""
    mu = grid.nodes
    phi = np.exp(-np.cosh(mu))
    shifted = np.exp(-np.cosh(mu + y))
    norm = float(np.sum(phi * phi)) * grid.h
    return float(np.sum(phi * shifted) * grid.h / norm)


def char_function_x0_expm(grid: OmegaGrid, y: float) -> float:
    """Overlap through the exponential of the discretized time operator."""
    d = grid.diff4()
    x0 = -1j * d
    x0 = 0.5 * (x0 + x0.conj().T)
    evals, evecs = np.linalg.eigh(x0)
    phi = vacuum_iso11(grid)
    coeff = evecs.conj().T @ phi
    rotated = evecs @ (np.exp(1j * y * evals) * coeff)
    return float(np.real(grid.inner(phi, rotated)))


def bochner_min_eigenvalue(kernel, points) -> float:
    """Smallest eigenvalue of the sampled positive-definiteness matrix."""
    pts = np.asarray(points, dtype=float)
    mat = np.array([[kernel(a - b) for b in pts] for a in pts])
    return float(np.min(np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))))


# ---------------------------------------------------------------------------
# adapted processes on a shared partition

@dataclass(frozen=True)
class StepProcess:
    """Per-interval constants on a fixed partition; values frozen at creation."""

    partition: tuple           # s_0 < s_1 < ... < s_M
    values: tuple              # length M, complex

    def __post_init__(self):
        if len(self.values) != len(self.partition) - 1:
            raise ValueError("need one value per partition interval")
        if any(b <= a for a, b in zip(self.partition, self.partition[1:])):
            raise ValueError("partition must be strictly increasing")

    @property
    def widths(self) -> np.ndarray:
        p = np.asarray(self.partition)
        return p[1:] - p[:-1]

    @staticmethod
    def constant(partition, value) -> "StepProcess":
        return StepProcess(tuple(partition), (complex(value),) * (len(partition) - 1))


class DirectIntegralState:
    """Array over time slots times the rapidity grid.

    A product state carries a step function in the slot index and a fixed
    grid vector; general states are arbitrary arrays.  The scalar product
    integrates the slotwise grid inner products over time.
    """

    __slots__ = ("grid", "partition", "values")

    def __init__(self, grid: OmegaGrid, partition, values: np.ndarray):
        self.grid = grid
        self.partition = tuple(partition)
        values = np.asarray(values, dtype=complex)
        if values.shape != (len(self.partition) - 1, grid.n_points):
            raise ValueError("state shape must be (slots, grid points)")
        self.values = values

    @staticmethod
    def product(grid: OmegaGrid, f: StepProcess, psi: np.ndarray) -> "DirectIntegralState":
        values = np.outer(np.asarray(f.values, dtype=complex), psi)
        return DirectIntegralState(grid, f.partition, values)

    def copy(self) -> "DirectIntegralState":
        return DirectIntegralState(self.grid, self.partition, self.values.copy())

    def __add__(self, other: "DirectIntegralState") -> "DirectIntegralState":
        return DirectIntegralState(self.grid, self.partition, self.values + other.values)

    def scale(self, c: complex) -> "DirectIntegralState":
        return DirectIntegralState(self.grid, self.partition, c * self.values)

    def widths(self) -> np.ndarray:
        p = np.asarray(self.partition)
        return p[1:] - p[:-1]

    def inner(self, other: "DirectIntegralState") -> complex:
        slotwise = np.sum(np.conj(self.values) * other.values, axis=1) * self.grid.h
        return complex(np.sum(self.widths() * slotwise))

    def split_inner(self, other: "DirectIntegralState", s: float):
        """Scalar product restricted to [0, s] and to (s, end); their sum is total."""
        p = np.asarray(self.partition)
        slotwise = np.sum(np.conj(self.values) * other.values, axis=1) * self.grid.h
        w = self.widths()
        before = p[1:] <= s + 1e-12
        part1 = complex(np.sum(w[before] * slotwise[before]))
        part2 = complex(np.sum(w[~before] * slotwise[~before]))
        return part1, part2


CHANNELS = ("X0", "H+", "H-")


def _channel_apply(grid: OmegaGrid, channel: str, psi_block: np.ndarray,
                   d: np.ndarray) -> np.ndarray:
    mu = grid.nodes
    if channel == "X0":
        return -1j * (psi_block @ d.T)
    if channel == "H+":
        return psi_block * np.exp(mu)[None, :]
    if channel == "H-":
        return psi_block * np.exp(-mu)[None, :]
    raise ValueError(f"unknown channel {channel!r}")


def indexed_action(channel: str, f: StepProcess, state: DirectIntegralState) -> DirectIntegralState:
    """Channel operator indexed by a step function, acting slot by slot."""
    if f.partition != state.partition:
        raise ValueError("step function and state live on different partitions")
    d = state.grid.diff4()
    block = _channel_apply(state.grid, channel, state.values, d)
    block = block * np.asarray(f.values, dtype=complex)[:, None]
    return DirectIntegralState(state.grid, state.partition, block)


def _slot_index(partition, t: float) -> int:
    for k, p in enumerate(partition):
        if abs(p - t) < 1e-12:
            return k
    raise ValueError("time must coincide with a partition point")


@dataclass(frozen=True)
class ProcessTriple:
    """One adapted integrand per channel, on a shared partition."""

    e0: StepProcess
    ep: StepProcess
    em: StepProcess

    def __post_init__(self):
        if not (self.e0.partition == self.ep.partition == self.em.partition):
            raise ValueError("the three channels must share one partition")

    @property
    def partition(self):
        return self.e0.partition

    @staticmethod
    def single(partition, channel: str, value=1.0) -> "ProcessTriple":
        zero = StepProcess.constant(partition, 0.0)
        filled = StepProcess.constant(partition, value)
        return ProcessTriple(
            e0=filled if channel == "X0" else zero,
            ep=filled if channel == "H+" else zero,
            em=filled if channel == "H-" else zero,
        )


def increment_apply(triple: ProcessTriple, slot: int,
                    state: DirectIntegralState) -> DirectIntegralState:
    """Contribution of one partition interval to the stochastic integral."""
    grid = state.grid
    d = grid.diff4()
    out = np.zeros_like(state.values)
    row = state.values[slot:slot + 1]
    acc = triple.e0.values[slot] * _channel_apply(grid, "X0", row, d) \
        + triple.ep.values[slot] * _channel_apply(grid, "H+", row, d) \
        + triple.em.values[slot] * _channel_apply(grid, "H-", row, d)
    out[slot] = acc[0]
    return DirectIntegralState(grid, state.partition, out)


def stochastic_integral(triple: ProcessTriple, t: float,
                        state: DirectIntegralState) -> DirectIntegralState:
    """Integral of the channel increments against the step process, up to t."""
    if triple.partition != state.partition:
        raise ValueError("process and state live on different partitions")
    k_max = _slot_index(state.partition, t)
    out = np.zeros_like(state.values)
    result = DirectIntegralState(state.grid, state.partition, out)
    for slot in range(k_max):
        result = result + increment_apply(triple, slot, state)
    return result


def first_fundamental_check(triple: ProcessTriple, phi_f: DirectIntegralState,
                            psi_g: DirectIntegralState, t: float) -> dict:
    """Both sides of the matrix-element identity for one stochastic integral."""
    lhs = phi_f.inner(stochastic_integral(triple, t, psi_g))
    grid = phi_f.grid
    d = grid.diff4()
    k_max = _slot_index(phi_f.partition, t)
    w = phi_f.widths()
    rhs = 0.0 + 0.0j
    for slot in range(k_max):
        fbar = np.conj(phi_f.values[slot])
        for chan, proc in (("X0", triple.e0), ("H+", triple.ep), ("H-", triple.em)):
            acted = _channel_apply(grid, chan, psi_g.values[slot:slot + 1], d)[0]
            rhs += w[slot] * proc.values[slot] * complex(np.sum(fbar * acted) * grid.h)
    return {"lhs": lhs, "rhs": rhs, "difference": abs(lhs - rhs)}


def second_fundamental_check(t1: ProcessTriple, t2: ProcessTriple,
                             phi_f: DirectIntegralState, psi_g: DirectIntegralState,
                             t: float) -> dict:
    """Triangular/diagonal decomposition of a product of stochastic integrals.

    The two triangular sums vanish structurally on the direct-integral
    space (increments of disjoint slots are orthogonal), so the product
    reduces to its diagonal.  The antisymmetric part of that diagonal is
    the half-commutator Ito correction; evaluated in the vacuum it matches
    the predicted kernels.
    """
    k_max = _slot_index(phi_f.partition, t)
    n1_full = stochastic_integral(t1, t, phi_f)
    n2_full = stochastic_integral(t2, t, psi_g)
    lhs = n1_full.inner(n2_full)

    lower = 0.0 + 0.0j
    upper = 0.0 + 0.0j
    diag_raw = 0.0 + 0.0j
    diag_anti = 0.0 + 0.0j
    for j in range(k_max):
        inc1_j = increment_apply(t1, j, phi_f)
        inc2_j = increment_apply(t2, j, psi_g)
        if j:
            n1_before = stochastic_integral(t1, phi_f.partition[j], phi_f)
            n2_before = stochastic_integral(t2, phi_f.partition[j], psi_g)
            lower += n1_before.inner(inc2_j)
            upper += inc1_j.inner(n2_before)
        diag_raw += inc1_j.inner(inc2_j)
        diag_anti += 0.5 * (inc1_j.inner(inc2_j)
                            - increment_apply(t2, j, phi_f).inner(
                                increment_apply(t1, j, psi_g)))

    grid = phi_f.grid
    mu = grid.nodes
    phi0 = vacuum_iso11(grid)
    kernel_plus = complex(np.sum(np.conj(phi0) * np.exp(mu) * phi0) * grid.h)
    kernel_minus = complex(np.sum(np.conj(phi0) * np.exp(-mu) * phi0) * grid.h)
    w = phi_f.widths()
    ito = 0.0 + 0.0j
    for j in range(k_max):
        e0_1 = np.conj(t1.e0.values[j])
        ep_1 = np.conj(t1.ep.values[j])
        em_1 = np.conj(t1.em.values[j])
        # slot amplitudes conj(f) g, read off against the vacuum profile;
        # the predicted kernels assume vacuum-profile product states
        step_fg = _slot_scalar(phi_f.values[j], psi_g.values[j], phi0, grid)
        ito += w[j] * (
            -0.5j * kernel_plus * (e0_1 * t2.ep.values[j] - ep_1 * t2.e0.values[j])
            + 0.5j * kernel_minus * (e0_1 * t2.em.values[j] - em_1 * t2.e0.values[j])
        ) * step_fg
    return {"lhs": lhs, "lower": lower, "upper": upper,
            "diagonal_raw": diag_raw, "diagonal_antisymmetric": diag_anti,
            "ito_predicted": ito,
            "identity_defect": abs(lhs - lower - upper - diag_raw)}


def _slot_scalar(f_row: np.ndarray, g_row: np.ndarray, phi0: np.ndarray,
                 grid: OmegaGrid) -> complex:
    """Amplitudes conj(f) g of product-state rows relative to the vacuum profile."""
    nf = complex(np.sum(np.conj(phi0) * f_row) * grid.h)
    ng = complex(np.sum(np.conj(phi0) * g_row) * grid.h)
    return np.conj(nf) * ng


# symbolic increment-product table: half commutators of the channel algebra
def ito_table() -> dict:
    """Nonzero increment products; all unlisted pairs vanish."""
    return {
        ("X0", "H+"): (-0.5j, "H+"),
        ("H+", "X0"): (0.5j, "H+"),
        ("X0", "H-"): (0.5j, "H-"),
        ("H-", "X0"): (-0.5j, "H-"),
    }


def vacuum_functional(f: StepProcess, use_grid_kernel: bool = False,
                      grid: OmegaGrid | None = None) -> complex:
    """Characteristic functional of the time-operator process.

    Independent increments make the functional a slot-width-weighted product
    of single-variable characteristic values.
    """
    total = 0.0
    for width, value in zip(f.widths, f.values):
        v = float(np.real(value))
        if use_grid_kernel:
            c = char_function_x0_grid(grid or OmegaGrid(), v)
        else:
            c = char_function_x0(v)
        total += float(width) * math.log(c)
    return complex(math.exp(total))


# ---------------------------------------------------------------------------
# circular analog

@dataclass(frozen=True)
class CircleGrid:
    n_points: int = 256

    @property
    def nodes(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_points) / self.n_points

    @property
    def h(self) -> float:
        return 2.0 * np.pi / self.n_points

    def inner(self, a: np.ndarray, b: np.ndarray) -> complex:
        return complex(np.sum(np.conj(a) * b) * self.h / (2.0 * np.pi))

    def spectral_derivative(self) -> np.ndarray:
        n = self.n_points
        k = np.fft.fftfreq(n, d=1.0 / n)
        f = np.fft.fft(np.eye(n), axis=0)
        return np.real(np.fft.ifft(1j * k[:, None] * f, axis=0))


def vacuum_iso2(grid: CircleGrid) -> np.ndarray:
    phi = np.exp(np.cos(grid.nodes))
    norm = math.sqrt(float(np.real(grid.inner(phi, phi))))
    return (phi / norm).astype(complex)


def iso2_fourier_ratios(grid: CircleGrid, n_max: int) -> np.ndarray:
    """Mode-coefficient ratios of the circular vacuum against the base mode."""
    phi = np.exp(np.cos(grid.nodes))
    coeffs = np.fft.fft(phi) / grid.n_points
    return np.real(coeffs[: n_max + 1] / coeffs[0])


def iso2_lowering_residual(grid: CircleGrid) -> float:
    """Norm of the lowering combination applied to the circular vacuum."""
    d = grid.spectral_derivative()
    phi = vacuum_iso2(grid)
    b_phi = (1j / SQRT2) * (d @ phi + np.sin(grid.nodes) * phi)
    return float(math.sqrt(abs(grid.inner(b_phi, b_phi))))


def char_function_iso2(s: float) -> float:
    """Characteristic function of the discrete coordinate in the circular vacuum."""
    return specfun.bessel_i(0, 2.0 * math.cos(0.5 * s)) / specfun.bessel_i(0, 2.0)


def char_function_iso2_grid(grid: CircleGrid, s: float) -> float:
    theta = grid.nodes
    phi = np.exp(np.cos(theta))
    shifted = np.exp(np.cos(theta - s))
    norm = float(np.sum(phi * phi))
    return float(np.sum(phi * shifted) / norm)


def iso2_channel_commutator_residual(grid: CircleGrid, rng) -> float:
    """Worst defect of the lifted circular channel commutators on random states.

    Slots carry independent circle functions; the coordinate channel acts by
    the spectral derivative, the shift channels by unimodular multipliers.
    """
    n_slots = 3
    d = grid.spectral_derivative()
    theta = grid.nodes
    modes = np.stack([np.exp(1j * k * theta) for k in (-2, -1, 0, 1, 2)])
    weights = rng.standard_normal((n_slots, 5)) + 1j * rng.standard_normal((n_slots, 5))
    psi = weights @ modes
    f = rng.standard_normal(n_slots)
    g = rng.standard_normal(n_slots)

    def x_act(h, block):
        return (1j * (block @ d.T)) * h[:, None]

    def v_act(h, block, sign):
        return block * np.exp(sign * 1j * theta)[None, :] * h[:, None]

    worst = 0.0
    for sign in (+1, -1):
        lhs = x_act(f, v_act(g, psi, sign)) - v_act(g, x_act(f, psi), sign)
        rhs = -sign * v_act(f * g, psi, sign)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    comm = v_act(f, v_act(g, psi, 1), -1) - v_act(g, v_act(f, psi, -1), 1)
    worst_vv = float(np.max(np.abs(comm)))
    return max(worst, worst_vv)
