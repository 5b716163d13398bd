"""Self-contained special-function kernels.

Everything here is built from series, recurrences and a Sturm-count
tridiagonal eigenvalue solver, so the numeric experiments do not depend on
an external special-function library and the oracles stay portable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_EULER_GAMMA = 0.57721566490153286060651209


# ---------------------------------------------------------------------------
# cylinder functions

def bessel_j(n: int, x: float) -> float:
    """J_n by downward recurrence with the even-order sum normalization."""
    n = int(n)
    if n < 0:
        return bessel_j(-n, x) * (-1 if n % 2 else 1)
    ax = abs(x)
    if ax == 0.0:
        return 1.0 if n == 0 else 0.0
    if n > 250:
        raise ValueError("order out of supported range")
    m = 2 * ((n + int(ax) + 24 + int(2.5 * math.sqrt(max(n, ax)))) // 2 + 1)
    jp, j = 0.0, 1e-300
    target = 0.0
    norm = 0.0
    for k in range(m, 0, -1):
        jm = (2.0 * k / ax) * j - jp
        jp, j = j, jm
        if abs(j) > 1e250:
            j *= 1e-250
            jp *= 1e-250
            target *= 1e-250
            norm *= 1e-250
        if k - 1 == n:
            target = j
        if (k - 1) % 2 == 0:
            norm += j if k - 1 == 0 else 2.0 * j
    val = target / norm
    if x < 0 and n % 2:
        val = -val
    return val


def bessel_i(n: int, x: float) -> float:
    """Modified I_n by downward recurrence normalized against exp(x)."""
    n = abs(int(n))
    ax = abs(x)
    if ax == 0.0:
        return 1.0 if n == 0 else 0.0
    if n > 250:
        raise ValueError("order out of supported range")
    m = n + int(ax) + 30 + int(2.0 * math.sqrt(max(n, ax)))
    ip, i_cur = 0.0, 1e-300
    target = 0.0
    norm = 0.0
    for k in range(m, 0, -1):
        im = (2.0 * k / ax) * i_cur + ip
        ip, i_cur = i_cur, im
        if abs(i_cur) > 1e250:
            i_cur *= 1e-250
            ip *= 1e-250
            target *= 1e-250
            norm *= 1e-250
        if k - 1 == n:
            target = i_cur
        norm += i_cur if k - 1 == 0 else 2.0 * i_cur
    val = target / norm * math.exp(ax)
    if x < 0 and n % 2:
        val = -val
    return val


def bessel_k0(x: float) -> float:
    """Macdonald function of order zero.

    Ascending series for small arguments; for the rest, a trapezoid sum of
    the exp(-x cosh t) integral representation, whose even symmetry and
    double-exponential tail make the rule superalgebraically accurate.
    """
    if x <= 0:
        raise ValueError("argument must be positive")
    if x < 2.0:
        i0 = bessel_i(0, x)
        q = 0.25 * x * x
        term = 1.0
        harmonic = 0.0
        total = 0.0
        for k in range(1, 60):
            term *= q / (k * k)
            harmonic += 1.0 / k
            total += term * harmonic
            if term * harmonic < 1e-19 * max(total, 1e-30):
                break
        return -(math.log(0.5 * x) + _EULER_GAMMA) * i0 + total
    if x > 690.0:
        series = 1.0
        term = 1.0
        for k in range(1, 16):
            term *= -(2 * k - 1) ** 2 / (8.0 * x * k)
            series += term
        return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * series
    t_max = math.acosh(min(720.0 / x + 1.0, 1e280))
    n = max(600, int(t_max * 80))
    h = t_max / n
    t = h * np.arange(n + 1)
    vals = np.exp(x - x * np.cosh(t))  # scaled by e^x to keep mid-range precision
    vals[0] *= 0.5
    vals[-1] *= 0.5
    return float(np.sum(vals) * h * math.exp(-x))


def chebyshev_t(n: int, x: float) -> float:
    """First-kind polynomial via the stable three-term recurrence."""
    n = abs(int(n))
    if n == 0:
        return 1.0
    tm, t = 1.0, x
    for _ in range(n - 1):
        tm, t = t, 2.0 * x * t - tm
    return t


# ---------------------------------------------------------------------------
# symmetric tridiagonal eigenvalues by Sturm bisection

def tridiag_eigenvalues(diag: np.ndarray, off: np.ndarray, count: int,
                        rel_tol: float | None = None, dtype=np.longdouble) -> np.ndarray:
    """Smallest ``count`` eigenvalues of a symmetric tridiagonal matrix.

    Bisection on the Sturm negative-pivot count, carried out in extended
    precision by default: the strong-coupling spectra sit at huge negative
    values whose physically relevant part appears only after a large
    cancellation, so double-precision eigenvalues would not be enough.
    """
    d = np.asarray(diag, dtype=dtype)
    e = np.asarray(off, dtype=dtype)
    n = d.size
    if count > n:
        raise ValueError("asked for more eigenvalues than the matrix has")
    if rel_tol is None:
        rel_tol = float(8 * np.finfo(dtype).eps)
    zero = dtype(0)
    e2 = np.concatenate(([zero], e * e))
    abs_e = np.abs(e)
    radius = np.abs(d) + np.concatenate(([zero], abs_e)) + np.concatenate((abs_e, [zero]))
    lo_all = np.min(d - radius) - 1
    hi_all = np.max(d + radius) + 1

    def neg_count(shifts: np.ndarray) -> np.ndarray:
        q = d[0] - shifts
        cnt = (q < 0).astype(np.int64)
        tiny = dtype(1e-300)
        for i in range(1, n):
            q = np.where(np.abs(q) < tiny, -tiny, q)
            q = d[i] - shifts - e2[i] / q
            cnt += q < 0
        return cnt

    lo = np.full(count, lo_all, dtype=dtype)
    hi = np.full(count, hi_all, dtype=dtype)
    targets = np.arange(1, count + 1)
    scale = max(abs(float(lo_all)), abs(float(hi_all)), 1.0)
    for _ in range(200):
        mid = (lo + hi) / 2
        cnt = neg_count(mid)
        go_left = cnt >= targets
        hi = np.where(go_left, mid, hi)
        lo = np.where(go_left, lo, mid)
        if float(np.max(hi - lo)) < rel_tol * scale:
            break
    return (lo + hi) / 2


# ---------------------------------------------------------------------------
# periodic spectrum of the cosine-potential second-order problem

@dataclass(frozen=True)
class MathieuSpectrum:
    """Characteristic values split by solution parity."""

    q: float
    even_values: tuple    # cosine-series families, index = solution order r
    odd_values: tuple     # sine-series families, index starts at r = 1
    truncation: int

    def even(self, r: int) -> float:
        return self.even_values[r]

    def odd(self, r: int) -> float:
        return self.odd_values[r - 1]

    def merged(self) -> np.ndarray:
        return np.sort(np.concatenate((self.even_values, self.odd_values)))


def _mathieu_matrices(q: float, half_dim: int, dtype=np.longdouble):
    """Four symmetric tridiagonal blocks of the Fourier-mode eigenproblem."""
    k = np.arange(half_dim, dtype=dtype)
    qd = dtype(q)
    # even period-pi cosine family: basis 1, cos2t, cos4t, ...
    d_ce_even = (2 * k) ** 2
    e_ce_even = np.full(half_dim - 1, qd, dtype=dtype)
    e_ce_even[0] = qd * np.sqrt(dtype(2))
    # odd-order cosine family: cos t, cos3t, ...
    d_ce_odd = (2 * k + 1) ** 2
    d_ce_odd[0] += qd
    e_ce_odd = np.full(half_dim - 1, qd, dtype=dtype)
    # even period-pi sine family: sin2t, sin4t, ...
    d_se_even = (2 * (k + 1)) ** 2
    e_se_even = np.full(half_dim - 1, qd, dtype=dtype)
    # odd-order sine family: sin t, sin3t, ...
    d_se_odd = (2 * k + 1) ** 2
    d_se_odd[0] -= qd
    e_se_odd = np.full(half_dim - 1, qd, dtype=dtype)
    return (d_ce_even, e_ce_even), (d_ce_odd, e_ce_odd), \
        (d_se_even, e_se_even), (d_se_odd, e_se_odd)


def mathieu_char(q: float, r_max: int, rel_tol: float = 1e-11) -> MathieuSpectrum:
    """Characteristic values for periodic solutions up to order r_max.

    The truncation grows until every returned value is stable to rel_tol
    (relative to the matrix scale); raises if that never happens.
    """
    if abs(q) > 1e7:
        raise ValueError("strength out of supported range")
    if r_max > 50:
        raise ValueError("r_max out of supported range")
    need_even = r_max // 2 + 1
    need_odd = (r_max + 1) // 2
    half = max(2 * need_even + 8, need_odd + 8, int(1.1 * math.sqrt(abs(q))) + 16)
    prev = None
    for _ in range(40):
        blocks = _mathieu_matrices(q, half)
        ce_even = tridiag_eigenvalues(*blocks[0], need_even)
        ce_odd = tridiag_eigenvalues(*blocks[1], max(need_odd, 1))
        se_even = tridiag_eigenvalues(*blocks[2], max(need_even - 1, 1))
        se_odd = tridiag_eigenvalues(*blocks[3], max(need_odd, 1))
        even_vals = np.empty(r_max + 1, dtype=np.longdouble)
        even_vals[0::2] = ce_even[: r_max // 2 + 1]
        if r_max >= 1:
            even_vals[1::2] = ce_odd[: (r_max + 1) // 2]
        odd_vals = np.empty(r_max, dtype=np.longdouble)
        if r_max >= 1:
            odd_vals[0::2] = se_odd[: (r_max + 1) // 2]
        if r_max >= 2:
            odd_vals[1::2] = se_even[: r_max // 2]
        current = np.concatenate((even_vals, odd_vals))
        if prev is not None and prev.size == current.size:
            scale = max(1.0, float(np.max(np.abs(current))))
            if float(np.max(np.abs(current - prev))) <= rel_tol * scale:
                return MathieuSpectrum(q=q, even_values=tuple(even_vals),
                                       odd_values=tuple(odd_vals), truncation=half)
        prev = current
        half = int(half * 1.5) + 8
    raise RuntimeError("characteristic values did not stabilize under truncation growth")


def mathieu_asymptotic(r: int, q_abs: float) -> float:
    """Large-strength expansion of the characteristic value for level r."""
    s = 2 * r + 1
    rq = math.sqrt(q_abs)
    return (-2.0 * q_abs + 2.0 * s * rq - (s * s + 1) / 8.0
            - (s ** 3 + 3 * s) / (128.0 * rq))


def mathieu_ground_shooting(q: float, tol: float = 1e-10) -> float:
    """Lowest even-parity characteristic value by shooting on a quarter period.

    Independent of the Fourier-matrix route: integrate f'' = (-a + 2q cos 2t) f
    from t = 0 with f(0) = 1, f'(0) = 0 and bisect on f'(pi/2) = 0 for the
    even solution, which is the ce-type ground state for moderate strengths.
    """

    def fprime_at_quarter(a: float) -> float:
        # high-order fixed-step integrator on [0, pi/2]
        n = 4000
        h = (math.pi / 2) / n
        f, fp = 1.0, 0.0
        t = 0.0
        for _ in range(n):
            def acc(tt, ff):
                return (-a + 2.0 * q * math.cos(2.0 * tt)) * ff
            k1f, k1p = fp, acc(t, f)
            k2f, k2p = fp + 0.5 * h * k1p, acc(t + 0.5 * h, f + 0.5 * h * k1f)
            k3f, k3p = fp + 0.5 * h * k2p, acc(t + 0.5 * h, f + 0.5 * h * k2f)
            k4f, k4p = fp + h * k3p, acc(t + h, f + h * k3f)
            f += h * (k1f + 2 * k2f + 2 * k3f + k4f) / 6.0
            fp += h * (k1p + 2 * k2p + 2 * k3p + k4p) / 6.0
            t += h
        return fp

    lo, hi = -2.0 * abs(q) - 2.0, 1.0 + abs(q)
    flo = fprime_at_quarter(lo)
    # march to bracket the first sign change
    steps = 400
    width = (hi - lo) / steps
    a_prev, f_prev = lo, flo
    bracket = None
    for i in range(1, steps + 1):
        a_cur = lo + i * width
        f_cur = fprime_at_quarter(a_cur)
        if f_prev == 0.0 or f_prev * f_cur < 0.0:
            bracket = (a_prev, a_cur, f_prev, f_cur)
            break
        a_prev, f_prev = a_cur, f_cur
    if bracket is None:
        raise RuntimeError("no shooting bracket found")
    alo, ahi, flo, fhi = bracket
    for _ in range(200):
        mid = 0.5 * (alo + ahi)
        fmid = fprime_at_quarter(mid)
        if flo * fmid <= 0.0:
            ahi, fhi = mid, fmid
        else:
            alo, flo = mid, fmid
        if ahi - alo < tol:
            break
    return 0.5 * (alo + ahi)


# ---------------------------------------------------------------------------
# lattice-walk orthogonal polynomials

def pollaczek_meixner(n_max: int, x: float) -> np.ndarray:
    """Coefficients P_0..P_n of the right-angle generating function.

    The generating function exp(2 x arctan t) satisfies
    (1 + t^2) G' = 2x G, giving the real recurrence
    (n+1) P_{n+1} = 2x P_n - (n-1) P_{n-1}.
    """
    if n_max > 500:
        raise ValueError("n_max out of supported range")
    out = np.empty(n_max + 1)
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = 2.0 * x
    for n in range(1, n_max):
        out[n + 1] = (2.0 * x * out[n] - (n - 1) * out[n - 1]) / (n + 1)
    return out


def pollaczek_meixner_cauchy(n_max: int, x: float, radius: float = 0.9,
                             samples: int = 4096) -> np.ndarray:
    """Same coefficients from a contour integral of the generating function.

    Independent cross-check route: FFT of exp(2 x arctan(radius e^{i phi}))
    on a circle inside the unit disc.
    """
    phi = 2.0 * np.pi * np.arange(samples) / samples
    t = radius * np.exp(1j * phi)
    values = np.exp(2.0 * x * np.arctan(t))
    coeffs = np.fft.fft(values) / samples
    n = np.arange(n_max + 1)
    return np.real(coeffs[: n_max + 1]) / radius ** n
