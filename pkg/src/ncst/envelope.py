"""Normal-form arithmetic in the generalized enveloping algebra.

Elements are finite sums of ordered monomials

    M01^a1 .. M23^a6  p0^b0 .. p3^b3  x0^c0 .. x3^c3  I^k

with CoeffPoly coefficients.  The exponent k of the former central unit I
ranges over all integers, which encodes its inverse.  Products are
straightened into this order with the tangent-space commutation relations
(inv_radius = 0), under which I commutes with the rotation and momentum
blocks, so the rewriting terminates.

The deformation sign eps enters every product; functions take it as a
keyword with the default eps = -1.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import liealg
from .scalars import CoeffPoly

GEN_LABELS = (
    "M01", "M02", "M03", "M12", "M13", "M23",
    "p0", "p1", "p2", "p3",
    "x0", "x1", "x2", "x3",
)
GEN_INDEX = {label: i for i, label in enumerate(GEN_LABELS)}
N_GENS = len(GEN_LABELS)
_P_BLOCK = range(6, 10)
_X_BLOCK = range(10, 14)
ETA4 = (1, -1, -1, -1)

Monomial = tuple  # (exps: tuple[int] * 14, ipow: int)

IDENTITY_MONO: Monomial = ((0,) * N_GENS, 0)


class NcElement:
    """Sum of canonical monomials with CoeffPoly coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Monomial, CoeffPoly] = {}
        if terms:
            for mono, coeff in terms.items():
                if not coeff.is_zero():
                    self.terms[mono] = coeff

    # -- constructors ------------------------------------------------
    @staticmethod
    def zero() -> "NcElement":
        return NcElement()

    @staticmethod
    def scalar(value) -> "NcElement":
        c = value if isinstance(value, CoeffPoly) else CoeffPoly.scalar(value)
        return NcElement({IDENTITY_MONO: c})

    @staticmethod
    def one() -> "NcElement":
        return NcElement.scalar(1)

    @staticmethod
    def generator(label: str) -> "NcElement":
        if label == "I":
            return NcElement({((0,) * N_GENS, 1): CoeffPoly.scalar(1)})
        exps = [0] * N_GENS
        exps[GEN_INDEX[label]] = 1
        return NcElement({(tuple(exps), 0): CoeffPoly.scalar(1)})

    @staticmethod
    def unit_power(k: int) -> "NcElement":
        """I^k, with negative k encoding the inverse."""
        return NcElement({((0,) * N_GENS, k): CoeffPoly.scalar(1)})

    # -- linear structure --------------------------------------------
    def __add__(self, other: "NcElement") -> "NcElement":
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono)
            s = coeff if acc is None else acc + coeff
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        res = NcElement()
        res.terms = out
        return res

    def __sub__(self, other: "NcElement") -> "NcElement":
        return self + other.scale_coeff(CoeffPoly.scalar(-1))

    def __neg__(self) -> "NcElement":
        return self.scale_coeff(CoeffPoly.scalar(-1))

    def scale_coeff(self, c: CoeffPoly) -> "NcElement":
        if c.is_zero():
            return NcElement()
        res = NcElement()
        res.terms = {m: v * c for m, v in self.terms.items()}
        return res

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NcElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries ------------------------------------------------------
    def min_ell_power(self) -> int:
        if not self.terms:
            raise ValueError("zero element has no ell order")
        return min(c.min_ell_power() for c in self.terms.values())

    def contract_ell(self) -> "NcElement":
        out = NcElement()
        for mono, coeff in self.terms.items():
            c = coeff.contract(ell_to_zero=True, inv_radius_to_zero=True)
            if not c.is_zero():
                out.terms[mono] = c
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            exps, ipow = mono
            factors = []
            for idx, e in enumerate(exps):
                if e == 1:
                    factors.append(GEN_LABELS[idx])
                elif e:
                    factors.append(f"{GEN_LABELS[idx]}^{e}")
            if ipow == 1:
                factors.append("I")
            elif ipow:
                factors.append(f"I^{ipow}")
            body = "*".join(factors) if factors else "1"
            parts.append(f"({self.terms[mono]})*{body}")
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# bracket tables, one per deformation sign

_BRACKET_CACHE: dict[int, dict] = {}


def _bracket_table(eps: int) -> dict:
    """[g_a, g_b] for the 14 non-unit generators, as label -> (coeff, target) lists.

    Targets are generator labels or "I"; built from the shared
    structure-constant engine at inv_radius = 0.
    """
    table = _BRACKET_CACHE.get(eps)
    if table is not None:
        return table
    alg = liealg.build_tangent(eps)
    table = {}
    for a, b in itertools.permutations(GEN_LABELS, 2):
        entry = alg.bracket_gen(a, b)
        table[(a, b)] = [(coeff, label) for label, coeff in sorted(entry.items())]
    _BRACKET_CACHE[eps] = table
    return table


def _x_unit_coeff(eps: int) -> CoeffPoly:
    # [x_mu, I] = i eps ell^2 p_mu
    return CoeffPoly.i_unit().scale(eps) * CoeffPoly.ell(2)


# ---------------------------------------------------------------------------
# straightening

def _add_term(acc: dict, mono: Monomial, coeff: CoeffPoly) -> None:
    old = acc.get(mono)
    s = coeff if old is None else old + coeff
    if s.is_zero():
        acc.pop(mono, None)
    else:
        acc[mono] = s


def _times_gen(mono: Monomial, g: int, eps: int) -> dict:
    """Right-multiply a canonical monomial by generator index g; canonical result."""
    exps, ipow = mono
    if ipow != 0:
        # commute the trailing I^k past g
        if g in _X_BLOCK:
            # I^k x = x I^k - i eps ell^2 k p I^(k-1)
            base = _times_gen((exps, 0), g, eps)
            out: dict = {}
            for m, c in base.items():
                _add_term(out, (m[0], m[1] + ipow), c)
            p_idx = g - 4  # matching momentum index
            corr = _times_gen((exps, 0), p_idx, eps)
            factor = _x_unit_coeff(eps).scale(-ipow)
            for m, c in corr.items():
                _add_term(out, (m[0], m[1] + ipow - 1), c * factor)
            return out
        base = _times_gen((exps, 0), g, eps)
        return {(m[0], m[1] + ipow): c for m, c in base.items()}

    last = -1
    for idx in range(N_GENS - 1, -1, -1):
        if exps[idx]:
            last = idx
            break
    if last <= g:
        new = list(exps)
        new[g] += 1
        return {(tuple(new), 0): CoeffPoly.scalar(1)}

    # mono = m' * h with h = last;  m' h g = (m' g) h + m' [h, g]
    stripped = list(exps)
    stripped[last] -= 1
    mprime = (tuple(stripped), 0)
    out: dict = {}
    for m, c in _times_gen(mprime, g, eps).items():
        for m2, c2 in _times_gen(m, last, eps).items():
            _add_term(out, m2, c * c2)
    for coeff, target in _bracket_table(eps)[(GEN_LABELS[last], GEN_LABELS[g])]:
        if target == "I":
            _add_term(out, (mprime[0], 1), coeff)
        else:
            for m, c in _times_gen(mprime, GEN_INDEX[target], eps).items():
                _add_term(out, m, c * coeff)
    return out


def _mono_mul(m1: Monomial, m2: Monomial, eps: int) -> dict:
    """Product of two canonical monomials as {monomial: coeff}."""
    acc = {m1: CoeffPoly.scalar(1)}
    exps2, ipow2 = m2
    for g in range(N_GENS):
        for _ in range(exps2[g]):
            nxt: dict = {}
            for m, c in acc.items():
                for mg, cg in _times_gen(m, g, eps).items():
                    _add_term(nxt, mg, c * cg)
            acc = nxt
    if ipow2:
        acc = {(m[0], m[1] + ipow2): c for m, c in acc.items()}
    return acc


def nc_multiply(a: NcElement, b: NcElement, eps: int = -1) -> NcElement:
    out = NcElement()
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c12 = c1 * c2
            for mono, coeff in _mono_mul(m1, m2, eps).items():
                _add_term(out.terms, mono, coeff * c12)
    return out


def nc_commutator(a: NcElement, b: NcElement, eps: int = -1) -> NcElement:
    return nc_multiply(a, b, eps) - nc_multiply(b, a, eps)


def anticommutator(a: NcElement, b: NcElement, eps: int = -1) -> NcElement:
    return nc_multiply(a, b, eps) + nc_multiply(b, a, eps)


def nc_power(a: NcElement, n: int, eps: int = -1) -> NcElement:
    out = NcElement.one()
    for _ in range(n):
        out = nc_multiply(out, a, eps)
    return out


# ---------------------------------------------------------------------------
# derivations

DERIVATIONS = ("d0", "d1", "d2", "d3", "d4", "dil")


def _derivation_on_generator(delta: str, label: str) -> NcElement:
    if delta == "dil":
        if label.startswith("p") or label == "I":
            return NcElement.generator(label)
        return NcElement.zero()
    a = int(delta[1])
    if label.startswith("x"):
        mu = int(label[1])
        if a == 4:
            return NcElement.generator(f"p{mu}").scale_coeff(CoeffPoly.ell(1))
        return NcElement.unit_power(1).scale_coeff(CoeffPoly.scalar(ETA4[a])) \
            if a == mu else NcElement.zero()
    if label.startswith("M"):
        if a == 4:
            return NcElement.zero()
        mu, nu = int(label[1]), int(label[2])
        out = NcElement.zero()
        if a == mu:
            out = out + NcElement.generator(f"p{nu}").scale_coeff(CoeffPoly.scalar(ETA4[a]))
        if a == nu:
            out = out - NcElement.generator(f"p{mu}").scale_coeff(CoeffPoly.scalar(ETA4[a]))
        return out
    # momenta and the unit are annihilated by every translation derivation
    return NcElement.zero()


def apply_derivation(delta: str, a: NcElement, eps: int = -1) -> NcElement:
    """Extend the generator action to monomials by the Leibniz rule."""
    if delta not in DERIVATIONS:
        raise ValueError(f"unknown derivation {delta!r}")
    out = NcElement.zero()
    for mono, coeff in a.terms.items():
        exps, ipow = mono
        letters = []
        for idx, e in enumerate(exps):
            letters.extend([idx] * e)
        for pos in range(len(letters)):
            pre = [0] * N_GENS
            for idx in letters[:pos]:
                pre[idx] += 1
            post = [0] * N_GENS
            for idx in letters[pos + 1:]:
                post[idx] += 1
            mid = _derivation_on_generator(delta, GEN_LABELS[letters[pos]])
            if mid.is_zero():
                continue
            pre_el = NcElement({(tuple(pre), 0): coeff})
            post_el = NcElement({(tuple(post), ipow): CoeffPoly.scalar(1)})
            out = out + nc_multiply(nc_multiply(pre_el, mid, eps), post_el, eps)
        if ipow and delta == "dil":
            out = out + NcElement({mono: coeff.scale(ipow)})
    return out


# ---------------------------------------------------------------------------
# derived operations

def ell_order(a: NcElement) -> int:
    """Minimal ell exponent over all coefficients; raises on zero."""
    return a.min_ell_power()


def heisenberg_dual(mu: int, eps: int = -1) -> NcElement:
    """y_mu = (x_mu I^-1 + I^-1 x_mu)/2, the momentum conjugate coordinate."""
    x = NcElement.generator(f"x{mu}")
    j_inv = NcElement.unit_power(-1)
    half = CoeffPoly.gauss(Fraction(1, 2))
    return anticommutator(x, j_inv, eps).scale_coeff(half)


def planewave_commutator_residual(mu: int, order: int, kvec=None, eps: int = -1):
    """Residual of [p_mu, exp(i k.y)] = -k_mu exp(i k.y) through the given order.

    Since [p_mu, k.y] = i k_mu times the identity, commutation with p shifts
    the exponential by the real eigenvalue -k_mu (an imaginary eigenvalue
    would contradict hermiticity of p).  The wave operator then satisfies
    [P_mu, [P^mu, exp(i k.y)]] = k^2 exp(i k.y), the massive-shell relation.

    With ``kvec`` a length-4 tuple of exact rationals the residual is returned
    as a single NcElement.  With ``kvec=None`` the wave vector stays symbolic
    and the result maps each k-multidegree to its NcElement residual
    (everything must vanish).
    """
    if order < 0 or order > 4:
        raise ValueError("order must be between 0 and 4")
    # upper-index duals: y^nu = eta^{nu nu} y_nu
    y_up = [heisenberg_dual(nu, eps).scale_coeff(CoeffPoly.scalar(ETA4[nu]))
            for nu in range(4)]
    p = NcElement.generator(f"p{mu}")

    if kvec is not None:
        kdoty = NcElement.zero()
        for nu in range(4):
            kdoty = kdoty + y_up[nu].scale_coeff(CoeffPoly.gauss(Fraction(kvec[nu])))
        series = NcElement.zero()
        series_prev = NcElement.zero()
        term = NcElement.one()
        fact = Fraction(1)
        for j in range(order + 1):
            if j:
                fact *= j
                term = nc_multiply(term, kdoty.scale_coeff(CoeffPoly.i_unit()), eps)
            if j <= order - 1:
                series_prev = series_prev + term.scale_coeff(CoeffPoly.gauss(1 / fact))
            series = series + term.scale_coeff(CoeffPoly.gauss(1 / fact))
        lhs = nc_commutator(p, series, eps)
        rhs = series_prev.scale_coeff(CoeffPoly.gauss(-Fraction(kvec[mu])))
        return lhs - rhs

    # symbolic k: track commutative multidegrees (d0..d3) alongside
    terms: dict[tuple, NcElement] = {(0, 0, 0, 0): NcElement.one()}
    series: dict[tuple, NcElement] = {(0, 0, 0, 0): NcElement.one()}
    series_prev: dict[tuple, NcElement] = {(0, 0, 0, 0): NcElement.one()} \
        if order >= 1 else {}
    fact = Fraction(1)
    for j in range(1, order + 1):
        fact *= j
        nxt: dict[tuple, NcElement] = {}
        for deg, el in terms.items():
            for nu in range(4):
                ndeg = tuple(d + (1 if i == nu else 0) for i, d in enumerate(deg))
                contrib = nc_multiply(el, y_up[nu].scale_coeff(CoeffPoly.i_unit()), eps)
                nxt[ndeg] = nxt.get(ndeg, NcElement.zero()) + contrib
        terms = nxt
        for deg, el in terms.items():
            scaled = el.scale_coeff(CoeffPoly.gauss(1 / fact))
            series[deg] = series.get(deg, NcElement.zero()) + scaled
            if j <= order - 1:
                series_prev[deg] = series_prev.get(deg, NcElement.zero()) + scaled
    residuals: dict[tuple, NcElement] = {}
    for deg, el in series.items():
        residuals[deg] = nc_commutator(p, el, eps)
    for deg, el in series_prev.items():
        ndeg = tuple(d + (1 if i == mu else 0) for i, d in enumerate(deg))
        residuals[ndeg] = residuals.get(ndeg, NcElement.zero()) + el
    return {deg: el for deg, el in residuals.items() if not el.is_zero()}


def random_element(rng, n_terms: int = 2, max_exp: int = 1, ipow_range=(-1, 1),
                   gens=None) -> NcElement:
    """Small random element with unit coefficients times random Gaussian integers."""
    pool = list(gens) if gens is not None else list(range(N_GENS))
    out = NcElement.zero()
    for _ in range(n_terms):
        exps = [0] * N_GENS
        for g in rng.sample(pool, k=min(2, len(pool))):
            exps[g] = rng.randint(0, max_exp)
        ipow = rng.randint(*ipow_range)
        coeff = CoeffPoly.gauss(rng.randint(-3, 3), rng.randint(-2, 2))
        if coeff.is_zero():
            coeff = CoeffPoly.scalar(1)
        out = out + NcElement({(tuple(exps), ipow): coeff})
    return out
