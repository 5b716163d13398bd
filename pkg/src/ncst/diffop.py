"""Exact matrix-valued polynomial-coefficient differential operators.

Operators live on a flat five-dimensional carrier space with coordinates
xi^0..xi^4 and metric (1,-1,-1,-1,eps).  A term is a coordinate monomial
times a derivative monomial times a constant 4x4 matrix of CoeffPoly
entries; composition applies the Leibniz rule exactly and keeps all
coordinates to the left of all derivatives.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial

from . import envelope
from .scalars import C_I, C_ONE, C_ZERO, CoeffPoly, GaussianRational

DIM = 5

Mat = tuple  # 4x4 nested tuple of CoeffPoly


def mat_zero() -> Mat:
    return tuple(tuple(C_ZERO for _ in range(4)) for _ in range(4))


def mat_identity(scale: CoeffPoly = C_ONE) -> Mat:
    return tuple(tuple(scale if i == j else C_ZERO for j in range(4)) for i in range(4))


def mat_from_rows(rows) -> Mat:
    out = []
    for row in rows:
        out.append(tuple(
            c if isinstance(c, CoeffPoly) else CoeffPoly.scalar(c) for c in row))
    return tuple(out)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(a[i][j] + b[i][j] for j in range(4)) for i in range(4))


def mat_scale(a: Mat, c: CoeffPoly) -> Mat:
    return tuple(tuple(a[i][j] * c for j in range(4)) for i in range(4))


def mat_mul(a: Mat, b: Mat) -> Mat:
    out = []
    for i in range(4):
        row = []
        for j in range(4):
            acc = C_ZERO
            for k in range(4):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_is_zero(a: Mat) -> bool:
    return all(a[i][j].is_zero() for i in range(4) for j in range(4))


class PolyDiffOp:
    """terms: {(xi_exponents, derivative_exponents): Mat}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple, Mat] = {}
        if terms:
            for key, mat in terms.items():
                if not mat_is_zero(mat):
                    self.terms[key] = mat

    @staticmethod
    def zero() -> "PolyDiffOp":
        return PolyDiffOp()

    @staticmethod
    def scalar(c) -> "PolyDiffOp":
        c = c if isinstance(c, CoeffPoly) else CoeffPoly.scalar(c)
        return PolyDiffOp({((0,) * DIM, (0,) * DIM): mat_identity(c)})

    @staticmethod
    def coordinate(a: int, scale: CoeffPoly = C_ONE) -> "PolyDiffOp":
        xi = [0] * DIM
        xi[a] = 1
        return PolyDiffOp({(tuple(xi), (0,) * DIM): mat_identity(scale)})

    @staticmethod
    def derivative(a: int, scale: CoeffPoly = C_ONE) -> "PolyDiffOp":
        dv = [0] * DIM
        dv[a] = 1
        return PolyDiffOp({((0,) * DIM, tuple(dv)): mat_identity(scale)})

    @staticmethod
    def matrix(mat: Mat) -> "PolyDiffOp":
        return PolyDiffOp({((0,) * DIM, (0,) * DIM): mat})

    def __add__(self, other: "PolyDiffOp") -> "PolyDiffOp":
        out = dict(self.terms)
        for key, mat in other.terms.items():
            acc = out.get(key)
            s = mat if acc is None else mat_add(acc, mat)
            if mat_is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
        res = PolyDiffOp()
        res.terms = out
        return res

    def __sub__(self, other: "PolyDiffOp") -> "PolyDiffOp":
        return self + other.scale(CoeffPoly.scalar(-1))

    def scale(self, c: CoeffPoly) -> "PolyDiffOp":
        res = PolyDiffOp()
        for key, mat in self.terms.items():
            scaled = mat_scale(mat, c)
            if not mat_is_zero(scaled):
                res.terms[key] = scaled
        return res

    def __mul__(self, other: "PolyDiffOp") -> "PolyDiffOp":
        """Operator composition with the exact Leibniz rule."""
        res = PolyDiffOp()
        for (xi1, dv1), m1 in self.terms.items():
            for (xi2, dv2), m2 in other.terms.items():
                mat = mat_mul(m1, m2)
                # commute dv1 past xi2: sum over contraction multi-indices
                ranges = [range(min(dv1[a], xi2[a]) + 1) for a in range(DIM)]
                for tau in itertools.product(*ranges):
                    coeff = Fraction(1)
                    for a in range(DIM):
                        coeff *= comb(dv1[a], tau[a]) * comb(xi2[a], tau[a]) * factorial(tau[a])
                    xi = tuple(xi1[a] + xi2[a] - tau[a] for a in range(DIM))
                    dv = tuple(dv1[a] + dv2[a] - tau[a] for a in range(DIM))
                    add = mat_scale(mat, CoeffPoly.gauss(coeff))
                    key = (xi, dv)
                    acc = res.terms.get(key)
                    s = add if acc is None else mat_add(acc, add)
                    if mat_is_zero(s):
                        res.terms.pop(key, None)
                    else:
                        res.terms[key] = s
        return res

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyDiffOp):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        lines = []
        for (xi, dv) in sorted(self.terms):
            mat = self.terms[(xi, dv)]
            factors = []
            for a in range(DIM):
                if xi[a] == 1:
                    factors.append(f"xi{a}")
                elif xi[a]:
                    factors.append(f"xi{a}^{xi[a]}")
            for a in range(DIM):
                if dv[a] == 1:
                    factors.append(f"d{a}")
                elif dv[a]:
                    factors.append(f"d{a}^{dv[a]}")
            body = "*".join(factors) if factors else "1"
            if mat == mat_identity(mat[0][0]):
                lines.append(f"({mat[0][0]})*{body}")
            else:
                rows = "; ".join(
                    ", ".join(str(mat[i][j]) for j in range(4)) for i in range(4))
                lines.append(f"[{rows}]*{body}")
        return " + ".join(lines)

    __repr__ = __str__


def op_commutator(a: PolyDiffOp, b: PolyDiffOp) -> PolyDiffOp:
    return a * b - b * a


# ---------------------------------------------------------------------------
# representation of the tangent-space algebra by differential operators

def _metric5(eps: int):
    return (1, -1, -1, -1, eps)


def m5_rep(label: str, eps: int = -1) -> PolyDiffOp:
    """Differential-operator image of a generator on the 5d carrier space."""
    eta = _metric5(eps)
    i = C_I

    def lowered(a: int) -> PolyDiffOp:
        return PolyDiffOp.coordinate(a, CoeffPoly.scalar(eta[a]))

    def rotation(a: int, b: int) -> PolyDiffOp:
        # i(xi_a d_b - xi_b d_a) with lowered coordinate indices
        return (lowered(a) * PolyDiffOp.derivative(b)
                - lowered(b) * PolyDiffOp.derivative(a)).scale(i)

    if label == "I":
        return PolyDiffOp.scalar(1) + PolyDiffOp.derivative(4, C_I * CoeffPoly.ell(1))
    if label.startswith("p"):
        return PolyDiffOp.derivative(int(label[1]), C_I)
    if label.startswith("x"):
        mu = int(label[1])
        return lowered(mu) + rotation(mu, 4).scale(CoeffPoly.ell(1))
    if label.startswith("M"):
        return rotation(int(label[1]), int(label[2]))
    raise ValueError(f"unknown generator {label!r}")


def rep_element(element: envelope.NcElement, eps: int = -1) -> PolyDiffOp:
    """Multiplicative extension of m5_rep to enveloping-algebra elements.

    Monomials with negative unit powers have no polynomial-coefficient image
    and are rejected.
    """
    out = PolyDiffOp.zero()
    for (exps, ipow), coeff in element.terms.items():
        if ipow < 0:
            raise ValueError("cannot represent inverse unit powers as differential operators")
        term = PolyDiffOp.scalar(coeff)
        for idx, e in enumerate(exps):
            for _ in range(e):
                term = term * m5_rep(envelope.GEN_LABELS[idx], eps)
        for _ in range(ipow):
            term = term * m5_rep("I", eps)
        out = out + term
    return out


def verify_m5_rep(eps: int = -1) -> dict:
    """Commutator table of the represented generators vs the structure constants.

    Returns {(a, b): nonzero residual operator}; empty dict means the
    representation is exact.
    """
    from . import liealg

    alg = liealg.build_tangent(eps)
    labels = liealg.MINKOWSKI_LABELS
    reps = {label: m5_rep(label, eps) for label in labels}
    residuals = {}
    for a, b in itertools.combinations(labels, 2):
        lhs = op_commutator(reps[a], reps[b])
        rhs = PolyDiffOp.zero()
        for label, coeff in alg.bracket_gen(a, b).items():
            rhs = rhs + reps[label].scale(coeff)
        r = lhs - rhs
        if not r.is_zero():
            residuals[(a, b)] = r
    return residuals


# ---------------------------------------------------------------------------
# gamma matrices and the first-order operator built from them

class GammaSet:
    """Five 4x4 matrices with the anticommutation metric (1,-1,-1,-1,-1)."""

    def __init__(self, matrices):
        self.matrices = tuple(matrices)
        if len(self.matrices) != 5:
            raise ValueError("need exactly five matrices")

    @staticmethod
    def standard() -> "GammaSet":
        one = GaussianRational(1)
        i = GaussianRational(0, 1)
        z = GaussianRational(0)
        g0 = mat_from_rows([[C_ONE, C_ZERO, C_ZERO, C_ZERO],
                            [C_ZERO, C_ONE, C_ZERO, C_ZERO],
                            [C_ZERO, C_ZERO, CoeffPoly.scalar(-1), C_ZERO],
                            [C_ZERO, C_ZERO, C_ZERO, CoeffPoly.scalar(-1)]])
        # gk = [[0, sigma_k], [-sigma_k, 0]]
        def blocks(sig):
            rows = []
            for r in range(2):
                rows.append([CoeffPoly({(0, 0): z}), CoeffPoly({(0, 0): z}),
                             CoeffPoly({(0, 0): sig[r][0]}), CoeffPoly({(0, 0): sig[r][1]})])
            for r in range(2):
                rows.append([CoeffPoly({(0, 0): -sig[r][0]}), CoeffPoly({(0, 0): -sig[r][1]}),
                             CoeffPoly({(0, 0): z}), CoeffPoly({(0, 0): z})])
            return mat_from_rows(rows)

        s1 = ((z, one), (one, z))
        s2 = ((z, -i), (i, z))
        s3 = ((one, z), (z, -one))
        g1, g2, g3 = blocks(s1), blocks(s2), blocks(s3)
        # chirality element i*g0*g1*g2*g3, then the fifth matrix is i times it
        g5 = mat_scale(mat_mul(mat_mul(g0, g1), mat_mul(g2, g3)), C_I)
        g4 = mat_scale(g5, C_I)
        return GammaSet((g0, g1, g2, g3, g4))

    def clifford_violations(self) -> list:
        eta = (1, -1, -1, -1, -1)
        bad = []
        for a in range(5):
            for b in range(5):
                anti = mat_add(mat_mul(self.matrices[a], self.matrices[b]),
                               mat_mul(self.matrices[b], self.matrices[a]))
                expect = mat_identity(CoeffPoly.scalar(2 * eta[a])) if a == b else mat_zero()
                diff = mat_add(anti, mat_scale(expect, CoeffPoly.scalar(-1)))
                if not mat_is_zero(diff):
                    bad.append((a, b))
        return bad


def dirac_operator(gammas: GammaSet | None = None) -> PolyDiffOp:
    """First-order operator i gamma^a d_a on the carrier space."""
    gammas = gammas or GammaSet.standard()
    out = PolyDiffOp.zero()
    for a in range(5):
        out = out + PolyDiffOp.matrix(mat_scale(gammas.matrices[a], C_I)) \
            * PolyDiffOp.derivative(a)
    return out


def dirac_commutators(eps: int = -1, gammas: GammaSet | None = None) -> dict:
    """[D, g] for every generator g, with the gamma set validated first."""
    gammas = gammas or GammaSet.standard()
    if gammas.clifford_violations():
        raise ValueError("gamma set does not satisfy the anticommutation metric")
    if eps != -1:
        raise ValueError("the first-order operator is defined on the eps=-1 carrier metric")
    d = dirac_operator(gammas)
    from . import liealg

    return {label: op_commutator(d, m5_rep(label, eps))
            for label in liealg.MINKOWSKI_LABELS}
