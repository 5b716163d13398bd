"""Structure-constant engine for the flat, deformed, and pseudo-orthogonal algebras.

Generators are referred to by string labels.  An algebra element is a
sparse mapping ``{label: CoeffPoly}``; structure constants are stored for
every ordered generator pair so antisymmetry is a checkable property
rather than a storage convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .scalars import CoeffPoly

ETA4 = (1, -1, -1, -1)

MINKOWSKI_LABELS = (
    "M01", "M02", "M03", "M12", "M13", "M23",
    "p0", "p1", "p2", "p3",
    "x0", "x1", "x2", "x3",
    "I",
)

Element = dict  # {label: CoeffPoly}


def elem(*pairs) -> Element:
    """Build an element from (label, CoeffPoly) pairs, dropping zeros."""
    out: Element = {}
    for label, coeff in pairs:
        if coeff.is_zero():
            continue
        acc = out.get(label)
        s = coeff if acc is None else acc + coeff
        if s.is_zero():
            out.pop(label, None)
        else:
            out[label] = s
    return out


def elem_add(a: Element, b: Element) -> Element:
    out = dict(a)
    for label, coeff in b.items():
        acc = out.get(label)
        s = coeff if acc is None else acc + coeff
        if s.is_zero():
            out.pop(label, None)
        else:
            out[label] = s
    return out


def elem_scale(a: Element, factor: CoeffPoly) -> Element:
    if factor.is_zero():
        return {}
    out = {}
    for label, coeff in a.items():
        prod = coeff * factor
        if not prod.is_zero():
            out[label] = prod
    return out


def elem_neg(a: Element) -> Element:
    return {label: -coeff for label, coeff in a.items()}


def elem_is_zero(a: Element) -> bool:
    return not a


def elem_str(a: Element) -> str:
    if not a:
        return "0"
    return " + ".join(f"({a[label]})*{label}" for label in sorted(a))


@dataclass(frozen=True)
class LieAlgebraSpec:
    """Ordered generator labels plus the full bracket table."""

    name: str
    generators: tuple
    structure: dict = field(compare=False)  # {(a, b): Element}
    eps: int | None = None
    eps_prime: int | None = None

    def bracket_gen(self, a: str, b: str) -> Element:
        return self.structure.get((a, b), {})

    def bracket(self, u: Element, v: Element) -> Element:
        out: Element = {}
        for la, ca in u.items():
            for lb, cb in v.items():
                base = self.structure.get((la, lb))
                if not base:
                    continue
                out = elem_add(out, elem_scale(base, ca * cb))
        return out

    def to_json_dict(self) -> dict:
        triples = []
        for (a, b) in sorted(self.structure):
            if a >= b:
                continue
            target = self.structure[(a, b)]
            for label in sorted(target):
                triples.append([a, b, label, str(target[label])])
        return {"name": self.name, "generators": list(self.generators), "triples": triples}


def _register(structure: dict, a: str, b: str, value: Element) -> None:
    if value:
        structure[(a, b)] = value
        structure[(b, a)] = elem_neg(value)


def _m_label(i: int, j: int):
    """Canonical label and sign for the antisymmetric rotation generators."""
    if i == j:
        return None, 0
    if i < j:
        return f"M{i}{j}", 1
    return f"M{j}{i}", -1


def _m_elem(i: int, j: int, coeff: CoeffPoly) -> Element:
    label, sign = _m_label(i, j)
    if sign == 0 or coeff.is_zero():
        return {}
    return {label: coeff if sign > 0 else -coeff}


def _mm_bracket(mu: int, nu: int, rho: int, sigma: int, eta) -> Element:
    # [M_ab, M_cd] = i(M_ad eta_bc + M_bc eta_ad - M_bd eta_ac - M_ac eta_bd)
    i = CoeffPoly.i_unit()
    out: Element = {}
    out = elem_add(out, _m_elem(mu, sigma, i.scale(eta[nu]) if nu == rho else CoeffPoly.zero()))
    out = elem_add(out, _m_elem(nu, rho, i.scale(eta[mu]) if mu == sigma else CoeffPoly.zero()))
    out = elem_add(out, _m_elem(nu, sigma, i.scale(-eta[mu]) if mu == rho else CoeffPoly.zero()))
    out = elem_add(out, _m_elem(mu, rho, i.scale(-eta[nu]) if nu == sigma else CoeffPoly.zero()))
    return out


def _vector_bracket(mu: int, nu: int, lam: int, prefix: str) -> Element:
    # [M_{mu nu}, v_lam] = i(v_mu eta_{nu lam} - v_nu eta_{mu lam})
    i = CoeffPoly.i_unit()
    out: Element = {}
    if nu == lam:
        out = elem_add(out, {f"{prefix}{mu}": i.scale(ETA4[nu])})
    if mu == lam:
        out = elem_add(out, elem_neg({f"{prefix}{nu}": i.scale(ETA4[mu])}))
    return out


def _build_minkowski(name: str, pp: CoeffPoly, xx: CoeffPoly, pI: CoeffPoly,
                     xI: CoeffPoly, eps=None, eps_prime=None) -> LieAlgebraSpec:
    """Common scaffold for the flat algebra and its two-parameter deformation.

    pp, xx: coefficients of M in [p,p] and [x,x]; pI, xI: coefficients of x
    and p in [p,I] and [x,I].
    """
    structure: dict = {}
    i = CoeffPoly.i_unit()
    m_pairs = [(a, b) for a in range(4) for b in range(a + 1, 4)]

    for (a, b), (c, d) in itertools.product(m_pairs, m_pairs):
        if (a, b) == (c, d):
            continue
        _register(structure, f"M{a}{b}", f"M{c}{d}", _mm_bracket(a, b, c, d, ETA4))
    for (a, b) in m_pairs:
        for lam in range(4):
            _register(structure, f"M{a}{b}", f"p{lam}", _vector_bracket(a, b, lam, "p"))
            _register(structure, f"M{a}{b}", f"x{lam}", _vector_bracket(a, b, lam, "x"))
    for mu in range(4):
        for nu in range(4):
            if mu < nu:
                _register(structure, f"p{mu}", f"p{nu}", _m_elem(mu, nu, pp))
                _register(structure, f"x{mu}", f"x{nu}", _m_elem(mu, nu, xx))
            # [p_mu, x_nu] = i eta_{mu nu} I
            if mu == nu:
                _register(structure, f"p{mu}", f"x{nu}", {"I": i.scale(ETA4[mu])})
            else:
                _register(structure, f"p{mu}", f"x{nu}", {})
        _register(structure, f"p{mu}", "I", elem(("x" + str(mu), pI)))
        _register(structure, f"x{mu}", "I", elem(("p" + str(mu), xI)))
    # rotations commute with I; drop empty entries
    structure = {k: v for k, v in structure.items() if v}
    return LieAlgebraSpec(name=name, generators=MINKOWSKI_LABELS, structure=structure,
                          eps=eps, eps_prime=eps_prime)


def build_r0() -> LieAlgebraSpec:
    """Flat relativistic quantum mechanics algebra with central unit."""
    zero = CoeffPoly.zero()
    return _build_minkowski("r0", zero, zero, zero, zero)


def build_deformed(eps: int, eps_prime: int) -> LieAlgebraSpec:
    """Two-parameter deformation; ell and inv_radius stay formal symbols."""
    if eps not in (1, -1) or eps_prime not in (1, -1):
        raise ValueError("eps and eps_prime must be +1 or -1")
    i = CoeffPoly.i_unit()
    pp = i.scale(-eps_prime) * CoeffPoly.inv_radius(2)      # [p,p] = -i eps' invR^2 M
    xx = i.scale(-eps) * CoeffPoly.ell(2)                   # [x,x] = -i eps ell^2 M
    pI = i.scale(-eps_prime) * CoeffPoly.inv_radius(2)      # [p,I] = -i eps' invR^2 x
    xI = i.scale(eps) * CoeffPoly.ell(2)                    # [x,I] = +i eps ell^2 p
    return _build_minkowski(f"deformed(eps={eps},eps'={eps_prime})", pp, xx, pI, xI,
                            eps=eps, eps_prime=eps_prime)


def build_tangent(eps: int) -> LieAlgebraSpec:
    """Deformed algebra at inv_radius = 0 (the tangent-space algebra)."""
    alg = build_deformed(eps, 1)
    structure = {}
    for key, value in alg.structure.items():
        contracted = {label: coeff.contract(ell_to_zero=False, inv_radius_to_zero=True)
                      for label, coeff in value.items()}
        contracted = {l: c for l, c in contracted.items() if not c.is_zero()}
        if contracted:
            structure[key] = contracted
    return LieAlgebraSpec(name=f"tangent(eps={eps})", generators=alg.generators,
                          structure=structure, eps=eps, eps_prime=None)


def contract_to_flat(alg: LieAlgebraSpec) -> LieAlgebraSpec:
    """Substitute ell -> 0 and inv_radius -> 0 in every coefficient."""
    structure = {}
    for key, value in alg.structure.items():
        contracted = {label: coeff.contract() for label, coeff in value.items()}
        contracted = {l: c for l, c in contracted.items() if not c.is_zero()}
        if contracted:
            structure[key] = contracted
    return LieAlgebraSpec(name=alg.name + "|ell=0,invR=0", generators=alg.generators,
                          structure=structure)


def build_pseudo_orthogonal(signature) -> LieAlgebraSpec:
    """Rotation algebra of the diagonal metric ``signature`` (length 5 or 6)."""
    n = len(signature)
    if n not in (5, 6):
        raise ValueError("signature must have length 5 or 6")
    if any(s not in (1, -1) for s in signature):
        raise ValueError("signature entries must be +1 or -1")
    labels = tuple(f"M{a}{b}" for a in range(n) for b in range(a + 1, n))
    structure: dict = {}
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for (a, b), (c, d) in itertools.product(pairs, pairs):
        if (a, b) == (c, d):
            continue
        _register(structure, f"M{a}{b}", f"M{c}{d}", _mm_bracket(a, b, c, d, signature))
    structure = {k: v for k, v in structure.items() if v}
    return LieAlgebraSpec(name=f"so{signature}", generators=labels, structure=structure)


# ---------------------------------------------------------------------------
# consistency checks


def antisymmetry_violations(alg: LieAlgebraSpec) -> dict:
    out = {}
    for a, b in itertools.combinations(alg.generators, 2):
        residual = elem_add(alg.bracket_gen(a, b), alg.bracket_gen(b, a))
        if residual:
            out[(a, b)] = residual
    return out


def check_jacobi(alg: LieAlgebraSpec) -> dict:
    """Return {(a,b,c): nonzero residual element}; empty dict means exact zero."""
    out = {}
    for a, b, c in itertools.combinations(alg.generators, 3):
        r = alg.bracket(alg.bracket_gen(a, b), {c: CoeffPoly.scalar(1)})
        r = elem_add(r, alg.bracket(alg.bracket_gen(b, c), {a: CoeffPoly.scalar(1)}))
        r = elem_add(r, alg.bracket(alg.bracket_gen(c, a), {b: CoeffPoly.scalar(1)}))
        if r:
            out[(a, b, c)] = r
    return out


def embedding_map(eps: int, eps_prime: int) -> dict:
    """Images of the deformed generators inside the six-index rotation algebra.

    The x map carries a minus sign relative to the naive reading; with the
    bracket conventions used here this is the unique choice under which the
    embedding is an exact homomorphism (see check_embedding tests).
    """
    out: dict = {}
    for a in range(4):
        for b in range(a + 1, 4):
            out[f"M{a}{b}"] = {f"M{a}{b}": CoeffPoly.scalar(1)}
    for mu in range(4):
        out[f"p{mu}"] = {f"M{mu}4": CoeffPoly.inv_radius(1)}
        out[f"x{mu}"] = {f"M{mu}5": CoeffPoly.ell(1).scale(-1)}
    out["I"] = {"M45": CoeffPoly.ell(1) * CoeffPoly.inv_radius(1)}
    return out


def check_embedding(eps: int, eps_prime: int, flip_x_sign: bool = False) -> dict:
    """Compare deformed brackets against their images in the big rotation algebra.

    Returns {(a,b): nonzero residual element}; empty means the embedding
    reproduces every commutator exactly.
    """
    deformed = build_deformed(eps, eps_prime)
    big = build_pseudo_orthogonal((1, -1, -1, -1, eps_prime, eps))
    images = embedding_map(eps, eps_prime)
    if flip_x_sign:
        images = dict(images)
        for mu in range(4):
            images[f"x{mu}"] = elem_neg(images[f"x{mu}"])

    def push(element: Element) -> Element:
        out: Element = {}
        for label, coeff in element.items():
            out = elem_add(out, elem_scale(images[label], coeff))
        return out

    residuals = {}
    for a, b in itertools.combinations(deformed.generators, 2):
        lhs = big.bracket(images[a], images[b])
        rhs = push(deformed.bracket_gen(a, b))
        r = elem_add(lhs, elem_neg(rhs))
        if r:
            residuals[(a, b)] = r
    return residuals


def corrupt(alg: LieAlgebraSpec, a: str, b: str, label: str) -> LieAlgebraSpec:
    """Copy of alg with +1 added to one structure coefficient (for sensitivity tests)."""
    structure = {k: dict(v) for k, v in alg.structure.items()}
    entry = structure.setdefault((a, b), {})
    entry[label] = entry.get(label, CoeffPoly.zero()) + CoeffPoly.scalar(1)
    return LieAlgebraSpec(name=alg.name + "|corrupt", generators=alg.generators,
                          structure=structure, eps=alg.eps, eps_prime=alg.eps_prime)
