"""Differential algebra over the five dual basis elements theta^0..theta^4.

Coefficients are enveloping-algebra elements and multiply with the
noncommutative product, so the wedge is only graded-commutative up to a
coefficient commutator.  The five derivations d0..d4 are mutually
commuting, which is what makes the exterior differential square to zero.

Gauge connections, their curvature 2-form, metric compatibility and the
Riemann-type tensor all live here; coefficients may optionally carry an
internal-symmetry matrix factor (square matrices of coefficients), since
the defining formulas are unchanged in the non-Abelian case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import envelope
from .envelope import NcElement, apply_derivation, nc_multiply
from .scalars import CoeffPoly, GaussianRational

N_DIRS = 5
ETA5 = (1, -1, -1, -1, -1)
DERIV = ("d0", "d1", "d2", "d3", "d4")


def _merge_indices(left: tuple, right: tuple):
    """Concatenate strictly increasing tuples; return (sign, sorted) or None."""
    combined = list(left) + list(right)
    if len(set(combined)) != len(combined):
        return None
    sign = 1
    order = sorted(range(len(combined)), key=lambda k: combined[k])
    # parity of the sorting permutation by counting inversions
    inv = 0
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                inv += 1
    sign = -1 if inv % 2 else 1
    return sign, tuple(sorted(combined))


class Form:
    """Exterior form of fixed degree; {increasing index tuple: NcElement}."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs=None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.degree = degree
        self.coeffs: dict[tuple, NcElement] = {}
        if coeffs:
            for idx, val in coeffs.items():
                if len(idx) != degree or list(idx) != sorted(set(idx)):
                    raise ValueError(f"bad index tuple {idx} for degree {degree}")
                if not val.is_zero():
                    self.coeffs[idx] = val

    @staticmethod
    def zero(degree: int = 0) -> "Form":
        return Form(degree)

    @staticmethod
    def from_scalar(value: NcElement) -> "Form":
        return Form(0, {(): value})

    @staticmethod
    def basis(index: int, coeff: NcElement | None = None) -> "Form":
        coeff = coeff if coeff is not None else NcElement.one()
        return Form(1, {(index,): coeff})

    def __add__(self, other: "Form") -> "Form":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        out = Form(self.degree)
        out.coeffs = dict(self.coeffs)
        for idx, val in other.coeffs.items():
            s = out.coeffs.get(idx, NcElement.zero()) + val
            if s.is_zero():
                out.coeffs.pop(idx, None)
            else:
                out.coeffs[idx] = s
        return out

    def __sub__(self, other: "Form") -> "Form":
        return self + other.scale_coeff(CoeffPoly.scalar(-1))

    def scale_coeff(self, c: CoeffPoly) -> "Form":
        out = Form(self.degree)
        for idx, val in self.coeffs.items():
            scaled = val.scale_coeff(c)
            if not scaled.is_zero():
                out.coeffs[idx] = scaled
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for idx in sorted(self.coeffs):
            basis = "^".join(f"th{a}" for a in idx) if idx else "1"
            parts.append(f"[{self.coeffs[idx]}] {basis}")
        return " + ".join(parts)

    __repr__ = __str__


def wedge(w1: Form, w2: Form, eps: int = -1) -> Form:
    """Product; coefficients multiply in left-to-right order."""
    degree = w1.degree + w2.degree
    if degree > N_DIRS:
        return Form(degree if degree <= N_DIRS else N_DIRS)
    out = Form(degree)
    for i1, b1 in w1.coeffs.items():
        for i2, b2 in w2.coeffs.items():
            merged = _merge_indices(i1, i2)
            if merged is None:
                continue
            sign, idx = merged
            add = nc_multiply(b1, b2, eps)
            if sign < 0:
                add = -add
            s = out.coeffs.get(idx, NcElement.zero()) + add
            if s.is_zero():
                out.coeffs.pop(idx, None)
            else:
                out.coeffs[idx] = s
    return out


def ext_d(w: Form, eps: int = -1) -> Form:
    """Exterior differential; no commutator terms since the derivations commute."""
    if w.degree >= N_DIRS:
        return Form(w.degree + 1)
    out = Form(w.degree + 1)
    for idx, b in w.coeffs.items():
        for a in range(N_DIRS):
            if a in idx:
                continue
            db = apply_derivation(DERIV[a], b, eps)
            if db.is_zero():
                continue
            merged = _merge_indices((a,), idx)
            sign, nidx = merged
            add = db if sign > 0 else -db
            s = out.coeffs.get(nidx, NcElement.zero()) + add
            if s.is_zero():
                out.coeffs.pop(nidx, None)
            else:
                out.coeffs[nidx] = s
    return out


def contract(direction: int, w: Form) -> Form:
    """Interior product with the basis derivation of the given direction."""
    if w.degree == 0:
        return Form(0)
    out = Form(w.degree - 1)
    for idx, b in w.coeffs.items():
        if direction not in idx:
            continue
        pos = idx.index(direction)
        nidx = idx[:pos] + idx[pos + 1:]
        add = b if pos % 2 == 0 else -b
        s = out.coeffs.get(nidx, NcElement.zero()) + add
        if s.is_zero():
            out.coeffs.pop(nidx, None)
        else:
            out.coeffs[nidx] = s
    return out


def lie_derive(direction: int, w: Form, eps: int = -1) -> Form:
    if w.degree == 0:
        return contract(direction, ext_d(w, eps))
    return ext_d(contract(direction, w), eps) + contract(direction, ext_d(w, eps))


def d_of_generator(label: str, eps: int = -1) -> Form:
    """Differential of a single generator as a 1-form."""
    return ext_d(Form.from_scalar(NcElement.generator(label)), eps)


# ---------------------------------------------------------------------------
# optional internal-symmetry matrix layer

NcMatrix = tuple  # rows of tuples of NcElement


def nmat(rows) -> NcMatrix:
    return tuple(tuple(r) for r in rows)


def nmat_dim(m) -> int:
    return len(m) if isinstance(m, tuple) else 1


def _is_matrix(v) -> bool:
    return isinstance(v, tuple)


def _v_add(a, b):
    if _is_matrix(a):
        n = len(a)
        return tuple(tuple(a[i][j] + b[i][j] for j in range(n)) for i in range(n))
    return a + b


def _v_neg(a):
    if _is_matrix(a):
        n = len(a)
        return tuple(tuple(-a[i][j] for j in range(n)) for i in range(n))
    return -a


def _v_mul(a, b, eps):
    if _is_matrix(a):
        n = len(a)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = NcElement.zero()
                for k in range(n):
                    acc = acc + nc_multiply(a[i][k], b[k][j], eps)
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)
    return nc_multiply(a, b, eps)


def _v_comm(a, b, eps):
    return _v_add(_v_mul(a, b, eps), _v_neg(_v_mul(b, a, eps)))


def _v_deriv(delta, a, eps):
    if _is_matrix(a):
        n = len(a)
        return tuple(tuple(apply_derivation(delta, a[i][j], eps) for j in range(n))
                     for i in range(n))
    return apply_derivation(delta, a, eps)


def _v_is_zero(a) -> bool:
    if _is_matrix(a):
        return all(e.is_zero() for row in a for e in row)
    return a.is_zero()


def _v_min_ell(a):
    if _is_matrix(a):
        orders = [e.min_ell_power() for row in a for e in row if not e.is_zero()]
        if not orders:
            raise ValueError("zero matrix has no ell order")
        return min(orders)
    return a.min_ell_power()


def _v_contract_ell(a):
    if _is_matrix(a):
        n = len(a)
        return tuple(tuple(a[i][j].contract_ell() for j in range(n)) for i in range(n))
    return a.contract_ell()


@dataclass(frozen=True)
class Connection:
    """Five coefficients of the canonical connection one-form.

    Components are NcElements, or same-size square NcMatrix values when an
    internal symmetry factor is present.
    """

    components: tuple

    def __post_init__(self):
        if len(self.components) != N_DIRS:
            raise ValueError("a connection needs exactly five components")

    @property
    def internal_dim(self) -> int:
        c = self.components[0]
        return len(c) if _is_matrix(c) else 1


def field_strength(conn: Connection, eps: int = -1) -> dict:
    """{(i, j) with i < j: F_ij} from derivative and commutator terms."""
    a = conn.components
    out = {}
    for i in range(N_DIRS):
        for j in range(i + 1, N_DIRS):
            f = _v_add(_v_add(_v_deriv(DERIV[i], a[j], eps),
                              _v_neg(_v_deriv(DERIV[j], a[i], eps))),
                       _v_comm(a[i], a[j], eps))
            if not _v_is_zero(f):
                out[(i, j)] = f
    return out


def field_strength_form(conn: Connection, eps: int = -1) -> Form:
    """Scalar-coefficient field strength assembled as a 2-form."""
    if conn.internal_dim != 1:
        raise ValueError("form assembly supports the scalar case only")
    out = Form(2)
    for (i, j), f in field_strength(conn, eps).items():
        out = out + Form(2, {(i, j): f})
    return out


def curvature_of_connection(conn: Connection, eps: int = -1) -> Form:
    """Square of the connection map applied to the module unit.

    Independent route to the field strength: expand
    d(A_i) wedge theta^i plus (A_j theta^j) wedge (A_i theta^i).
    """
    if conn.internal_dim != 1:
        raise ValueError("form assembly supports the scalar case only")
    out = Form(2)
    for i in range(N_DIRS):
        a_i = conn.components[i]
        out = out + wedge(ext_d(Form.from_scalar(a_i), eps), Form.basis(i), eps)
    a_form = Form(1, {(i,): conn.components[i] for i in range(N_DIRS)
                      if not conn.components[i].is_zero()})
    out = out + wedge(a_form, a_form, eps)
    return out


def action_density(fs: dict, eps: int = -1):
    """Full index contraction of the field strength with the (1,-1,-1,-1,-1) metric.

    Returns (total, spacetime_part, extra_part): the total equals the
    spacetime block plus twice the mixed block.
    """
    zero = None
    for f in fs.values():
        zero = _v_neg(_v_add(f, _v_neg(f)))
        break
    total = zero if zero is not None else NcElement.zero()
    st = total
    extra = total
    for (i, j), f in fs.items():
        raised = ETA5[i] * ETA5[j]
        # ordered sum over (i,j) and (j,i): F_ij F^ij + F_ji F^ji = 2 eta F_ij F_ij
        sq = _v_mul(f, f, eps)
        if raised == -1:
            sq = _v_neg(sq)
        sq = _v_add(sq, sq)
        total = _v_add(total, sq)
        if j == 4:
            extra = _v_add(extra, sq)
        else:
            st = _v_add(st, sq)
    return total, st, extra


def gauge_variation(conn: Connection, u, eps: int = -1) -> Connection:
    """First-order change of the connection under 1 + (formal small) u."""
    comps = tuple(_v_add(_v_neg(_v_deriv(DERIV[i], u, eps)),
                         _v_comm(u, conn.components[i], eps))
                  for i in range(N_DIRS))
    return Connection(comps)


def field_strength_variation(conn: Connection, delta: Connection, eps: int = -1) -> dict:
    """Linearization of the field strength around conn in direction delta."""
    a, da = conn.components, delta.components
    out = {}
    for i in range(N_DIRS):
        for j in range(i + 1, N_DIRS):
            f = _v_add(_v_add(_v_deriv(DERIV[i], da[j], eps),
                              _v_neg(_v_deriv(DERIV[j], da[i], eps))),
                       _v_add(_v_comm(da[i], a[j], eps), _v_comm(a[i], da[j], eps)))
            out[(i, j)] = f
    return out


# ---------------------------------------------------------------------------
# metric, compatible connection residual, curvature tensor

def metric_flat() -> dict:
    """{(a,b): NcElement} diagonal metric with entries from ETA5."""
    return {(a, a): NcElement.scalar(ETA5[a]) for a in range(N_DIRS)}


def metric_entry(g: dict, a: int, b: int) -> NcElement:
    return g.get((a, b), g.get((b, a), NcElement.zero()))


def christoffel_residual(g: dict, gamma: dict, eps: int = -1) -> dict:
    """Compatibility defect for every (b, d, e) index triple.

    gamma maps (a, d, e) -> NcElement, symmetric in (d, e); the metric
    factor multiplies from the left since coefficients do not commute.
    """
    half = CoeffPoly.gauss(Fraction(1, 2))
    out = {}
    for b in range(N_DIRS):
        for d in range(N_DIRS):
            for e in range(N_DIRS):
                acc = NcElement.zero()
                for a in range(N_DIRS):
                    gam = gamma.get((a, d, e), NcElement.zero())
                    if gam.is_zero():
                        continue
                    acc = acc + nc_multiply(metric_entry(g, a, b), gam, eps)
                rhs = apply_derivation(DERIV[e], metric_entry(g, b, d), eps) \
                    + apply_derivation(DERIV[d], metric_entry(g, e, b), eps) \
                    - apply_derivation(DERIV[b], metric_entry(g, d, e), eps)
                acc = acc - rhs.scale_coeff(half)
                if not acc.is_zero():
                    out[(b, d, e)] = acc
    return out


def solve_christoffel_diagonal(g: dict, eps: int = -1) -> dict:
    """Connection coefficients from a diagonal metric with invertible entries.

    Supported diagonal entries are (sign) * I^k, whose inverses exist in the
    enveloping algebra; the compatibility relation is then solvable slot by
    slot.
    """
    half = CoeffPoly.gauss(Fraction(1, 2))
    inverses = []
    for a in range(N_DIRS):
        entry = metric_entry(g, a, a)
        if len(entry.terms) != 1:
            raise ValueError("diagonal entries must be monomials")
        (mono, coeff), = entry.terms.items()
        exps, ipow = mono
        if any(exps):
            raise ValueError("diagonal entries must be unit powers")
        if coeff.terms.keys() != {(0, 0)}:
            raise ValueError("diagonal entries must be constant multiples of unit powers")
        gr = coeff.terms[(0, 0)]
        inv = NcElement({((0,) * envelope.N_GENS, -ipow):
                         CoeffPoly({(0, 0): GaussianRational(1) / gr})})
        inverses.append(inv)
    gamma = {}
    for a in range(N_DIRS):
        for d in range(N_DIRS):
            for e in range(d, N_DIRS):
                rhs = apply_derivation(DERIV[e], metric_entry(g, a, d), eps) \
                    + apply_derivation(DERIV[d], metric_entry(g, e, a), eps) \
                    - apply_derivation(DERIV[a], metric_entry(g, d, e), eps)
                val = nc_multiply(inverses[a], rhs.scale_coeff(half), eps)
                if not val.is_zero():
                    gamma[(a, d, e)] = val
                    gamma[(a, e, d)] = val
    return gamma


def curvature(gamma: dict, eps: int = -1) -> dict:
    """Riemann-type tensor {(a,b,c,e): NcElement} with factor order preserved.

    The derivation set is Abelian so there is no structure-constant term.
    """
    out = {}
    for a in range(N_DIRS):
        for b in range(N_DIRS):
            for c in range(N_DIRS):
                for e in range(N_DIRS):
                    acc = apply_derivation(
                        DERIV[b], gamma.get((a, c, e), NcElement.zero()), eps)
                    acc = acc - apply_derivation(
                        DERIV[c], gamma.get((a, b, e), NcElement.zero()), eps)
                    for n in range(N_DIRS):
                        acc = acc + nc_multiply(gamma.get((a, b, n), NcElement.zero()),
                                                gamma.get((n, c, e), NcElement.zero()), eps)
                        acc = acc - nc_multiply(gamma.get((a, c, n), NcElement.zero()),
                                                gamma.get((n, b, e), NcElement.zero()), eps)
                    if not acc.is_zero():
                        out[(a, b, c, e)] = acc
    return out


# ---------------------------------------------------------------------------
# order-in-ell bookkeeping for the field equation

def field_eq_order_report(conn: Connection, eps: int = -1) -> dict:
    """Group the field-equation terms and report the minimal ell order of each.

    The equation is sum_a eta^aa ( d_a F_{a nu} - [A_a, F_{a nu}] ) = 0.  The
    report separates, for every free index nu, the flat-spacetime divergence
    from the three deviation groups: the extra-direction divergence, the
    spacetime commutator term and the extra-direction commutator term.
    """
    a = conn.components
    fs = field_strength(conn, eps)

    def f_entry(i, j):
        if i == j:
            return None
        if i < j:
            return fs.get((i, j))
        val = fs.get((j, i))
        return _v_neg(val) if val is not None else None

    report = {}
    for nu in range(N_DIRS - 1):
        groups = {"divergence_spacetime": None, "divergence_extra": None,
                  "commutator_spacetime": None, "commutator_extra": None}

        def add(key, val):
            if val is None or _v_is_zero(val):
                return
            groups[key] = val if groups[key] is None else _v_add(groups[key], val)

        for alpha in range(N_DIRS):
            f = f_entry(alpha, nu)
            if f is None:
                continue
            sign = ETA5[alpha]
            div = _v_deriv(DERIV[alpha], f, eps)
            com = _v_comm(a[alpha], f, eps)
            if sign == -1:
                div, com = _v_neg(div), _v_neg(com)
            add("divergence_extra" if alpha == 4 else "divergence_spacetime", div)
            add("commutator_extra" if alpha == 4 else "commutator_spacetime", _v_neg(com))

        entry = {}
        for key, val in groups.items():
            if val is None:
                entry[key] = {"zero": True}
            else:
                entry[key] = {"zero": False, "min_ell_order": _v_min_ell(val),
                              "vanishes_at_ell_zero": _v_is_zero(_v_contract_ell(val))}
        report[nu] = entry
    return report


def random_field_element(rng, allow_unit_inverse: bool = False) -> NcElement:
    """Random low-degree polynomial in the coordinates and the unit operator."""
    x_block = list(envelope._X_BLOCK)
    out = NcElement.zero()
    for _ in range(rng.randint(1, 3)):
        exps = [0] * envelope.N_GENS
        for g in rng.sample(x_block, k=2):
            exps[g] = rng.randint(0, 1)
        ipow = rng.randint(-1 if allow_unit_inverse else 0, 1)
        coeff = CoeffPoly.gauss(rng.randint(-2, 2), rng.randint(-1, 1))
        if coeff.is_zero():
            continue
        out = out + NcElement({(tuple(exps), ipow): coeff})
    return out


def random_connection(rng, internal_dim: int = 1, eps: int = -1) -> Connection:
    """Random connection whose coefficients are configuration-space fields.

    The extra component carries an explicit ell factor, matching its rescaled
    role; all deviation terms of the field equation are then at least second
    order in ell.
    """
    def scalar_component(extra: bool) -> NcElement:
        el = random_field_element(rng)
        return el.scale_coeff(CoeffPoly.ell(1)) if extra else el

    if internal_dim == 1:
        comps = tuple(scalar_component(i == 4) for i in range(N_DIRS))
        return Connection(comps)

    def traceless_antiherm(extra: bool) -> NcMatrix:
        # 2x2 internal factor spanned by the antihermitian basis
        base = [scalar_component(extra) for _ in range(3)]
        i_coeff = CoeffPoly.i_unit()
        m00 = base[0].scale_coeff(i_coeff)
        m11 = -base[0].scale_coeff(i_coeff)
        m01 = base[1] + base[2].scale_coeff(i_coeff)
        m10 = -base[1] + base[2].scale_coeff(i_coeff)
        return nmat([[m00, m01], [m10, m11]])

    comps = tuple(traceless_antiherm(i == 4) for i in range(N_DIRS))
    return Connection(comps)
