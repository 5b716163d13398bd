import random

import pytest

from ncst import diffop, envelope, liealg
from ncst.diffop import PolyDiffOp
from ncst.scalars import C_I, CoeffPoly


def test_carrier_images():
    p0 = diffop.m5_rep("p0")
    assert p0 == PolyDiffOp.derivative(0, C_I)
    unit = diffop.m5_rep("I")
    assert unit == PolyDiffOp.scalar(1) + PolyDiffOp.derivative(4, C_I * CoeffPoly.ell(1))
    m01 = diffop.m5_rep("M01")
    built = (PolyDiffOp.coordinate(0) * PolyDiffOp.derivative(1)
             + PolyDiffOp.coordinate(1) * PolyDiffOp.derivative(0)).scale(C_I)
    assert m01 == built


def test_leibniz_basics():
    d0 = PolyDiffOp.derivative(0)
    xi0 = PolyDiffOp.coordinate(0)
    assert diffop.op_commutator(d0, xi0) == PolyDiffOp.scalar(1)
    assert diffop.op_commutator(d0, PolyDiffOp.coordinate(1)).is_zero()
    # second order contraction: d^2 xi^2 has a constant term 2
    prod = (d0 * d0) * (xi0 * xi0)
    assert prod.terms[((0, 0, 0, 0, 0), (0, 0, 0, 0, 0))] == diffop.mat_identity(
        CoeffPoly.scalar(2))


def test_commutators_match_algebra_examples():
    p0, x0, x1 = (diffop.m5_rep(k) for k in ("p0", "x0", "x1"))
    unit = diffop.m5_rep("I")
    m01 = diffop.m5_rep("M01")
    assert diffop.op_commutator(p0, x0) == unit.scale(C_I)
    # coordinate commutator closes on the rotation generator (eps = -1 branch)
    assert diffop.op_commutator(x0, x1) == m01.scale(C_I * CoeffPoly.ell(2))


@pytest.mark.parametrize("eps", [-1, 1])
def test_full_table_verification(eps):
    assert diffop.verify_m5_rep(eps) == {}


def test_perturbed_unit_detected():
    # dropping the constant part of the unit image breaks the basic pair
    p0 = diffop.m5_rep("p0")
    x0 = diffop.m5_rep("x0")
    bad_unit = PolyDiffOp.derivative(4, C_I * CoeffPoly.ell(1))
    residual = diffop.op_commutator(p0, x0) - bad_unit.scale(C_I)
    assert not residual.is_zero()


def test_commutator_algebra_properties():
    rng = random.Random(17)

    def random_op():
        out = PolyDiffOp.zero()
        for _ in range(2):
            xi = [0] * 5
            dv = [0] * 5
            xi[rng.randrange(5)] = rng.randint(0, 1)
            dv[rng.randrange(5)] = rng.randint(0, 1)
            coeff = CoeffPoly.gauss(rng.randint(-2, 2), rng.randint(-1, 1))
            out = out + PolyDiffOp({(tuple(xi), tuple(dv)):
                                    diffop.mat_identity(coeff)})
        return out

    for _ in range(15):
        a, b, c = random_op(), random_op(), random_op()
        assert (diffop.op_commutator(a, b) + diffop.op_commutator(b, a)).is_zero()
        jac = diffop.op_commutator(diffop.op_commutator(a, b), c) \
            + diffop.op_commutator(diffop.op_commutator(b, c), a) \
            + diffop.op_commutator(diffop.op_commutator(c, a), b)
        assert jac.is_zero()


def test_gamma_set_anticommutation():
    gammas = diffop.GammaSet.standard()
    assert gammas.clifford_violations() == []


def test_dirac_commutators():
    gammas = diffop.GammaSet.standard()
    comm = diffop.dirac_commutators()
    for mu in range(4):
        assert comm[f"p{mu}"].is_zero()
    assert comm["I"].is_zero()
    # [D, x_mu] = i gamma^nu eta_{nu mu} (unit image) + i gamma^4 ell (momentum image)
    eta = (1, -1, -1, -1)
    for mu in range(4):
        expected = (diffop.PolyDiffOp.matrix(
            diffop.mat_scale(gammas.matrices[mu], C_I.scale(eta[mu])))
            * diffop.m5_rep("I"))
        expected = expected + (diffop.PolyDiffOp.matrix(
            diffop.mat_scale(gammas.matrices[4], C_I))
            * diffop.m5_rep(f"p{mu}")).scale(CoeffPoly.ell(1))
        assert comm[f"x{mu}"] == expected


def test_dirac_rejects_bad_gammas():
    gammas = diffop.GammaSet.standard()
    broken = diffop.GammaSet((gammas.matrices[0],) * 5)
    with pytest.raises(ValueError):
        diffop.dirac_commutators(gammas=broken)


def test_rep_element_products():
    # image of a product equals the product of images
    el = envelope.nc_multiply(envelope.NcElement.generator("p0"),
                              envelope.NcElement.generator("x0"))
    lhs = diffop.rep_element(el)
    rhs = diffop.m5_rep("p0") * diffop.m5_rep("x0")
    assert lhs == rhs
    with pytest.raises(ValueError):
        diffop.rep_element(envelope.NcElement.unit_power(-1))


def test_pretty_print_deterministic():
    op = diffop.m5_rep("x0")
    assert str(op) == "(1*i*ell^1)*xi4*d0 + (1)*xi0 + (1*i*ell^1)*xi0*d4"
