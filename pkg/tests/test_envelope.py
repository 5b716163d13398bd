import random
from fractions import Fraction

import pytest

from ncst import envelope as env
from ncst.envelope import NcElement
from ncst.scalars import CoeffPoly


def gen(label):
    return NcElement.generator(label)


def test_defining_commutators():
    i = CoeffPoly.i_unit()
    assert env.nc_commutator(gen("x0"), gen("x1")) == \
        NcElement.generator("M01").scale_coeff(i * CoeffPoly.ell(2))
    assert env.nc_commutator(gen("p0"), gen("x0")) == \
        NcElement.unit_power(1).scale_coeff(i)
    assert env.nc_commutator(gen("p0"), gen("x1")).is_zero()
    # opposite deformation sign
    assert env.nc_commutator(gen("x0"), gen("x1"), eps=1) == \
        NcElement.generator("M01").scale_coeff(i.scale(-1) * CoeffPoly.ell(2))


def test_unit_laws_and_inverse():
    rng = random.Random(3)
    one = NcElement.one()
    for _ in range(10):
        a = env.random_element(rng)
        assert env.nc_multiply(one, a) == a
        assert env.nc_multiply(a, one) == a
    assert env.nc_multiply(NcElement.unit_power(1), NcElement.unit_power(-1)) == one
    assert env.nc_multiply(NcElement.unit_power(-2), NcElement.unit_power(2)) == one


def test_inverse_unit_commutators():
    i = CoeffPoly.i_unit()
    j_inv = NcElement.unit_power(-1)
    assert env.nc_commutator(gen("p0"), j_inv).is_zero()
    expected = NcElement({((0,) * env.N_GENS, -2): i * CoeffPoly.ell(2)})
    expected = env.nc_multiply(gen("p0"), expected)
    assert env.nc_commutator(gen("x0"), j_inv) == expected  # -i eps ell^2 p I^-2 at eps=-1


def test_heisenberg_dual_property():
    i = CoeffPoly.i_unit()
    for mu in range(4):
        y = env.heisenberg_dual(mu)
        for nu in range(4):
            c = env.nc_commutator(gen(f"p{nu}"), y)
            if nu == mu:
                assert c == NcElement.scalar(i.scale(env.ETA4[mu]))
            else:
                assert c.is_zero()


def test_heisenberg_dual_contraction_limit():
    # at vanishing deformation length the dual reduces to x times the unit inverse
    y = env.heisenberg_dual(2)
    reduced = y.contract_ell()
    assert reduced == env.nc_multiply(gen("x2"), NcElement.unit_power(-1))


def test_associativity_and_confluence():
    rng = random.Random(11)
    for _ in range(100):
        a = env.random_element(rng)
        b = env.random_element(rng)
        c = env.random_element(rng)
        left = env.nc_multiply(env.nc_multiply(a, b), c)
        right = env.nc_multiply(a, env.nc_multiply(b, c))
        assert left == right


def test_derivation_generator_actions():
    assert env.apply_derivation("d0", gen("x0")) == NcElement.unit_power(1)
    assert env.apply_derivation("d1", gen("x1")) == \
        NcElement.unit_power(1).scale_coeff(CoeffPoly.scalar(-1))
    assert env.apply_derivation("d4", gen("x0")) == \
        gen("p0").scale_coeff(CoeffPoly.ell(1))
    assert env.apply_derivation("d4", gen("p0")).is_zero()
    assert env.apply_derivation("dil", gen("p0")) == gen("p0")
    assert env.apply_derivation("dil", gen("x0")).is_zero()
    assert env.apply_derivation("dil", NcElement.unit_power(1)) == NcElement.unit_power(1)
    assert env.apply_derivation("dil", NcElement.unit_power(-1)) == \
        NcElement.unit_power(-1).scale_coeff(CoeffPoly.scalar(-1))
    # rotation generators: d_sigma gives the two momentum terms
    d0_m01 = env.apply_derivation("d0", gen("M01"))
    assert d0_m01 == gen("p1")
    assert env.apply_derivation("d1", gen("M01")) == gen("p0")
    # derivations kill the inverse unit
    assert env.apply_derivation("d0", NcElement.unit_power(-1)).is_zero()


def test_derivations_satisfy_leibniz():
    rng = random.Random(5)
    for _ in range(30):
        a = env.random_element(rng)
        b = env.random_element(rng)
        for d in ("d0", "d3", "d4", "dil"):
            lhs = env.apply_derivation(d, env.nc_multiply(a, b))
            rhs = env.nc_multiply(env.apply_derivation(d, a), b) \
                + env.nc_multiply(a, env.apply_derivation(d, b))
            assert lhs == rhs


def test_translation_derivations_commute():
    labels = list(env.GEN_LABELS) + ["I"]
    for g in labels:
        el = gen(g) if g != "I" else NcElement.unit_power(1)
        for da in ("d0", "d1", "d2", "d3", "d4"):
            for db in ("d0", "d2", "d4"):
                ab = env.apply_derivation(da, env.apply_derivation(db, el))
                ba = env.apply_derivation(db, env.apply_derivation(da, el))
                assert ab == ba


def test_ell_order_values():
    assert env.ell_order(env.apply_derivation("d4", gen("x0"))) == 1
    assert env.ell_order(env.nc_commutator(gen("x0"), gen("x1"))) == 2
    assert env.ell_order(gen("p0")) == 0
    with pytest.raises(ValueError):
        env.ell_order(NcElement.zero())


def test_planewave_orders_numeric():
    assert env.planewave_commutator_residual(0, 0, kvec=(1, 0, 0, 0)).is_zero()
    assert env.planewave_commutator_residual(0, 1, kvec=(1, 0, 0, 0)).is_zero()
    assert env.planewave_commutator_residual(
        2, 2, kvec=(1, Fraction(1, 2), -2, 3)).is_zero()


def test_planewave_orders_symbolic():
    for mu, order in [(0, 1), (0, 2), (3, 2)]:
        assert env.planewave_commutator_residual(mu, order, kvec=None) == {}


def test_planewave_order_guard():
    with pytest.raises(ValueError):
        env.planewave_commutator_residual(0, 5)


def test_text_form_deterministic():
    a = env.nc_multiply(gen("x0"), gen("p0"))
    assert str(a) == "(-1*i)*I + (1)*p0*x0"
