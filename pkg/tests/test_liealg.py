import itertools

import pytest

from ncst import liealg
from ncst.scalars import CoeffPoly


def test_flat_bracket_entries():
    alg = liealg.build_r0()
    assert alg.bracket_gen("p0", "x0") == {"I": CoeffPoly.i_unit()}
    assert alg.bracket_gen("x0", "x1") == {}
    assert alg.bracket_gen("M01", "I") == {}


def test_deformed_bracket_entries():
    alg = liealg.build_deformed(-1, 1)
    i = CoeffPoly.i_unit()
    assert alg.bracket_gen("x0", "x1") == {"M01": i * CoeffPoly.ell(2)}
    assert alg.bracket_gen("x0", "I") == {"p0": i.scale(-1) * CoeffPoly.ell(2)}
    alg_plus = liealg.build_deformed(1, -1)
    assert alg_plus.bracket_gen("x0", "x1") == {"M01": i.scale(-1) * CoeffPoly.ell(2)}
    assert alg_plus.bracket_gen("p0", "p1") == \
        {"M01": i * CoeffPoly.inv_radius(2)}


def test_contraction_reproduces_flat():
    r0 = liealg.build_r0()
    for eps, eps_prime in itertools.product((1, -1), repeat=2):
        contracted = liealg.contract_to_flat(liealg.build_deformed(eps, eps_prime))
        assert contracted.structure == r0.structure


@pytest.mark.parametrize("eps,eps_prime", list(itertools.product((1, -1), repeat=2)))
def test_antisymmetry_and_jacobi_deformed(eps, eps_prime):
    alg = liealg.build_deformed(eps, eps_prime)
    assert liealg.antisymmetry_violations(alg) == {}
    assert liealg.check_jacobi(alg) == {}


def test_jacobi_flat_and_pseudo_orthogonal():
    assert liealg.check_jacobi(liealg.build_r0()) == {}
    assert liealg.check_jacobi(liealg.build_pseudo_orthogonal((1, -1, -1, -1, -1, -1))) == {}
    assert liealg.check_jacobi(liealg.build_pseudo_orthogonal((1, -1, -1, -1, -1))) == {}


def test_pseudo_orthogonal_entries():
    alg = liealg.build_pseudo_orthogonal((1, -1, -1, -1, -1, -1))
    # single shared index 0 with eta_00 = +1: the bracket closes on M12
    assert alg.bracket_gen("M01", "M02") == {"M12": CoeffPoly.i_unit().scale(-1)}
    # disjoint index pairs commute
    assert alg.bracket_gen("M01", "M23") == {}


def test_pseudo_orthogonal_rejects_bad_signature():
    with pytest.raises(ValueError):
        liealg.build_pseudo_orthogonal((1, -1, -1))
    with pytest.raises(ValueError):
        liealg.build_pseudo_orthogonal((1, -1, -1, -1, -1, 2))


def test_corrupted_algebra_fails_jacobi():
    alg = liealg.corrupt(liealg.build_deformed(-1, 1), "p0", "x1", "M23")
    assert liealg.check_jacobi(alg) != {}


@pytest.mark.parametrize("eps,eps_prime", list(itertools.product((1, -1), repeat=2)))
def test_embedding_exact(eps, eps_prime):
    assert liealg.check_embedding(eps, eps_prime) == {}


def test_embedding_sign_sensitivity():
    assert liealg.check_embedding(-1, 1, flip_x_sign=True) != {}


def test_embedding_single_pair_value():
    # [p0, x0] image equals i times the image of the unit generator
    big = liealg.build_pseudo_orthogonal((1, -1, -1, -1, 1, -1))
    images = liealg.embedding_map(-1, 1)
    lhs = big.bracket(images["p0"], images["x0"])
    rhs = liealg.elem_scale(images["I"], CoeffPoly.i_unit())
    assert lhs == rhs


def test_json_export_shape():
    doc = liealg.build_deformed(-1, 1).to_json_dict()
    assert doc["generators"][-1] == "I"
    assert all(len(t) == 4 for t in doc["triples"])
    labels = {(a, b) for a, b, _t, _c in doc["triples"]}
    assert ("p0", "x0") in labels
