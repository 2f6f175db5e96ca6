from fractions import Fraction

import pytest
from conftest import M, pair

from wepkit.exact import DimensionMismatch, GMat, inverse
from wepkit.weighted import (
    Kind, NotGenWEP, WPair, classify, core_decomposition, ep_projection,
    gen_w_ep, power_ep_reduction, range_condition, w_drazin, w_ep, w_group,
    w_star_dmp,
)

I2 = GMat.identity(2)
J = M([0, 1], [0, 0])
IDEM = M([1, 1], [0, 0])
H = Fraction(1, 2)
WEIGHTED = pair(M([2, 0], [0, 0]), M([H, 0], [0, 3]))


def test_pair_validation():
    with pytest.raises(DimensionMismatch):
        WPair(I2, GMat.identity(3))
    with pytest.raises(DimensionMismatch):
        WPair(GMat.zeros(2, 3), GMat.zeros(2, 3))


def test_w_group_examples():
    assert w_group(pair(I2)).x == I2
    rep = w_group(WEIGHTED)
    assert rep.exists and rep.x == M([2, 0], [0, 0])
    rep = w_group(pair(J))
    assert not rep.exists and rep.x is None
    assert not rep.axiom("awxwa=a")


def test_w_drazin_examples():
    assert w_drazin(pair(I2)).x == I2
    rep = w_drazin(pair(J))
    assert rep.exists and rep.x == GMat.zeros(2)


def test_w_drazin_literal_residual_at_zero_weight():
    rep = w_drazin(pair(I2, GMat.zeros(2)))
    assert rep.candidate == GMat.zeros(2)
    assert not rep.exists
    assert rep.extras["weighted_residual_nilpotent"]
    assert rep.extras["readings_agree"] is False


def test_w_ep_examples():
    rep = w_ep(pair(M([1, 0], [0, 0])))
    assert rep.exists and rep.x == M([1, 0], [0, 0])
    rep = w_ep(WEIGHTED)
    assert rep.exists and rep.x == M([2, 0], [0, 0])
    assert (WEIGHTED.aw @ rep.x @ WEIGHTED.w) == M([1, 0], [0, 0])
    assert not w_ep(pair(IDEM)).exists


def test_gen_w_ep_examples():
    assert gen_w_ep(pair(I2)).x == I2
    rep = gen_w_ep(pair(J))
    assert rep.exists and rep.x == GMat.zeros(2)
    rep = gen_w_ep(pair(IDEM))
    assert not rep.exists
    assert w_drazin(pair(IDEM)).candidate == IDEM


def test_w_star_dmp_examples():
    rep = w_star_dmp(pair(I2))
    assert rep.exists and rep.x == I2 and rep.extras["n"] == 1
    rep = w_star_dmp(pair(J))
    assert rep.exists and rep.x == GMat.zeros(2) and rep.extras["n"] == 2
    assert not w_star_dmp(pair(IDEM)).exists


def test_core_decomposition_examples():
    dec = core_decomposition(pair(M([1, 0], [0, 0])))
    assert dec.x == M([1, 0], [0, 0]) and dec.y.is_zero() and dec.nil_degree == 1
    dec = core_decomposition(pair(J))
    assert dec.x.is_zero() and dec.y == J and dec.nil_degree == 2
    with pytest.raises(NotGenWEP):
        core_decomposition(pair(IDEM))


def test_ep_projection_examples():
    cert = ep_projection(pair(I2))
    assert cert.p.is_zero()
    cert = ep_projection(pair(J))
    assert cert.p == I2
    assert J + cert.p == M([1, 1], [0, 1])
    cert = ep_projection(pair(M([1, 0], [0, 0])))
    assert cert.p == M([0, 0], [0, 1])
    assert inverse(M([1, 0], [0, 0]) + cert.p) == I2
    with pytest.raises(NotGenWEP):
        ep_projection(pair(IDEM))


def test_power_ep_reduction_examples():
    assert power_ep_reduction(pair(M([1, 0], [0, 0])))[0] == 1
    k, e = power_ep_reduction(pair(J))
    assert k == 2 and e.is_zero()
    assert power_ep_reduction(pair(IDEM)) is None


def test_range_condition_examples():
    assert range_condition(pair(M([1, 0], [0, 0])))
    assert not range_condition(pair(IDEM))
    assert range_condition(WEIGHTED)


def test_zero_weight():
    # w = 0 forces every candidate to zero; only a = 0 is then w-EP, but the
    # generalized equations all collapse to 0 = 0
    z = GMat.zeros(2)
    assert not w_ep(pair(I2, z)).exists
    assert w_ep(pair(z, z)).exists
    rep = gen_w_ep(pair(I2, z))
    assert rep.exists and rep.x == z


def test_classify_covers_all_kinds():
    reps = classify(pair(I2))
    assert set(reps) == set(Kind)
    assert all(r.exists for r in reps.values())


def test_weight_can_make_a_non_ep_matrix_w_ep():
    # aw = diag(1,0) is a Hermitian projection, and the witness is a itself
    p = pair(IDEM, M([1, 0], [0, 0]))
    rep = w_ep(p)
    assert rep.exists and rep.x == IDEM
    assert not w_ep(pair(IDEM)).exists
