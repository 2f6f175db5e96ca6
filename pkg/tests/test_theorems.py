from fractions import Fraction

import pytest
from conftest import M, pair

from wepkit.exact import GMat
from wepkit.theorems import (
    ALIASES, SUITE_IDS, HypothesisFailed, UnknownTheorem, check, check_additivity,
    registered, run_suite,
)
from wepkit.weighted import WPair

I2 = GMat.identity(2)
J = M([0, 1], [0, 0])
IDEM = M([1, 1], [0, 0])


def test_registry_contents():
    ids = registered()
    for t in SUITE_IDS:
        assert t in ids
    assert "C2.11" not in ids
    assert set(ALIASES) <= set(ids)


def test_unknown_theorem():
    with pytest.raises(UnknownTheorem):
        check("T9.9", pair(I2))


def test_t2_1_on_projection_all_true():
    cert = check("T2.1", pair(M([1, 0], [0, 0])))
    assert cert.consistent
    assert all(c.truth for c in cert.clauses)


def test_t2_1_on_non_ep_idempotent_all_false():
    cert = check("T2.1", pair(IDEM))
    assert cert.consistent
    assert not any(c.truth for c in cert.clauses if c.role == "equiv")


def test_t3_5_on_jordan_block():
    cert = check("T3.5", pair(J))
    assert cert.consistent
    assert cert.clauses[0].truth and cert.clauses[0].witnesses["x"].is_zero()
    assert cert.clauses[1].truth and cert.clauses[1].witnesses["p"] == I2


def test_t2_1_proof_identity_is_checked():
    cert = check("T2.1", pair(M([2, 0], [0, 0]), M([Fraction(1, 2), 0], [0, 3])))
    ident = [c for c in cert.clauses if c.role == "identity"]
    assert ident and all(c.truth for c in ident)


def test_t4_5_on_weighted_example():
    cert = check("T4.5", pair(M([2, 0], [0, 0]), M([Fraction(1, 2), 0], [0, 3])))
    assert cert.consistent
    assert all(c.truth for c in cert.clauses)


def test_c2_8_pinned_to_unit_weight():
    cert = check("C2.8", pair(IDEM, M([1, 0], [0, 0])))
    assert cert.consistent
    assert "evaluated at w = 1" in cert.notes
    assert not cert.clauses[0].truth  # IDEM is not EP, whatever w says


def test_aliases_run_at_unit_weight():
    p = pair(IDEM, M([1, 0], [0, 0]))
    weighted = check("T2.1", p)
    unit = check("C2.2", p)
    assert weighted.clauses[0].truth and not unit.clauses[0].truth
    assert unit.theorem == "C2.2"


def test_t5_7_records_bound():
    cert = check("T5.7", pair(GMat.block_diag(M([1]), M([0, 1, 0], [0, 0, 1], [0, 0, 0]))))
    assert cert.consistent
    assert any(c.role == "identity" and c.truth for c in cert.clauses)


def test_t4_1_notes_reading_disagreement():
    cert = check("T4.1", pair(I2, GMat.zeros(2)))
    assert cert.consistent
    assert cert.notes


def test_additivity_examples():
    a = GMat.diag([1, 0, 0])
    cert = check_additivity(a, GMat.zeros(3), GMat.identity(3))
    assert cert.consistent and all(c.truth for c in cert.clauses)

    b = GMat.block_diag(M([0]), J)
    cert = check_additivity(a, b, GMat.identity(3))
    assert cert.consistent and all(c.truth for c in cert.clauses)
    assert cert.clauses[5].witnesses["(a+b)_w^E"] == a

    cert = check_additivity(GMat.diag([1, 0]), GMat.diag([0, 1]), I2)
    assert cert.consistent and all(c.truth for c in cert.clauses)
    assert cert.clauses[5].witnesses["(a+b)_w^E"] == I2


def test_additivity_failed_hypothesis():
    cert = check_additivity(I2, I2, I2)
    assert cert.consistent  # vacuous
    assert cert.notes and "hypothesis failed" in cert.notes[0]
    with pytest.raises(HypothesisFailed):
        check_additivity(I2, I2, I2, strict=True)


def test_run_suite_trivial():
    s = run_suite([])
    assert s.inconsistencies == 0
    assert all(v == {"consistent": 0, "inconsistent": 0} for v in s.counts.values())
    s = run_suite([WPair(I2, I2)])
    assert s.inconsistencies == 0
    assert all(v["consistent"] == 1 for v in s.counts.values())


def test_run_suite_parallel_is_deterministic():
    pairs = [pair(J), pair(IDEM), pair(I2), pair(M([1, 0], [0, 0]))]
    s1 = run_suite(pairs)
    s2 = run_suite(pairs, workers=2)
    assert s1.counts == s2.counts
