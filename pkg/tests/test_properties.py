"""Algebraic identities on random small matrices."""
import json
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from wepkit.exact import (
    GMat, GScalar, NotInvertible, full_rank_factorization, inverse, rank,
)
from wepkit.gen import rational_unitary
from wepkit.ginv import drazin, drazin_index, drazin_via_pinv, is_ep, is_ep_by_ranges, moore_penrose
from wepkit.serial import dumps, matrix_from_json, matrix_to_json
from wepkit.theorems import SUITE_IDS, check
from wepkit.weighted import Kind, WPair, classify

SETTINGS = settings(max_examples=60, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])

small = st.integers(-3, 3)
scalar = st.one_of(
    small.map(GScalar),
    st.builds(GScalar, small, small),
    st.builds(lambda p, q: GScalar(Fraction(p, q)), small, st.integers(1, 4)),
)


@st.composite
def square(draw, n=None, max_n=4):
    n = n or draw(st.integers(1, max_n))
    sparse = draw(st.booleans())
    rows = [[draw(scalar) if not sparse or draw(st.booleans()) else 0 for _ in range(n)]
            for _ in range(n)]
    return GMat(rows)


@st.composite
def pairs(draw, invertible_w=False, max_n=3):
    a = draw(square(max_n=max_n))
    w = draw(square(n=a.n))
    if invertible_w and rank(w) < a.n:
        w = w + GMat.identity(a.n).scale(7)  # generically invertible
        if rank(w) < a.n:
            w = GMat.identity(a.n)
    if draw(st.booleans()):
        a = a @ w @ a  # shifts mass toward singular, higher-index products
    return WPair(a, w)


@SETTINGS
@given(st.data())
def test_ring_identities(data):
    A = data.draw(square())
    B = data.draw(square(n=A.n))
    C = data.draw(square(n=A.n))
    assert (A @ B) @ C == A @ (B @ C)
    assert A @ (B + C) == A @ B + A @ C
    assert (A @ B).H == B.H @ A.H
    assert A.H.H == A


@SETTINGS
@given(square())
def test_inverse_and_rank(A):
    assert rank(A) == rank(A.H) == rank(A.transpose())
    try:
        X = inverse(A)
    except NotInvertible:
        assert rank(A) < A.n
    else:
        assert A @ X == GMat.identity(A.n) == X @ A


@SETTINGS
@given(square())
def test_full_rank_factorization_product(A):
    f = full_rank_factorization(A)
    assert f.r == rank(A)
    if f.r:
        assert f.F @ f.G == A


@SETTINGS
@given(square())
def test_penrose_equations(A):
    X = moore_penrose(A)
    assert A @ X @ A == A and X @ A @ X == X
    assert (A @ X).is_hermitian() and (X @ A).is_hermitian()


@SETTINGS
@given(square())
def test_drazin_oracle(A):
    r = drazin(A)
    assert r.k == drazin_index(A)
    assert r.d == drazin_via_pinv(A)
    assert A @ r.d == r.d @ A and r.d @ A @ r.d == r.d
    assert A ** (r.k + 1) @ r.d == A ** r.k
    assert is_ep(A) == is_ep_by_ranges(A)


@SETTINGS
@given(pairs())
def test_gen_w_ep_is_hermitian_core(p):
    # classifier against the direct criterion on aw (aw)^D
    E = p.aw @ p.aw_drazin.d
    reps = classify(p)
    assert reps[Kind.GEN_W_EP].exists == E.is_hermitian()
    assert reps[Kind.W_STAR_DMP].exists == reps[Kind.GEN_W_EP].exists
    if reps[Kind.W_EP].exists:
        assert reps[Kind.GEN_W_EP].exists and reps[Kind.W_GROUP].exists


@SETTINGS
@given(pairs(), st.integers(0, 2 ** 64 - 1))
def test_unitary_conjugation_invariance(p, seed):
    u = rational_unitary(p.n, seed)
    q = WPair(u @ p.a @ u.H, u @ p.w @ u.H)
    r0, r1 = classify(p), classify(q)
    for k in Kind:
        assert r0[k].exists == r1[k].exists
        assert u @ r0[k].candidate @ u.H == r1[k].candidate


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(pairs(invertible_w=True))
def test_registry_consistent_for_invertible_weights(p):
    for t in SUITE_IDS:
        assert check(t, p).consistent, t


@SETTINGS
@given(square())
def test_json_round_trip(A):
    text = dumps(matrix_to_json(A))
    B = matrix_from_json(json.loads(text))
    assert B == A
    assert dumps(matrix_to_json(B)) == text
