"""Weighted inverses and classification predicates over a pair (a, w).

Every constructor follows the same pattern: compute the canonical candidate
from a closed formula, then check the defining equations exactly.  Existence
is whatever the check says.  Quasinilpotent is nilpotent here, since the
algebra is finite dimensional.

All candidates start from ``D = (aw)^D``; the weighted Drazin candidate is
``D^2 a``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from .exact import (
    DimensionMismatch, GMat, col_space_equal, inverse, NotInvertible,
    nilpotency_degree, rank,
)
from .ginv import drazin


class InconsistencyError(AssertionError):
    """Two routes to the same classification disagreed on an instance."""


class NotGenWEP(ValueError):
    """The pair is not generalized w-EP, so no decomposition exists."""


class Kind(str, enum.Enum):
    W_GROUP = "w-group"
    W_DRAZIN = "w-drazin"
    W_EP = "w-ep"
    GEN_W_EP = "gen-w-ep"
    W_STAR_DMP = "w-star-dmp"


@dataclass(frozen=True)
class WPair:
    a: GMat
    w: GMat

    def __post_init__(self):
        if not (self.a.is_square and self.w.is_square):
            raise DimensionMismatch("a and w must be square")
        if self.a.shape != self.w.shape:
            raise DimensionMismatch(f"a is {self.a.shape} but w is {self.w.shape}")

    @property
    def n(self) -> int:
        return self.a.n

    @cached_property
    def aw(self) -> GMat:
        return self.a @ self.w

    @cached_property
    def wa(self) -> GMat:
        return self.w @ self.a

    @cached_property
    def aw_drazin(self):
        return drazin(self.aw)

    @cached_property
    def wdrazin_candidate(self) -> GMat:
        d = self.aw_drazin.d
        return d @ d @ self.a

    def with_weight(self, w: GMat) -> "WPair":
        return WPair(self.a, w)

    def with_a(self, a: GMat) -> "WPair":
        return WPair(a, self.w)


@dataclass(frozen=True)
class WInverseReport:
    """Outcome of one weighted-inverse construction.

    ``x`` is set only when the inverse exists; ``candidate`` always holds the
    formula output the axioms were checked on.
    """

    kind: Kind
    exists: bool
    candidate: GMat
    verified_axioms: tuple[tuple[str, bool], ...]
    extras: dict = field(default_factory=dict)

    @property
    def x(self) -> GMat | None:
        return self.candidate if self.exists else None

    def axiom(self, name: str) -> bool:
        return dict(self.verified_axioms)[name]


@dataclass(frozen=True)
class CoreDecomp:
    x: GMat
    y: GMat
    nil_degree: int
    checks: tuple[tuple[str, bool], ...] = ()


@dataclass(frozen=True)
class ProjCert:
    p: GMat
    m: GMat
    checks: tuple[tuple[str, bool], ...] = ()


def _nil(M: GMat) -> bool:
    return nilpotency_degree(M) is not None


# -- axiom lists --------------------------------------------------------------

def w_group_axioms(a, w, x):
    aw, xw = a @ w, x @ w
    return (
        ("awxwa=a", aw @ xw @ a == a),
        ("xwawx=x", xw @ aw @ x == x),
        ("awx=xwa", aw @ x == xw @ a),
    )


def w_ep_axioms(a, w, x):
    """The four equations defining a w-EP element with witness x."""
    wx, wa = w @ x, w @ a
    awxw = a @ wx @ w
    xwaw = x @ wa @ w
    return (
        ("a(wx)^2=x", a @ wx @ wx == x),
        ("x(wa)^2=a", x @ wa @ wa == a),
        ("(awxw)*=awxw", awxw.is_hermitian()),
        ("(xwaw)*=xwaw", xwaw.is_hermitian()),
    )


def power_clause(a, w, x, m):
    """Whether ``(aw)^m = xw (aw)^(m+1)``."""
    awm = (a @ w) ** m
    return awm == x @ w @ awm @ a @ w


def gen_w_ep_axioms(a, w, x, m):
    """Generalized w-EP equations, with the limit clause realized at power m."""
    wx = w @ x
    awxw = a @ wx @ w
    xwaw = x @ w @ a @ w
    return (
        ("a(wx)^2=x", a @ wx @ wx == x),
        ("(awxw)*=awxw", awxw.is_hermitian()),
        ("(xwaw)*=xwaw", xwaw.is_hermitian()),
        ("(aw)^m=xw(aw)^(m+1)", power_clause(a, w, x, m)),
    )


# -- constructors -------------------------------------------------------------

def w_group(pair: WPair) -> WInverseReport:
    """w-group inverse: candidate ``D^2 a``, which is ``[(aw)^#]^2 a`` when
    aw has index at most one."""
    x = pair.wdrazin_candidate
    axioms = w_group_axioms(pair.a, pair.w, x)
    return WInverseReport(Kind.W_GROUP, all(t for _, t in axioms), x, axioms,
                          {"aw_index": pair.aw_drazin.k})


def w_drazin(pair: WPair) -> WInverseReport:
    """Weighted generalized Drazin inverse, candidate ``D^2 a``.

    The residual condition is taken literally: ``a - awxwa`` itself must be
    nilpotent.  ``extras['weighted_residual_nilpotent']`` records the weaker
    condition on ``(a - awxwa)w``, which always holds for this candidate.
    Where the two differ, ``extras['readings_agree']`` is False.
    """
    a, w = pair.a, pair.w
    x = pair.wdrazin_candidate
    aw, xw = pair.aw, x @ w
    residual = a - aw @ xw @ a
    axioms = (
        ("awx=xwa", aw @ x == xw @ a),
        ("xwawx=x", xw @ aw @ x == x),
        ("a-awxwa nilpotent", _nil(residual)),
    )
    weighted = _nil(residual @ w)
    exists = all(t for _, t in axioms)
    return WInverseReport(Kind.W_DRAZIN, exists, x, axioms, {
        "weighted_residual_nilpotent": weighted,
        "readings_agree": weighted == axioms[2][1],
        "aw_index": pair.aw_drazin.k,
    })


def w_ep(pair: WPair) -> WInverseReport:
    grp = w_group(pair)
    a, w, x = pair.a, pair.w, grp.candidate
    herm = (pair.aw @ x @ w).is_hermitian()
    exists = grp.exists and herm
    axioms = grp.verified_axioms + (("(awxw)* = awxw with x = a_w^#", herm),) \
        + w_ep_axioms(a, w, x)
    if exists and not all(t for _, t in axioms):
        raise InconsistencyError("w-group witness with Hermitian awxw fails the w-EP equations")
    return WInverseReport(Kind.W_EP, exists, x, axioms, grp.extras)


def gen_w_ep(pair: WPair) -> WInverseReport:
    """Generalized w-EP inverse ``[bw]^2 b_w^e`` with ``b = D^2 a``.

    Exists exactly when b is w-EP; the witness is then checked against the
    generalized w-EP equations with the limit clause realized at the Drazin
    index of aw.
    """
    a, w = pair.a, pair.w
    b = pair.wdrazin_candidate
    inner = w_ep(WPair(b, w))
    bw = b @ w
    x = bw @ bw @ inner.candidate
    m = max(pair.aw_drazin.k, 1)
    axioms = gen_w_ep_axioms(a, w, x, m)
    exists = inner.exists
    if exists != all(t for _, t in axioms):
        raise InconsistencyError("generalized w-EP equations disagree with the w-EP test on D^2 a")
    extras = {"aw_index": pair.aw_drazin.k, "inner": inner.candidate,
              "inner_exists": inner.exists}
    return WInverseReport(Kind.GEN_W_EP, exists, x, axioms, extras)


def min_power(pair: WPair, x: GMat) -> int | None:
    """Smallest n in [1, dim+1] with ``(aw)^n = xw(aw)^(n+1)``."""
    aw, xw = pair.aw, x @ pair.w
    P = aw
    for k in range(1, pair.n + 2):
        if P == xw @ P @ aw:
            return k
        P = P @ aw
    return None


def w_star_dmp(pair: WPair) -> WInverseReport:
    gen = gen_w_ep(pair)
    x = gen.candidate
    k = min_power(pair, x)
    head = [(name, t) for name, t in gen.verified_axioms if not name.startswith("(aw)^m")]
    axioms = tuple(head) + (("(aw)^n=xw(aw)^(n+1) for some n", k is not None),)
    exists = all(t for _, t in axioms)
    if exists != gen.exists:
        raise InconsistencyError("w-*-DMP and generalized w-EP disagree")
    if k is not None and k > pair.n + 1:  # pragma: no cover - bounded by the search
        raise InconsistencyError("power exceeds dim + 1")
    return WInverseReport(Kind.W_STAR_DMP, exists, x, axioms, {"n": k})


def classify(pair: WPair) -> dict[Kind, WInverseReport]:
    return {
        Kind.W_GROUP: w_group(pair),
        Kind.W_DRAZIN: w_drazin(pair),
        Kind.W_EP: w_ep(pair),
        Kind.GEN_W_EP: gen_w_ep(pair),
        Kind.W_STAR_DMP: w_star_dmp(pair),
    }


# -- structure ----------------------------------------------------------------

def decomposition_from(pair: WPair, g: GMat) -> CoreDecomp:
    """Split ``a = x + y`` with ``x = awgwa`` and record every defining check."""
    a, w = pair.a, pair.w
    x = pair.aw @ g @ pair.wa
    y = a - x
    yw = y @ w
    k = nilpotency_degree(yw)
    checks = (
        ("a=x+y", x + y == a),
        ("x*y=0", (x.H @ y).is_zero()),
        ("ywx=0", (yw @ x).is_zero()),
        ("x w-EP", w_ep(WPair(x, w)).exists),
        ("yw nilpotent", k is not None),
    )
    return CoreDecomp(x, y, k or 0, checks)


def core_decomposition(pair: WPair) -> CoreDecomp:
    gen = gen_w_ep(pair)
    if not gen.exists:
        raise NotGenWEP("pair is not generalized w-EP")
    dec = decomposition_from(pair, gen.x)
    if not all(t for _, t in dec.checks):
        raise InconsistencyError(f"decomposition checks failed: {dec.checks}")
    return dec


def projection_from(pair: WPair, g: GMat) -> ProjCert:
    n, aw, w = pair.n, pair.aw, pair.w
    I = GMat.identity(n)
    m = aw @ g
    p = I - m @ w
    try:
        inverse(aw + p)
        invertible = True
    except NotInvertible:
        invertible = False
    awp, paw = aw @ p, p @ aw
    checks = (
        ("p^2=p", p @ p == p),
        ("p*=p", p.is_hermitian()),
        ("aw+p invertible", invertible),
        ("1-p=mw", I - p == m @ w),
        ("1-p in Aw", rank(w.vstack(I - p)) == rank(w)),
        ("awp=paw", awp == paw),
        ("awp nilpotent", _nil(awp)),
    )
    return ProjCert(p, m, checks)


def ep_projection(pair: WPair) -> ProjCert:
    gen = gen_w_ep(pair)
    if not gen.exists:
        raise NotGenWEP("pair is not generalized w-EP")
    cert = projection_from(pair, gen.x)
    if not all(t for _, t in cert.checks):
        raise InconsistencyError(f"projection checks failed: {cert.checks}")
    return cert


def power_ep_reduction(pair: WPair) -> tuple[int, GMat] | None:
    """Smallest k in [1, n+1] with ``a(wa)^(k-1)`` w-EP, and its w-EP inverse.

    Returns ``None`` when no such k exists.  The result is checked against
    w-*-DMP existence, since the two must coincide.
    """
    a, w = pair.a, pair.w
    b = a
    found = None
    for k in range(1, pair.n + 2):
        rep = w_ep(WPair(b, w))
        if rep.exists:
            found = (k, rep.x)
            break
        b = b @ w @ a
    if (found is not None) != w_star_dmp(pair).exists:
        raise InconsistencyError("power reduction disagrees with w-*-DMP existence")
    return found


def range_condition(pair: WPair) -> bool:
    """w-group invertible with ``R(a) = R((aw)*)``."""
    return w_group(pair).exists and col_space_equal(pair.a, pair.aw.H)
