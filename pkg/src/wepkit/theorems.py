"""Executable equivalence checkers over a weighted pair.

Each registered id evaluates every clause of one characterization on a
concrete instance and reports whether the clause truths fit the logical
shape of the statement.  Existential clauses are decided on canonical
witnesses, never by search: if any solution exists, the canonical one is a
solution.  A disagreement between clauses is a certified counterexample.

The ids (``"T2.1"``, ``"C5.2"``, ...) are stable strings used by the CLI and
the JSON certificates.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .exact import (
    GMat, col_space_equal, nilpotency_degree, null_space_equal, row_space_equal,
)
from .ginv import drazin, is_ep
from .weighted import (
    WPair, decomposition_from, gen_w_ep, gen_w_ep_axioms, min_power,
    power_ep_reduction, projection_from, range_condition,
    w_ep, w_ep_axioms, w_group, w_star_dmp,
)

EQUIVALENCE = "equivalence"
IMPLICATION = "implication"


class UnknownTheorem(KeyError):
    pass


class HypothesisFailed(ValueError):
    """Raised by a strict additivity check whose hypotheses do not hold."""


@dataclass(frozen=True)
class Clause:
    label: str
    truth: bool
    witnesses: dict = field(default_factory=dict)
    role: str = "equiv"  # equiv | hypothesis | conclusion | identity


@dataclass(frozen=True)
class Certificate:
    theorem: str
    shape: str
    clauses: tuple[Clause, ...]
    notes: tuple[str, ...] = ()

    @property
    def consistent(self) -> bool:
        by_role = {}
        for c in self.clauses:
            by_role.setdefault(c.role, []).append(c.truth)
        identities = all(by_role.get("identity", []))
        if self.shape == EQUIVALENCE:
            truths = by_role.get("equiv", [])
            return len(set(truths)) <= 1 and identities
        if all(by_role.get("hypothesis", [])):
            return all(by_role.get("conclusion", [])) and identities
        return True

    def clause(self, label: str) -> Clause:
        for c in self.clauses:
            if c.label == label:
                return c
        raise KeyError(label)


def _all(checks) -> bool:
    return all(t for _, t in checks)


def _nil(M: GMat) -> bool:
    return nilpotency_degree(M) is not None


def _ep_candidate(pair: WPair) -> GMat:
    # D^2 a: equals the w-group / w-EP inverse whenever either exists
    return pair.wdrazin_candidate


def _wep_clause(pair: WPair, label="(1) a is w-EP") -> Clause:
    rep = w_ep(pair)
    return Clause(label, rep.exists, {"x": rep.candidate})


def _gen_clause(pair: WPair, label="(1) a is generalized w-EP") -> Clause:
    rep = gen_w_ep(pair)
    m = max(pair.aw_drazin.k, 1)
    truth = _all(gen_w_ep_axioms(pair.a, pair.w, rep.candidate, m))
    return Clause(label, truth, {"x": rep.candidate})


def _star_clause(pair: WPair, label="(1) a is w-*-DMP") -> Clause:
    rep = w_star_dmp(pair)
    return Clause(label, rep.exists, {"x": rep.candidate})


def _classical_wdrazin(pair: WPair) -> bool:
    """aw is Drazin invertible and ``D^2 a`` satisfies the weighted Drazin
    equations with the residual ``(a - awxwa)w`` nilpotent."""
    a, w, x = pair.a, pair.w, pair.wdrazin_candidate
    aw, xw = pair.aw, x @ w
    return (aw @ x == xw @ a and xw @ aw @ x == x
            and _nil((a - aw @ xw @ a) @ w))


# -- weighted EP characterizations --------------------------------------------

def _t2_1(pair):
    a, w = pair.a, pair.w
    x = _ep_candidate(pair)
    grp = w_group(pair)
    xw = x @ w
    c2 = a @ w @ x @ w @ x == x and x @ w @ a @ w @ a == a and (xw @ a @ w).is_hermitian()
    c3 = grp.exists and (pair.aw @ grp.candidate @ w).is_hermitian()
    clauses = [
        Clause("(1) a is w-EP", _all(w_ep_axioms(a, w, x)), {"x": x}),
        Clause("(2) a(wx)^2=x, x(wa)^2=a, (xwaw)*=xwaw", c2, {"x": x}),
        Clause("(3) a_w^# exists, (awa_w^#w)*=awa_w^#w", c3, {"a_w^#": grp.candidate}),
    ]
    if c2:
        z = xw @ xw @ a
        clauses.append(Clause("a_w^# = (xw)^2 a", grp.exists and z == grp.candidate,
                              {"(xw)^2a": z}, "identity"))
    return EQUIVALENCE, clauses, ()


def _t2_3(pair):
    a, w = pair.a, pair.w
    x = _ep_candidate(pair)
    aw, xw = pair.aw, x @ w
    aw2x = aw @ aw @ x == a
    herm = (aw @ xw).is_hermitian()
    c2 = aw2x and aw @ x == xw @ a and herm
    c3 = aw2x and xw @ xw @ a == x and herm
    clauses = [
        _wep_clause(pair),
        Clause("(2) (aw)^2x=a, awx=xwa, (awxw)*=awxw", c2, {"x": x}),
        Clause("(3) (aw)^2x=a, (xw)^2a=x, (awxw)*=awxw", c3, {"x": x}),
    ]
    if c2:
        z = a @ w @ x @ w @ x
        grp = w_group(pair)
        clauses.append(Clause("a_w^# = a(wx)^2", grp.exists and grp.candidate == z,
                              {"a(wx)^2": z}, "identity"))
    return EQUIVALENCE, clauses, ()


def _c2_5(pair):
    grp = w_group(pair)
    return EQUIVALENCE, [
        _wep_clause(pair),
        Clause("(2) a_w^# exists, aA=(aw)*A", range_condition(pair),
               {"a_w^#": grp.candidate, "(aw)*": pair.aw.H}),
    ], ()


def _t2_6(pair):
    a, w = pair.a, pair.w
    x = _ep_candidate(pair)
    aw, xw = pair.aw, x @ w
    sym = (aw @ xw).H == xw @ aw
    c2 = x @ w @ a @ w @ a == a and sym
    c3 = aw @ aw @ x == a and sym
    clauses = [
        _wep_clause(pair),
        Clause("(2) x(wa)^2=a, (awxw)*=xwaw", c2, {"x": x}),
        Clause("(3) (aw)^2x=a, (awxw)*=xwaw", c3, {"x": x}),
    ]
    if c2:
        z = xw @ aw @ x
        clauses.append(Clause("xwawx is a w-EP witness", _all(w_ep_axioms(a, w, z)),
                              {"xwawx": z}, "identity"))
    return EQUIVALENCE, clauses, ()


def _c2_7(pair):
    a, w = pair.a, pair.w
    x = _ep_candidate(pair)
    aw, xw = pair.aw, x @ w
    sym = (aw @ xw).H == xw @ aw
    inner = aw @ xw @ a == a
    return EQUIVALENCE, [
        _wep_clause(pair),
        Clause("(2) a(wx)^2=x, awxwa=a, (awxw)*=xwaw",
               a @ w @ x @ w @ x == x and inner and sym, {"x": x}),
        Clause("(3) (xw)^2a=x, awxwa=a, (awxw)*=xwaw",
               xw @ xw @ a == x and inner and sym, {"x": x}),
    ], ()


def _c2_8(pair):
    # unweighted statement; always evaluated at w = 1
    a = pair.a
    x = drazin(a).d
    ax, xa = a @ x, x @ a
    sym = ax.H == xa
    aa = a @ a
    notes = ("evaluated at w = 1",) if pair.w != GMat.identity(pair.n) else ()
    return EQUIVALENCE, [
        Clause("(1) a is EP", is_ep(a), {"a^#": x}),
        Clause("(2) a^2x=a, (ax)*=xa", aa @ x == a and sym, {"x": x}),
        Clause("(3) xa^2=a, (ax)*=xa", x @ aa == a and sym, {"x": x}),
        Clause("(4) ax^2=x, axa=a, (ax)*=xa", ax @ x == x and ax @ a == a and sym, {"x": x}),
        Clause("(5) x^2a=x, axa=a, (ax)*=xa", x @ xa == x and ax @ a == a and sym, {"x": x}),
    ], notes


def _l2_9(pair):
    rep = w_ep(pair)
    x, w, a = rep.candidate, pair.w, pair.a
    return IMPLICATION, [
        Clause("a is w-EP with witness x", rep.exists, {"x": x}, "hypothesis"),
        Clause("xwawx=x", x @ w @ a @ w @ x == x, {"x": x}, "conclusion"),
    ], ()


def _t2_10(pair):
    a, w = pair.a, pair.w
    x = _ep_candidate(pair)
    aw, xw = pair.aw, x @ w
    inner = aw @ xw @ a == a
    outer = xw @ aw @ x == x
    ideals = col_space_equal(x, aw) and row_space_equal(x.H, aw)
    annihilators = null_space_equal(x.H, aw.H) and null_space_equal(x.H, aw)
    return EQUIVALENCE, [
        _wep_clause(pair),
        Clause("(2) awxwa=a, xA=awA, Ax*=Aaw", inner and ideals, {"x": x}),
        Clause("(3) xwawx=x, xA=awA, Ax*=Aaw", outer and ideals, {"x": x}),
        Clause("(4) awxwa=a, l(x)=l(aw), r(x*)=r(aw)", inner and annihilators, {"x": x}),
        Clause("(5) xwawx=x, l(x)=l(aw), r(x*)=r(aw)", outer and annihilators, {"x": x}),
    ], ()


# -- generalized weighted EP ----------------------------------------------------

def _t3_1(pair):
    g = gen_w_ep(pair).candidate
    dec = decomposition_from(pair, g)
    return EQUIVALENCE, [
        _gen_clause(pair),
        Clause("(2) a=x+y, x*y=ywx=0, x w-EP, yw nilpotent", _all(dec.checks),
               {"x": dec.x, "y": dec.y}),
    ], ()


def _t3_3(pair):
    a, w = pair.a, pair.w
    x = gen_w_ep(pair).candidate
    aw, xw = pair.aw, x @ w
    c2 = (a @ w @ x @ w @ x == x and (aw @ xw).H == xw @ aw
          and _nil(aw - xw @ aw @ aw))
    return EQUIVALENCE, [
        _gen_clause(pair),
        Clause("(2) a(wx)^2=x, (awxw)*=xwaw, aw-xw(aw)^2 nilpotent", c2, {"x": x}),
    ], ()


def _t3_5(pair):
    g = gen_w_ep(pair).candidate
    cert = projection_from(pair, g)
    return EQUIVALENCE, [
        _gen_clause(pair),
        Clause("(2) p=p^2=p*, aw+p invertible, 1-p in Aw, awp=paw nilpotent",
               _all(cert.checks), {"p": cert.p, "m": cert.m}),
    ], ()


def _c3_6(pair):
    x = gen_w_ep(pair).candidate
    aw, xw = pair.aw, x @ pair.w
    awxw = aw @ xw
    c2 = awxw.is_hermitian() and awxw == xw @ aw and _nil(aw - xw @ aw @ aw)
    return EQUIVALENCE, [
        _gen_clause(pair),
        Clause("(2) (awxw)*=awxw=xwaw, aw-xw(aw)^2 nilpotent", c2, {"x": x}),
    ], ()


# -- representations through the weighted Drazin inverse ----------------------

def _t4_1(pair):
    a, w = pair.a, pair.w
    b = pair.wdrazin_candidate
    inner = w_ep(WPair(b, w))
    bw = b @ w
    clauses = [
        _gen_clause(pair),
        Clause("(2) a^{d,w} exists and is w-EP", _classical_wdrazin(pair) and inner.exists,
               {"a^{d,w}": b, "[a^{d,w}]_w^e": inner.candidate}),
    ]
    notes = []
    lit = a - pair.aw @ b @ w @ a
    if not _nil(lit):
        notes.append("a - awxwa is not nilpotent: the weighted Drazin inverse exists only "
                     "with the residual condition placed on (a - awxwa)w")
    if clauses[0].truth:
        # the generalized inverse computed directly, not through a^{d,w}
        direct = pair.aw_drazin.d @ pair.aw_drazin.d @ a
        clauses.append(Clause("direct witness solves the defining equations",
                              _all(gen_w_ep_axioms(a, w, direct, max(pair.aw_drazin.k, 1))),
                              {"a_w^ge": direct}, "identity"))
        clauses.append(Clause("[a^{d,w}]_w^e = (aw)^2 a_w^ge",
                              inner.candidate == pair.aw @ pair.aw @ direct,
                              {"(aw)^2a_w^ge": pair.aw @ pair.aw @ direct}, "identity"))
        clauses.append(Clause("a_w^ge = [a^{d,w}w]^2 [a^{d,w}]_w^e",
                              direct == bw @ bw @ inner.candidate,
                              {"[a^{d,w}w]^2[a^{d,w}]_w^e": bw @ bw @ inner.candidate},
                              "identity"))
    return EQUIVALENCE, clauses, tuple(notes)


def _t4_3(pair):
    a, w = pair.a, pair.w
    g = gen_w_ep(pair).candidate
    D = pair.aw_drazin.d
    x = g @ w @ a @ w @ a
    fixed = x @ w @ D @ x == x
    dw = _classical_wdrazin(pair)
    ideals = col_space_equal(x, D) and row_space_equal(x.H, D)
    annihilators = null_space_equal(x.H, D.H) and null_space_equal(x.H, D)
    return EQUIVALENCE, [
        _gen_clause(pair),
        Clause("(2) a^{d,w} exists, xw(aw)^dx=x, xA=(aw)^dA, Ax*=A(aw)^d",
               dw and fixed and ideals, {"x": x, "(aw)^d": D}),
        Clause("(3) a^{d,w} exists, xw(aw)^dx=x, l(x)=l((aw)^d), r(x*)=r((aw)^d)",
               dw and fixed and annihilators, {"x": x, "(aw)^d": D}),
    ], ()


def _t4_5(pair):
    gen = gen_w_ep(pair)
    x = gen.candidate
    inner = w_ep(WPair(x, pair.w))
    target = pair.aw @ pair.aw @ x
    return IMPLICATION, [
        Clause("a is generalized w-EP", gen.exists, {"a_w^ge": x}, "hypothesis"),
        Clause("a_w^ge is w-EP", inner.exists, {"(a_w^ge)_w^e": inner.candidate}, "conclusion"),
        Clause("(a_w^ge)_w^e = (aw)^2 a_w^ge", inner.candidate == target,
               {"(aw)^2a_w^ge": target}, "conclusion"),
    ], ()


def _c4_6(pair):
    g1 = gen_w_ep(pair)
    clauses = [Clause("a is generalized w-EP", g1.exists, {"a_w^ge": g1.candidate}, "hypothesis")]
    if g1.exists:
        g2 = gen_w_ep(WPair(g1.x, pair.w))
        g3 = gen_w_ep(WPair(g2.candidate, pair.w))
        clauses += [
            Clause("a_w^ge and its inverse are generalized w-EP", g2.exists and g3.exists,
                   {"second": g2.candidate, "third": g3.candidate}, "conclusion"),
            Clause("third application returns a_w^ge", g3.candidate == g1.candidate,
                   {}, "conclusion"),
        ]
    return IMPLICATION, clauses, ()


# -- weighted *-DMP --------------------------------------------------------------

def _t5_1(pair):
    g = gen_w_ep(pair).candidate
    dec = decomposition_from(pair, g)
    return EQUIVALENCE, [
        _star_clause(pair),
        Clause("(2) a=x+y, x*y=ywx=0, x w-EP, yw nilpotent", _all(dec.checks),
               {"x": dec.x, "y": dec.y}),
    ], ()


def _dw_classical(pair) -> bool:
    """aw has a Drazin inverse at its index: (aw)^m = (aw)^D (aw)^(m+1)."""
    res = pair.aw_drazin
    aw, D, m = pair.aw, res.d, res.k
    awm = aw ** m
    return awm == D @ awm @ aw and aw @ D == D @ aw and D @ aw @ D == D


def _l5_4(pair):
    return EQUIVALENCE, [
        _star_clause(pair),
        Clause("(2) a generalized w-EP and aw Drazin invertible",
               _gen_clause(pair).truth and _dw_classical(pair), {}),
    ], ()


def _t5_5(pair):
    a, w = pair.a, pair.w
    x = gen_w_ep(pair).candidate
    aw, xw = pair.aw, x @ w
    k = min_power(pair, x)
    c2 = a @ w @ x @ w @ x == x and (aw @ xw).H == xw @ aw and k is not None
    cert = projection_from(pair, x)
    b = pair.wdrazin_candidate
    inner = w_ep(WPair(b, w))
    return EQUIVALENCE, [
        _star_clause(pair),
        Clause("(2) a(wx)^2=x, (awxw)*=xwaw, (aw)^n=xw(aw)^(n+1)", c2, {"x": x}),
        Clause("(3) projection p, aw+p invertible, 1-p in Aw, awp=paw nilpotent",
               _all(cert.checks), {"p": cert.p}),
        Clause("(4) a^{D,w} exists and is w-EP", _dw_classical(pair) and inner.exists,
               {"a^{D,w}": b}),
    ], (f"n = {k}",) if k is not None else ()


def _t5_7(pair):
    a, w, n = pair.a, pair.w, pair.n
    top = n + 2
    flags = []
    b = a
    for _ in range(1, top + 1):
        flags.append(w_ep(WPair(b, w)).exists)
        b = b @ w @ a
    # smallest m with every k in [m, top] passing
    m = top + 1
    while m > 1 and flags[m - 2]:
        m -= 1
    red = power_ep_reduction(pair)
    clauses = [
        _star_clause(pair),
        Clause(f"(2) a(wa)^(k-1) w-EP for all k in [m, {top}], some m <= {n + 1}",
               m <= n + 1, {}),
        Clause("(3) a(wa)^(k-1) w-EP for some k", red is not None,
               {"e": red[1]} if red else {}),
    ]
    if red is not None:
        clauses.append(Clause(f"minimal k = {red[0]} <= {n + 1}", red[0] <= n + 1, {}, "identity"))
    return EQUIVALENCE, clauses, ()


def _c5_8(pair):
    a, w, n = pair.a, pair.w, pair.n
    aw = pair.aw
    found = None
    P = GMat.identity(n)  # (aw)^(k-1)
    for k in range(1, n + 2):
        c = P @ a
        if w_group(WPair(c, w)).exists and col_space_equal(c, (P @ aw).H):
            found = k
            break
        P = P @ aw
    return EQUIVALENCE, [
        _star_clause(pair),
        Clause("(2) (aw)^(k-1)a w-group invertible, (aw)^(k-1)aA=((aw)^k)*A for some k",
               found is not None, {}),
    ], (f"k = {found}",) if found else ()


# -- additivity ----------------------------------------------------------------

def check_additivity(a: GMat, b: GMat, w: GMat, strict: bool = False) -> Certificate:
    """Sum rule: orthogonal w-*-DMP summands add, and so do their inverses.

    Failed hypotheses are recorded in the certificate (which is then
    vacuously consistent); with ``strict`` they raise HypothesisFailed.
    """
    pa, pb, ps = WPair(a, w), WPair(b, w), WPair(a + b, w)
    ra, rb, rs = w_star_dmp(pa), w_star_dmp(pb), w_star_dmp(ps)
    clauses = [
        Clause("a is w-*-DMP", ra.exists, {"a_w^E": ra.candidate}, "hypothesis"),
        Clause("b is w-*-DMP", rb.exists, {"b_w^E": rb.candidate}, "hypothesis"),
        Clause("awb=0", (a @ w @ b).is_zero(), {}, "hypothesis"),
        Clause("bwa=0", (b @ w @ a).is_zero(), {}, "hypothesis"),
        Clause("a*b=0", (a.H @ b).is_zero(), {}, "hypothesis"),
        Clause("a+b is w-*-DMP", rs.exists, {"(a+b)_w^E": rs.candidate}, "conclusion"),
        Clause("(a+b)_w^E = a_w^E + b_w^E", rs.candidate == ra.candidate + rb.candidate,
               {}, "conclusion"),
    ]
    failed = [c.label for c in clauses if c.role == "hypothesis" and not c.truth]
    if failed and strict:
        raise HypothesisFailed(", ".join(failed))
    notes = ("hypothesis failed: " + ", ".join(failed),) if failed else ()
    return Certificate("C5.2", IMPLICATION, tuple(clauses), notes)


def _doubled(pair):
    """Orthogonal summands blockdiag(a, 0) and blockdiag(0, a) under
    blockdiag(w, w)."""
    z = GMat.zeros(pair.n)
    return (GMat.block_diag(pair.a, z), GMat.block_diag(z, pair.a),
            GMat.block_diag(pair.w, pair.w))


_CHECKERS: dict[str, Callable] = {
    "T2.1": _t2_1, "T2.3": _t2_3, "C2.5": _c2_5, "T2.6": _t2_6, "C2.7": _c2_7,
    "C2.8": _c2_8, "L2.9": _l2_9, "T2.10": _t2_10,
    "T3.1": _t3_1, "T3.3": _t3_3, "T3.5": _t3_5, "C3.6": _c3_6,
    "T4.1": _t4_1, "T4.3": _t4_3, "T4.5": _t4_5, "C4.6": _c4_6,
    "T5.1": _t5_1, "L5.4": _l5_4, "T5.5": _t5_5, "T5.7": _t5_7, "C5.8": _c5_8,
}

# unweighted corollaries: the weighted checker run with w = 1
ALIASES = {
    "C2.2": "T2.1", "C2.4": "T2.3", "C3.2": "T3.1", "C3.4": "T3.3",
    "C4.2": "T4.1", "C4.4": "T4.3", "C5.3": "T5.1", "C5.6": "T5.5",
}

SUITE_IDS = ("T2.1", "T2.3", "C2.5", "T2.6", "C2.7", "C2.8", "L2.9", "T2.10",
             "T3.1", "T3.3", "T3.5", "C3.6", "T4.1", "T4.3", "T4.5", "C4.6",
             "T5.1", "C5.2", "L5.4", "T5.5", "T5.7", "C5.8")


def registered() -> list[str]:
    return list(SUITE_IDS) + list(ALIASES)


def check(theorem_id: str, pair: WPair) -> Certificate:
    """Evaluate every clause of ``theorem_id`` on ``pair``."""
    if theorem_id in ALIASES:
        unit = WPair(pair.a, GMat.identity(pair.n))
        cert = check(ALIASES[theorem_id], unit)
        return Certificate(theorem_id, cert.shape, cert.clauses,
                           cert.notes + ("evaluated at w = 1",))
    if theorem_id == "C5.2":
        return check_additivity(*_doubled(pair))
    try:
        fn = _CHECKERS[theorem_id]
    except KeyError:
        raise UnknownTheorem(theorem_id) from None
    shape, clauses, notes = fn(pair)
    return Certificate(theorem_id, shape, tuple(clauses), tuple(notes))


@dataclass
class SuiteSummary:
    counts: dict[str, dict[str, int]]
    failures: list[tuple[int, Certificate]]

    @property
    def inconsistencies(self) -> int:
        return sum(c["inconsistent"] for c in self.counts.values())


def _check_all(args):
    pair, ids = args
    return [check(t, pair) for t in ids]


def run_suite(corpus: Iterable[WPair], theorem_ids: Sequence[str] = SUITE_IDS,
              workers: int = 1) -> SuiteSummary:
    """Run every checker over the corpus.

    Results are collected in corpus order whatever ``workers`` is, so the
    summary is deterministic.
    """
    pairs = list(corpus)
    counts = {t: {"consistent": 0, "inconsistent": 0} for t in theorem_ids}
    failures = []
    jobs = [(p, tuple(theorem_ids)) for p in pairs]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_check_all, jobs, chunksize=4))
    else:
        results = map(_check_all, jobs)
    for i, certs in enumerate(results):
        for cert in certs:
            if cert.consistent:
                counts[cert.theorem]["consistent"] += 1
            else:
                counts[cert.theorem]["inconsistent"] += 1
                failures.append((i, cert))
    return SuiteSummary(counts, failures)
