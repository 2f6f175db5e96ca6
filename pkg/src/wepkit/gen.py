"""Seeded generation of structured test instances.

Randomness comes from SplitMix64, a fixed 64-bit mixing function that is
easy to reimplement anywhere, so a (family, n, seed, magnitude) tuple names
the same instance in every language.  Integers are drawn as
``lo + next() % (hi - lo + 1)``; the slight modulo bias is accepted for the
sake of a trivial port.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exact import GMat, GScalar, rank
from .weighted import Kind, WPair, classify

MASK = (1 << 64) - 1


class UnsupportedDimension(ValueError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)

    def chance(self, num: int, den: int) -> bool:
        return self.next() % den < num

    def choice(self, seq):
        return seq[self.next() % len(seq)]


class Family(str, enum.Enum):
    DIAGONAL_WEP = "DiagonalWEP"
    BLOCK_STAR_DMP = "BlockStarDMP"
    NON_EP_IDEMPOTENT = "NonEPIdempotent"
    JORDAN_NILPOTENT = "JordanNilpotent"
    UNITARY_CONJUGATED = "UnitaryConjugated"
    RANDOM_DENSE = "RandomDense"


# A label names the class the instance is built to have.  "none" means it is
# built to fail generalized w-EP, and therefore w-EP and w-*-DMP as well.
LABEL_WEP = "w-EP"
LABEL_STAR_DMP = "w-*-DMP"
LABEL_GEN = "gen-w-EP"
LABEL_NONE = "none"

_LABEL_KIND = {LABEL_WEP: Kind.W_EP, LABEL_STAR_DMP: Kind.W_STAR_DMP, LABEL_GEN: Kind.GEN_W_EP}


@dataclass(frozen=True)
class GenSpec:
    family: Family
    n: int
    seed: int
    magnitude: int = 10

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "seed", self.seed & MASK)
        if self.magnitude < 1:
            raise ValueError("magnitude must be positive")


@dataclass(frozen=True)
class Instance:
    spec: GenSpec
    pair: WPair
    label: str | None


def label_holds(label: str | None, pair: WPair, report=None) -> bool:
    """Whether the weighted classifier agrees with ``label``."""
    if label is None:
        return True
    report = report or classify(pair)
    if label == LABEL_NONE:
        return not report[Kind.GEN_W_EP].exists
    return report[_LABEL_KIND[label]].exists


# -- building blocks ----------------------------------------------------------

def _rational(rng, mag, nonzero=False):
    while True:
        p = rng.randint(-mag, mag)
        q = 1 if rng.chance(1, 2) else rng.randint(1, mag)
        if p or not nonzero:
            return Fraction(p, q)


def _scalar(rng, mag, nonzero=False):
    re = _rational(rng, mag)
    im = _rational(rng, mag) if rng.chance(1, 3) else Fraction(0)
    if nonzero and not (re or im):
        re = _rational(rng, mag, nonzero=True)
    return GScalar(re, im)


def _conjugate(pair: WPair, u: GMat) -> WPair:
    uh = u.H
    return WPair(u @ pair.a @ uh, u @ pair.w @ uh)


_TRIPLES = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25))
_PHASES = ((1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1),
           (3, 4, 5), (3, -4, 5), (4, 3, 5), (-4, 3, 5))


def rational_unitary(n: int, seed: int) -> GMat:
    """Exact unitary: ``n`` planar rotations with Pythagorean cosine/sine
    pairs, then a diagonal of unimodular Gaussian-rational phases.

    For n = 1 only the phase remains.
    """
    if n < 1:
        raise UnsupportedDimension("n must be at least 1")
    rng = SplitMix64(seed)
    u = GMat.identity(n)
    if n >= 2:
        for _ in range(n):
            i = rng.randint(0, n - 2)
            j = rng.randint(i + 1, n - 1)
            p, q, h = rng.choice(_TRIPLES)
            c, s = Fraction(p, h), Fraction(q, h)
            if rng.chance(1, 2):
                c, s = s, c
            if rng.chance(1, 2):
                s = -s
            rows = [[Fraction(int(r == k)) for k in range(n)] for r in range(n)]
            rows[i][i], rows[i][j], rows[j][i], rows[j][j] = c, -s, s, c
            u = GMat(rows) @ u
    phases = [GScalar(Fraction(re, h), Fraction(im, h))
              for re, im, h in (rng.choice(_PHASES) for _ in range(n))]
    return GMat.diag(phases) @ u


# -- families -----------------------------------------------------------------

def _diagonal_wep(n, rng, mag):
    a, w = [], []
    for _ in range(n):
        on = n == 1 or rng.chance(3, 4)
        a.append(_scalar(rng, mag, nonzero=True) if on else GScalar())
        # w may vanish only off the support of a
        w.append(_scalar(rng, mag, nonzero=on))
    return WPair(GMat.diag(a), GMat.diag(w)), LABEL_WEP


def _block_star_dmp(n, rng, mag):
    if n == 1:
        pair, _ = _diagonal_wep(1, rng, mag)
        return pair, LABEL_STAR_DMP
    r = rng.randint(1, n - 1)
    s = n - r
    head, _ = _diagonal_wep(r, rng, mag)
    N = [[_scalar(rng, mag) if j > i else 0 for j in range(s)] for i in range(s)]
    if s >= 2 and not N[0][1]:
        N[0][1] = _scalar(rng, mag, nonzero=True)  # keep the nilpotent part nonzero
    w2 = [[_scalar(rng, mag, nonzero=i == j) if j >= i else 0 for j in range(s)]
          for i in range(s)]
    pair = WPair(GMat.block_diag(head.a, GMat(N)), GMat.block_diag(head.w, GMat(w2)))
    if rng.chance(1, 2):
        pair = _conjugate(pair, rational_unitary(n, rng.next()))
    return pair, LABEL_STAR_DMP


def _non_ep_idempotent(n, rng, mag):
    if n < 2:
        raise UnsupportedDimension("every 1x1 idempotent is EP")
    r = rng.randint(1, n - 1)
    X = [[_scalar(rng, mag) for _ in range(n - r)] for _ in range(r)]
    if not any(any(row) for row in X):
        X[0][0] = _scalar(rng, mag, nonzero=True)
    rows = [[int(i == j) for j in range(r)] + X[i] for i in range(r)]
    rows += [[0] * n for _ in range(n - r)]
    pair = WPair(GMat(rows), GMat.identity(n))
    if rng.chance(1, 2):
        pair = _conjugate(pair, rational_unitary(n, rng.next()))
    return pair, LABEL_NONE


def _jordan(n, rng, mag):
    J = [[int(j == i + 1) for j in range(n)] for i in range(n)]
    return WPair(GMat(J), GMat.identity(n)), LABEL_GEN


_BASES = (Family.DIAGONAL_WEP, Family.BLOCK_STAR_DMP, Family.JORDAN_NILPOTENT,
          Family.NON_EP_IDEMPOTENT)


def _unitary_conjugated(n, rng, mag):
    bases = _BASES if n >= 2 else _BASES[:3]
    base = rng.choice(bases)
    pair, label = _BUILDERS[base](n, rng, mag)
    return _conjugate(pair, rational_unitary(n, rng.next())), label


def random_matrix(n: int, seed: int, magnitude: int = 10, complex_entries=True) -> GMat:
    """Seeded dense test matrix with a spread of ranks and indices.

    Half the draws are products ``B C`` through an inner dimension below n
    (rank deficient), and a quarter of those get a strictly upper
    triangular term added so the Drazin index can exceed one.
    """
    rng = SplitMix64(seed)
    mag = min(magnitude, 4)

    def ent():
        re = rng.randint(-mag, mag)
        im = rng.randint(-mag, mag) if complex_entries and rng.chance(1, 4) else 0
        return GScalar(re, im)

    if n == 1 or rng.chance(1, 2):
        return GMat([[ent() for _ in range(n)] for _ in range(n)])
    r = rng.randint(0, n - 1)
    B = GMat([[ent() for _ in range(r)] for _ in range(n)]) if r else GMat.zeros(n)
    C = GMat([[ent() for _ in range(n)] for _ in range(r)]) if r else GMat.zeros(n)
    M = B @ C
    if rng.chance(1, 2):
        M = M + GMat([[ent() if j > i else 0 for j in range(n)] for i in range(n)])
    return M


def _random_dense(n, rng, mag):
    small = min(mag, 3)
    a = GMat([[rng.randint(-small, small) if rng.chance(2, 3) else 0 for _ in range(n)]
              for _ in range(n)])
    if rng.chance(1, 3):
        a = a @ a  # push some instances to higher index
    while True:
        w = GMat([[rng.randint(-small, small) for _ in range(n)] for _ in range(n)])
        if rank(w) == n:
            return WPair(a, w), None


_BUILDERS = {
    Family.DIAGONAL_WEP: _diagonal_wep,
    Family.BLOCK_STAR_DMP: _block_star_dmp,
    Family.NON_EP_IDEMPOTENT: _non_ep_idempotent,
    Family.JORDAN_NILPOTENT: _jordan,
    Family.UNITARY_CONJUGATED: _unitary_conjugated,
    Family.RANDOM_DENSE: _random_dense,
}


def generate(spec: GenSpec) -> Instance:
    """Build the instance named by ``spec``.

    RandomDense instances carry no label; every other family carries the
    class it is constructed to satisfy (or ``"none"``).
    """
    if spec.n < 1:
        raise UnsupportedDimension("n must be at least 1")
    rng = SplitMix64(spec.seed)
    pair, label = _BUILDERS[spec.family](spec.n, rng, spec.magnitude)
    return Instance(spec, pair, label)


FAMILIES = tuple(Family)


def build_corpus(size: int = 200, seed: int = 0, max_n: int = 5,
                 magnitude: int = 10, families=FAMILIES) -> list[Instance]:
    """A mixed corpus cycling through ``families`` and sizes ``1..max_n``.

    Per-instance seeds are drawn from one SplitMix64 stream seeded with
    ``seed``.  NonEPIdempotent has no 1x1 members and is bumped to n = 2.
    """
    rng = SplitMix64(seed)
    out = []
    for i in range(size):
        fam = Family(families[i % len(families)])
        n = 1 + (i // len(families)) % max_n
        if fam is Family.NON_EP_IDEMPOTENT:
            n = max(n, 2)
        out.append(generate(GenSpec(fam, n, rng.next(), magnitude)))
    return out
