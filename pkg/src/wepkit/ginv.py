"""Moore-Penrose, Drazin and group inverses in exact arithmetic."""
from __future__ import annotations

from dataclasses import dataclass

from .exact import GMat, full_rank_factorization, inverse, rank, col_space_equal


@dataclass(frozen=True)
class DrazinResult:
    d: GMat
    k: int


def moore_penrose(M: GMat) -> GMat:
    """Moore-Penrose inverse from a full-rank factorization.

    With ``M = F G`` the pseudoinverse is ``G* (G G*)^-1 (F* F)^-1 F*``; both
    Gram factors are invertible because F has full column rank and G full
    row rank.
    """
    frf = full_rank_factorization(M)
    if frf.r == 0:
        return GMat.zeros(M.shape[1], M.shape[0])
    F, G = frf.F, frf.G
    return G.H @ inverse(G @ G.H) @ inverse(F.H @ F) @ F.H


def drazin_index(M: GMat) -> int:
    """Smallest k >= 0 with rank(M^k) == rank(M^(k+1))."""
    prev, P = M.n, M
    for k in range(M.n + 1):
        cur = rank(P)
        if cur == prev:
            return k
        prev, P = cur, P @ M
    raise AssertionError("index exceeds dimension")  # pragma: no cover


def drazin(M: GMat) -> DrazinResult:
    """Drazin inverse and index via Cline's full-rank iteration.

    Factor ``M = B1 C1`` and keep refactoring ``Ci Bi = B(i+1) C(i+1)`` until
    the core ``Ck Bk`` is invertible (index k) or zero (M nilpotent, index
    k + 1).  Then ``M^D = B1..Bk (Ck Bk)^-(k+1) Ck..C1``.
    """
    n = M.n
    if M.is_zero():
        return DrazinResult(GMat.zeros(n), 1)
    if rank(M) == n:
        return DrazinResult(inverse(M), 0)
    Bs, Cs = [], []
    core = M
    while True:
        frf = full_rank_factorization(core)
        Bs.append(frf.F)
        Cs.append(frf.G)
        core = frf.G @ frf.F
        if core.is_zero():
            return DrazinResult(GMat.zeros(n), len(Bs) + 1)
        if rank(core) == core.n:
            break
    k = len(Bs)
    left = Bs[0]
    for B in Bs[1:]:
        left = left @ B
    right = Cs[-1]
    for C in reversed(Cs[:-1]):
        right = right @ C
    return DrazinResult(left @ (inverse(core) ** (k + 1)) @ right, k)


def drazin_via_pinv(M: GMat) -> GMat:
    """Reference formula ``M^k (M^(2k+1))^+ M^k`` with k the Drazin index."""
    k = drazin_index(M)
    Mk = M ** k
    return Mk @ moore_penrose(M ** (2 * k + 1)) @ Mk


def group_inverse(M: GMat) -> GMat | None:
    """Group inverse, or ``None`` when the Drazin index exceeds 1."""
    res = drazin(M)
    if res.k > 1:
        return None
    return res.d


def is_ep(M: GMat) -> bool:
    g = group_inverse(M)
    return g is not None and (M @ g).is_hermitian()


def is_ep_by_ranges(M: GMat) -> bool:
    """EP test through ranges alone: R(M) = R(M*)."""
    return rank(M) == rank(M.H) and col_space_equal(M, M.H)
