"""Exact Gaussian-rational scalars and dense matrices.

A matrix is stored as two integer arrays (real and imaginary numerators)
over one positive common denominator, kept in lowest terms.  Products and
sums then run on Python ints, and equality is plain structural equality of
the canonical form.  Elimination is fraction-free over the Gaussian
integers with content removal after every row operation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from operator import mul
from typing import Iterable, Sequence


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


class NotInvertible(ArithmeticError):
    """Raised by :func:`inverse` when the matrix is singular."""


@dataclass(frozen=True)
class GScalar:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value) -> "GScalar":
        if isinstance(value, GScalar):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, (tuple, list)) and len(value) == 2:
            return cls(Fraction(value[0]), Fraction(value[1]))
        return cls(Fraction(value))

    def conj(self) -> "GScalar":
        return GScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        other = GScalar.coerce(other)
        return GScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GScalar(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GScalar.coerce(other))

    def __rsub__(self, other):
        return GScalar.coerce(other) - self

    def __mul__(self, other):
        other = GScalar.coerce(other)
        return GScalar(self.re * other.re - self.im * other.im,
                       self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GScalar.coerce(other)
        d = other.abs2()
        if d == 0:
            raise ZeroDivisionError("GScalar division by zero")
        num = self * other.conj()
        return GScalar(num.re / d, num.im / d)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = GScalar.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _imatmul(A, B):
    cols = list(zip(*B))
    return [[sum(map(mul, row, col)) for col in cols] for row in A]


def _iadd(A, B, sa=1, sb=1):
    return [[sa * x + sb * y for x, y in zip(r, s)] for r, s in zip(A, B)]


def _izeros(r, c):
    return [[0] * c for _ in range(r)]


class GMat:
    """Dense matrix of Gaussian rationals.

    The public algebra element is square; rectangular shapes exist only as
    full-rank factors and null-space bases.  Instances are immutable.
    """

    __slots__ = ("_re", "_im", "_den", "_shape", "_real", "_hash")

    def __init__(self, rows: Sequence[Sequence[object]]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix rows")
        vals = [[GScalar.coerce(v) for v in r] for r in rows]
        den = 1
        for r in vals:
            for v in r:
                den = _lcm(_lcm(den, v.re.denominator), v.im.denominator)
        re = [[int(v.re * den) for v in r] for r in vals]
        im = [[int(v.im * den) for v in r] for r in vals]
        self._set(re, im, den)

    @classmethod
    def _raw(cls, re, im, den, shape=None) -> "GMat":
        obj = cls.__new__(cls)
        obj._set(re, im, den, shape)
        return obj

    def _set(self, re, im, den, shape=None):
        if den <= 0:
            raise ValueError("denominator must be positive")
        if shape is None:
            shape = (len(re), len(re[0]) if re else 0)
        flat = [x for r in re for x in r]
        real = not any(x for r in im for x in r)
        if not real:
            flat += [x for r in im for x in r]
        g = math.gcd(den, *flat)
        if g == 0 or not any(flat):
            g = den
        if g != 1:
            re = [[x // g for x in r] for r in re]
            im = [[x // g for x in r] for r in im]
            den //= g
        self._re = tuple(map(tuple, re))
        self._im = tuple(map(tuple, im))
        self._den = den
        self._shape = shape
        self._real = real
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "GMat":
        re = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls._raw(re, _izeros(n, n), 1, (n, n))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "GMat":
        cols = rows if cols is None else cols
        return cls._raw(_izeros(rows, cols), _izeros(rows, cols), 1, (rows, cols))

    @classmethod
    def diag(cls, values: Iterable[object]) -> "GMat":
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, *blocks: "GMat") -> "GMat":
        n = sum(b.shape[0] for b in blocks)
        m = sum(b.shape[1] for b in blocks)
        den = reduce(_lcm, (b._den for b in blocks), 1)
        re, im = _izeros(n, m), _izeros(n, m)
        r0 = c0 = 0
        for b in blocks:
            s = den // b._den
            for i in range(b.shape[0]):
                for j in range(b.shape[1]):
                    re[r0 + i][c0 + j] = b._re[i][j] * s
                    im[r0 + i][c0 + j] = b._im[i][j] * s
            r0 += b.shape[0]
            c0 += b.shape[1]
        return cls._raw(re, im, den, (n, m))

    # structure ------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def n(self) -> int:
        if self._shape[0] != self._shape[1]:
            raise DimensionMismatch(f"matrix of shape {self._shape} is not square")
        return self._shape[0]

    @property
    def is_square(self) -> bool:
        return self._shape[0] == self._shape[1]

    @property
    def is_real(self) -> bool:
        return self._real

    def __getitem__(self, idx) -> GScalar:
        i, j = idx
        return GScalar(Fraction(self._re[i][j], self._den), Fraction(self._im[i][j], self._den))

    def rows(self) -> list[list[GScalar]]:
        r, c = self._shape
        return [[self[i, j] for j in range(c)] for i in range(r)]

    def is_zero(self) -> bool:
        return self._den == 1 and not any(any(r) for r in self._re) and self._real

    def is_hermitian(self) -> bool:
        return self == self.adjoint()

    def is_idempotent(self) -> bool:
        return self @ self == self

    # algebra --------------------------------------------------------------
    def _aligned(self, other: "GMat"):
        if self._shape != other._shape:
            raise DimensionMismatch(f"shapes {self._shape} and {other._shape} differ")
        den = _lcm(self._den, other._den)
        return den, den // self._den, den // other._den

    def __add__(self, other: "GMat") -> "GMat":
        if not isinstance(other, GMat):
            return NotImplemented
        den, s, t = self._aligned(other)
        return GMat._raw(_iadd(self._re, other._re, s, t),
                         _iadd(self._im, other._im, s, t), den, self._shape)

    def __sub__(self, other: "GMat") -> "GMat":
        if not isinstance(other, GMat):
            return NotImplemented
        den, s, t = self._aligned(other)
        return GMat._raw(_iadd(self._re, other._re, s, -t),
                         _iadd(self._im, other._im, s, -t), den, self._shape)

    def __neg__(self) -> "GMat":
        return GMat._raw([[-x for x in r] for r in self._re],
                         [[-x for x in r] for r in self._im], self._den, self._shape)

    def __matmul__(self, other: "GMat") -> "GMat":
        if not isinstance(other, GMat):
            return NotImplemented
        if self._shape[1] != other._shape[0]:
            raise DimensionMismatch(f"cannot multiply {self._shape} by {other._shape}")
        shape = (self._shape[0], other._shape[1])
        re = _imatmul(self._re, other._re)
        if self._real and other._real:
            im = _izeros(*shape)
        elif self._real:
            im = _imatmul(self._re, other._im)
        elif other._real:
            im = _imatmul(self._im, other._re)
        else:
            re = _iadd(re, _imatmul(self._im, other._im), 1, -1)
            im = _iadd(_imatmul(self._re, other._im), _imatmul(self._im, other._re))
        return GMat._raw(re, im, self._den * other._den, shape)

    def scale(self, c) -> "GMat":
        """Multiply every entry by the scalar ``c``."""
        c = GScalar.coerce(c)
        den = _lcm(_lcm(c.re.denominator, c.im.denominator), 1)
        cr, ci = int(c.re * den), int(c.im * den)
        re = [[cr * x - ci * y for x, y in zip(r, s)] for r, s in zip(self._re, self._im)]
        im = [[cr * y + ci * x for x, y in zip(r, s)] for r, s in zip(self._re, self._im)]
        return GMat._raw(re, im, self._den * den, self._shape)

    def __pow__(self, k: int) -> "GMat":
        n = self.n
        if k < 0:
            return inverse(self) ** (-k)
        result, base = GMat.identity(n), self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def adjoint(self) -> "GMat":
        """Conjugate transpose."""
        re = [list(c) for c in zip(*self._re)]
        im = [[-x for x in c] for c in zip(*self._im)]
        return GMat._raw(re, im, self._den, (self._shape[1], self._shape[0]))

    @property
    def H(self) -> "GMat":
        return self.adjoint()

    def transpose(self) -> "GMat":
        return GMat._raw([list(c) for c in zip(*self._re)], [list(c) for c in zip(*self._im)],
                         self._den, (self._shape[1], self._shape[0]))

    def hstack(self, other: "GMat") -> "GMat":
        if self._shape[0] != other._shape[0]:
            raise DimensionMismatch("row counts differ")
        den = _lcm(self._den, other._den)
        s, t = den // self._den, den // other._den
        re = [[x * s for x in r] + [y * t for y in q] for r, q in zip(self._re, other._re)]
        im = [[x * s for x in r] + [y * t for y in q] for r, q in zip(self._im, other._im)]
        return GMat._raw(re, im, den, (self._shape[0], self._shape[1] + other._shape[1]))

    def vstack(self, other: "GMat") -> "GMat":
        return self.transpose().hstack(other.transpose()).transpose()

    def columns(self, idx: Sequence[int]) -> "GMat":
        re = [[r[j] for j in idx] for r in self._re]
        im = [[r[j] for j in idx] for r in self._im]
        return GMat._raw(re, im, self._den, (self._shape[0], len(idx)))

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, GMat):
            return NotImplemented
        return (self._shape == other._shape and self._den == other._den
                and self._re == other._re and self._im == other._im)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._shape, self._den, self._re, self._im))
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(v) for v in row) for row in self.rows())
        return f"GMat([{body}])"


# ---------------------------------------------------------------------------
# fraction-free elimination over Gaussian integers


def _content_reduce(re, im):
    g = math.gcd(*re, *im)
    if g > 1:
        re[:] = [x // g for x in re]
        im[:] = [x // g for x in im]


def _eliminate(re, im, ncols=None, full=False):
    """Row-reduce integer rows in place; return the pivot (row, col) list.

    With ``full`` the pivot columns are cleared above as well as below.
    Only the first ``ncols`` columns are scanned for pivots.
    """
    nrows = len(re)
    ncols = len(re[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if re[i][c] or im[i][c]), None)
        if p is None:
            continue
        if p != r:
            re[p], re[r] = re[r], re[p]
            im[p], im[r] = im[r], im[p]
        pr, pi = re[r][c], im[r][c]
        prow_re, prow_im = re[r], im[r]
        targets = range(nrows) if full else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            fr, fi = re[i][c], im[i][c]
            if not (fr or fi):
                continue
            row_re, row_im = re[i], im[i]
            if not (pi or fi or any(prow_im) or any(row_im)):
                new_re = [pr * x - fr * y for x, y in zip(row_re, prow_re)]
                new_im = [0] * len(new_re)
            else:
                new_re = [pr * x - pi * xi - (fr * y - fi * yi)
                          for x, xi, y, yi in zip(row_re, row_im, prow_re, prow_im)]
                new_im = [pr * xi + pi * x - (fr * yi + fi * y)
                          for x, xi, y, yi in zip(row_re, row_im, prow_re, prow_im)]
            _content_reduce(new_re, new_im)
            re[i], im[i] = new_re, new_im
        pivots.append((r, c))
        r += 1
    return pivots


def _int_rows(M: GMat):
    return [list(r) for r in M._re], [list(r) for r in M._im]


def _rows_over_pivots(re, im, pivots, cols=slice(None)):
    """Divide each pivot row (restricted to ``cols``) by its pivot entry.

    Returns integer numerator rows and their common denominator.
    """
    out = []
    for r, c in pivots:
        pr, pi = re[r][c], im[r][c]
        # multiply by conj(pivot) / |pivot|^2
        xs, ys = re[r][cols], im[r][cols]
        out.append(([x * pr + y * pi for x, y in zip(xs, ys)],
                    [y * pr - x * pi for x, y in zip(xs, ys)],
                    pr * pr + pi * pi))
    den = reduce(_lcm, (d for _, _, d in out), 1)
    R = [[x * (den // d) for x in nre] for nre, _, d in out]
    I = [[x * (den // d) for x in nim] for _, nim, d in out]
    return R, I, den


def rank(M: GMat) -> int:
    """Exact rank by fraction-free elimination."""
    re, im = _int_rows(M)
    return len(_eliminate(re, im))


def inverse(M: GMat) -> GMat:
    """Two-sided inverse; raises :class:`NotInvertible` when singular."""
    n = M.n
    re = [list(r) + [int(i == j) * M._den for j in range(n)] for i, r in enumerate(M._re)]
    im = [list(r) + [0] * n for r in M._im]
    pivots = _eliminate(re, im, ncols=n, full=True)
    if len(pivots) < n:
        raise NotInvertible(f"matrix has rank {len(pivots)} < {n}")
    R, I, den = _rows_over_pivots(re, im, pivots, slice(n, None))
    return GMat._raw(R, I, den, (n, n))


@dataclass(frozen=True)
class FRF:
    """Full-rank factorization ``M = F @ G``; factors are ``None`` when r = 0."""

    F: GMat | None
    G: GMat | None
    r: int

    def product(self, n: int) -> GMat:
        if self.r == 0:
            return GMat.zeros(n)
        return self.F @ self.G


def rref(M: GMat) -> tuple[GMat | None, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    re, im = _int_rows(M)
    pivots = _eliminate(re, im, full=True)
    if not pivots:
        return None, []
    R, I, den = _rows_over_pivots(re, im, pivots)
    return GMat._raw(R, I, den, (len(pivots), M.shape[1])), [c for _, c in pivots]


def full_rank_factorization(M: GMat) -> FRF:
    """Factor ``M`` as (pivot columns of M) @ (nonzero rows of rref(M))."""
    G, cols = rref(M)
    if G is None:
        return FRF(None, None, 0)
    return FRF(M.columns(cols), G, len(cols))


def null_space(M: GMat) -> GMat | None:
    """Basis of the right null space as columns, or ``None`` if trivial."""
    cols = M.shape[1]
    G, piv = rref(M)
    free = [j for j in range(cols) if j not in piv]
    if not free:
        return None
    basis = []
    for f in free:
        v = [GScalar() for _ in range(cols)]
        v[f] = GScalar(1)
        for i, p in enumerate(piv):
            v[p] = -G[i, f]
        basis.append(v)
    return GMat([list(r) for r in zip(*basis)])


def nilpotency_degree(M: GMat) -> int | None:
    """Smallest k >= 1 with M**k = 0, or ``None`` if M is not nilpotent."""
    n = M.n
    P = M
    for k in range(1, n + 1):
        if P.is_zero():
            return k
        P = P @ M
    return None


def is_nilpotent(M: GMat) -> tuple[bool, int | None]:
    k = nilpotency_degree(M)
    return k is not None, k


def _same_size(M: GMat, N: GMat):
    if M.shape != N.shape:
        raise DimensionMismatch(f"shapes {M.shape} and {N.shape} differ")


def col_space_equal(M: GMat, N: GMat) -> bool:
    _same_size(M, N)
    r = rank(M)
    return r == rank(N) == rank(M.hstack(N))


def row_space_equal(M: GMat, N: GMat) -> bool:
    _same_size(M, N)
    r = rank(M)
    return r == rank(N) == rank(M.vstack(N))


def null_space_equal(M: GMat, N: GMat) -> bool:
    """Equality of right null spaces, decided from an explicit basis."""
    _same_size(M, N)
    KM, KN = null_space(M), null_space(N)
    if KM is None or KN is None:
        return KM is None and KN is None
    return KM.shape == KN.shape and (N @ KM).is_zero() and (M @ KN).is_zero()
