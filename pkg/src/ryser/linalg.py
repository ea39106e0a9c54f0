"""Exact rational matrices and the incidence-matrix identities of Ryser designs.

A :class:`RationalMatrix` is stored as an integer matrix over one positive
common denominator, reduced so that the gcd of all numerators and the
denominator is 1. Products and sums are then plain integer arithmetic, and
determinants/inverses use fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from operator import mul
from typing import Iterable, Sequence

from ryser.design import IncidenceStructure
from ryser.params import InconsistencyError, RyserProfile, format_fraction


class SingularMatrixError(ArithmeticError):
    pass


class GramHypothesisError(ValueError):
    pass


class RationalMatrix:
    __slots__ = ("_num", "_den", "rows", "cols")

    def __init__(self, num: Sequence[Sequence[int]], den: int = 1):
        num = [list(map(int, row)) for row in num]
        if not num or not num[0]:
            raise ValueError("matrix dimensions must be positive")
        cols = len(num[0])
        if any(len(row) != cols for row in num):
            raise ValueError("ragged rows")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [[-x for x in row] for row in num]
            den = -den
        common = den
        for row in num:
            for x in row:
                common = gcd(common, x)
                if common == 1:
                    break
            if common == 1:
                break
        if common > 1:
            num = [[x // common for x in row] for row in num]
            den //= common
        self._num = tuple(tuple(row) for row in num)
        self._den = den
        self.rows = len(num)
        self.cols = cols

    # construction

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> RationalMatrix:
        rows = [[Fraction(x) for x in row] for row in rows]
        den = reduce(lcm, (x.denominator for row in rows for x in row), 1)
        return cls([[x.numerator * (den // x.denominator) for x in row] for row in rows], den)

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> RationalMatrix:
        return cls([[1] * (rows if cols is None else cols) for _ in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> RationalMatrix:
        return cls([[0] * (rows if cols is None else cols) for _ in range(rows)])

    @classmethod
    def diag(cls, values: Sequence) -> RationalMatrix:
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def numerators(self) -> tuple[tuple[int, ...], ...]:
        return self._num

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(self._num[i][j], self._den)

    def tolist(self) -> list[list[Fraction]]:
        return [[Fraction(x, self._den) for x in row] for row in self._num]

    def is_integral(self) -> bool:
        return self._den == 1

    # algebra

    @property
    def T(self) -> RationalMatrix:
        return RationalMatrix(list(zip(*self._num)), self._den)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self):
        return hash((self._den, self._num))

    def _aligned(self, other: RationalMatrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        den = lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        return den, fa, fb

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        den, fa, fb = self._aligned(other)
        return RationalMatrix(
            [[fa * x + fb * y for x, y in zip(ra, rb)] for ra, rb in zip(self._num, other._num)], den
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return self + other * -1

    def __neg__(self) -> RationalMatrix:
        return self * -1

    def __mul__(self, scalar) -> RationalMatrix:
        s = Fraction(scalar)
        return RationalMatrix(
            [[x * s.numerator for x in row] for row in self._num], self._den * s.denominator
        )

    __rmul__ = __mul__

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._num))
        return RationalMatrix(
            [[sum(map(mul, row, col)) for col in cols] for row in self._num],
            self._den * other._den,
        )

    def trace(self) -> Fraction:
        self._require_square()
        return Fraction(sum(self._num[i][i] for i in range(self.rows)), self._den)

    def _require_square(self):
        if self.rows != self.cols:
            raise ValueError(f"matrix is not square: {self.shape}")

    def det(self) -> Fraction:
        self._require_square()
        return Fraction(bareiss_det(self._num), self._den ** self.rows)

    def rank(self) -> int:
        return bareiss_rank(self._num)

    def inverse(self) -> RationalMatrix:
        self._require_square()
        d, adj = bareiss_adjugate(self._num)
        if d == 0:
            raise SingularMatrixError("matrix is singular")
        # (N/den)^-1 = den * N^-1 = den * adj / d
        return RationalMatrix(adj, d) * self._den

    def first_difference(self, other: RationalMatrix):
        """First ``(i, j)`` where the two matrices differ, or ``None``."""
        if self.shape != other.shape:
            return (-1, -1)
        for i in range(self.rows):
            for j in range(self.cols):
                if self[i, j] != other[i, j]:
                    return i, j
        return None

    def dump(self) -> str:
        """One row per line, entries ``num/den`` (``den`` omitted when 1)."""
        return "\n".join(" ".join(format_fraction(x) for x in row) for row in self.tolist()) + "\n"

    def __repr__(self):
        return f"RationalMatrix({self.tolist()!r})"


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    a = [list(row) for row in M]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def bareiss_rank(M: Sequence[Sequence[int]]) -> int:
    a = [list(row) for row in M]
    rows, cols = len(a), len(a[0])
    rank, prev = 0, 1
    for k in range(cols):
        if rank == rows:
            break
        p = next((i for i in range(rank, rows) if a[i][k] != 0), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        piv = a[rank][k]
        for i in range(rank + 1, rows):
            aik = a[i][k]
            for j in range(k, cols):
                a[i][j] = (piv * a[i][j] - aik * a[rank][j]) // prev
        prev = piv
        rank += 1
    return rank


def bareiss_adjugate(M: Sequence[Sequence[int]]) -> tuple[int, list[list[int]]]:
    """Fraction-free Gauss-Jordan on ``[M | I]``.

    Returns ``(d, B)`` with ``M^-1 = B / d``; ``d == 0`` signals a singular matrix.
    Pivot is the first nonzero entry in the column.
    """
    n = len(M)
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    width = 2 * n
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return 0, []
        if p != k:
            a[k], a[p] = a[p], a[k]
        rk = a[k]
        piv = rk[k]
        for i in range(n):
            if i == k:
                continue
            ri = a[i]
            aik = ri[k]
            for j in range(width):
                ri[j] = (piv * ri[j] - aik * rk[j]) // prev
        prev = piv
    # left block is now prev * I
    return prev, [row[n:] for row in a]


# incidence matrices of Ryser designs


def row_order(S: IncidenceStructure, E1: Iterable[int]) -> list[int]:
    """Point labels in matrix row order: ``E1`` ascending, then the rest ascending."""
    E1 = sorted(set(E1))
    first = set(E1)
    return E1 + [p for p in range(S.v) if p not in first]


def incidence_matrix(S: IncidenceStructure, E1: Iterable[int] = ()) -> RationalMatrix:
    """Points-by-blocks 0/1 matrix, rows ordered by :func:`row_order`."""
    order = row_order(S, E1)
    sets = S.block_sets()
    return RationalMatrix([[int(p in B) for B in sets] for p in order])


def d_matrix(S: IncidenceStructure, lam: int) -> RationalMatrix:
    return RationalMatrix.diag([k - lam for k in S.sizes])


def r_matrix(P: RyserProfile) -> RationalMatrix:
    """Rank-one matrix with blocks ``rho J``, ``J``, ``J``, ``J / rho`` (E1 rows first)."""
    rho = P.rho
    n = P.e1 + P.e2
    return RationalMatrix.from_rows(
        [
            [rho if (i < P.e1 and j < P.e1) else (1 / rho if (i >= P.e1 and j >= P.e1) else 1)
             for j in range(n)]
            for i in range(n)
        ]
    )


def inverse_scalar(P: RyserProfile) -> Fraction:
    """``rho / (lambda (rho + 1)^2)``, the coefficient in ``(I + R)^-1 = I - s R``."""
    return P.rho / (P.lam * (P.rho + 1) ** 2)


@dataclass(frozen=True)
class GramCheck:
    ok: bool
    failed: str | None = None
    entry: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def check_gram(S: IncidenceStructure, P: RyserProfile) -> GramCheck:
    """Check ``A^T A = D + lambda J`` and ``A D^-1 A^T = I + R`` exactly."""
    A = incidence_matrix(S, P.E1)
    D = d_matrix(S, P.lam)
    n = S.v
    lhs, rhs = A.T @ A, D + RationalMatrix.ones(n) * P.lam
    where = lhs.first_difference(rhs)
    if where is not None:
        return GramCheck(False, "A^T A = D + lambda J", where)
    Dinv = RationalMatrix.diag([Fraction(1, k - P.lam) for k in S.sizes])
    lhs, rhs = A @ Dinv @ A.T, RationalMatrix.identity(n) + r_matrix(P)
    where = lhs.first_difference(rhs)
    if where is not None:
        return GramCheck(False, "A D^-1 A^T = I + R", where)
    return GramCheck(True)


def gram_determinant(S: IncidenceStructure, P: RyserProfile) -> tuple[Fraction, Fraction]:
    """``(closed_form, direct)`` determinants of ``A^T A``."""
    prod = 1
    for k in S.sizes:
        prod *= k - P.lam
    closed = P.lam * (P.rho + 1) ** 2 / P.rho * prod
    A = incidence_matrix(S, P.E1)
    return Fraction(closed), (A.T @ A).det()


def i_plus_r_inverse(P: RyserProfile) -> RationalMatrix:
    """Closed-form ``(I + R)^-1 = I - [rho / (lambda (rho+1)^2)] R``."""
    R = r_matrix(P)
    return RationalMatrix.identity(R.rows) - R * inverse_scalar(P)


def ryser_inverse(S: IncidenceStructure, P: RyserProfile) -> RationalMatrix:
    """``A^-1 = D^-1 A^T (I - s R)`` for ``A = incidence_matrix(S, P.E1)``.

    Rows of the result index blocks, columns index points in
    ``row_order(S, P.E1)``.
    """
    A = incidence_matrix(S, P.E1)
    Dinv = RationalMatrix.diag([Fraction(1, k - P.lam) for k in S.sizes])
    X = Dinv @ A.T @ i_plus_r_inverse(P)
    I = RationalMatrix.identity(S.v)
    if A @ X != I or X @ A != I:
        raise InconsistencyError("closed-form inverse does not invert the incidence matrix")
    return X


def rank_one_inverse_update(G: RationalMatrix, H: RationalMatrix) -> RationalMatrix:
    """``(G + H)^-1 = G^-1 - G^-1 H G^-1 / (1 + tr(H G^-1))`` for rank-one ``H``."""
    if G.shape != H.shape or G.rows != G.cols:
        raise ValueError("G and H must be square matrices of the same order")
    rank = H.rank()
    if rank != 1:
        raise ValueError(f"H must have rank one, got rank {rank}")
    Ginv = G.inverse()
    g = (H @ Ginv).trace()
    if 1 + g == 0:
        raise SingularMatrixError("1 + tr(H G^-1) = 0; G + H is singular")
    result = Ginv - (Ginv @ H @ Ginv) * (1 / (1 + g))
    if (G + H) @ result != RationalMatrix.identity(G.rows):
        raise InconsistencyError("rank-one update failed to invert G + H")
    return result


@dataclass(frozen=True)
class MultiplicativeReport:
    """Corollary data for a constant-lambda multiplicative design.

    ``x[i]`` is stored divided by ``sqrt(lambda)``, so the true value is
    ``x[i] * sqrt(lam)`` and ``t * x_i * x_j = t * lam * x[i] * x[j]``.
    """

    t: Fraction
    x: tuple[Fraction, ...]
    lam: int
    cor21: bool
    cor22: bool
    cor22_sides: tuple[Fraction, Fraction]


def multiplicative_check(A: RationalMatrix, k: Sequence[int], lams: Sequence[int]) -> MultiplicativeReport:
    v = A.cols
    if len(k) != v or len(lams) != v:
        raise GramHypothesisError("need one k and one lambda per column")
    if len(set(lams)) != 1:
        raise NotImplementedError("only constant lambda_i is supported")
    lam = lams[0]
    if any(ki - lam <= 0 for ki in k):
        raise GramHypothesisError("every k_i - lambda_i must be positive")
    D = RationalMatrix.diag([ki - lam for ki in k])
    if A.T @ A != D + RationalMatrix.ones(v) * lam:
        raise GramHypothesisError("A^T A != D + [sqrt(lambda_i lambda_j)]")
    w = [Fraction(1, ki - lam) for ki in k]
    t = 1 + lam * sum(w)
    x = tuple(sum((w[j] * A[i, j] for j in range(v)), Fraction(0)) / t for i in range(A.rows))
    Dinv = RationalMatrix.diag(w)
    outer = RationalMatrix.from_rows([[t * lam * xi * xj for xj in x] for xi in x])
    cor21 = A @ Dinv @ A.T == RationalMatrix.identity(A.rows) + outer
    lhs = (sum(Fraction(ki * ki, ki - lam) for ki in k) - v) * t
    rhs = lam * sum(Fraction(ki, ki - lam) for ki in k) ** 2
    return MultiplicativeReport(t, x, lam, cor21, lhs == rhs, (lhs, rhs))
