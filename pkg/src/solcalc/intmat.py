"""Arbitrary-precision integer matrices.

Entries are Python ints, so products and powers never overflow.  Only the
operations the dimension-group engine needs are provided.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from . import poly as P

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: Tuple[Tuple[int, ...], ...]
    ncols: int

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        rs = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rs:
                raise ValueError("cannot infer column count of an empty matrix")
            ncols = len(rs[0])
        if any(len(r) != ncols for r in rs):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, n: int, m: int) -> "IntegerMatrix":
        return cls([[0] * m for _ in range(n)], m)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix([self.column(j) for j in range(self.ncols)], self.nrows)

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = [other.column(j) for j in range(other.ncols)]
            return IntegerMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows], other.ncols
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError(f"vector length {len(v)} does not match {self.ncols} columns")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "IntegerMatrix":
        return IntegerMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __pow__(self, k: int) -> "IntegerMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        result = IntegerMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self.rows for x in r)

    def is_positive(self) -> bool:
        return all(x > 0 for r in self.rows for x in r)

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(min(self.shape)))

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"


def mat_power_vec(M: IntegerMatrix, k: int, v: Sequence[int]) -> Vector:
    """``M^k v`` by repeated matrix-vector products."""
    out = tuple(v)
    for _ in range(k):
        out = M @ out
    return out


def determinant(M: IntegerMatrix) -> int:
    """Fraction-free Bareiss elimination."""
    if not M.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    if n == 0:
        return 1
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(M: IntegerMatrix) -> int:
    """Rank over Q."""
    a = [[Fraction(x) for x in r] for r in M.rows]
    r = 0
    for c in range(M.ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def charpoly_and_adjugate(M: IntegerMatrix) -> Tuple[P.Poly, List[List[P.Poly]]]:
    """Faddeev-LeVerrier: ``det(xI - M)`` and the polynomial matrix ``adj(xI - M)``.

    Uses ``adj(xI - M) = sum_{k=1..n} N_k x^(n-k)`` with ``N_1 = I`` and
    ``N_{k+1} = M N_k + c_{n-k} I``; every division is exact over Z.
    """
    if not M.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.nrows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    N = IntegerMatrix.identity(n)
    terms = []
    for k in range(1, n + 1):
        terms.append(N)
        MN = M @ N
        c = -MN.trace()
        assert c % k == 0
        coeffs[n - k] = c // k
        N = MN + IntegerMatrix.identity(n).scaled(coeffs[n - k])
    # N is now M N_n + c_0 I = 0 by Cayley-Hamilton.
    assert all(x == 0 for r in N.rows for x in r)
    adj = [
        [P.normalize([terms[n - 1 - d][i, j] for d in range(n)]) for j in range(n)]
        for i in range(n)
    ]
    return P.normalize(coeffs), adj


def charpoly(M: IntegerMatrix) -> P.Poly:
    return charpoly_and_adjugate(M)[0]
