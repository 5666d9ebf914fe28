"""Stationary dimension groups ``lim(Z^n, M)`` with their exact order.

Elements are pairs ``(level, vector)`` with ``(k, v) ~ (k+1, M v)``.  For a
primitive ``M`` the sign of a nonzero class is the sign of ``w(θ)·v`` where
``θ`` is the Perron root and ``w`` a left Perron eigenvector; both are kept
symbolic (polynomials in ``θ`` plus a rational isolating interval) so every
verdict is exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import poly as P
from .cohomology import cohomology_basis, induced_matrix
from .intmat import IntegerMatrix, charpoly_and_adjugate, determinant, mat_power_vec, rank
from .presentation import Presentation, WrappingRule, orientability

DEFAULT_BOUND = 64


class DimensionMismatch(ValueError):
    pass


class NotPrimitive(ValueError):
    pass


class InconclusiveError(RuntimeError):
    """An iteration bound was exhausted before a verdict was reached."""


class SignClass(str, enum.Enum):
    ZERO = "zero"
    POSITIVE = "positive"
    NEGATIVE = "negative"
    INFINITESIMAL = "infinitesimal"

    def __str__(self) -> str:
        return self.value


# --------------------------------------------------------------------------
# matrices of a rule


def adjacency_matrix(r: WrappingRule) -> IntegerMatrix:
    """Entry ``(i, j)``: occurrences of edge ``j`` in the image of edge ``i``, either direction."""
    ci = r.codomain.edge_index()
    rows = []
    for e in r.domain.edge_names:
        row = [0] * len(ci)
        for x in r.image(e):
            row[ci[x.edge]] += 1
        rows.append(row)
    return IntegerMatrix(rows, len(ci))


def signed_transfer_matrix(r: WrappingRule) -> IntegerMatrix:
    """Like :func:`adjacency_matrix` but each occurrence counts with its sign."""
    ci = r.codomain.edge_index()
    rows = []
    for e in r.domain.edge_names:
        row = [0] * len(ci)
        for x in r.image(e):
            row[ci[x.edge]] += x.sign
        rows.append(row)
    return IntegerMatrix(rows, len(ci))


def is_primitive(M: IntegerMatrix) -> Tuple[bool, Optional[int]]:
    """Least ``m ≤ (n-1)^2 + 1`` with ``M^m > 0``, checked on the zero pattern."""
    if not M.is_square:
        raise ValueError("primitivity needs a square matrix")
    if not M.is_nonnegative():
        raise ValueError("primitivity needs a nonnegative matrix")
    n = M.nrows
    if n == 0:
        return False, None
    B = [[1 if x else 0 for x in r] for r in M.rows]
    cur = [row[:] for row in B]
    for m in range(1, (n - 1) ** 2 + 2):
        if all(all(r) for r in cur):
            return True, m
        cur = [[1 if any(cur[i][k] and B[k][j] for k in range(n)) else 0 for j in range(n)] for i in range(n)]
    return False, None


# --------------------------------------------------------------------------
# simplicity


@dataclass(frozen=True)
class SimplicityVerdict:
    status: str  # "holds" | "fails" | "inconclusive"
    exponent: Optional[int] = None
    detail: str = ""
    kappa: Tuple[Optional[int], ...] = ()

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def check_simplicity(p: Presentation) -> SimplicityVerdict:
    """Every deep enough edge image covers the whole graph.

    Stationary: equivalent to primitivity of the adjacency matrix.  Tower:
    for every level ``k`` below the top, ``κ(k)`` is the least ``l`` whose
    composite adjacency ``M_l ... M_{k+1}`` is positive; coverage then
    persists upward because every edge image is nonempty.
    """
    if p.stationary:
        M = adjacency_matrix(p.rule)
        ok, m = is_primitive(M)
        if ok:
            return SimplicityVerdict("holds", m, f"M^{m} is entrywise positive")
        return SimplicityVerdict("fails", None, "adjacency matrix is not primitive")
    if len(p.maps) == 0:
        return SimplicityVerdict("inconclusive", None, "tower has no maps")
    mats = [adjacency_matrix(r) for r in p.maps]  # mats[k-1]: n_k x n_{k-1}
    K = len(p.levels) - 1
    kappa: List[Optional[int]] = []
    failing = []
    for k in range(K):
        prod = None
        found = None
        for l in range(k + 1, K + 1):
            prod = mats[l - 1] if prod is None else mats[l - 1] @ prod
            if prod.is_positive():
                found = l
                break
        kappa.append(found)
        if found is None:
            failing.append(k)
    if failing:
        return SimplicityVerdict(
            "fails", None,
            f"no composite map down to level(s) {', '.join(map(str, failing))} covers every edge",
            tuple(kappa),
        )
    return SimplicityVerdict(
        "holds", None, f"checked levels 0..{K - 1}; level {K} has no deeper level in the tower", tuple(kappa)
    )


# --------------------------------------------------------------------------
# limit elements


@dataclass(frozen=True)
class LimitElement:
    level: int
    vector: Tuple[int, ...]

    def __init__(self, level: int, vector: Sequence[int]):
        if level < 0:
            raise ValueError("level must be nonnegative")
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "vector", tuple(int(x) for x in vector))

    def __str__(self) -> str:
        return f"{self.level}:" + ",".join(map(str, self.vector))


def _check_dim(M: IntegerMatrix, *elts: LimitElement) -> None:
    if not M.is_square:
        raise DimensionMismatch("stationary matrix must be square")
    for a in elts:
        if len(a.vector) != M.nrows:
            raise DimensionMismatch(f"vector of length {len(a.vector)} for a {M.nrows}x{M.nrows} matrix")


def limit_lift(M: IntegerMatrix, a: LimitElement, level: int) -> LimitElement:
    if level < a.level:
        raise ValueError("cannot lift to a lower level")
    _check_dim(M, a)
    return LimitElement(level, mat_power_vec(M, level - a.level, a.vector))


def limit_add(M: IntegerMatrix, a: LimitElement, b: LimitElement) -> LimitElement:
    _check_dim(M, a, b)
    m = max(a.level, b.level)
    x, y = limit_lift(M, a, m), limit_lift(M, b, m)
    return LimitElement(m, tuple(u + v for u, v in zip(x.vector, y.vector)))


def limit_scale(M: IntegerMatrix, c: int, a: LimitElement) -> LimitElement:
    _check_dim(M, a)
    return LimitElement(a.level, tuple(c * u for u in a.vector))


def limit_sub(M: IntegerMatrix, a: LimitElement, b: LimitElement) -> LimitElement:
    return limit_add(M, a, limit_scale(M, -1, b))


def limit_is_zero(M: IntegerMatrix, a: LimitElement) -> bool:
    """``M^n v = 0``: the kernel chain of ``M`` is stable by step ``n``."""
    _check_dim(M, a)
    return not any(mat_power_vec(M, M.nrows, a.vector))


def limit_equal(M: IntegerMatrix, a: LimitElement, b: LimitElement) -> bool:
    return limit_is_zero(M, limit_sub(M, a, b))


# --------------------------------------------------------------------------
# Perron data


def _roots_in(seq, lo: Fraction, hi: Fraction, p: P.Poly) -> int:
    """Distinct roots of ``p`` in ``(lo, hi]``, or at ``lo`` when the interval is a point."""
    if lo == hi:
        return int(P.evaluate(p, lo) == 0)
    return P.count_roots(seq, lo, hi)


@dataclass(frozen=True)
class PerronData:
    """Perron root as an isolated root of an integer polynomial, plus a left eigenvector.

    ``interval = (lo, hi)`` contains exactly one root of ``squarefree``
    (the largest one); ``lo == hi`` means the root is that rational number.
    ``eigenvector[i]`` is a polynomial whose value at the root is the
    ``i``-th entry of a strictly positive left Perron eigenvector.
    """

    charpoly: P.Poly
    squarefree: P.Poly
    interval: Tuple[Fraction, Fraction]
    eigenvector: Tuple[P.Poly, ...]
    sturm: Tuple[P.Poly, ...] = field(repr=False, compare=False, default=())

    @property
    def width(self) -> Fraction:
        return self.interval[1] - self.interval[0]

    @property
    def exact(self) -> Optional[Fraction]:
        lo, hi = self.interval
        return lo if lo == hi else None

    def root_count(self) -> int:
        lo, hi = self.interval
        return _roots_in(self.sturm, lo, hi, self.squarefree)

    def refined(self, max_width: Fraction) -> "PerronData":
        lo, hi = self.interval
        while hi - lo > max_width:
            lo, hi = _bisect(self.sturm, self.squarefree, lo, hi)
        return PerronData(self.charpoly, self.squarefree, (lo, hi), self.eigenvector, self.sturm)

    def sign_at_root(self, q: P.Poly) -> int:
        """Exact sign of ``q(θ)``."""
        q = P.normalize(q)
        if not q:
            return 0
        lo, hi = self.interval
        if lo == hi:
            return _sgn(P.evaluate(q, lo))
        g = P.gcd_poly(self.squarefree, q)
        if P.degree(g) >= 1 and _roots_in(P.sturm_sequence(g), lo, hi, g) > 0:
            return 0
        while True:
            a, b = P.interval_eval(q, lo, hi)
            if a > 0:
                return 1
            if b < 0:
                return -1
            lo, hi = _bisect(self.sturm, self.squarefree, lo, hi)
            if lo == hi:
                return _sgn(P.evaluate(q, lo))

    def functional(self, v: Sequence[int]) -> P.Poly:
        """``w(x)·v`` as a polynomial, reduced modulo the square-free characteristic polynomial."""
        acc: P.Poly = ()
        for w, c in zip(self.eigenvector, v):
            if c:
                acc = P.add(acc, P.scale(w, c))
        return P.rem(acc, self.squarefree) if acc else ()

    def theta_float(self) -> float:
        lo, hi = self.interval
        return float((lo + hi) / 2)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _bisect(seq, p: P.Poly, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Halve an isolating interval ``(lo, hi]`` keeping the root."""
    mid = (lo + hi) / 2
    if P.evaluate(p, mid) == 0:
        return mid, mid
    if P.count_roots(seq, lo, mid) >= 1:
        return lo, mid
    return mid, hi


def isolate_largest_root(p: P.Poly) -> Tuple[P.Poly, Tuple[P.Poly, ...], Tuple[Fraction, Fraction]]:
    """Square-free part, its Sturm sequence, and an interval isolating the largest real root."""
    sq = P.squarefree(p)
    seq = tuple(P.sturm_sequence(sq))
    hi = Fraction(P.root_bound(sq))
    lo = -hi
    if P.count_roots(seq, lo, hi) == 0:
        raise ValueError("polynomial has no real root")
    # shrink from below while more than one root remains in (lo, hi]
    while P.count_roots(seq, lo, hi) > 1:
        mid = (lo + hi) / 2
        if P.count_roots(seq, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    # a rational root of a monic integer polynomial is an integer; catch it exactly
    if abs(sq[-1]) == 1:
        for m in range(math.floor(lo) + 1, math.floor(hi) + 1):
            if P.evaluate(sq, m) == 0:
                return sq, seq, (Fraction(m), Fraction(m))
    if P.evaluate(sq, hi) == 0:
        return sq, seq, (hi, hi)
    return sq, seq, (lo, hi)


def perron_data(M: IntegerMatrix) -> PerronData:
    ok, _ = is_primitive(M)
    if not ok:
        raise NotPrimitive("Perron data needs a primitive matrix")
    cp, adj = charpoly_and_adjugate(M)
    sq, seq, interval = isolate_largest_root(cp)
    pd = PerronData(cp, sq, interval, (), seq)
    rows = [tuple(P.rem(entry, sq) for entry in row) for row in adj]
    for row in rows:
        if any(pd.sign_at_root(e) != 0 for e in row):
            break
    else:
        raise AssertionError("adjugate vanishes at the Perron root")
    s = next(pd.sign_at_root(e) for e in row if pd.sign_at_root(e) != 0)
    vec = tuple(P.scale(e, s) for e in row)
    pd = PerronData(cp, sq, pd.interval, vec, seq)
    assert all(pd.sign_at_root(e) > 0 for e in vec), "Perron eigenvector must be strictly positive"
    return pd


def perron_root_factor(pd: PerronData) -> P.Poly:
    """Irreducible factor over Q of the characteristic polynomial vanishing at ``θ``."""
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Integer(int(c)) * x**i for i, c in enumerate(P.primitive_part(pd.squarefree)))
    lo, hi = pd.interval
    for fac, _ in sympy.factor_list(expr, x)[1]:
        coeffs = tuple(int(c) for c in reversed(sympy.Poly(fac, x).all_coeffs()))
        f = P.primitive_part(coeffs)
        if P.degree(f) >= 1 and _roots_in(P.sturm_sequence(f), lo, hi, f) > 0:
            return f
    raise AssertionError("no factor vanishes at the Perron root")


# --------------------------------------------------------------------------
# order


def limit_sign(M: IntegerMatrix, a: LimitElement, perron: Optional[PerronData] = None) -> SignClass:
    """Exact sign class of ``a`` in ``lim(Z^n, M)`` for primitive ``M``."""
    _check_dim(M, a)
    if perron is None:
        perron = perron_data(M)
    if limit_is_zero(M, a):
        return SignClass.ZERO
    s = perron.sign_at_root(perron.functional(a.vector))
    if s > 0:
        return SignClass.POSITIVE
    if s < 0:
        return SignClass.NEGATIVE
    return SignClass.INFINITESIMAL


def interpolate(
    M: IntegerMatrix,
    a1: LimitElement,
    a2: LimitElement,
    b1: LimitElement,
    b2: LimitElement,
    bound: int = DEFAULT_BOUND,
    perron: Optional[PerronData] = None,
) -> LimitElement:
    """``c`` with ``a_i ≤ c ≤ b_j``, given ``a_i ≤ b_j`` for all four pairs."""
    _check_dim(M, a1, a2, b1, b2)
    if perron is None:
        perron = perron_data(M)
    for a in (a1, a2):
        for b in (b1, b2):
            if limit_sign(M, limit_sub(M, b, a), perron) not in (SignClass.POSITIVE, SignClass.ZERO):
                raise ValueError(f"precondition violated: {a} is not below {b}")
    m = max(x.level for x in (a1, a2, b1, b2))
    xs = [limit_lift(M, x, m).vector for x in (a1, a2, b1, b2)]
    for step in range(bound + 1):
        A1, A2, B1, B2 = xs
        if all(bj >= ai for B in (B1, B2) for A in (A1, A2) for ai, bj in zip(A, B)):
            return LimitElement(m + step, tuple(max(u, v) for u, v in zip(A1, A2)))
        xs = [M @ x for x in xs]
    raise InconclusiveError(f"no level within {bound} steps where the bounds dominate entrywise")


# --------------------------------------------------------------------------
# reports


def nonzero_part(p: P.Poly) -> P.Poly:
    """Strip the factor ``x^k`` from ``p``."""
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return P.normalize(p[k:])


def _radical(n: int) -> int:
    n = abs(n)
    out, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            out *= d
            while n % d == 0:
                n //= d
        d += 1
    return out * (n if n > 1 else 1)


def render_group(nz: P.Poly) -> Dict[str, str]:
    """Names for ``lim(Z^r, A)`` where ``A`` is the restriction to the eventual range."""
    r = P.degree(nz)
    if r <= 0:
        return {"limit": "0", "group": "0"}
    c0 = nz[0]
    if r == 1:
        d = -nz[0]
        lim = f"lim(Z, ×{d})"
        if abs(d) == 1:
            return {"limit": lim, "group": "Z"}
        return {"limit": lim, "group": f"Z[1/{_radical(d)}]"}
    lim = f"lim(Z^{r}, A) with det(xI - A) = {P.to_str(nz)}"
    if abs(c0) == 1:
        return {"limit": lim, "group": f"Z^{r}"}
    return {"limit": lim, "group": lim}


@dataclass(frozen=True)
class MatrixGroupData:
    matrix: IntegerMatrix
    determinant: int
    charpoly: P.Poly
    eventual_rank: int
    nonzero_charpoly: P.Poly
    unimodular: bool
    names: Dict[str, str]

    def as_dict(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "determinant": self.determinant,
            "charpoly": P.to_str(self.charpoly),
            "eventual_rank": self.eventual_rank,
            "nonzero_charpoly": P.to_str(self.nonzero_charpoly),
            "unimodular": self.unimodular,
            "limit": self.names["limit"],
            "group": self.names["group"],
        }


def matrix_group_data(M: IntegerMatrix) -> MatrixGroupData:
    cp, _ = charpoly_and_adjugate(M)
    nz = nonzero_part(cp)
    er = rank(M ** M.nrows) if M.nrows else 0
    assert er == P.degree(nz), "eventual rank must equal the multiplicity of nonzero eigenvalues"
    unimodular = er == 0 or abs(nz[0]) == 1
    return MatrixGroupData(M, determinant(M), cp, er, nz, unimodular, render_group(nz))


def _interval_dict(pd: PerronData) -> dict:
    lo, hi = pd.interval
    return {"lo": str(lo), "hi": str(hi), "width": str(hi - lo)}


@dataclass(frozen=True)
class Report:
    adjacency: MatrixGroupData
    signed_transfer: IntegerMatrix
    cohomology_rank: int
    cohomology: MatrixGroupData
    primitive: bool
    primitivity_exponent: Optional[int]
    simplicity: SimplicityVerdict
    orientable: bool
    perron: Optional[PerronData]
    perron_factor: Optional[P.Poly]

    def as_dict(self) -> dict:
        out = {
            "adjacency": self.adjacency.as_dict(),
            "signed_transfer": self.signed_transfer.tolist(),
            "cohomology_rank": self.cohomology_rank,
            "bruschlinsky": self.cohomology.as_dict(),
            "primitive": self.primitive,
            "primitivity_exponent": self.primitivity_exponent,
            "simplicity": self.simplicity.status,
            "orientable": self.orientable,
            "perron": None,
        }
        if self.perron is not None:
            out["perron"] = {
                "charpoly": P.to_str(self.perron.charpoly),
                "root_factor": P.to_str(self.perron_factor),
                "interval": _interval_dict(self.perron),
                "approx": self.perron.theta_float(),
                "eigenvector": [P.to_str(w, "θ") for w in self.perron.eigenvector],
            }
        return out


def invariants_report(p: Presentation, max_width: Fraction = Fraction(1, 100)) -> Report:
    """Matrix-level and cohomology-level invariants of a stationary presentation."""
    r = p.rule
    A = adjacency_matrix(r)
    T = signed_transfer_matrix(r)
    C = induced_matrix(r)
    prim, exp = is_primitive(A)
    pd = perron_data(A).refined(max_width) if prim else None
    return Report(
        adjacency=matrix_group_data(A),
        signed_transfer=T,
        cohomology_rank=cohomology_basis(p.graph).rank,
        cohomology=matrix_group_data(C),
        primitive=prim,
        primitivity_exponent=exp,
        simplicity=check_simplicity(p),
        orientable=orientability(p) is not None,
        perron=pd,
        perron_factor=perron_root_factor(pd) if pd else None,
    )


def same_root(a: PerronData, fa: P.Poly, b: PerronData, fb: P.Poly) -> bool:
    """Do the two isolated roots coincide?"""
    if fa != fb:
        return False
    lo = max(a.interval[0], b.interval[0])
    hi = min(a.interval[1], b.interval[1])
    if lo > hi:
        return False
    return _roots_in(P.sturm_sequence(fa), lo, hi, fa) > 0


@dataclass(frozen=True)
class ComparisonReport:
    left: Report
    right: Report
    matrix_groups_equal: bool
    bruschlinsky_invariants_equal: bool
    perron_roots_equal: Optional[bool]
    note: str = "necessary-condition check only"

    def as_dict(self) -> dict:
        L, R = self.left, self.right
        return {
            "note": self.note,
            "matrix_level": {
                "left": {"eventual_rank": L.adjacency.eventual_rank, "nonzero_charpoly": P.to_str(L.adjacency.nonzero_charpoly), "group": L.adjacency.names["group"]},
                "right": {"eventual_rank": R.adjacency.eventual_rank, "nonzero_charpoly": P.to_str(R.adjacency.nonzero_charpoly), "group": R.adjacency.names["group"]},
                "equal": self.matrix_groups_equal,
            },
            "bruschlinsky_level": {
                "left": {"rank": L.cohomology.eventual_rank, "nonzero_charpoly": P.to_str(L.cohomology.nonzero_charpoly), "group": L.cohomology.names["group"]},
                "right": {"rank": R.cohomology.eventual_rank, "nonzero_charpoly": P.to_str(R.cohomology.nonzero_charpoly), "group": R.cohomology.names["group"]},
                "perron_roots_equal": self.perron_roots_equal,
                "equal": self.bruschlinsky_invariants_equal,
            },
            "left": L.as_dict(),
            "right": R.as_dict(),
        }


def _group_invariants(d: MatrixGroupData) -> tuple:
    return (d.eventual_rank, d.nonzero_charpoly, d.unimodular)


def compare(p1: Presentation, p2: Presentation, max_width: Fraction = Fraction(1, 100)) -> ComparisonReport:
    """Side-by-side invariants; agreement is necessary, never sufficient, for isomorphism."""
    r1, r2 = invariants_report(p1, max_width), invariants_report(p2, max_width)
    roots = None
    if r1.perron and r2.perron:
        roots = same_root(r1.perron, r1.perron_factor, r2.perron, r2.perron_factor)
    brus = _group_invariants(r1.cohomology) == _group_invariants(r2.cohomology) and roots is not False
    return ComparisonReport(
        r1, r2,
        matrix_groups_equal=_group_invariants(r1.adjacency) == _group_invariants(r2.adjacency),
        bruschlinsky_invariants_equal=brus,
        perron_roots_equal=roots,
    )
