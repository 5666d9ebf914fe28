"""Exact univariate polynomials over Q, Sturm sequences and interval evaluation.

Polynomials are tuples of coefficients, lowest degree first, with no trailing
zeros; the zero polynomial is the empty tuple.  Coefficients are ``int`` or
``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple, Union

Number = Union[int, Fraction]
Poly = Tuple[Number, ...]


def normalize(coeffs: Sequence[Number]) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(_simplify(x) for x in c)


def _simplify(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return normalize([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c: Number) -> Poly:
    return normalize([c * x for x in p])


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def divmod_poly(p: Poly, q: Poly) -> Tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in p]
    dq = degree(q)
    lead = Fraction(q[-1])
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    for k in range(len(p) - dq - 1, -1, -1):
        c = r[k + dq] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return normalize(quot), normalize(r[:dq])


def rem(p: Poly, q: Poly) -> Poly:
    return divmod_poly(p, q)[1]


def primitive_part(p: Poly) -> Poly:
    """Scale ``p`` to integer coefficients with content 1 and positive leading term."""
    if not p:
        return ()
    den = 1
    for c in p:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def gcd_poly(p: Poly, q: Poly) -> Poly:
    """Primitive integer gcd of ``p`` and ``q`` (``()`` when both are zero)."""
    a, b = normalize(p), normalize(q)
    while b:
        a, b = b, rem(a, b)
    return primitive_part(a)


def derivative(p: Poly) -> Poly:
    return normalize([i * p[i] for i in range(1, len(p))])


def squarefree(p: Poly) -> Poly:
    g = gcd_poly(p, derivative(p))
    if degree(g) <= 0:
        return primitive_part(p)
    return primitive_part(divmod_poly(p, g)[0])


def evaluate(p: Poly, x: Number) -> Number:
    acc: Number = 0
    for c in reversed(p):
        acc = acc * x + c
    return _simplify(acc) if isinstance(acc, Fraction) else acc


def sturm_sequence(p: Poly) -> list:
    seq = [normalize(p), derivative(p)]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(neg(r))
    return [primitive_part(s) if _lead_sign(s) > 0 else neg(primitive_part(s)) for s in seq if s]


def _lead_sign(p: Poly) -> int:
    return 1 if p[-1] > 0 else -1


def sign_changes(seq: Sequence[Poly], x: Number) -> int:
    signs = [s for s in (_sgn(evaluate(q, x)) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: Sequence[Poly], lo: Number, hi: Number) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    return sign_changes(seq, lo) - sign_changes(seq, hi)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root lies strictly inside ``(-B, B)``."""
    lead = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in p[:-1]), default=Fraction(0))


def interval_eval(p: Poly, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Enclosure of ``p`` over ``[lo, hi]`` by interval Horner evaluation."""
    a = b = Fraction(0)
    for c in reversed(p):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


def _sgn(x: Number) -> int:
    return (x > 0) - (x < 0)


def to_str(p: Poly, var: str = "x") -> str:
    """Human-readable rendering, highest degree first, e.g. ``x^2 - 3*x + 1``."""
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
