"""Brute-force cross-checks.  Exponential on purpose; keep inputs small."""

from __future__ import annotations

from typing import Optional, Sequence

from .intmat import IntegerMatrix
from .presentation import Graph


def oracle_cycle_min(g: Graph, f: Sequence[int], L: int) -> Optional[int]:
    """Minimum ``f``-sum over all closed directed walks of length ``1..L``; ``None`` if there are none."""
    vi = g.vertex_index()
    arcs = [(vi[e.init], vi[e.term], w) for e, w in zip(g.edges, f)]
    out = [[(b, w) for a, b, w in arcs if a == u] for u in range(len(g.vertices))]
    best: Optional[int] = None

    def walk(start: int, at: int, total: int, length: int):
        nonlocal best
        for b, w in out[at]:
            t = total + w
            if b == start and (best is None or t < best):
                best = t
            if length + 1 < L:
                walk(start, b, t, length + 1)

    for s in range(len(g.vertices)):
        walk(s, s, 0, 0)
    return best


def oracle_limit_sign(M: IntegerMatrix, v: Sequence[int], B: int) -> str:
    """Iterate ``M^m v`` for ``m = 0..B``: first zero, nonnegative or nonpositive hit wins."""
    x = tuple(v)
    for _ in range(B + 1):
        if not any(x):
            return "zero"
        if all(c >= 0 for c in x):
            return "positive"
        if all(c <= 0 for c in x):
            return "negative"
        x = M @ x
    return "unknown"
