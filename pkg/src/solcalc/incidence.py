"""Exhaustive reconstruction of graph incidence from bare substitution words.

Given edge names, each edge's image as a sequence of edge names with unknown
orientation, and a vertex count, enumerate every (incidence, letter signs,
vertex map) that makes a valid stationary presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .presentation import (
    Edge,
    Graph,
    Letter,
    Presentation,
    WrappingRule,
    validate_presentation,
)


@dataclass(frozen=True)
class IncidenceSolution:
    incidence: Tuple[Tuple[int, int], ...]
    signs: Tuple[Tuple[int, ...], ...]
    vertex_map: Tuple[int, ...]

    @property
    def all_positive(self) -> bool:
        return all(s > 0 for w in self.signs for s in w)

    def presentation(self, edge_names: Sequence[str], raw_words: Mapping[str, Sequence[str]],
                     vertex_names: Sequence[str] | None = None) -> Presentation:
        n = len(self.vertex_map)
        names = list(vertex_names) if vertex_names else [f"v{i}" for i in range(n)]
        g = Graph(tuple(names), tuple(Edge(e, names[a], names[b]) for e, (a, b) in zip(edge_names, self.incidence)))
        images = {
            e: tuple(Letter(x, s) for x, s in zip(raw_words[e], sg))
            for e, sg in zip(edge_names, self.signs)
        }
        vmap = {names[i]: names[j] for i, j in enumerate(self.vertex_map)}
        return Presentation.stationary_from(g, WrappingRule(g, g, images, vmap), inferred=True)


def _canonical_incidences(m: int, n: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Endpoint sequences ``(init_0, term_0, init_1, ...)`` as restricted-growth strings using all ``n`` labels.

    Each class of incidences under vertex relabeling appears exactly once, in lexicographic order.
    """

    def rec(prefix: List[int], top: int):
        if len(prefix) == 2 * m:
            if top == n:
                yield tuple((prefix[2 * i], prefix[2 * i + 1]) for i in range(m))
            return
        remaining = 2 * m - len(prefix)
        if n - top > remaining:
            return
        for v in range(min(top + 1, n)):
            prefix.append(v)
            yield from rec(prefix, max(top, v + 1))
            prefix.pop()

    yield from rec([], 0)


def _signed_walks(word: Sequence[int], inc: Sequence[Tuple[int, int]]) -> List[Tuple[Tuple[int, ...], int, int]]:
    """All sign choices making ``word`` a chained path; returns (signs, start, end)."""
    out = []
    # sign +1 sorts first
    for signs in product((1, -1), repeat=len(word)):
        ends = [inc[x] if s > 0 else inc[x][::-1] for x, s in zip(word, signs)]
        if all(ends[i][1] == ends[i + 1][0] for i in range(len(ends) - 1)):
            out.append((signs, ends[0][0], ends[-1][1]))
    return out


def solve_incidence(edge_names: Sequence[str], raw_words: Mapping[str, Sequence[str]],
                    vertex_count: int) -> List[IncidenceSolution]:
    """Every consistent incidence/sign/vertex-map triple, up to vertex relabeling.

    Results are filtered through :func:`validate_presentation` so each one is
    nondegenerate, strongly connected and Markov.  Order is lexicographic in
    (incidence, signs with ``+`` before ``-``, vertex map).
    """
    if vertex_count < 1:
        raise ValueError("vertex_count must be positive")
    names = list(edge_names)
    idx = {e: i for i, e in enumerate(names)}
    for e in names:
        if not raw_words.get(e):
            raise ValueError(f"edge {e!r} needs a nonempty word")
    words = []
    for e in names:
        try:
            words.append([idx[x] for x in raw_words[e]])
        except KeyError as exc:
            raise ValueError(f"word for {e!r} uses unknown edge {exc.args[0]!r}") from None

    found: List[IncidenceSolution] = []
    for inc in _canonical_incidences(len(names), vertex_count):
        options = []
        for w in words:
            opts = _signed_walks(w, inc)
            if not opts:
                break
            options.append(opts)
        else:
            for combo in product(*options):
                vmap: Dict[int, int] = {}
                ok = True
                for (a, b), (_, start, end) in zip(inc, combo):
                    if vmap.setdefault(a, start) != start or vmap.setdefault(b, end) != end:
                        ok = False
                        break
                if not ok or len(vmap) != vertex_count:
                    continue
                sol = IncidenceSolution(inc, tuple(c[0] for c in combo), tuple(vmap[i] for i in range(vertex_count)))
                if validate_presentation(sol.presentation(names, raw_words)).ok:
                    found.append(sol)
    found.sort(key=lambda s: (s.incidence, tuple(tuple(-x for x in w) for w in s.signs), s.vertex_map))
    return found
