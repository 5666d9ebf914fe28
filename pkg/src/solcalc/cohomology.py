"""First cohomology of directed graphs and the pullback along wrapping rules.

Edge functions are integer tuples indexed by the graph's edge order; vertex
potentials are integer tuples indexed by its vertex order.  The group
``Z^E / V`` (``V`` = vertex coboundaries) gets coordinates from a spanning
tree: the coordinate of a cotree edge is the sum of ``f`` around its
fundamental cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .intmat import IntegerMatrix
from .presentation import Graph, Presentation, WrappingRule

EdgeFunction = Tuple[int, ...]
Potential = Tuple[int, ...]


class NotStronglyConnected(ValueError):
    pass


def vertex_function(g: Graph, v: str) -> EdgeFunction:
    """``+1`` on edges leaving ``v`` for another vertex, ``-1`` on edges entering it, else 0."""
    if v not in g.vertices:
        raise KeyError(f"unknown vertex {v!r}")
    out = []
    for e in g.edges:
        if e.init == e.term:
            out.append(0)
        elif e.init == v:
            out.append(1)
        elif e.term == v:
            out.append(-1)
        else:
            out.append(0)
    return tuple(out)


def coboundary(g: Graph, rho: Sequence[int]) -> EdgeFunction:
    if len(rho) != len(g.vertices):
        raise ValueError("potential length does not match vertex count")
    vi = g.vertex_index()
    return tuple(rho[vi[e.init]] - rho[vi[e.term]] for e in g.edges)


@dataclass(frozen=True)
class CohomologyBasis:
    graph: Graph
    tree: Tuple[int, ...]  # edge indices
    cotree: Tuple[int, ...]
    roots: Tuple[int, ...]  # smallest vertex index of each component

    @property
    def rank(self) -> int:
        return len(self.cotree)


def cohomology_basis(g: Graph) -> CohomologyBasis:
    """Spanning forest chosen greedily in edge order; the cotree is the rest."""
    vi = g.vertex_index()
    parent = list(range(len(g.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree, cotree = [], []
    for i, e in enumerate(g.edges):
        a, b = find(vi[e.init]), find(vi[e.term])
        if a == b:
            cotree.append(i)
        else:
            parent[max(a, b)] = min(a, b)
            tree.append(i)
    roots = tuple(vi[c[0]] for c in g.components())
    basis = CohomologyBasis(g, tuple(tree), tuple(cotree), roots)
    assert basis.rank == len(g.edges) - len(g.vertices) + len(roots)
    return basis


def _tree_potential(basis: CohomologyBasis, f: Sequence[int]) -> List[int]:
    """Potential ``ρ`` with ``ρ(init) - ρ(term) = f`` on tree edges and 0 at each root."""
    g = basis.graph
    vi = g.vertex_index()
    adj: Dict[int, List[Tuple[int, int, int]]] = {i: [] for i in range(len(g.vertices))}
    for i in basis.tree:
        e = g.edges[i]
        a, b = vi[e.init], vi[e.term]
        adj[a].append((b, i, -1))  # ρ(b) = ρ(a) - f
        adj[b].append((a, i, 1))
    rho: List[Optional[int]] = [None] * len(g.vertices)
    for r in basis.roots:
        rho[r] = 0
        stack = [r]
        while stack:
            u = stack.pop()
            for w, i, s in adj[u]:
                if rho[w] is None:
                    rho[w] = rho[u] + s * f[i]
                    stack.append(w)
    return [x if x is not None else 0 for x in rho]


def reduce(g: Graph, basis: CohomologyBasis, f: Sequence[int]) -> Tuple[int, ...]:
    """Coordinates of the class of ``f``: its sum around each fundamental cycle."""
    if len(f) != len(g.edges):
        raise ValueError("edge function length does not match edge count")
    rho = _tree_potential(basis, f)
    vi = g.vertex_index()
    return tuple(
        f[i] - (rho[vi[g.edges[i].init]] - rho[vi[g.edges[i].term]]) for i in basis.cotree
    )


def canonical_representative(g: Graph, basis: CohomologyBasis, f: Sequence[int]) -> EdgeFunction:
    """The function cohomologous to ``f`` that vanishes on the spanning tree."""
    coords = dict(zip(basis.cotree, reduce(g, basis, f)))
    return tuple(coords.get(i, 0) for i in range(len(g.edges)))


def lift(basis: CohomologyBasis, coords: Sequence[int]) -> EdgeFunction:
    out = [0] * len(basis.graph.edges)
    for i, c in zip(basis.cotree, coords):
        out[i] = c
    return tuple(out)


def is_coboundary(g: Graph, f: Sequence[int]) -> Optional[Potential]:
    """Potential ``ρ`` with ``coboundary(ρ) = f``, zero at each component's first vertex, or ``None``."""
    basis = cohomology_basis(g)
    rho = _tree_potential(basis, f)
    if coboundary(g, rho) != tuple(f):
        return None
    return tuple(rho)


def nonnegative_on_cycles(g: Graph, f: Sequence[int]) -> bool:
    """No directed cycle has negative ``f``-sum (Bellman-Ford negative-cycle test)."""
    if len(f) != len(g.edges):
        raise ValueError("edge function length does not match edge count")
    if not g.is_strongly_connected():
        raise NotStronglyConnected(
            "positivity on cycles is only decided for strongly connected graphs"
        )
    return not has_negative_cycle(g, f)


def has_negative_cycle(g: Graph, f: Sequence[int]) -> bool:
    vi = g.vertex_index()
    # virtual source at distance 0 to every vertex
    dist = [0] * len(g.vertices)
    arcs = [(vi[e.init], vi[e.term], w) for e, w in zip(g.edges, f)]
    for _ in range(len(g.vertices)):
        changed = False
        for a, b, w in arcs:
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            return False
    return any(dist[a] + w < dist[b] for a, b, w in arcs)


def pullback(r: WrappingRule, f: Sequence[int]) -> EdgeFunction:
    """``(f∘r)(e) = Σ s·f(x)`` over the letters ``(x, s)`` of the image of ``e``."""
    ci = r.codomain.edge_index()
    if len(f) != len(ci):
        raise ValueError("edge function length does not match codomain edge count")
    return tuple(sum(x.sign * f[ci[x.edge]] for x in r.image(e)) for e in r.domain.edge_names)


def pull_potential(r: WrappingRule, rho: Sequence[int]) -> Potential:
    """``ρ ∘ vertex_map`` as a potential on the domain graph."""
    ci = r.codomain.vertex_index()
    return tuple(rho[ci[r.vertex_map[v]]] for v in r.domain.vertices)


def induced_matrix(r: WrappingRule) -> IntegerMatrix:
    """Matrix of ``f^*`` from ``H^1(codomain)`` to ``H^1(domain)`` on the canonical bases."""
    dom, cod = r.domain, r.codomain
    bd, bc = cohomology_basis(dom), cohomology_basis(cod)
    for v in cod.vertices:
        image = pullback(r, vertex_function(cod, v))
        if any(reduce(dom, bd, image)):
            raise AssertionError(f"pullback of the vertex function at {v!r} is not a coboundary")
    cols = []
    for j in range(bc.rank):
        unit = [0] * bc.rank
        unit[j] = 1
        cols.append(reduce(dom, bd, pullback(r, lift(bc, unit))))
    return IntegerMatrix([[c[i] for c in cols] for i in range(bd.rank)], bc.rank)


def induced_cohomology_matrix(p: Presentation, level: int = 0) -> IntegerMatrix:
    """Induced matrix of the self-rule (stationary) or of ``f_level: X_level -> X_{level-1}``."""
    if p.stationary:
        if level != 0:
            raise ValueError("stationary presentations only have level 0")
        return induced_matrix(p.rule)
    if not 1 <= level <= len(p.maps):
        raise ValueError(f"tower maps exist for levels 1..{len(p.maps)}")
    return induced_matrix(p.maps[level - 1])
