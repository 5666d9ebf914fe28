"""Random presentation generators shared by the property suites."""

from collections import deque
import random

from solcalc.dimension import adjacency_matrix, is_primitive
from solcalc.intmat import IntegerMatrix
from solcalc.presentation import Edge, Graph, Letter, Presentation, WrappingRule


def strong_graph(rng: random.Random, nv: int, ne: int) -> Graph:
    """Random strongly connected multigraph: a cycle through all vertices plus extra edges."""
    assert ne >= nv
    vs = [f"v{i}" for i in range(nv)]
    order = vs[:]
    rng.shuffle(order)
    pairs = [(order[i], order[(i + 1) % nv]) for i in range(nv)]
    while len(pairs) < ne:
        pairs.append((rng.choice(vs), rng.choice(vs)))
    rng.shuffle(pairs)
    return Graph(tuple(vs), tuple(Edge(f"e{i}", a, b) for i, (a, b) in enumerate(pairs)))


def _steps(g: Graph, v: str, positive: bool):
    out = [(Letter(e.name, 1), e.term) for e in g.edges if e.init == v]
    if not positive:
        out += [(Letter(e.name, -1), e.init) for e in g.edges if e.term == v]
    return out


def _path(g: Graph, s: str, t: str, positive: bool):
    prev = {s: None}
    todo = deque([s])
    while todo:
        u = todo.popleft()
        if u == t:
            break
        for x, w in _steps(g, u, positive):
            if w not in prev:
                prev[w] = (u, x)
                todo.append(w)
    path = []
    u = t
    while prev[u] is not None:
        u, x = prev[u]
        path.append(x)
    return path[::-1]


def random_rule(rng: random.Random, g: Graph, positive: bool = True, maxlen: int = 4) -> WrappingRule:
    vmap = {v: rng.choice(g.vertices) for v in g.vertices}
    images = {}
    for e in g.edges:
        s, t = vmap[e.init], vmap[e.term]
        L = rng.randint(1, maxlen)
        w, at = [], s
        for _ in range(L):
            x, at = rng.choice(_steps(g, at, positive))
            w.append(x)
        w += _path(g, at, t, positive)
        images[e.name] = tuple(w)
    return WrappingRule(g, g, images, vmap)


def random_presentation(rng: random.Random, positive: bool = True, max_vertices: int = 3, max_extra: int = 3,
                        maxlen: int = 4) -> Presentation:
    nv = rng.randint(1, max_vertices)
    g = strong_graph(rng, nv, nv + rng.randint(0, max_extra))
    return Presentation.stationary_from(g, random_rule(rng, g, positive, maxlen))


def random_primitive_presentation(rng: random.Random, min_vertices: int = 1, **kw) -> Presentation:
    while True:
        p = random_presentation(rng, True, **kw)
        if len(p.graph.vertices) >= min_vertices and is_primitive(adjacency_matrix(p.rule))[0]:
            return p


def random_primitive_matrix(rng: random.Random, nmax: int = 4, emax: int = 2) -> IntegerMatrix:
    while True:
        n = rng.randint(1, nmax)
        M = IntegerMatrix([[rng.choice([0, 0] + list(range(1, emax + 1))) for _ in range(n)] for _ in range(n)], n)
        if is_primitive(M)[0]:
            return M


def random_vector(rng: random.Random, n: int, bound: int = 10):
    return tuple(rng.randint(-bound, bound) for _ in range(n))
