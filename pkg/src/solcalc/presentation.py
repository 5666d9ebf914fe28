"""Graph presentations with wrapping rules: data model, file format, validation.

A stationary presentation is one directed graph ``X`` with a self-rule
``f: X -> X``.  A tower is a finite list of graphs ``X_0, ..., X_K`` with
rules ``f_k: X_k -> X_{k-1}``.  A rule sends every edge to a nonempty word of
signed edges of the codomain and every vertex to a vertex.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

FORMAT_HEADER = "solenoid v1"

_TOKEN = re.compile(r"\S+")
_NAME = re.compile(r"^[^\s':#]+$")


class PresentationError(ValueError):
    """Malformed or inconsistent presentation input."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Edge:
    name: str
    init: str
    term: str

    @property
    def is_loop(self) -> bool:
        return self.init == self.term


@dataclass(frozen=True)
class Graph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @property
    def edge_names(self) -> Tuple[str, ...]:
        return tuple(e.name for e in self.edges)

    def edge(self, name: str) -> Edge:
        for e in self.edges:
            if e.name == name:
                return e
        raise KeyError(f"unknown edge {name!r}")

    def edge_index(self) -> Dict[str, int]:
        return {e.name: i for i, e in enumerate(self.edges)}

    def vertex_index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def out_edges(self, v: str) -> List[Edge]:
        return [e for e in self.edges if e.init == v]

    def in_edges(self, v: str) -> List[Edge]:
        return [e for e in self.edges if e.term == v]

    def degenerate_vertices(self) -> List[str]:
        """Vertices lacking an incoming or an outgoing edge."""
        return [v for v in self.vertices if not self.in_edges(v) or not self.out_edges(v)]

    def is_nondegenerate(self) -> bool:
        return not self.degenerate_vertices()

    def components(self) -> List[List[str]]:
        """Weakly connected components, each in vertex declaration order."""
        adj: Dict[str, set] = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.init].add(e.term)
            adj[e.term].add(e.init)
        seen: set = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = _reach(v, adj)
            seen |= comp
            comps.append([u for u in self.vertices if u in comp])
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_strongly_connected(self) -> bool:
        if not self.vertices:
            return True
        fwd: Dict[str, set] = {v: set() for v in self.vertices}
        bwd: Dict[str, set] = {v: set() for v in self.vertices}
        for e in self.edges:
            fwd[e.init].add(e.term)
            bwd[e.term].add(e.init)
        root = self.vertices[0]
        n = len(self.vertices)
        return len(_reach(root, fwd)) == n and len(_reach(root, bwd)) == n


def _reach(start: str, adj: Mapping[str, Iterable[str]]) -> set:
    seen = {start}
    todo = deque([start])
    while todo:
        u = todo.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


@dataclass(frozen=True)
class Letter:
    edge: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> "Letter":
        return Letter(self.edge, -self.sign)

    def __str__(self) -> str:
        return self.edge + ("'" if self.sign < 0 else "")


Word = Tuple[Letter, ...]


def word(text: str) -> Word:
    """Parse a whitespace separated word such as ``"e1 e2' e1"``."""
    return tuple(Letter(t[:-1], -1) if t.endswith("'") else Letter(t, 1) for t in text.split())


def word_str(w: Sequence[Letter]) -> str:
    return " ".join(str(x) for x in w)


def letter_start(g: Graph, x: Letter) -> str:
    e = g.edge(x.edge)
    return e.init if x.sign > 0 else e.term


def letter_end(g: Graph, x: Letter) -> str:
    e = g.edge(x.edge)
    return e.term if x.sign > 0 else e.init


def chaining_breaks(g: Graph, w: Sequence[Letter]) -> List[int]:
    """Indices ``i`` where letter ``i`` does not end where letter ``i+1`` starts."""
    return [i for i in range(len(w) - 1) if letter_end(g, w[i]) != letter_start(g, w[i + 1])]


@dataclass(frozen=True)
class WrappingRule:
    """Combinatorial map from ``domain`` to ``codomain``."""

    domain: Graph
    codomain: Graph
    edge_images: Mapping[str, Word]
    vertex_map: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(
            self, "edge_images", {k: tuple(v) for k, v in dict(self.edge_images).items()}
        )
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))

    def image(self, edge: str) -> Word:
        return self.edge_images[edge]

    @property
    def all_positive(self) -> bool:
        return all(x.sign > 0 for w in self.edge_images.values() for x in w)

    def compose(self, inner: "WrappingRule") -> "WrappingRule":
        """``self ∘ inner``: apply ``inner`` first, then substitute with ``self``."""
        if inner.codomain != self.domain:
            raise ValueError("rules do not compose")
        images = {}
        for e in inner.domain.edge_names:
            out: List[Letter] = []
            for x in inner.image(e):
                w = self.image(x.edge)
                out.extend(w if x.sign > 0 else [y.inverse() for y in reversed(w)])
            images[e] = tuple(out)
        vmap = {v: self.vertex_map[inner.vertex_map[v]] for v in inner.domain.vertices}
        return WrappingRule(inner.domain, self.codomain, images, vmap)


@dataclass(frozen=True)
class Presentation:
    """Graph levels and wrapping rules.

    Stationary mode holds one graph and one self-rule.  Tower mode holds
    ``levels[0..K]`` and ``maps[k-1]: levels[k] -> levels[k-1]``.
    """

    levels: Tuple[Graph, ...]
    maps: Tuple[WrappingRule, ...]
    stationary: bool = True
    inferred: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.levels:
            raise PresentationError("a presentation needs at least one graph")
        if self.stationary:
            if len(self.levels) != 1 or len(self.maps) != 1:
                raise PresentationError("stationary mode needs exactly one graph and one self-rule")
        elif len(self.maps) != len(self.levels) - 1:
            raise PresentationError(
                f"tower with {len(self.levels)} levels needs {len(self.levels) - 1} maps, got {len(self.maps)}"
            )

    @classmethod
    def stationary_from(cls, graph: Graph, rule: WrappingRule, inferred: bool = False) -> "Presentation":
        return cls((graph,), (rule,), True, inferred)

    @property
    def graph(self) -> Graph:
        self._need_stationary()
        return self.levels[0]

    @property
    def rule(self) -> WrappingRule:
        self._need_stationary()
        return self.maps[0]

    def _need_stationary(self):
        if not self.stationary:
            raise PresentationError("operation requires a stationary presentation")

    def rules_with_levels(self) -> Iterator[Tuple[int, WrappingRule]]:
        """Pairs ``(k, rule)`` where ``rule`` maps level ``k`` (or the stationary graph) down."""
        if self.stationary:
            yield 0, self.maps[0]
        else:
            for k, r in enumerate(self.maps, start=1):
                yield k, r

    @property
    def all_positive(self) -> bool:
        return all(r.all_positive for r in self.maps)


def make_stationary(
    vertices: Sequence[str],
    edges: Sequence[Tuple[str, str, str]],
    images: Mapping[str, str],
    vertex_map: Optional[Mapping[str, str]] = None,
    inferred: bool = False,
) -> Presentation:
    """Convenience constructor; words are strings such as ``"a b' a"``."""
    g = Graph(tuple(vertices), tuple(Edge(*e) for e in edges))
    ims = {k: word(v) for k, v in images.items()}
    if vertex_map is None:
        vertex_map = infer_vertex_map(g, g, ims)
    return Presentation.stationary_from(g, WrappingRule(g, g, ims, vertex_map), inferred)


def infer_vertex_map(domain: Graph, codomain: Graph, images: Mapping[str, Word]) -> Dict[str, str]:
    """Vertex map forced by word endpoints; raises when inconsistent or ambiguous."""
    vmap: Dict[str, str] = {}
    for e in domain.edges:
        w = images.get(e.name)
        if not w:
            continue
        for v, target in ((e.init, letter_start(codomain, w[0])), (e.term, letter_end(codomain, w[-1]))):
            if vmap.setdefault(v, target) != target:
                raise PresentationError(
                    f"vertex map inference is inconsistent at {v!r}: {vmap[v]!r} vs {target!r}"
                )
    missing = [v for v in domain.vertices if v not in vmap]
    if missing:
        raise PresentationError(f"vertex map inference is ambiguous for {', '.join(missing)}")
    return vmap


# --------------------------------------------------------------------------
# file format


@dataclass
class _Block:
    kind: str  # "graph" or "map"
    level: int
    target: int
    line: int
    vertices: List[Tuple[str, int, int]] = field(default_factory=list)
    edges: List[Tuple[str, str, str, int, int]] = field(default_factory=list)
    vmap: List[Tuple[str, str, int, int]] = field(default_factory=list)
    images: List[Tuple[str, List[Tuple[str, int]], int, int]] = field(default_factory=list)


def parse_presentation(text: str) -> Presentation:
    """Parse the ``solenoid v1`` text format and check every structural invariant."""
    blocks: List[_Block] = []
    header_seen = False
    inferred = False
    mode: Optional[str] = None
    current: Optional[_Block] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not toks:
            continue
        words = [t for t, _ in toks]
        col = toks[0][1]
        if not header_seen:
            if words != FORMAT_HEADER.split():
                raise PresentationError(f"expected header {FORMAT_HEADER!r}", lineno, col)
            header_seen = True
            continue
        if words == ["provenance", "inferred"]:
            inferred = True
            continue
        if words == ["graph:"] or words == ["map:"]:
            if mode == "tower":
                raise PresentationError("stationary block inside a tower file", lineno, col)
            mode = "stationary"
            kind = words[0][:-1]
            if any(b.kind == kind for b in blocks):
                raise PresentationError(f"duplicate {kind} block", lineno, col)
            current = _Block(kind, 0, 0, lineno)
            blocks.append(current)
            continue
        if words[0] == "level":
            if mode == "stationary":
                raise PresentationError("tower block inside a stationary file", lineno, col)
            mode = "tower"
            k = _level_number(words[1:], lineno, toks)
            if any(b.kind == "graph" and b.level == k for b in blocks):
                raise PresentationError(f"duplicate level {k}", lineno, col)
            current = _Block("graph", k, k, lineno)
            blocks.append(current)
            continue
        if words[0] == "map" and len(words) == 4 and words[2] == "->" and words[3].endswith(":"):
            if mode == "stationary":
                raise PresentationError("tower block inside a stationary file", lineno, col)
            mode = "tower"
            try:
                src, dst = int(words[1]), int(words[3][:-1])
            except ValueError:
                raise PresentationError("map levels must be integers", lineno, toks[1][1]) from None
            if dst != src - 1:
                raise PresentationError(f"map {src} -> {dst} must go down exactly one level", lineno, col)
            if any(b.kind == "map" and b.level == src for b in blocks):
                raise PresentationError(f"duplicate map {src} -> {dst}", lineno, col)
            current = _Block("map", src, dst, lineno)
            blocks.append(current)
            continue
        if current is None:
            raise PresentationError(f"unexpected {words[0]!r} outside a block", lineno, col)
        _parse_entry(current, toks, lineno)

    if not header_seen:
        raise PresentationError(f"missing header {FORMAT_HEADER!r}", 1, 1)
    return _build(blocks, mode, inferred)


def _level_number(rest: List[str], lineno: int, toks) -> int:
    if len(rest) != 1 or not rest[0].endswith(":"):
        raise PresentationError("expected 'level K:'", lineno, toks[0][1])
    try:
        return int(rest[0][:-1])
    except ValueError:
        raise PresentationError("level must be an integer", lineno, toks[1][1]) from None


def _check_name(name: str, lineno: int, col: int) -> str:
    if not _NAME.match(name) or name == "->":
        raise PresentationError(f"invalid identifier {name!r}", lineno, col)
    return name


def _parse_entry(block: _Block, toks, lineno: int) -> None:
    words = [t for t, _ in toks]
    col = toks[0][1]
    kind = words[0]
    if block.kind == "graph":
        if kind == "vertex" and len(words) == 2:
            block.vertices.append((_check_name(words[1], lineno, toks[1][1]), lineno, toks[1][1]))
        elif kind == "edge" and len(words) == 4:
            for t, c in toks[1:]:
                _check_name(t, lineno, c)
            block.edges.append((words[1], words[2], words[3], lineno, toks[1][1]))
        else:
            raise PresentationError(
                "expected 'vertex NAME' or 'edge NAME INIT TERM' in a graph block", lineno, col
            )
        return
    if len(words) < 3 or words[2] != "->" or kind not in ("vertex", "edge"):
        raise PresentationError(
            "expected 'vertex NAME -> NAME' or 'edge NAME -> LETTER ...' in a map block", lineno, col
        )
    if kind == "vertex":
        if len(words) != 4:
            raise PresentationError("vertex map line needs exactly one target", lineno, col)
        block.vmap.append((words[1], words[3], lineno, toks[1][1]))
        return
    letters = [(t, c) for t, c in toks[3:]]
    if not letters:
        raise PresentationError(f"empty image word for edge {words[1]!r}", lineno, col)
    for t, c in letters:
        _check_name(t[:-1] if t.endswith("'") else t, lineno, c)
    block.images.append((words[1], letters, lineno, toks[1][1]))


def _build_graph(b: _Block) -> Graph:
    seen: Dict[str, int] = {}
    vertices = []
    for name, ln, c in b.vertices:
        if name in seen:
            raise PresentationError(f"duplicate vertex {name!r}", ln, c)
        seen[name] = ln
        vertices.append(name)
    edges = []
    edge_seen: set = set()
    for name, u, v, ln, c in b.edges:
        if name in edge_seen or name in seen:
            raise PresentationError(f"duplicate identifier {name!r}", ln, c)
        edge_seen.add(name)
        for end in (u, v):
            if end not in seen:
                raise PresentationError(f"edge {name!r} references undeclared vertex {end!r}", ln, c)
        edges.append(Edge(name, u, v))
    if not edges and not vertices:
        raise PresentationError("empty graph block", b.line, 1)
    return Graph(tuple(vertices), tuple(edges))


def _build_rule(b: _Block, dom: Graph, cod: Graph) -> WrappingRule:
    dom_edges = set(dom.edge_names)
    cod_edges = set(cod.edge_names)
    images: Dict[str, Word] = {}
    lines: Dict[str, Tuple[int, int]] = {}
    for name, letters, ln, c in b.images:
        if name not in dom_edges:
            raise PresentationError(f"image given for unknown edge {name!r}", ln, c)
        if name in images:
            raise PresentationError(f"duplicate image for edge {name!r}", ln, c)
        w = []
        for t, tc in letters:
            x = Letter(t[:-1], -1) if t.endswith("'") else Letter(t, 1)
            if x.edge not in cod_edges:
                raise PresentationError(f"word references unknown edge {x.edge!r}", ln, tc)
            w.append(x)
        images[name] = tuple(w)
        lines[name] = (ln, c)
    for e in dom.edge_names:
        if e not in images:
            raise PresentationError(f"edge {e!r} has no image", b.line, 1)
        breaks = chaining_breaks(cod, images[e])
        if breaks:
            ln, c = lines[e]
            i = breaks[0]
            raise PresentationError(
                f"image of {e!r} breaks chaining between letters {i + 1} and {i + 2}", ln, c
            )
    vmap: Dict[str, str] = {}
    for src, dst, ln, c in b.vmap:
        if src not in dom.vertices:
            raise PresentationError(f"vertex map for unknown vertex {src!r}", ln, c)
        if dst not in cod.vertices:
            raise PresentationError(f"vertex map target {dst!r} is undeclared", ln, c)
        if src in vmap:
            raise PresentationError(f"duplicate vertex map for {src!r}", ln, c)
        vmap[src] = dst
    if len(vmap) < len(dom.vertices):
        inferred = infer_vertex_map(dom, cod, images)
        for v in dom.vertices:
            vmap.setdefault(v, inferred[v])
    rule = WrappingRule(dom, cod, images, {v: vmap[v] for v in dom.vertices})
    bad = markov_failures(rule)
    if bad:
        ln, c = lines[bad[0]]
        raise PresentationError(f"Markov condition fails for edge {bad[0]!r}", ln, c)
    return rule


def _build(blocks: List[_Block], mode: Optional[str], inferred: bool) -> Presentation:
    if mode is None:
        raise PresentationError("no graph or map blocks found")
    graphs = {b.level: b for b in blocks if b.kind == "graph"}
    maps = {b.level: b for b in blocks if b.kind == "map"}
    if mode == "stationary":
        if 0 not in graphs:
            raise PresentationError("missing graph: block")
        if 0 not in maps:
            raise PresentationError("missing map: block")
        g = _build_graph(graphs[0])
        return Presentation((g,), (_build_rule(maps[0], g, g),), True, inferred)
    top = max(graphs) if graphs else -1
    if sorted(graphs) != list(range(top + 1)):
        raise PresentationError("tower levels must be numbered 0..K without gaps")
    if sorted(maps) != list(range(1, top + 1)):
        raise PresentationError(f"tower needs maps k -> k-1 for k = 1..{top}")
    levels = [_build_graph(graphs[k]) for k in range(top + 1)]
    rules = [_build_rule(maps[k], levels[k], levels[k - 1]) for k in range(1, top + 1)]
    return Presentation(tuple(levels), tuple(rules), False, inferred)


def serialize(p: Presentation) -> str:
    """Canonical text form; ``parse_presentation(serialize(p)) == p``."""
    out = [FORMAT_HEADER]
    if p.inferred:
        out.append("provenance inferred")

    def graph_lines(g: Graph):
        for v in g.vertices:
            out.append(f"  vertex {v}")
        for e in g.edges:
            out.append(f"  edge {e.name} {e.init} {e.term}")

    def map_lines(r: WrappingRule):
        for v in r.domain.vertices:
            out.append(f"  vertex {v} -> {r.vertex_map[v]}")
        for e in r.domain.edge_names:
            out.append(f"  edge {e} -> {word_str(r.image(e))}")

    if p.stationary:
        out.append("graph:")
        graph_lines(p.graph)
        out.append("map:")
        map_lines(p.rule)
    else:
        for k, g in enumerate(p.levels):
            out.append(f"level {k}:")
            graph_lines(g)
        for k, r in enumerate(p.maps, start=1):
            out.append(f"map {k} -> {k - 1}:")
            map_lines(r)
    return "\n".join(out) + "\n"


def load(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Finding:
    check: str
    passed: bool
    level: Optional[int] = None
    items: Tuple[str, ...] = ()
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "level": self.level,
            "items": list(self.items),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ValidationReport:
    findings: Tuple[Finding, ...]

    @property
    def ok(self) -> bool:
        return all(f.passed for f in self.findings)

    def failures(self) -> List[Finding]:
        return [f for f in self.findings if not f.passed]

    def by_check(self, check: str) -> List[Finding]:
        return [f for f in self.findings if f.check == check]


def markov_failures(r: WrappingRule) -> List[str]:
    """Edges whose word endpoints disagree with the vertex map."""
    bad = []
    for e in r.domain.edges:
        w = r.edge_images.get(e.name)
        if not w or chaining_breaks(r.codomain, w):
            bad.append(e.name)
            continue
        if (
            r.vertex_map.get(e.init) != letter_start(r.codomain, w[0])
            or r.vertex_map.get(e.term) != letter_end(r.codomain, w[-1])
        ):
            bad.append(e.name)
    return bad


def _reference_problems(r: WrappingRule) -> List[str]:
    probs = []
    cod_edges = set(r.codomain.edge_names)
    for e in r.domain.edge_names:
        if e not in r.edge_images:
            probs.append(f"{e}: no image")
        elif not r.edge_images[e]:
            probs.append(f"{e}: empty image word")
        else:
            probs += [f"{e}: unknown letter {x.edge}" for x in r.edge_images[e] if x.edge not in cod_edges]
    for v in r.domain.vertices:
        if v not in r.vertex_map:
            probs.append(f"{v}: no vertex image")
        elif r.vertex_map[v] not in r.codomain.vertices:
            probs.append(f"{v}: unknown vertex image {r.vertex_map[v]}")
    return probs


def _graph_reference_problems(g: Graph) -> List[str]:
    probs = []
    vs = set(g.vertices)
    if len(vs) != len(g.vertices):
        probs.append("duplicate vertex")
    names = [e.name for e in g.edges]
    if len(set(names)) != len(names):
        probs.append("duplicate edge")
    probs += [f"{e.name}: undeclared endpoint" for e in g.edges if e.init not in vs or e.term not in vs]
    return probs


def validate_presentation(p: Presentation) -> ValidationReport:
    """Run every structural check and report each one; never raises."""
    findings: List[Finding] = []
    level_ids = [None] if p.stationary else list(range(len(p.levels)))
    for k, g in zip(level_ids, p.levels):
        probs = _graph_reference_problems(g)
        findings.append(Finding("references", not probs, k, tuple(probs)))
        if probs:
            continue
        bad = g.degenerate_vertices()
        findings.append(
            Finding("nondegeneracy", not bad, k, tuple(bad), "vertices without an incoming or outgoing edge" if bad else "")
        )
        comps = g.components()
        findings.append(
            Finding("connectivity", len(comps) <= 1, k, tuple(",".join(c) for c in comps) if len(comps) > 1 else ())
        )
        sc = g.is_strongly_connected()
        findings.append(Finding("strong_connectivity", sc, k))
    for k, r in p.rules_with_levels():
        lvl = None if p.stationary else k
        probs = _reference_problems(r)
        if probs:
            findings.append(Finding("references", False, lvl, tuple(probs), "wrapping rule"))
            continue
        breaks = tuple(e for e in r.domain.edge_names if chaining_breaks(r.codomain, r.image(e)))
        findings.append(Finding("chaining", not breaks, lvl, breaks))
        bad = tuple(markov_failures(r))
        findings.append(Finding("markov", not bad, lvl, bad))
    return ValidationReport(tuple(findings))


# --------------------------------------------------------------------------
# orientability


Orientation = Tuple[Dict[str, int], ...]


def orientability(p: Presentation) -> Optional[Orientation]:
    """Edge re-orientation making every word all-positive, one dict per level.

    Each letter ``(x, s)`` in the image of ``e`` imposes ``σ(x) = s·σ(e)``;
    the constraint graph is 2-coloured with ``σ = +1`` on the first edge of
    every component.  Returns ``None`` when the constraints contradict.
    """
    nodes = [(k, e) for k, g in enumerate(p.levels) for e in g.edge_names]
    adj: Dict[Tuple[int, str], List[Tuple[Tuple[int, str], int]]] = {n: [] for n in nodes}
    for k, r in p.rules_with_levels():
        src = k
        dst = k if p.stationary else k - 1
        for e, w in r.edge_images.items():
            for x in w:
                a, b = (src, e), (dst, x.edge)
                adj[a].append((b, x.sign))
                adj[b].append((a, x.sign))
    sigma: Dict[Tuple[int, str], int] = {}
    for n in nodes:
        if n in sigma:
            continue
        sigma[n] = 1
        todo = deque([n])
        while todo:
            u = todo.popleft()
            for w, s in adj[u]:
                want = s * sigma[u]
                if w not in sigma:
                    sigma[w] = want
                    todo.append(w)
                elif sigma[w] != want:
                    return None
    return tuple({e: sigma[(k, e)] for e in g.edge_names} for k, g in enumerate(p.levels))


def reorient(p: Presentation, sigma: Orientation) -> Presentation:
    """Flip every edge with ``σ = -1`` and rewrite all words accordingly."""
    new_levels = []
    for g, s in zip(p.levels, sigma):
        new_levels.append(
            Graph(g.vertices, tuple(e if s[e.name] > 0 else Edge(e.name, e.term, e.init) for e in g.edges))
        )
    new_maps = []
    for k, r in p.rules_with_levels():
        dk, ck = (0, 0) if p.stationary else (k, k - 1)
        s_dom, s_cod = sigma[dk], sigma[ck]
        images = {}
        for e, w in r.edge_images.items():
            seq = w if s_dom[e] > 0 else tuple(x.inverse() for x in reversed(w))
            images[e] = tuple(Letter(x.edge, x.sign * s_cod[x.edge]) for x in seq)
        new_maps.append(WrappingRule(new_levels[dk], new_levels[ck], images, r.vertex_map))
    return Presentation(tuple(new_levels), tuple(new_maps), p.stationary, p.inferred)
