"""Symbolic checks of the Markov, flattening and nonfolding axioms.

A germ ``(e, 0)`` is the branch at ``init(e)`` pointing into ``e``; ``(e, 1)``
is the branch at ``term(e)`` pointing back into ``e``.  A wrapping rule sends
each germ to a germ: the start of ``e`` goes to the entry germ of the first
letter of its image, the end to the exit germ of the last letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .presentation import Letter, Presentation, WrappingRule, markov_failures

Germ = Tuple[str, int]


class UnsupportedInput(ValueError):
    pass


def entry_germ(x: Letter) -> Germ:
    return (x.edge, 0) if x.sign > 0 else (x.edge, 1)


def exit_germ(x: Letter) -> Germ:
    return (x.edge, 1) if x.sign > 0 else (x.edge, 0)


def germ_map(r: WrappingRule) -> Dict[Germ, Germ]:
    out: Dict[Germ, Germ] = {}
    for e in r.domain.edge_names:
        w = r.image(e)
        out[(e, 0)] = entry_germ(w[0])
        out[(e, 1)] = exit_germ(w[-1])
    return out


def _self_rule(p: Presentation) -> WrappingRule:
    if not p.stationary:
        raise UnsupportedInput("axiom checks need a stationary presentation")
    return p.rule


def check_markov(r: WrappingRule) -> bool:
    """Words chain and their endpoints agree with the vertex map."""
    try:
        return not markov_failures(r)
    except KeyError:
        return False


@dataclass(frozen=True)
class FlatteningResult:
    holds: bool
    k: Optional[int]

    def __bool__(self) -> bool:
        return self.holds


def _collapsed(fk: Dict[Germ, Germ], classes: List[List[Germ]]) -> bool:
    return all(len({fk[g] for g in cls}) <= 1 for cls in classes)


def germ_classes(p: Presentation) -> List[List[Germ]]:
    """Out-germs and in-germs at every vertex, as separate classes."""
    g = p.graph
    classes = []
    for v in g.vertices:
        classes.append([(e.name, 0) for e in g.edges if e.init == v])
        classes.append([(e.name, 1) for e in g.edges if e.term == v])
    return [c for c in classes if c]


def check_flattening(p: Presentation, k: Optional[int] = None) -> FlatteningResult:
    """Least ``k ≤ 2|E|`` at which every vertex's out-germs (and in-germs) share one image under ``F^k``.

    With ``k`` given, only that exponent is tested.
    """
    r = _self_rule(p)
    if not r.all_positive:
        raise UnsupportedInput("flattening is only checked for orientation-preserving (all-positive) rules")
    F = germ_map(r)
    classes = germ_classes(p)
    fk = {x: x for x in F}
    if k is not None:
        for _ in range(k):
            fk = {x: F[y] for x, y in fk.items()}
        ok = _collapsed(fk, classes)
        return FlatteningResult(ok, k if ok else None)
    for step in range(2 * len(p.graph.edges) + 1):
        if _collapsed(fk, classes):
            return FlatteningResult(True, step)
        fk = {x: F[y] for x, y in fk.items()}
    return FlatteningResult(False, None)


@dataclass(frozen=True)
class NonfoldingResult:
    holds: bool
    witness: Optional[Tuple[Germ, Germ]] = None  # junction pair that eventually collides
    step: Optional[int] = None
    source: Optional[Tuple[str, int]] = None  # (edge, junction index)

    @property
    def status(self) -> str:
        return "holds" if self.holds else "fails"


def junction_pairs(r: WrappingRule) -> List[Tuple[Tuple[str, int], Tuple[Germ, Germ]]]:
    """``((edge, i), (exit germ of letter i, entry germ of letter i+1))`` for every junction."""
    out = []
    for e in r.domain.edge_names:
        w = r.image(e)
        for i in range(len(w) - 1):
            out.append(((e, i), (exit_germ(w[i]), entry_germ(w[i + 1]))))
    return out


def check_nonfolding(p: Presentation) -> NonfoldingResult:
    """Fails iff some junction pair's germs become equal under iteration of the germ map."""
    r = _self_rule(p)
    F = germ_map(r)
    seen: set = set()
    frontier = []
    for src, pair in junction_pairs(r):
        if pair not in seen:
            seen.add(pair)
            frontier.append((pair, pair, 0, src))
    while frontier:
        nxt = []
        for start, (a, b), step, src in frontier:
            if a == b:
                return NonfoldingResult(False, start, step, src)
            image = (F[a], F[b])
            if image not in seen:
                seen.add(image)
                nxt.append((start, image, step + 1, src))
        frontier = nxt
    return NonfoldingResult(True)


def replay_witness(p: Presentation, pair: Tuple[Germ, Germ], steps: int) -> bool:
    """True when ``pair`` collides within ``steps`` applications of the germ map."""
    F = germ_map(_self_rule(p))
    a, b = pair
    for _ in range(steps + 1):
        if a == b:
            return True
        a, b = F[a], F[b]
    return False


@dataclass(frozen=True)
class AxiomReport:
    nondegenerate: bool
    markov: bool
    flattening: Optional[FlatteningResult]
    flattening_note: str
    nonfolding: NonfoldingResult

    def as_dict(self) -> dict:
        return {
            "nondegeneracy": self.nondegenerate,
            "markov": self.markov,
            "flattening": None if self.flattening is None else {"holds": self.flattening.holds, "k": self.flattening.k},
            "flattening_note": self.flattening_note,
            "nonfolding": {
                "status": self.nonfolding.status,
                "witness": None if self.nonfolding.witness is None else [list(g) for g in self.nonfolding.witness],
                "step": self.nonfolding.step,
                "junction": None if self.nonfolding.source is None else list(self.nonfolding.source),
            },
            "not_evaluated": ["axiom 0 (indecomposability)", "axiom 1 (nonwandering)", "axiom 3 (expansion)"],
        }


def check_axioms(p: Presentation) -> AxiomReport:
    r = _self_rule(p)
    try:
        flat, note = check_flattening(p), ""
    except UnsupportedInput as exc:
        flat, note = None, str(exc)
    return AxiomReport(
        nondegenerate=p.graph.is_nondegenerate(),
        markov=check_markov(r),
        flattening=flat,
        flattening_note=note,
        nonfolding=check_nonfolding(p),
    )
