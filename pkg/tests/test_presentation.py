import random

import pytest
from hypothesis import given, settings, strategies as st

from solcalc.presentation import (
    Edge,
    Graph,
    Letter,
    Presentation,
    PresentationError,
    WrappingRule,
    make_stationary,
    orientability,
    parse_presentation,
    reorient,
    serialize,
    validate_presentation,
    word,
)

import gen

DYADIC = """\
solenoid v1
graph:
  vertex v1
  vertex v2
  edge e1 v1 v2
  edge e2 v2 v1
map:
  vertex v1 -> v1
  vertex v2 -> v1
  edge e1 -> e1 e2
  edge e2 -> e1 e2
"""


def test_parse_dyadic():
    p = parse_presentation(DYADIC)
    assert p.stationary
    assert len(p.graph.edges) == 2
    assert p.rule.image("e1") == (Letter("e1"), Letter("e2"))
    assert p.rule.vertex_map == {"v1": "v1", "v2": "v1"}


def test_single_loop_identity():
    p = parse_presentation("solenoid v1\ngraph:\n vertex p\n edge a p p\nmap:\n edge a -> a\n")
    assert p.rule.vertex_map == {"p": "p"}
    assert validate_presentation(p).ok


def test_chaining_error_has_position():
    bad = DYADIC.replace("edge e1 -> e1 e2", "edge e1 -> e1 e1")
    with pytest.raises(PresentationError, match="chaining") as exc:
        parse_presentation(bad)
    assert exc.value.line == 10
    assert exc.value.column == 8


@pytest.mark.parametrize(
    "mutation, message",
    [
        (("vertex v2\n  edge", "vertex v1\n  edge"), "duplicate vertex"),
        (("edge e2 v2 v1", "edge e1 v2 v1"), "duplicate identifier"),
        (("edge e2 v2 v1", "edge e2 v2 v9"), "undeclared vertex"),
        (("edge e2 -> e1 e2", "edge e2 -> e1 e3"), "unknown edge"),
        (("edge e2 -> e1 e2", "edge e2 ->"), "empty image word"),
        (("solenoid v1", "solenoid v2"), "header"),
        (("vertex v2 -> v1", "vertex v2 -> v2"), "Markov"),
        (("  edge e2 -> e1 e2\n", ""), "no image"),
    ],
)
def test_parse_errors(mutation, message):
    text = DYADIC.replace(*mutation, 1)
    with pytest.raises(PresentationError, match=message):
        parse_presentation(text)


def test_vertex_map_inferred_when_omitted():
    text = "\n".join(l for l in DYADIC.splitlines() if "vertex v1 ->" not in l and "vertex v2 ->" not in l)
    assert parse_presentation(text) == parse_presentation(DYADIC)


def test_vertex_map_inference_inconsistent():
    text = """solenoid v1
graph:
  vertex p
  vertex q
  edge a p q
  edge b q p
map:
  edge a -> a
  edge b -> a
"""
    with pytest.raises(PresentationError, match="inconsistent"):
        parse_presentation(text)


def test_comments_and_provenance():
    p = parse_presentation("# header comment\nsolenoid v1\nprovenance inferred\ngraph:\n vertex p # the vertex\n edge a p p\nmap:\n edge a -> a a\n")
    assert p.inferred
    assert "provenance inferred" in serialize(p)


def test_tower_parse_and_roundtrip():
    text = """solenoid v1
level 0:
  vertex p
  edge a p p
  edge b p p
level 1:
  vertex p
  edge c p p
  edge d p p
map 1 -> 0:
  edge c -> a b
  edge d -> a
"""
    p = parse_presentation(text)
    assert not p.stationary and len(p.levels) == 2
    assert parse_presentation(serialize(p)) == p


def test_mixed_modes_rejected():
    with pytest.raises(PresentationError, match="tower block"):
        parse_presentation(DYADIC + "level 1:\n vertex p\n")


def test_validate_dyadic_all_pass(dyadic):
    rep = validate_presentation(dyadic)
    assert rep.ok
    checks = {f.check for f in rep.findings}
    assert {"nondegeneracy", "chaining", "markov", "connectivity", "strong_connectivity"} <= checks


def test_validate_sink_vertex():
    g = Graph(("p", "q"), (Edge("a", "p", "p"), Edge("b", "p", "q")))
    r = WrappingRule(g, g, {"a": word("a"), "b": word("b")}, {"p": "p", "q": "q"})
    rep = validate_presentation(Presentation.stationary_from(g, r))
    (nd,) = rep.by_check("nondegeneracy")
    assert not nd.passed and nd.items == ("q",)
    assert not rep.by_check("strong_connectivity")[0].passed
    assert rep.by_check("markov")[0].passed


def test_validate_reports_broken_chaining_without_raising():
    g = Graph(("p", "q"), (Edge("a", "p", "q"), Edge("b", "q", "p")))
    r = WrappingRule(g, g, {"a": word("a a"), "b": word("b")}, {"p": "p", "q": "q"})
    rep = validate_presentation(Presentation.stationary_from(g, r))
    assert rep.by_check("chaining")[0].items == ("a",)
    assert not rep.ok


def test_orientability_examples(dyadic):
    assert orientability(dyadic) == ({"e1": 1, "e2": 1},)
    loop = make_stationary(["p"], [("a", "p", "p")], {"a": "a a'"})
    assert orientability(loop) is None


def test_orientability_flips_edge():
    # the dyadic presentation with e2 drawn backwards
    p = make_stationary(["v1", "v2"], [("e1", "v1", "v2"), ("e2", "v1", "v2")], {"e1": "e1 e2'", "e2": "e2 e1'"})
    sigma = orientability(p)
    assert sigma == ({"e1": 1, "e2": -1},)
    q = reorient(p, sigma)
    assert q.all_positive
    assert validate_presentation(q).ok
    assert q.rule.image("e2") == word("e1 e2")


def test_not_orientable_when_constraints_clash():
    p = make_stationary(["p", "q"], [("a", "p", "q"), ("b", "p", "q")], {"a": "a b' a", "b": "a b' a"})
    assert orientability(p) is None


def _flip_random_edges(rng, p):
    """Reverse some edges of an all-positive presentation, rewriting words to match."""
    sigma = {e: rng.choice([1, -1]) for e in p.graph.edge_names}
    return reorient(p, (sigma,))


@pytest.mark.parametrize("seed", range(40))
def test_reorientation_recovers_positive_words(seed):
    rng = random.Random(seed)
    p = gen.random_presentation(rng, positive=True)
    scrambled = _flip_random_edges(rng, p)
    rep = validate_presentation(scrambled)
    assert all(f.passed for f in rep.by_check("chaining") + rep.by_check("markov"))
    sigma = orientability(scrambled)
    assert sigma is not None
    fixed = reorient(scrambled, sigma)
    assert fixed.all_positive
    assert validate_presentation(fixed).ok


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.booleans())
def test_roundtrip(seed, positive):
    p = gen.random_presentation(random.Random(seed), positive=positive)
    assert parse_presentation(serialize(p)) == p
