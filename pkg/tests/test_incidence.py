from itertools import product

import pytest

from solcalc.incidence import solve_incidence
from solcalc.presentation import orientability, validate_presentation
from solcalc.cohomology import induced_matrix
from solcalc.dimension import adjacency_matrix

EX4Y = ["alpha", "beta", "gamma"], {
    "alpha": ["gamma", "alpha", "beta"],
    "beta": ["gamma"],
    "gamma": ["beta", "gamma", "alpha", "beta"],
}


def _strongly_connected(n, inc):
    reach = [[i == j for j in range(n)] for i in range(n)]
    for a, b in inc:
        reach[a][b] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                reach[i][j] = reach[i][j] or (reach[i][k] and reach[k][j])
    return all(all(r) for r in reach)


def brute_force(names, words, n):
    """Plain enumeration of every incidence, sign vector and vertex map, then canonical relabeling."""
    idx = {e: i for i, e in enumerate(names)}
    letters = [(i, idx[x]) for i, e in enumerate(names) for x in words[e]]
    found = set()
    for flat in product(range(n), repeat=2 * len(names)):
        inc = [(flat[2 * i], flat[2 * i + 1]) for i in range(len(names))]
        if set(flat) != set(range(n)):
            continue
        if any(not any(a == v for a, _ in inc) or not any(b == v for _, b in inc) for v in range(n)):
            continue
        if not _strongly_connected(n, inc):
            continue
        for signs in product((1, -1), repeat=len(letters)):
            ends = {}
            pos = 0
            ok = True
            for i, e in enumerate(names):
                seg = []
                for x in words[e]:
                    s = signs[pos]
                    pos += 1
                    seg.append(inc[idx[x]] if s > 0 else inc[idx[x]][::-1])
                if any(seg[j][1] != seg[j + 1][0] for j in range(len(seg) - 1)):
                    ok = False
                    break
                ends[i] = (seg[0][0], seg[-1][1])
            if not ok:
                continue
            for vmap in product(range(n), repeat=n):
                if all(vmap[inc[i][0]] == ends[i][0] and vmap[inc[i][1]] == ends[i][1] for i in ends):
                    found.add(_canon(inc, signs, vmap, len(names), words, names))
    return found


def _canon(inc, signs, vmap, m, words, names):
    order = []
    for a, b in inc:
        for v in (a, b):
            if v not in order:
                order.append(v)
    rel = {v: i for i, v in enumerate(order)}
    new_inc = tuple((rel[a], rel[b]) for a, b in inc)
    new_vmap = tuple(rel[vmap[order[i]]] for i in range(len(order)))
    grouped, pos = [], 0
    for e in names:
        grouped.append(tuple(signs[pos:pos + len(words[e])]))
        pos += len(words[e])
    return new_inc, tuple(grouped), new_vmap


def _as_set(sols):
    return {(s.incidence, s.signs, s.vertex_map) for s in sols}


@pytest.mark.parametrize(
    "names, words, n",
    [
        (*EX4Y, 2),
        (["a", "b"], {"a": ["a", "a", "b"], "b": ["a", "b"]}, 1),
        (["a", "b"], {"a": ["b"], "b": ["a"]}, 1),
        (["e1", "e2"], {"e1": ["e1", "e2"], "e2": ["e1", "e2"]}, 2),
        (["a", "b"], {"a": ["a", "b"], "b": ["a"]}, 2),
    ],
)
def test_matches_brute_force(names, words, n):
    assert _as_set(solve_incidence(names, words, n)) == brute_force(names, words, n)


def test_ex4y_solutions():
    sols = solve_incidence(*EX4Y, 2)
    # frozen from brute_force: four solutions, all sharing one incidence up to relabeling
    assert len(sols) == 4
    assert {s.incidence for s in sols} == {((0, 0), (0, 1), (1, 0))}
    first = sols[0]
    assert first.all_positive
    assert first.vertex_map == (1, 0)
    assert sols == sorted(sols, key=lambda s: (s.incidence, [[-x for x in w] for w in s.signs], s.vertex_map))


def test_ex4y_first_solution_matrices():
    p = solve_incidence(*EX4Y, 2)[0].presentation(*EX4Y)
    assert p.inferred
    assert adjacency_matrix(p.rule).tolist() == [[1, 1, 1], [0, 0, 1], [1, 2, 1]]
    assert induced_matrix(p.rule).tolist() == [[1, 1], [1, 2]]


def test_ex4y_only_the_positive_candidate_is_orientable():
    for s in solve_incidence(*EX4Y, 2):
        p = s.presentation(*EX4Y)
        assert validate_presentation(p).ok
        # the other candidates put alpha' inside the image of alpha
        assert (orientability(p) is not None) == s.all_positive


def test_wedge_unique_positive_solution():
    sols = solve_incidence(["a", "b"], {"a": ["a", "a", "b"], "b": ["a", "b"]}, 1)
    positive = [s for s in sols if s.all_positive]
    assert len(positive) == 1
    assert sols[0] is positive[0]


def test_single_vertex_swap_has_solution():
    assert solve_incidence(["a", "b"], {"a": ["b"], "b": ["a"]}, 1)


def test_no_solution_is_empty():
    # a single edge cannot use two vertices and stay strongly connected
    assert solve_incidence(["a"], {"a": ["a"]}, 2) == []


def test_rejects_empty_words():
    with pytest.raises(ValueError):
        solve_incidence(["a"], {"a": []}, 1)
