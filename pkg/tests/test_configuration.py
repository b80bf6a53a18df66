import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import perfect_matchings
from subcrit.configuration import (
    MultiGraph,
    erase,
    estimate_simple_probability,
    is_simple,
    load_edges,
    pair_configuration,
    pair_half_edges,
    sample_simple,
    save_edges,
)
from subcrit.degrees import DegreeSequence
from subcrit.errors import OddDegreeSumError, SequenceFormatError, TriesExhaustedError


def _exact_simple_probability(degrees):
    """P(simple) by enumerating every matching of the half-edges."""
    owner = [v for v, d in enumerate(degrees) for _ in range(d)]
    simple = total = 0
    for m in perfect_matchings(range(len(owner))):
        edges = [tuple(sorted(owner[h] for h in pair)) for pair in m]
        total += 1
        if all(u != v for u, v in edges) and len(set(edges)) == len(edges):
            simple += 1
    return Fraction(simple, total), total


def _se(p, reps):
    return math.sqrt(p * (1 - p) / reps)


def test_exact_oracle_values():
    assert _exact_simple_probability((2, 1, 1)) == (Fraction(2, 3), 3)
    assert _exact_simple_probability((2, 2)) == (Fraction(0), 3)
    assert _exact_simple_probability((1, 1, 1, 1)) == (Fraction(1), 3)


def test_pair_unique_matchings():
    rng = np.random.default_rng(0)
    assert pair_half_edges(DegreeSequence([1, 1]), rng).edges.tolist() == [[0, 1]]
    assert pair_half_edges(DegreeSequence([2]), rng).edges.tolist() == [[0, 0]]


def test_pair_odd_sum():
    with pytest.raises(OddDegreeSumError):
        pair_half_edges(DegreeSequence([1, 2]), np.random.default_rng(0))
    with pytest.raises(OddDegreeSumError):
        sample_simple(DegreeSequence([3]), np.random.default_rng(0))


def test_configuration_is_involution():
    seq = DegreeSequence([3, 1, 4, 0, 2, 2])
    cfg = pair_configuration(seq, np.random.default_rng(1))
    m = cfg.matching
    assert m.size == seq.total
    assert np.all(m[m] == np.arange(m.size))
    assert np.all(m != np.arange(m.size))
    assert cfg.half_edge_owner.tolist() == [0, 0, 0, 1, 2, 2, 2, 2, 4, 4, 5, 5]


@pytest.mark.parametrize("degrees", [(2, 1, 1), (2, 2), (1, 1, 1, 1)])
def test_matchings_uniform(degrees):
    seq = DegreeSequence(degrees)
    matchings = list(perfect_matchings(range(seq.total)))
    reps = 30000
    rng = np.random.default_rng(2)
    counts = Counter()
    for _ in range(reps):
        cfg = pair_configuration(seq, rng)
        counts[frozenset(frozenset(map(int, p)) for p in cfg.pairs())] += 1
    assert set(counts) <= set(matchings)
    p = 1 / len(matchings)
    for m in matchings:
        assert abs(counts[m] / reps - p) <= 4 * _se(p, reps)


def test_two_two_multigraph_frequencies():
    # enumeration: one matching gives two loops, two give a double edge
    owner = [0, 0, 1, 1]
    shapes = Counter()
    for m in perfect_matchings(range(4)):
        shapes[tuple(sorted(tuple(sorted(owner[h] for h in p)) for p in m))] += 1
    assert shapes == {((0, 0), (1, 1)): 1, ((0, 1), (0, 1)): 2}
    seq = DegreeSequence([2, 2])
    rng = np.random.default_rng(3)
    reps = 30000
    loops = sum(pair_half_edges(seq, rng).edges.tolist() == [[0, 0], [1, 1]] for _ in range(reps))
    assert abs(loops / reps - 1 / 3) <= 4 * _se(1 / 3, reps)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=30), st.integers(0, 2**32))
@settings(max_examples=60)
def test_degrees_preserved(degrees, seed):
    if sum(degrees) % 2:
        degrees = degrees + [1]
    seq = DegreeSequence(degrees)
    g = pair_half_edges(seq, np.random.default_rng(seed))
    assert np.array_equal(g.degree_array, seq.degrees)
    e = g.edges
    assert np.all(e[:, 0] <= e[:, 1])
    assert e.tolist() == sorted(e.tolist())


def test_is_simple():
    assert is_simple(MultiGraph.from_edges(2, [(0, 1)]))
    assert not is_simple(MultiGraph.from_edges(1, [(0, 0)]))
    assert not is_simple(MultiGraph.from_edges(2, [(0, 1), (1, 0)]))
    assert is_simple(MultiGraph.from_edges(3, []))


def test_sample_simple_examples():
    rng = np.random.default_rng(4)
    g, tries = sample_simple(DegreeSequence([1, 1]), rng)
    assert g.edges.tolist() == [[0, 1]] and tries == 1
    with pytest.raises(TriesExhaustedError):
        sample_simple(DegreeSequence([2]), rng, max_tries=50)
    g, _ = sample_simple(DegreeSequence([2, 1, 1]), rng)
    assert g.edges.tolist() == [[0, 1], [0, 2]]


def test_sample_simple_mean_tries():
    # geometric with success 2/3: mean 3/2, variance (1/3)/(4/9) = 3/4
    rng = np.random.default_rng(5)
    reps = 20000
    tries = [sample_simple(DegreeSequence([2, 1, 1]), rng)[1] for _ in range(reps)]
    assert abs(np.mean(tries) - 1.5) <= 4 * math.sqrt(0.75 / reps)


def test_sample_simple_uniform_on_perfect_matchings():
    seq = DegreeSequence([1, 1, 1, 1])
    rng = np.random.default_rng(6)
    reps = 30000
    counts = Counter(tuple(map(tuple, sample_simple(seq, rng)[0].edges.tolist())) for _ in range(reps))
    assert set(counts) == {((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))}
    for c in counts.values():
        assert abs(c / reps - 1 / 3) <= 4 * _se(1 / 3, reps)


def test_estimate_simple_probability():
    rng = np.random.default_rng(7)
    assert estimate_simple_probability(DegreeSequence([1, 1]), 100, rng) == (1.0, 0.0)
    assert estimate_simple_probability(DegreeSequence([2]), 100, rng)[0] == 0.0
    p, se = estimate_simple_probability(DegreeSequence([2, 1, 1]), 10**5, rng)
    assert abs(p - 2 / 3) <= 3 * se


def test_estimate_simple_probability_matches_enumeration():
    degrees = (3, 2, 2, 1, 1, 1)
    exact, _ = _exact_simple_probability(degrees)
    p, se = estimate_simple_probability(DegreeSequence(degrees), 50000, np.random.default_rng(8))
    assert abs(p - float(exact)) <= 4 * se


def test_erase():
    g = MultiGraph.from_edges(2, [(0, 0), (0, 1), (1, 0)])
    assert erase(g).edges.tolist() == [[0, 1]]
    h = MultiGraph.from_edges(4, [(0, 1), (2, 3)])
    assert erase(h) == h
    loop = erase(MultiGraph.from_edges(3, [(0, 0)]))
    assert loop.m == 0 and loop.n == 3


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=30))
def test_erase_properties(edges):
    g = MultiGraph.from_edges(8, edges)
    e = erase(g)
    assert is_simple(e)
    assert erase(e) == e
    expected = {tuple(sorted(x)) for x in edges if x[0] != x[1]}
    assert set(map(tuple, e.edges.tolist())) == expected


def test_edge_file_round_trip(tmp_path):
    g = MultiGraph.from_edges(5, [(3, 1), (0, 0), (2, 4), (1, 3)])
    save_edges(g, tmp_path / "g.csv")
    assert (tmp_path / "g.csv").read_text() == "u,v\n0,0\n1,3\n1,3\n2,4\n"
    assert load_edges(tmp_path / "g.csv") == g
    assert load_edges(tmp_path / "g.csv", n=9).n == 9


@pytest.mark.parametrize("text", ["a,b\n0,1\n", "u,v\n0,x\n", "u,v\n0,-1\n", "u,v\n0,1,2\n"])
def test_edge_file_errors(tmp_path, text):
    (tmp_path / "g.csv").write_text(text)
    with pytest.raises(SequenceFormatError):
        load_edges(tmp_path / "g.csv")


def test_multigraph_validates_endpoints():
    with pytest.raises(ValueError):
        MultiGraph.from_edges(2, [(0, 2)])
