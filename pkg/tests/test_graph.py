import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chibar.graph import (
    LabeledGraph,
    OrderTooLargeError,
    enumerate_all,
    graph_probability,
    num_pairs,
    pair_index,
    pair_of,
    sample_gnp,
)
from chibar.sampling import sample_adjacencies


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    edges = draw(st.integers(0, (1 << num_pairs(n)) - 1))
    return LabeledGraph(n, edges)


def test_pair_index_is_lexicographic():
    n = 5
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    assert [pair_index(i, j, n) for i, j in pairs] == list(range(len(pairs)))
    assert all(pair_of(k, n) == pairs[k] for k in range(len(pairs)))


def test_pair_index_rejects_bad_pairs():
    with pytest.raises(ValueError):
        pair_index(2, 2, 4)
    with pytest.raises(IndexError):
        pair_index(0, 4, 4)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 8), (4, 64)])
def test_enumerate_all_counts(n, count):
    gs = list(enumerate_all(n))
    assert len(gs) == count
    assert [g.index for g in gs] == list(range(count))


def test_enumerate_order_one_is_single_empty_graph():
    (g,) = enumerate_all(1)
    assert g.edge_count() == 0


def test_enumerate_n4_edge_count_three():
    assert sum(g.edge_count() == 3 for g in enumerate_all(4)) == 20


@pytest.mark.parametrize("n", range(1, 6))
def test_enumerate_edge_count_distribution(n):
    N = num_pairs(n)
    hist = Counter(g.edge_count() for g in enumerate_all(n))
    assert hist == {m: math.comb(N, m) for m in range(N + 1)}


def test_enumerate_cap():
    with pytest.raises(OrderTooLargeError):
        next(enumerate_all(8))
    with pytest.warns(RuntimeWarning):
        next(enumerate_all(8, max_order=8))


@pytest.mark.parametrize("n", range(1, 6))
def test_index_roundtrip_exhaustive(n):
    for idx in range(1 << num_pairs(n)):
        assert LabeledGraph.from_index(idx, n).index == idx


@given(graphs())
def test_adjacency_symmetric_and_loopless(g):
    for i in range(g.n):
        assert not g.adjacent(i, i)
        for j in range(g.n):
            assert g.adjacent(i, j) == g.adjacent(j, i)
    assert 0 <= g.edge_count() <= g.num_pairs
    masks = g.adjacency_masks()
    assert sum(int(m).bit_count() for m in masks) == 2 * g.edge_count()


@given(graphs(max_n=20))
def test_serialization_roundtrips(g):
    assert LabeledGraph.from_line(g.to_line()) == g
    assert LabeledGraph.from_edge_list(g.n, g.to_edge_list()) == g


def test_line_format():
    g = LabeledGraph.from_edges(3, [(0, 1), (1, 2)])
    # pairs (0,1)=bit0, (0,2)=bit1, (1,2)=bit2
    assert g.to_line() == "n:3 e:5"
    with pytest.raises(ValueError):
        LabeledGraph.from_line("3 5")


def test_bitset_range_checked():
    with pytest.raises(ValueError):
        LabeledGraph(3, 8)


def test_graph_probability_direct():
    g = LabeledGraph.from_edges(3, [(0, 1), (1, 2)])
    assert graph_probability(g, 0.3) == pytest.approx(0.3**2 * 0.7, abs=1e-15)
    assert graph_probability(g, 0.3) == pytest.approx(0.063)
    assert graph_probability(LabeledGraph.complete(5), 1.0) == 1.0


@pytest.mark.parametrize("n", range(1, 6))
def test_probabilities_sum_to_one(n):
    for p in np.linspace(0, 1, 11):
        total = math.fsum(graph_probability(g, p) for g in enumerate_all(n))
        assert total == pytest.approx(1.0, abs=1e-10)


def test_probability_domain():
    with pytest.raises(ValueError):
        graph_probability(LabeledGraph(2), 1.5)


@pytest.mark.parametrize("seed", [0, 7, 2**63 + 5])
def test_sample_extremes(seed):
    assert sample_gnp(9, 0.0, seed, 3) == LabeledGraph.empty(9)
    assert sample_gnp(9, 1.0, seed, 3) == LabeledGraph.complete(9)


def test_sample_deterministic_and_distinct():
    a = sample_gnp(12, 0.5, 42, 17)
    assert a == sample_gnp(12, 0.5, 42, 17)
    assert a != sample_gnp(12, 0.5, 42, 18)
    assert a != sample_gnp(12, 0.5, 43, 17)


def test_batch_sampler_matches_single_draws():
    adjs = sample_adjacencies(11, 0.4, 50, seed=9)
    for i in range(50):
        assert np.array_equal(adjs[i], sample_gnp(11, 0.4, 9, i).adjacency_masks())


def test_batch_sampler_thread_invariant():
    a = sample_adjacencies(15, 0.3, 2000, seed=5, threads=1)
    b = sample_adjacencies(15, 0.3, 2000, seed=5, threads=4)
    assert np.array_equal(a, b)


def test_sample_mean_edge_count():
    s = 100_000
    adjs = sample_adjacencies(10, 0.5, s, seed=2024)
    counts = np.array([sum(int(m).bit_count() for m in row) // 2 for row in adjs.tolist()])
    sigma = math.sqrt(45 * 0.25) / math.sqrt(s)
    assert abs(counts.mean() - 22.5) <= 3 * sigma
