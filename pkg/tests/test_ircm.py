import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chibar.coloring import chi_exact
from chibar.graph import LabeledGraph, OrderTooLargeError, enumerate_all, num_pairs, sample_gnp
from chibar.ircm import ColoringState, ircm_run, ircm_until_stable, trace_csv


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(2, max_n))
    return LabeledGraph(n, draw(st.integers(0, (1 << num_pairs(n)) - 1)))


@settings(max_examples=80, deadline=None)
@given(graphs(), st.integers(0, 2**64 - 1))
def test_proper_and_monotone_every_iteration(g, seed):
    state = ColoringState(g, seed)
    assert state.is_proper() and state.distinct_count == g.n
    prev = g.n
    for _ in range(300):
        cur = state.advance(1)
        assert state.is_proper()
        assert cur <= prev
        assert cur == len(set(state.coloring()))
        prev = cur


@settings(max_examples=80, deadline=None)
@given(graphs(), st.integers(0, 2**32))
def test_upper_bounds_chromatic_number(g, seed):
    assert ircm_until_stable(g, 16, seed).color_count >= chi_exact(g).chi


def test_upper_bound_exhaustive_small():
    for n in range(2, 6):
        for g in enumerate_all(n):
            assert ircm_until_stable(g, 32, 5, sample_id=g.index).color_count >= chi_exact(g).chi


def test_colour_ids_are_initial_vertex_indices():
    state = ColoringState(sample_gnp(10, 0.4, 1), 3)
    state.advance(1000)
    assert set(state.coloring()) <= set(range(10))


def test_empty_graph_collapses():
    r = ircm_until_stable(LabeledGraph.empty(5), 64, 0)
    assert r.color_count == 1
    assert r.t_final == 128 and r.converged


def test_complete_graph_never_merges():
    r = ircm_until_stable(LabeledGraph.complete(5), 64, 0)
    assert r == ircm_until_stable(LabeledGraph.complete(5), 64, 1)
    assert (r.color_count, r.t_final) == (5, 128)


def test_path_of_three_reaches_two_colours():
    path = LabeledGraph.from_edges(3, [(0, 1), (1, 2)])
    hits = sum(ircm_run(path, 1000, seed).color_count == 2 for seed in range(1000))
    assert hits >= 990


def test_order_one():
    assert ircm_run(LabeledGraph(1), 8, 0).color_count == 1
    assert ircm_until_stable(LabeledGraph(1), 8, 0).color_count == 1


def test_run_deterministic_and_seed_dependent():
    g = sample_gnp(16, 0.5, 4)
    a = ircm_run(g, 500, 9, trace=True)
    assert a == ircm_run(g, 500, 9) and a.trace == ircm_run(g, 500, 9, trace=True).trace
    colorings = set()
    for seed in range(5):
        state = ColoringState(g, seed)
        state.advance(20)
        colorings.add(state.coloring())
    assert len(colorings) > 1


def test_continuing_stream_matches_single_run():
    g = sample_gnp(14, 0.3, 8)
    a = ColoringState(g, 2)
    a.advance(100)
    a.advance(156)
    b = ColoringState(g, 2)
    b.advance(256)
    assert a.coloring() == b.coloring()


def test_trace_is_powers_of_two():
    r = ircm_run(sample_gnp(12, 0.5, 0), 100, 1, trace=True)
    assert [t for t, _ in r.trace] == [1, 2, 4, 8, 16, 32, 64]
    counts = [c for _, c in r.trace]
    assert counts == sorted(counts, reverse=True)
    assert r.color_count <= counts[-1]
    assert trace_csv(r.trace).splitlines()[0] == "t,color_count"


def test_until_stable_ceiling():
    g = sample_gnp(30, 0.5, 0)
    r = ircm_until_stable(g, 1, 0, max_iterations=1)
    assert not r.converged and r.t_final == 1


def test_validation():
    with pytest.raises(ValueError):
        ircm_run(LabeledGraph(3), 0, 0)
    with pytest.raises(OrderTooLargeError):
        ircm_run(LabeledGraph(65), 1, 0)
    with pytest.raises(ValueError):
        ColoringState(LabeledGraph(3), 0).advance(-1)


def test_pair_roles_symmetric():
    # edge (0,1) plus isolated 2: merges of {0,2} or {1,2} are equally likely
    g = LabeledGraph.from_edges(3, [(0, 1)])
    outcomes = []
    for seed in range(4000):
        st_ = ColoringState(g, seed)
        while st_.distinct_count == 3:
            st_.advance(1)
        outcomes.append(st_.coloring()[2] if st_.coloring()[2] != 2 else
                        (0 if st_.coloring()[0] == 2 else 1))
    frac = np.mean(np.array(outcomes) == 0)
    assert abs(frac - 0.5) < 4 * 0.5 / np.sqrt(4000)
