import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from circlegraphs.errors import PreconditionError
from circlegraphs.matroid import (BinaryMatroid, automorphism_count, automorphisms, circuits_up_to,
                                  class_test, cycle_matroid_k5, dual, fano, fano_dual,
                                  find_isomorphism, graph_matroid, has_minor, is_isomorphic, minor)

from oracles import automorphisms_by_permutation, circuits_brute

matroids = st.tuples(st.integers(1, 4), st.integers(1, 8)).flatmap(
    lambda rm: st.lists(st.integers(0, (1 << rm[0]) - 1), min_size=rm[1], max_size=rm[1])
    .map(lambda cols: (BinaryMatroid(tuple(cols)), rm[0])))


def k4():
    return graph_matroid(4, list(itertools.combinations(range(4), 2)))


@given(matroids)
def test_circuits_match_subset_oracle(mr):
    m, nrows = mr
    got = {frozenset(i for i in range(m.size) if c >> i & 1) for c in circuits_up_to(m, m.size)}
    assert got == circuits_brute(list(m.cols), nrows, m.size)
    assert all(m.is_circuit(c) for c in circuits_up_to(m, m.size))


@given(matroids)
def test_dual_rank_and_bases(mr):
    m, _ = mr
    d = dual(m)
    assert d.rank == m.size - m.rank
    full = (1 << m.size) - 1
    assert sorted(full ^ b for b in m.bases()) == sorted(d.bases())


@settings(max_examples=30)
@given(matroids, st.data())
def test_minor_ranks(mr, data):
    m, _ = mr
    c = data.draw(st.integers(0, (1 << m.size) - 1))
    dl = data.draw(st.integers(0, (1 << m.size) - 1)) & ~c
    mm = minor(m, c, dl)
    keep = [i for i in range(m.size) if not (c | dl) >> i & 1]
    for s in range(1 << len(keep)):
        orig = sum(1 << keep[i] for i in range(len(keep)) if s >> i & 1)
        assert mm.rank_of(s) == m.rank_of(orig | c) - m.rank_of(c)


@pytest.mark.parametrize("build", [fano, fano_dual, k4, lambda: graph_matroid(3, [(0, 1), (1, 2), (0, 2), (0, 1)])])
def test_automorphism_count_matches_permutation_oracle(build):
    m = build()
    assert automorphism_count(m) == automorphisms_by_permutation(list(m.cols), m.rank)


def test_automorphisms_form_a_group():
    m = k4()
    auts = set(automorphisms(m))
    assert len(auts) == 24
    for a, b in itertools.product(list(auts)[:6], repeat=2):
        assert tuple(a[b[x]] for x in range(m.size)) in auts


def test_isomorphism_search():
    m = fano()
    perm = [3, 6, 0, 2, 5, 1, 4]
    shuffled = BinaryMatroid(tuple(m.cols[perm.index(i)] for i in range(7)))
    phi = find_isomorphism(m, shuffled)
    assert phi is not None
    circ = {c for c in circuits_up_to(m, 7)}
    image = {sum(1 << phi[i] for i in range(7) if c >> i & 1) for c in circ}
    assert image == set(circuits_up_to(shuffled, 7))
    assert not is_isomorphic(fano(), fano_dual())


def test_minor_membership():
    assert has_minor(cycle_matroid_k5(), k4())
    assert not has_minor(k4(), fano())
    assert not has_minor(fano_dual(), fano())
    assert has_minor(fano(), fano())


def test_class_tests_on_standard_matroids():
    assert not class_test(fano(), "regular")
    assert not class_test(fano_dual(), "regular")
    k5 = cycle_matroid_k5()
    assert class_test(k5, "graphic") and not class_test(k5, "cographic")
    assert class_test(dual(k5), "cographic") and not class_test(dual(k5), "graphic")
    assert class_test(k4(), "planar")
    assert not class_test(k5, "planar")
    k33 = graph_matroid(6, [(a, b) for a in range(3) for b in range(3, 6)])
    assert class_test(k33, "graphic") and not class_test(k33, "planar")
    with pytest.raises(PreconditionError):
        class_test(k4(), "ternary")


@settings(max_examples=25)
@given(st.integers(5, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                         min_size=6, max_size=12))))
def test_graph_matroid_planarity_matches_networkx(ne):
    n, edges = ne
    edges = [(u, v) for u, v in edges if u != v]
    m = graph_matroid(n, edges)
    g = nx.MultiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    planar, _ = nx.check_planarity(nx.Graph(g))
    assert class_test(m, "graphic")
    assert class_test(m, "planar") == planar
    assert class_test(graph_matroid(n, edges, "bond"), "cographic")
