import random

import pytest

from oracles import connectivity_by_cut_search

from planecover.covers import derive, normalized_assignment
from planecover.graphs import (
    GraphError,
    LabeledGraph,
    canonical_form,
    connectivity,
    find_cycles_covering,
    is_connected,
    isomorphic,
    labels_adjacent,
    make_base,
)


def test_base_k1222_shape():
    b = make_base("k1222")
    assert b.graph.n == 7
    assert b.graph.m == 18
    degs = sorted((b.graph.degree(v) for v in range(7)), reverse=True)
    assert degs == [6, 5, 5, 5, 5, 5, 5]
    zero = b.label_to_vertex[0]
    assert b.graph.degree(zero) == 6


def test_base_k4_shape():
    b = make_base("k4")
    assert b.graph.n == 4
    assert b.graph.m == 6
    assert sorted(b.graph.labels) == [-3, -2, -1, 0]


def test_make_base_rejects_unknown():
    with pytest.raises(GraphError):
        make_base("k5")


def test_label_adjacency():
    assert labels_adjacent(0, 1) and labels_adjacent(0, -3)
    assert not labels_adjacent(1, -1) and not labels_adjacent(2, -2)
    assert labels_adjacent(1, 2) and labels_adjacent(-1, 3)
    assert not labels_adjacent(0, 0) and not labels_adjacent(1, 1)
    with pytest.raises(GraphError):
        labels_adjacent(0, 5)


def test_loops_and_parallels_rejected():
    with pytest.raises(GraphError):
        LabeledGraph((0, -1), ((0, 0),))
    with pytest.raises(GraphError):
        LabeledGraph((0, -1), ((0, 1), (1, 0)))
    g = LabeledGraph((0, -1), ((0, 1), (1, 0)), simple=False)
    assert g.m == 2


def test_connectivity_examples():
    assert connectivity(make_base("k4").graph) == 3
    path3 = LabeledGraph((0, -1, -2), ((0, 1), (1, 2)))
    assert connectivity(path3) == 1
    # cube graph: the double cover of K4 with all cotree swaps
    cube, _ = derive(normalized_assignment(make_base("k4"), 2, [(1, 0)] * 3))
    assert connectivity(cube) == 3
    assert connectivity(cube) == connectivity_by_cut_search(cube)
    with pytest.raises(GraphError):
        connectivity(LabeledGraph((0,), ()))


def test_canonical_form_isomorphic_copies():
    g = make_base("k4").graph
    assert canonical_form(g) == canonical_form(g.relabel_vertices([2, 0, 3, 1]))
    c4 = LabeledGraph((0, -1, -2, -3), ((0, 1), (1, 2), (2, 3), (0, 3)))
    assert canonical_form(g) != canonical_form(c4)
    assert isomorphic(g, g.relabel_vertices([3, 1, 0, 2]))
    assert not isomorphic(g, c4)


def test_canonical_form_label_sensitive():
    g1 = LabeledGraph((0, -1), ((0, 1),))
    g2 = LabeledGraph((0, -2), ((0, 1),))
    assert canonical_form(g1) != canonical_form(g2)


def test_canonical_form_many_relabelings():
    # 12-vertex cover: three beads in a ring
    from planecover.fixtures import necklace

    g = necklace(3).graph
    rng = random.Random(7)
    forms = set()
    for _ in range(100):
        perm = list(range(g.n))
        rng.shuffle(perm)
        forms.add(canonical_form(g.relabel_vertices(perm)))
    assert len(forms) == 1


def test_canonical_agrees_with_explicit_iso_search():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(4, 8)
        labels = tuple(rng.choice((0, -1, -2, -3)) for _ in range(n))
        edges = tuple(
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < 0.4
        )
        g1 = LabeledGraph(labels, edges)
        perm = list(range(n))
        rng.shuffle(perm)
        g2 = g1.relabel_vertices(perm)
        assert canonical_form(g1) == canonical_form(g2)
        assert isomorphic(g1, g2)
        # perturb: toggle one edge somewhere
        if edges:
            g3 = LabeledGraph(labels, edges[1:])
            same = canonical_form(g1) == canonical_form(g3)
            assert same == isomorphic(g1, g3)


def test_find_cycles_covering_identity():
    b = make_base("k1222")
    comps = find_cycles_covering(b.graph, (1, 2, 3), b)
    assert len(comps) == 1
    assert comps[0].kind == "cycle" and comps[0].length == 3


def test_find_cycles_covering_double_cover():
    k4 = make_base("k4")
    cube, _ = derive(normalized_assignment(k4, 2, [(1, 0)] * 3))
    comps = find_cycles_covering(cube, (-1, -2, -3), k4)
    assert [(c.kind, c.length) for c in comps] == [("cycle", 6)]


def test_find_cycles_covering_lengths_sum():
    k4 = make_base("k4")
    rng = random.Random(3)
    import itertools

    perms = list(itertools.permutations(range(3)))
    for _ in range(50):
        volt = [rng.choice(perms) for _ in range(3)]
        g, _ = derive(normalized_assignment(k4, 3, volt))
        for t in k4.triangles:
            comps = find_cycles_covering(g, t, k4)
            assert sum(c.length for c in comps) == 3 * 3
            assert all(c.kind == "cycle" for c in comps)
            assert all(c.length % 3 == 0 for c in comps)


def test_find_cycles_covering_rejects_non_triangle():
    b = make_base("k1222")
    with pytest.raises(GraphError):
        find_cycles_covering(b.graph, (1, -1, 2), b)


def test_label_consistency():
    assert make_base("k1222").graph.is_label_consistent()
    bad = LabeledGraph((1, -1), ((0, 1),))
    assert not bad.is_label_consistent()
