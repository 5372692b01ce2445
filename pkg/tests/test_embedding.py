import itertools
import random

import pytest

from planecover.covers import derive, normalized_assignment
from planecover.embedding import (
    EmbeddingError,
    KuratowskiWitness,
    PlaneEmbedding,
    cover_face_conditions,
    fold_from_single_long_face,
    is_peripheral,
    make_embedding,
    planarity,
    reembed_with_outer,
    validate_kuratowski,
)
from planecover.fixtures import hexagon_cover, necklace
from planecover.graphs import GraphError, LabeledGraph, make_base


def _octahedron():
    labels = (1, -1, 2, -2, 3, -3)
    edges = tuple(
        (u, v)
        for u, v in itertools.combinations(range(6), 2)
        if labels[u] != -labels[v]
    )
    return LabeledGraph(labels, edges)


def test_k4_planar_four_triangles():
    emb = planarity(make_base("k4").graph)
    assert isinstance(emb, PlaneEmbedding)
    assert emb.face_lengths() == [3, 3, 3, 3]


def test_k5_witness():
    k5 = LabeledGraph((0,) * 5, tuple(itertools.combinations(range(5), 2)))
    w = planarity(k5)
    assert isinstance(w, KuratowskiWitness)
    assert w.kind == "K5"


def test_k33_witness():
    k33 = LabeledGraph((0,) * 6, tuple((i, j + 3) for i in range(3) for j in range(3)))
    w = planarity(k33)
    assert isinstance(w, KuratowskiWitness)
    assert w.kind == "K33"


def test_k1222_not_planar():
    w = planarity(make_base("k1222").graph)
    assert isinstance(w, KuratowskiWitness)
    # the witness is re-validated against the host graph
    validate_kuratowski(make_base("k1222").graph, w.edges)


def test_planarity_requires_connected():
    g = LabeledGraph((0, -1, 0, -1), ((0, 1), (2, 3)))
    with pytest.raises(GraphError):
        planarity(g)


def test_faces_octahedron():
    emb = planarity(_octahedron())
    assert emb.face_lengths() == [3] * 8


def test_faces_cube_double_cover():
    cube, _ = derive(normalized_assignment(make_base("k4"), 2, [(1, 0)] * 3))
    emb = planarity(cube)
    assert emb.face_lengths() == [4] * 6


def test_faces_sum_and_euler():
    for g in (make_base("k4").graph, _octahedron(), necklace(4).graph):
        emb = planarity(g)
        assert sum(f.length for f in emb.faces) == 2 * g.m
        assert g.n - g.m + len(emb.faces) == 2


def test_malformed_rotation_rejected():
    g = make_base("k4").graph
    with pytest.raises(EmbeddingError):
        make_embedding(g, [(0, 1), (0, 3, 4), (1, 2, 5), (2, 4, 5)])
    # genus-1 rotation of K4 is rejected by the Euler check
    rots = None
    emb = planarity(g)
    base_rot = [list(r) for r in emb.rotation]
    flipped = [list(r) for r in base_rot]
    found_bad = False
    for v in range(4):
        trial = [list(r) for r in base_rot]
        trial[v] = trial[v][::-1]
        try:
            make_embedding(g, trial)
        except EmbeddingError:
            found_bad = True
    assert found_bad


def test_reembed_involution_and_face_multiset():
    emb = planarity(make_base("k4").graph)
    other = reembed_with_outer(emb, (emb.outer_face + 1) % len(emb.faces))
    assert other.face_lengths() == emb.face_lengths()
    back = reembed_with_outer(other, emb.outer_face)
    assert back == emb
    assert len(other.faces) == 4
    with pytest.raises(EmbeddingError):
        reembed_with_outer(emb, 99)


def test_internal_nontriangular_count_changes_by_one():
    # 12-vertex example: the three-bead ring
    emb = necklace(3).embedding
    counts = set()
    for fid in range(len(emb.faces)):
        e2 = reembed_with_outer(emb, fid)
        counts.add(
            sum(1 for i, f in enumerate(e2.faces) if i != fid and f.length > 3)
        )
    assert max(counts) - min(counts) <= 1


def test_face_multiset_stable_under_relabeling_3connected():
    rng = random.Random(5)
    for g in (make_base("k4").graph, _octahedron()):
        ref = planarity(g).face_lengths()
        for _ in range(10):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert planarity(g.relabel_vertices(perm)).face_lengths() == ref


def test_is_peripheral():
    k4 = make_base("k4").graph
    assert is_peripheral(k4, (0, 1, 2))
    b = make_base("k1222")
    tri = tuple(b.label_to_vertex[l] for l in (1, 2, 3))
    assert is_peripheral(b.graph, tri)
    # 4-cycle with a chord is not chordless
    g = LabeledGraph((0, -1, 3, -2), ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2)))
    assert not is_peripheral(g, (0, 1, 2, 3))
    with pytest.raises(GraphError):
        is_peripheral(k4, (0, 1))


def test_cover_face_conditions_on_cover_of_k4():
    sc = necklace(4)
    rep = cover_face_conditions(sc.embedding, sc.base, fold=4)
    assert rep.short_lifts_facial
    assert rep.no_long_triangle_face
    assert rep.triangular_faces == 8
    assert rep.fold == 4


def test_cover_face_conditions_long_face_violation():
    sc = hexagon_cover()
    rep = cover_face_conditions(sc.embedding, sc.base, fold=2)
    assert not rep.no_long_triangle_face
    assert rep.long_face_violations


def test_identity_cover_error_path():
    # the identity projection of the base is not planar, so the face
    # conditions can never be evaluated on it
    w = planarity(make_base("k1222").graph)
    assert isinstance(w, KuratowskiWitness)


def test_fold_from_single_long_face():
    assert fold_from_single_long_face(3) == 4
    assert fold_from_single_long_face(2) == 3
    with pytest.raises(ValueError):
        fold_from_single_long_face(1)


def test_fold_formula_euler_consistency():
    for m in range(2, 101):
        n = fold_from_single_long_face(m)
        assert n == m + 1
        V, E, F = 7 * n, 18 * n, 11 * n + 2
        assert V - E + F == 2
        assert 3 * (F - 1) + 3 * m == 2 * E


def test_k1222_witness_cross_checked_by_subdivision_oracle():
    from oracles import planar_by_subdivision_search

    g = make_base("k1222").graph
    assert not planar_by_subdivision_search(g)
    w = planarity(g)
    assert isinstance(w, KuratowskiWitness)
