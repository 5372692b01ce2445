"""Combinatorial plane embeddings: rotation systems and face tracing.

An embedding is a cyclic order of incident edges at every vertex plus a
designated outer face.  Faces are the orbits of the face-tracing rule
(leave along the rotation successor of the arrival edge); a rotation
system is spherical exactly when V - E + F = 2.  No coordinates are ever
computed: every downstream predicate reads face walks and label sequences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .graphs import (
    BaseGraph,
    GraphError,
    LabeledGraph,
    find_cycles_covering,
    is_connected,
)


class EmbeddingError(ValueError):
    """Malformed rotation system or face data."""


def trace_faces(n_vertices: int, edges, rotation) -> list[tuple[int, ...]]:
    """Face orbits of a rotation system, as tuples of darts.

    Dart 2*e runs from edges[e][0] to edges[e][1]; dart 2*e+1 is its
    reverse.  The successor of a dart d is the next dart out of head(d),
    in rotation order, after the reversal of d.  Works for multigraphs.
    """
    m = len(edges)
    head = [0] * (2 * m)
    for e, (u, v) in enumerate(edges):
        head[2 * e] = v
        head[2 * e + 1] = u
    succ = [-1] * (2 * m)  # next out-dart in the rotation at its tail
    for v in range(n_vertices):
        rot = rotation[v]
        out = []
        for eid in rot:
            u, w = edges[eid]
            if u == v:
                out.append(2 * eid)
            elif w == v:
                out.append(2 * eid + 1)
            else:
                raise EmbeddingError(f"edge {eid} in rotation of non-incident vertex {v}")
        for i, d in enumerate(out):
            if succ[d] != -1:
                raise EmbeddingError(f"edge repeated in rotation at vertex {v}")
            succ[d] = out[(i + 1) % len(out)]
    if any(s == -1 for s in succ):
        raise EmbeddingError("rotation misses some incident edges")
    faces = []
    seen = bytearray(2 * m)
    for d0 in range(2 * m):
        if seen[d0]:
            continue
        walk = []
        d = d0
        while not seen[d]:
            seen[d] = 1
            walk.append(d)
            d = succ[d ^ 1]
        if d != d0:
            raise EmbeddingError("face tracing did not close")
        faces.append(tuple(walk))
    return faces


def _canonical_rotation(seq: tuple) -> tuple:
    best = seq
    for i in range(1, len(seq)):
        cand = seq[i:] + seq[:i]
        if cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class FaceWalk:
    """One face of an embedding: a closed walk of darts."""

    darts: tuple[int, ...]
    vertices: tuple[int, ...]  # tail of each dart, in walk order
    labels: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(d // 2 for d in self.darts)

    def is_simple_cycle(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def sort_key(self):
        return (self.length, _canonical_rotation(self.vertices), _canonical_rotation(self.darts))


@dataclass(frozen=True)
class PlaneEmbedding:
    """A spherical rotation system with a designated outer face."""

    graph: LabeledGraph
    rotation: tuple[tuple[int, ...], ...]
    outer_face: int = 0

    def __post_init__(self):
        faces = self.faces  # validates the rotation and Euler's formula
        if not (0 <= self.outer_face < len(faces)):
            raise EmbeddingError(f"outer face id {self.outer_face} out of range")

    @cached_property
    def faces(self) -> tuple[FaceWalk, ...]:
        g = self.graph
        raw = trace_faces(g.n, g.edges, self.rotation)
        if g.n - g.m + len(raw) != 2:
            raise EmbeddingError(
                f"rotation has genus > 0: V={g.n} E={g.m} F={len(raw)}"
            )
        walks = []
        for darts in raw:
            tails = tuple(g.edges[d // 2][0] if d % 2 == 0 else g.edges[d // 2][1] for d in darts)
            walks.append(FaceWalk(darts, tails, tuple(g.labels[v] for v in tails)))
        walks.sort(key=FaceWalk.sort_key)
        return tuple(walks)

    @property
    def outer(self) -> FaceWalk:
        return self.faces[self.outer_face]

    @cached_property
    def dart_face(self) -> dict[int, int]:
        """Face id containing each dart."""
        out = {}
        for i, f in enumerate(self.faces):
            for d in f.darts:
                out[d] = i
        return out

    def face_lengths(self) -> list[int]:
        return sorted(f.length for f in self.faces)

    def boundary_vertices(self) -> frozenset[int]:
        return self.outer.vertex_set

    def restrict(self, vertices) -> tuple["PlaneEmbedding", dict[int, int], dict[int, int]]:
        """Embedding induced on a vertex subset.

        Returns the sub-embedding plus the vertex and edge id maps
        (old -> new).  The rotation of the subgraph is the restriction of
        the host rotation, so faces of the subgraph are unions of host
        faces.  The outer face is left at face 0; callers that care remap
        it through the face correspondence.
        """
        g = self.graph
        keep = set(vertices)
        sub, vmap = g.induced_subgraph(keep)
        emap = {}
        for old_id, (u, v) in enumerate(g.edges):
            if u in keep and v in keep:
                emap[old_id] = sub.edges.index((vmap[u], vmap[v])) if sub.simple else None
        if not sub.simple or None in emap.values():
            raise EmbeddingError("restrict requires a simple subgraph")
        rot = []
        for v in range(g.n):
            if v in keep:
                rot.append(tuple(emap[e] for e in self.rotation[v] if e in emap))
        emb = PlaneEmbedding(sub, tuple(rot), 0)
        return emb, vmap, emap


def make_embedding(graph: LabeledGraph, rotation, outer_face: int | None = None) -> PlaneEmbedding:
    """Build and validate an embedding; default outer face is the
    lexicographically least face walk."""
    emb = PlaneEmbedding(graph, tuple(tuple(r) for r in rotation), 0)
    if outer_face is None:
        keys = [f.sort_key() for f in emb.faces]
        outer_face = min(range(len(keys)), key=lambda i: keys[i])
    if outer_face == 0:
        return emb
    return PlaneEmbedding(graph, emb.rotation, outer_face)


def reembed_with_outer(emb: PlaneEmbedding, face_id: int) -> PlaneEmbedding:
    """Same rotation system with the outer face reassigned."""
    if not (0 <= face_id < len(emb.faces)):
        raise EmbeddingError(f"unknown face id {face_id}")
    return PlaneEmbedding(emb.graph, emb.rotation, face_id)


# ---------------------------------------------------------------------------
# Planarity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KuratowskiWitness:
    """A verified subdivision of K5 or K33 inside a non-planar graph."""

    kind: str  # "K5" or "K33"
    edges: tuple[tuple[int, int], ...]
    branch_vertices: tuple[int, ...]


def _to_nx(g: LabeledGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def is_planar(g: LabeledGraph) -> bool:
    ok, _ = nx.check_planarity(_to_nx(g), counterexample=False)
    return ok


def validate_kuratowski(g: LabeledGraph, edges) -> KuratowskiWitness:
    """Independently check that an edge set is a K5/K33 subdivision in g."""
    edge_set = set()
    for u, v in edges:
        e = (u, v) if u < v else (v, u)
        if not g.has_edge(*e):
            raise EmbeddingError(f"witness edge {e} not in graph")
        edge_set.add(e)
    deg: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for u, v in edge_set:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    branch = sorted(v for v, d in deg.items() if d > 2)
    if any(d < 2 for d in deg.values()):
        raise EmbeddingError("witness has a degree-1 vertex")
    # Contract each branch-to-branch path through degree-2 vertices.
    contracted = set()
    for b in branch:
        for start in adj[b]:
            prev, cur = b, start
            while deg[cur] == 2:
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                prev, cur = cur, nxt
            if cur == b:
                raise EmbeddingError("witness path returns to its own branch vertex")
            contracted.add(tuple(sorted((b, cur))))
    degs = sorted(deg[b] for b in branch)
    if degs == [4] * 5 and len(contracted) == 10:
        kind = "K5"
    elif degs == [3] * 6 and len(contracted) == 9:
        part = {branch[0]: 0}
        stack = [branch[0]]
        ok = True
        nbr = {b: set() for b in branch}
        for x, y in contracted:
            nbr[x].add(y)
            nbr[y].add(x)
        while stack:
            b = stack.pop()
            for c in nbr[b]:
                if c not in part:
                    part[c] = 1 - part[b]
                    stack.append(c)
                elif part[c] == part[b]:
                    ok = False
        if not ok:
            raise EmbeddingError("witness branch graph is not bipartite")
        kind = "K33"
    else:
        raise EmbeddingError(f"witness is not a K5/K33 subdivision: degrees {degs}")
    return KuratowskiWitness(kind, tuple(sorted(edge_set)), tuple(branch))


def planarity(g: LabeledGraph) -> PlaneEmbedding | KuratowskiWitness:
    """Decide planarity; return an embedding or a verified witness."""
    if not g.simple:
        raise GraphError("planarity operates on simple graphs")
    if g.n == 0 or not is_connected(g):
        raise GraphError("planarity requires a connected input")
    G = _to_nx(g)
    ok, cert = nx.check_planarity(G, counterexample=False)
    if ok:
        data = cert.get_data()
        edge_id = {e: i for i, e in enumerate(g.edges)}
        rotation = []
        for v in range(g.n):
            rotation.append(tuple(edge_id[(v, u) if v < u else (u, v)] for u in data[v]))
        return make_embedding(g, rotation)
    sub = nx.algorithms.planarity.get_counterexample(G)
    return validate_kuratowski(g, list(sub.edges()))


# ---------------------------------------------------------------------------
# Cycle predicates and face conditions
# ---------------------------------------------------------------------------


def _is_cycle_of(g: LabeledGraph, cycle) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))


def is_peripheral(g: LabeledGraph, cycle) -> bool:
    """Chordless cycle whose vertex deletion leaves the graph connected."""
    cycle = tuple(cycle)
    if not _is_cycle_of(g, cycle):
        raise GraphError(f"{cycle!r} is not a cycle of the graph")
    k = len(cycle)
    for i, j in itertools.combinations(range(k), 2):
        if abs(i - j) in (1, k - 1):
            continue
        if g.has_edge(cycle[i], cycle[j]):
            return False
    rest = [v for v in range(g.n) if v not in set(cycle)]
    if not rest:
        return True
    sub, _ = g.induced_subgraph(rest)
    return is_connected(sub)


def triangle_faces(emb: PlaneEmbedding) -> set[frozenset[int]]:
    return {f.vertex_set for f in emb.faces if f.length == 3}


def all_triangles(g: LabeledGraph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.edges:
        for w in range(v + 1, g.n):
            if g.has_edge(u, w) and g.has_edge(v, w):
                out.append((u, v, w))
    return sorted(set(out))


@dataclass(frozen=True)
class FaceConditionReport:
    """Face-level conditions on an embedded cover.

    Fold number and triangular face count are raw statistics (the
    chosen-cover minimality and triangle-maximality properties are global
    claims over all covers and cannot be decided on one instance);
    short_lifts_facial demands every length-3 lift of a base triangle to
    bound a face, and no_long_triangle_face forbids faces that are long
    cycles over a single base triangle.
    """

    fold: int
    triangular_faces: int
    short_lifts_facial: bool
    short_lift_violations: tuple[tuple[int, ...], ...]
    no_long_triangle_face: bool
    long_face_violations: tuple[int, ...]


def cover_face_conditions(emb: PlaneEmbedding, base: BaseGraph, fold: int) -> FaceConditionReport:
    """Check the face conditions for an embedded cover of the base."""
    g = emb.graph
    if not g.is_label_consistent():
        raise GraphError("embedded graph is not label-consistent")
    tri_faces = triangle_faces(emb)
    short_viol = []
    for t in base.triangles:
        for comp in find_cycles_covering(g, t, base):
            if comp.kind == "cycle" and comp.length == 3:
                if frozenset(comp.vertices) not in tri_faces:
                    short_viol.append(comp.vertices)
    long_lift_cycles = set()
    for t in base.triangles:
        for comp in find_cycles_covering(g, t, base):
            if comp.kind == "cycle" and comp.length > 3:
                long_lift_cycles.add(frozenset(comp.edges))
    long_viol = [
        i
        for i, f in enumerate(emb.faces)
        if f.length > 3
        and f.is_simple_cycle()
        and frozenset(g.edges[e] for e in f.edge_ids) in long_lift_cycles
    ]
    return FaceConditionReport(
        fold=fold,
        triangular_faces=sum(1 for f in emb.faces if f.length == 3),
        short_lifts_facial=not short_viol,
        short_lift_violations=tuple(short_viol),
        no_long_triangle_face=not long_viol,
        long_face_violations=tuple(long_viol),
    )


def fold_from_single_long_face(m: int) -> int:
    """Fold number forced on a cover of K(1,2,2,2) whose faces are one
    3m-gon and triangles elsewhere.

    With 7n vertices and 18n edges Euler gives 11n + 2 faces; equating
    total face length 3(11n + 1) + 3m with 36n yields n = m + 1.
    """
    if m < 2:
        raise ValueError("the long face must have length at least 6 (m >= 2)")
    return m + 1
