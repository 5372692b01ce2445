"""Covers, semi-covers, and permutation voltage assignments.

A graph G covers a base K when some onto vertex map sends the neighbors
of every vertex bijectively onto the neighbors of its image.  Plane
semi-covers relax the condition to injectivity on the outer face.  All
n-fold covers of a base arise from a permutation per edge (a voltage
assignment); normalizing the voltages of a spanning tree to the identity
removes the fiber-relabeling redundancy.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import lcm

from .embedding import PlaneEmbedding
from .graphs import (
    BaseGraph,
    GraphError,
    LabeledGraph,
    connected_components,
    is_connected,
)


class CoverError(ValueError):
    """Structurally invalid cover/semi-cover input."""


@dataclass(frozen=True)
class Violation:
    """Where and how the neighbor condition failed."""

    vertex: int
    reason: str
    neighbor_images: tuple[int, ...]

    def __str__(self):
        return f"vertex {self.vertex}: {self.reason} (neighbor images {list(self.neighbor_images)})"


@dataclass(frozen=True)
class CoverProjection:
    source: LabeledGraph
    base: BaseGraph
    vertex_map: tuple[int, ...]  # source vertex -> base vertex id


@dataclass(frozen=True)
class CoverVerdict:
    ok: bool
    fold: int | None = None
    per_component_folds: tuple[int, ...] = ()
    violation: Violation | None = None


def label_projection(source: LabeledGraph, base: BaseGraph) -> CoverProjection:
    """The projection induced by vertex labels (the usual convention)."""
    try:
        vmap = tuple(base.label_to_vertex[lab] for lab in source.labels)
    except KeyError as exc:
        raise CoverError(f"source label {exc.args[0]!r} missing from base {base.kind!r}") from exc
    return CoverProjection(source, base, vmap)


def verify_cover(source: LabeledGraph, base: BaseGraph, vertex_map) -> CoverVerdict:
    """Check the bijective neighbor condition and equal fiber sizes.

    Returns the fold number on success; on a connected source with
    unequal fibers or any local failure, reports the offending vertex.
    Disconnected sources report per-component folds instead of one fold.
    """
    vertex_map = tuple(vertex_map)
    if len(vertex_map) != source.n:
        raise CoverError("vertex_map length does not match the source graph")
    if set(vertex_map) != set(range(base.graph.n)):
        raise CoverError("vertex_map is not onto the base")
    base_adj = [set(a) for a in base.graph.adj]
    for v in range(source.n):
        images = tuple(sorted(vertex_map[u] for u in source.adj[v]))
        target = base_adj[vertex_map[v]]
        if len(images) != len(set(images)):
            return CoverVerdict(False, violation=Violation(v, "neighbor images repeat", images))
        if set(images) != target:
            return CoverVerdict(False, violation=Violation(v, "neighbor images miss the base neighborhood", images))
    fibers = Counter(vertex_map)
    sizes = {fibers[b] for b in range(base.graph.n)}
    if is_connected(source):
        if len(sizes) != 1:
            worst = max(range(source.n), key=lambda v: fibers[vertex_map[v]])
            return CoverVerdict(False, violation=Violation(worst, "unequal fiber sizes on a connected source", ()))
        return CoverVerdict(True, fold=sizes.pop())
    folds = []
    for comp in connected_components(source):
        sub_fibers = Counter(vertex_map[v] for v in comp)
        comp_sizes = set(sub_fibers.values())
        if len(comp_sizes) != 1 or len(sub_fibers) != base.graph.n:
            return CoverVerdict(False, violation=Violation(comp[0], "component is not a cover", ()))
        folds.append(comp_sizes.pop())
    return CoverVerdict(True, fold=None, per_component_folds=tuple(folds))


# ---------------------------------------------------------------------------
# Semi-covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SemiCover:
    """A plane graph with a projection claim onto a base.

    Interior vertices must satisfy the bijective neighbor condition,
    outer-face vertices only the injective one.  The vertex map defaults
    to the one induced by labels.
    """

    embedding: PlaneEmbedding
    base: BaseGraph
    vertex_map: tuple[int, ...] | None = None

    @cached_property
    def projection(self) -> CoverProjection:
        if self.vertex_map is not None:
            return CoverProjection(self.embedding.graph, self.base, tuple(self.vertex_map))
        return label_projection(self.embedding.graph, self.base)

    @property
    def graph(self) -> LabeledGraph:
        return self.embedding.graph


@dataclass(frozen=True)
class SemiCoverVerdict:
    ok: bool
    violation: Violation | None = None


def verify_semicover(sc: SemiCover) -> SemiCoverVerdict:
    """Interior-bijective, boundary-injective neighbor conditions."""
    g = sc.graph
    vmap = sc.projection.vertex_map
    if set(vmap) != set(range(sc.base.graph.n)):
        raise CoverError("vertex_map is not onto the base")
    boundary = sc.embedding.boundary_vertices()
    base_adj = [set(a) for a in sc.base.graph.adj]
    for v in range(g.n):
        images = tuple(sorted(vmap[u] for u in g.adj[v]))
        target = base_adj[vmap[v]]
        if len(images) != len(set(images)) or not set(images) <= target:
            return SemiCoverVerdict(False, Violation(v, "neighbor images not injective into the base neighborhood", images))
        if v not in boundary and set(images) != target:
            return SemiCoverVerdict(False, Violation(v, "interior vertex not bijective onto the base neighborhood", images))
    return SemiCoverVerdict(True)


# ---------------------------------------------------------------------------
# Voltage assignments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VoltageAssignment:
    """A permutation of the sheets per base edge, on the fixed orientation
    from the lower to the higher vertex id.  Traversing an edge backwards
    applies the inverse."""

    base: BaseGraph
    n: int
    perms: tuple[tuple[int, ...], ...]  # indexed by base edge id

    def __post_init__(self):
        if self.n < 1:
            raise CoverError("fold must be at least 1")
        if len(self.perms) != self.base.graph.m:
            raise CoverError("one permutation per base edge required")
        ident = tuple(range(self.n))
        for p in self.perms:
            if tuple(sorted(p)) != ident:
                raise CoverError(f"{p!r} is not a permutation of 0..{self.n - 1}")

    @property
    def normalized(self) -> bool:
        ident = tuple(range(self.n))
        return all(self.perms[e] == ident for e in self.base.spanning_tree_edges)


def identity_assignment(base: BaseGraph, n: int) -> VoltageAssignment:
    ident = tuple(range(n))
    return VoltageAssignment(base, n, tuple(ident for _ in range(base.graph.m)))


def normalized_assignment(base: BaseGraph, n: int, cotree_perms) -> VoltageAssignment:
    """Assignment with identity on the spanning tree and the given
    permutations on the cotree edges (in cotree edge order)."""
    ident = tuple(range(n))
    perms = [ident] * base.graph.m
    cotree = base.cotree_edges
    cotree_perms = tuple(tuple(p) for p in cotree_perms)
    if len(cotree_perms) != len(cotree):
        raise CoverError("one permutation per cotree edge required")
    for eid, p in zip(cotree, cotree_perms):
        perms[eid] = p
    return VoltageAssignment(base, n, tuple(perms))


def derive(v: VoltageAssignment) -> tuple[LabeledGraph, CoverProjection]:
    """Derived graph on (base vertex, sheet) pairs plus its projection.

    Vertex (b, i) gets id b*n + i; base edge (u, w) with u < w and
    voltage s contributes the edges (u, i) -- (w, s[i]).
    """
    base_g = v.base.graph
    n = v.n
    edges = []
    for eid, (u, w) in enumerate(base_g.edges):
        s = v.perms[eid]
        for i in range(n):
            edges.append((u * n + i, w * n + s[i]))
    ordered_labels = tuple(base_g.labels[b] for b in range(base_g.n) for _ in range(n))
    source = LabeledGraph(ordered_labels, tuple(edges))
    vmap = tuple(b for b in range(base_g.n) for _ in range(n))
    return source, CoverProjection(source, v.base, vmap)


def _compose(p, q):
    """Permutation doing q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def _invert(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def tree_path_voltages(v: VoltageAssignment) -> list[tuple[int, ...]]:
    """Net voltage of the tree path from the root to each base vertex."""
    base = v.base
    g = base.graph
    root = base.label_to_vertex[0]
    ident = tuple(range(v.n))
    volt: list[tuple[int, ...] | None] = [None] * g.n
    volt[root] = ident
    tree = set(base.spanning_tree_edges)
    stack = [root]
    while stack:
        u = stack.pop()
        for eid in g.incident_edges[u]:
            if eid not in tree:
                continue
            a, b = g.edges[eid]
            w = b if a == u else a
            if volt[w] is None:
                step = v.perms[eid] if a == u else _invert(v.perms[eid])
                volt[w] = _compose(step, volt[u])
                stack.append(w)
    assert all(p is not None for p in volt)
    return volt  # type: ignore[return-value]


def cycle_net_voltages(v: VoltageAssignment) -> list[tuple[int, ...]]:
    """Net voltages of the fundamental cycles (one per cotree edge)."""
    volt = tree_path_voltages(v)
    out = []
    for eid in v.base.cotree_edges:
        u, w = v.base.graph.edges[eid]
        net = _compose(_invert(volt[w]), _compose(v.perms[eid], volt[u]))
        out.append(net)
    return out


def is_connected_cover(v: VoltageAssignment) -> bool:
    """True iff the group generated by the fundamental-cycle voltages
    acts transitively on the sheets."""
    gens = cycle_net_voltages(v)
    orbit = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for gperm in gens:
            for j in (gperm[i], gperm.index(i)):
                if j not in orbit:
                    orbit.add(j)
                    stack.append(j)
    return len(orbit) == v.n


def triangle_net_voltage(v: VoltageAssignment, triangle_labels) -> tuple[int, ...]:
    """Net voltage around a base triangle, walked in sorted-vertex order."""
    base = v.base
    g = base.graph
    verts = sorted(base.label_to_vertex[lab] for lab in triangle_labels)
    ident = tuple(range(v.n))
    net = ident
    cyc = [verts[0], verts[1], verts[2], verts[0]]
    eidx = {e: i for i, e in enumerate(g.edges)}
    for a, b in zip(cyc, cyc[1:]):
        eid = eidx[(a, b) if a < b else (b, a)]
        step = v.perms[eid] if a < b else _invert(v.perms[eid])
        net = _compose(step, net)
    return net


def permutation_order(p) -> int:
    seen = [False] * len(p)
    order = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = lcm(order, length)
    return order


def lift_subgraph(proj: CoverProjection, sub_labels, sub_edges=None) -> tuple[LabeledGraph, dict[int, int]]:
    """Preimage of a base subgraph under the projection.

    ``sub_labels`` names the base vertices (by label); ``sub_edges``
    optionally restricts to specific base edges (as label pairs),
    defaulting to all base edges among the chosen vertices.
    """
    base = proj.base
    try:
        sub_vs = {base.label_to_vertex[lab] for lab in sub_labels}
    except KeyError as exc:
        raise CoverError(f"label {exc.args[0]!r} not in base") from exc
    if sub_edges is None:
        allowed = {
            (u, w) for u, w in base.graph.edges if u in sub_vs and w in sub_vs
        }
    else:
        allowed = set()
        for la, lb in sub_edges:
            a, b = base.label_to_vertex[la], base.label_to_vertex[lb]
            e = (a, b) if a < b else (b, a)
            if e not in base.graph.edge_set or a not in sub_vs or b not in sub_vs:
                raise CoverError(f"edge {(la, lb)!r} not contained in the base subgraph")
            allowed.add(e)
    g = proj.source
    vmap = proj.vertex_map
    keep = [v for v in range(g.n) if vmap[v] in sub_vs]
    new_id = {v: i for i, v in enumerate(keep)}
    edges = []
    for u, w in g.edges:
        if u in new_id and w in new_id:
            bu, bw = vmap[u], vmap[w]
            be = (bu, bw) if bu < bw else (bw, bu)
            if be in allowed:
                edges.append((new_id[u], new_id[w]))
    lifted = LabeledGraph(tuple(g.labels[v] for v in keep), tuple(edges))
    return lifted, new_id


# ---------------------------------------------------------------------------
# Conjugacy class representatives of the symmetric group
# ---------------------------------------------------------------------------


def _partitions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def conjugacy_representatives(n: int) -> tuple[tuple[int, ...], ...]:
    """One permutation per conjugacy class of S_n (cycle-type reps).

    Sheet relabeling acts on voltage assignments by simultaneous
    conjugation, so restricting one cotree edge to class representatives
    still reaches every derived graph up to isomorphism.
    """
    reps = []
    for part in _partitions(n):
        p = list(range(n))
        pos = 0
        for size in part:
            for k in range(size):
                p[pos + k] = pos + (k + 1) % size
            pos += size
        reps.append(tuple(p))
    return tuple(sorted(reps))
