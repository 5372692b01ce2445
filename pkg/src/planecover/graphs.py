"""Vertex-labelled multigraphs over the K(1,2,2,2) alphabet.

Every graph handled by this package (base graphs, covers, K4-cover
fragments, quotients) carries a label per vertex drawn from the seven
symbols 0, +-1, +-2, +-3.  The apex vertex of K(1,2,2,2) is labelled 0;
the six octahedron vertices are labelled so that i and -i are the unique
non-adjacent pairs.  Covers of the K4 subgraph reuse {0, -1, -2, -3}.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property

ALPHABET = (0, 1, -1, 2, -2, 3, -3)
NEGATIVE_LABELS = (-1, -2, -3)
K4_LABELS = (0, -1, -2, -3)
OCTAHEDRAL_LABELS = (1, -1, 2, -2, 3, -3)

_ALPHABET_SET = frozenset(ALPHABET)


class GraphError(ValueError):
    """Malformed graph data."""


def labels_adjacent(a: int, b: int) -> bool:
    """True iff the base vertices named by the two labels are adjacent."""
    if a not in _ALPHABET_SET or b not in _ALPHABET_SET:
        raise GraphError(f"label outside alphabet: {a!r}, {b!r}")
    if a == 0 or b == 0:
        return a != b
    return a != b and a != -b


@dataclass(frozen=True)
class LabeledGraph:
    """Immutable multigraph with a label per vertex.

    ``labels[v]`` is the label of vertex ``v`` (vertices are 0..n-1) and
    ``edges`` is a sorted tuple of normalized ``(u, v)`` pairs with
    ``u < v``; repeated pairs encode parallel edges.  ``simple`` declares
    that parallel edges are forbidden.
    """

    labels: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    simple: bool = True

    def __post_init__(self):
        n = len(self.labels)
        norm = []
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {e} out of range for {n} vertices")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        if self.simple and any(norm[i] == norm[i + 1] for i in range(len(norm) - 1)):
            raise GraphError("parallel edges in a graph declared simple")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Neighbor lists with multiplicity, sorted."""
        out = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[u].append(v)
            out[v].append(u)
        return tuple(tuple(sorted(a)) for a in out)

    @cached_property
    def incident_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids (indices into ``edges``) incident to each vertex."""
        out = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            out[u].append(i)
            out[v].append(i)
        return tuple(tuple(a) for a in out)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def label_of(self, v: int) -> int:
        return self.labels[v]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def is_label_consistent(self) -> bool:
        """Every edge joins vertices whose labels are adjacent in the base."""
        return all(labels_adjacent(self.labels[u], self.labels[v]) for u, v in self.edges)

    def vertices_with_label(self, label: int) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.labels[v] == label)

    def relabel_vertices(self, perm: dict[int, int] | list[int]) -> "LabeledGraph":
        """Image under a vertex renumbering (perm maps old id to new id)."""
        if isinstance(perm, dict):
            perm = [perm[v] for v in range(self.n)]
        labels = [0] * self.n
        for v in range(self.n):
            labels[perm[v]] = self.labels[v]
        edges = [(perm[u], perm[v]) for u, v in self.edges]
        return LabeledGraph(tuple(labels), tuple(edges), self.simple)

    def induced_subgraph(self, vertices) -> tuple["LabeledGraph", dict[int, int]]:
        """Induced subgraph plus the old-id -> new-id map."""
        keep = sorted(set(vertices))
        new_id = {v: i for i, v in enumerate(keep)}
        edges = [(new_id[u], new_id[v]) for u, v in self.edges if u in new_id and v in new_id]
        return LabeledGraph(tuple(self.labels[v] for v in keep), tuple(edges), self.simple), new_id


def is_connected(g: LabeledGraph) -> bool:
    if g.n == 0:
        return False
    seen = bytearray(g.n)
    seen[0] = 1
    stack = [0]
    count = 1
    adj = g.adj
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                stack.append(v)
    return count == g.n


def connected_components(g: LabeledGraph) -> list[list[int]]:
    seen = bytearray(g.n)
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = 1
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    comp.append(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def _connected_after_removal(g: LabeledGraph, removed: frozenset[int]) -> bool:
    remaining = [v for v in range(g.n) if v not in removed]
    if len(remaining) <= 1:
        return True
    seen = {remaining[0]}
    stack = [remaining[0]]
    while stack:
        u = stack.pop()
        for v in g.adj[u]:
            if v not in removed and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(remaining)


def connectivity(g: LabeledGraph) -> int:
    """Vertex connectivity capped at 3, by exhaustive small-cut search.

    Nothing downstream distinguishes connectivities above 3, so the search
    stops there instead of pulling in max-flow machinery.
    """
    if g.n < 2:
        raise GraphError("connectivity needs at least 2 vertices")
    if not is_connected(g):
        return 0
    for k in (1, 2):
        if g.n - k < 2:
            break
        for cut in itertools.combinations(range(g.n), k):
            if not _connected_after_removal(g, frozenset(cut)):
                return k
    return min(3, g.n - 1)


# ---------------------------------------------------------------------------
# Base graphs
# ---------------------------------------------------------------------------

K1222 = "k1222"
K4NEG = "k4"

# Fixed vertex order of the bases; position is the vertex id.
_BASE_LABELS = {
    K1222: (0, 1, 2, 3, -1, -2, -3),
    K4NEG: (0, -1, -2, -3),
}


@dataclass(frozen=True)
class BaseGraph:
    """One of the two fixed base graphs, with deterministic vertex order."""

    kind: str
    graph: LabeledGraph

    @cached_property
    def label_to_vertex(self) -> dict[int, int]:
        return {lab: v for v, lab in enumerate(self.graph.labels)}

    @cached_property
    def spanning_tree_edges(self) -> tuple[int, ...]:
        """Edge ids of the BFS tree rooted at the 0-labelled vertex."""
        root = self.label_to_vertex[0]
        parent_edge = {}
        seen = {root}
        q = deque([root])
        while q:
            u = q.popleft()
            for eid in self.graph.incident_edges[u]:
                a, b = self.graph.edges[eid]
                v = b if a == u else a
                if v not in seen:
                    seen.add(v)
                    parent_edge[v] = eid
                    q.append(v)
        return tuple(sorted(parent_edge.values()))

    @cached_property
    def cotree_edges(self) -> tuple[int, ...]:
        tree = set(self.spanning_tree_edges)
        return tuple(i for i in range(self.graph.m) if i not in tree)

    @cached_property
    def triangles(self) -> tuple[tuple[int, int, int], ...]:
        """All triangles of the base, as sorted label triples."""
        g = self.graph
        out = []
        for a, b, c in itertools.combinations(range(g.n), 3):
            if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
                out.append(tuple(sorted((g.labels[a], g.labels[b], g.labels[c]))))
        return tuple(sorted(out))

    @cached_property
    def octahedral_triangles(self) -> tuple[tuple[int, int, int], ...]:
        """Triangles avoiding the apex label 0 (one vertex per +-i pair)."""
        return tuple(t for t in self.triangles if 0 not in t)


def make_base(kind: str) -> BaseGraph:
    """The canonical base graph of the given kind ('k1222' or 'k4')."""
    if kind not in _BASE_LABELS:
        raise GraphError(f"unknown base kind {kind!r}")
    labels = _BASE_LABELS[kind]
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(len(labels)), 2)
        if labels_adjacent(labels[u], labels[v])
    ]
    return BaseGraph(kind, LabeledGraph(labels, tuple(edges)))


def base_triangle(base: BaseGraph, labels) -> tuple[int, int, int]:
    """Validate a label triple as a triangle of the base and normalize it."""
    t = tuple(sorted(labels))
    if len(set(t)) != 3 or t not in base.triangles:
        raise GraphError(f"{labels!r} is not a triangle of base {base.kind!r}")
    return t


# ---------------------------------------------------------------------------
# Lifts of base cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleComponent:
    """One connected component of the lift of a base triangle."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    kind: str  # "cycle" or "path"

    @property
    def length(self) -> int:
        return len(self.edges)


def find_cycles_covering(g: LabeledGraph, base_cycle, base: BaseGraph | None = None) -> list[CycleComponent]:
    """Components of the subgraph lying over a base triangle.

    Keeps the edges whose endpoint label pair is an edge of the given
    triangle; each component is classified as a cycle or a path.  On a
    genuine cover all components are cycles of length divisible by 3.
    """
    base = base or make_base(K1222)
    t = base_triangle(base, base_cycle)
    pairs = {frozenset(p) for p in itertools.combinations(t, 2)}
    sub_edges = [
        (u, v) for u, v in g.edges if frozenset((g.labels[u], g.labels[v])) in pairs
    ]
    adj: dict[int, list[int]] = {}
    for u, v in sub_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        seen |= comp
        edges = tuple(e for e in sub_edges if e[0] in comp)
        kind = "cycle" if all(len(adj[v]) == 2 for v in comp) and len(edges) == len(comp) else "path"
        comps.append(CycleComponent(tuple(sorted(comp)), edges, kind))
    return comps


# ---------------------------------------------------------------------------
# Canonical forms (label-preserving isomorphism)
# ---------------------------------------------------------------------------


def _multi_adj(g: LabeledGraph) -> list[dict[int, int]]:
    adj: list[dict[int, int]] = [dict() for _ in range(g.n)]
    for u, v in g.edges:
        adj[u][v] = adj[u].get(v, 0) + 1
        adj[v][u] = adj[v].get(u, 0) + 1
    return adj


def _refine(colors: list[int], adj: list[dict[int, int]]) -> list[int]:
    n = len(colors)
    while True:
        sig = [
            (colors[v], tuple(sorted((colors[u], m) for u, m in adj[v].items())))
            for v in range(n)
        ]
        order = sorted(range(n), key=lambda v: sig[v])
        new = [0] * n
        c = 0
        for i, v in enumerate(order):
            if i and sig[v] != sig[order[i - 1]]:
                c += 1
            new[v] = c
        if new == colors:
            return colors
        colors = new


def _certificate(g: LabeledGraph, colors: list[int]) -> bytes:
    order = sorted(range(g.n), key=lambda v: colors[v])
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    labels = tuple(g.labels[v] for v in order)
    edges = sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges)
    return repr((g.n, labels, edges)).encode()


def canonical_form(g: LabeledGraph) -> bytes:
    """Canonical byte string: equal iff label-preserving isomorphic.

    Iterated label/degree refinement with full backtracking on the first
    non-singleton cell.  Exponential in the worst case, which is fine at
    the sizes this package handles (a few dozen vertices).
    """
    if g.n == 0:
        return b"empty"
    adj = _multi_adj(g)
    label_rank = {lab: i for i, lab in enumerate(sorted(set(g.labels)))}
    init = _refine([label_rank[l] for l in g.labels], adj)
    best: bytes | None = None

    def search(colors: list[int]) -> None:
        nonlocal best
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            groups.setdefault(c, []).append(v)
        target = None
        for c in sorted(groups):
            if len(groups[c]) > 1:
                target = groups[c]
                break
        if target is None:
            cert = _certificate(g, colors)
            if best is None or cert < best:
                best = cert
            return
        for v in target:
            branched = [c + (0 if c < colors[v] else 1) for c in colors]
            branched[v] = colors[v]
            search(_refine(branched, adj))

    search(init)
    assert best is not None
    return best


def isomorphic(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    """Explicit label-preserving isomorphism search (backtracking).

    Independent of canonical_form; used to sanity-check it on small graphs.
    """
    if g1.n != g2.n or g1.m != g2.m or Counter(g1.labels) != Counter(g2.labels):
        return False
    a1, a2 = _multi_adj(g1), _multi_adj(g2)
    deg1 = [sum(a1[v].values()) for v in range(g1.n)]
    deg2 = [sum(a2[v].values()) for v in range(g2.n)]
    order = sorted(range(g1.n), key=lambda v: (-deg1[v], g1.labels[v]))
    image: list[int | None] = [None] * g1.n
    used = [False] * g2.n

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        placed = [u for u in order[:i]]
        for w in range(g2.n):
            if used[w] or g2.labels[w] != g1.labels[v] or deg2[w] != deg1[v]:
                continue
            if all(a1[v].get(u, 0) == a2[w].get(image[u], 0) for u in placed):
                image[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                image[v] = None
                used[w] = False
        return False

    return extend(0)
