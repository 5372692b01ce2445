"""Structural analysis of embedded K4-cover fragments.

Inside a putative planar cover of K(1,2,2,2), each long octahedral cycle
bounds a domain containing a semi-cover G' whose K4-labelled part H is a
3-regular cover of K4.  This module detects the combinatorial gadgets of
that situation (beads, strings, necklaces, trapezia), checks the
admissibility conditions every such fragment must satisfy, evaluates the
exclusion predicates that rule whole shapes out, and contracts admissible
fragments to their cubic bipartite quotients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .covers import SemiCover, label_projection, verify_cover
from .embedding import (
    PlaneEmbedding,
    all_triangles,
    trace_faces,
    triangle_faces,
)
from .graphs import (
    K4_LABELS,
    K4NEG,
    GraphError,
    LabeledGraph,
    canonical_form,
    connectivity,
    find_cycles_covering,
    is_connected,
    make_base,
)

_K4_LABEL_SET = frozenset(K4_LABELS)
_NEG_SET = frozenset((-1, -2, -3))
_POS_SET = frozenset((1, 2, 3))


class StructureError(ValueError):
    """Input outside an operation's domain."""


class QuotientError(StructureError):
    """The fragment cannot be contracted to a quotient graph."""


# ---------------------------------------------------------------------------
# Face label patterns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternResult:
    """Outcome of matching a face walk against the admissible label order.

    Non-triangular faces of a K4-cover fragment must read
    0, a1, b1, 0, a2, b2, ... with a_i, b_i in {-1, -2, -3}; triangles are
    reported as such, and anything else carries the first bad position.
    """

    kind: str  # "triangle", "pattern", or "mismatch"
    m: int = 0
    pairs: tuple[tuple[int, int], ...] = ()
    position: int | None = None


def face_label_pattern(face_labels) -> PatternResult:
    """Match a cyclic label sequence against the 0,a,b repetition."""
    labs = tuple(face_labels)
    if not set(labs) <= _K4_LABEL_SET:
        bad = next(l for l in labs if l not in _K4_LABEL_SET)
        raise StructureError(f"face label {bad!r} outside the K4 alphabet")
    k = len(labs)
    if k == 3:
        return PatternResult("triangle")
    zeros = [i for i, l in enumerate(labs) if l == 0]
    if not zeros or k % 3 != 0:
        return PatternResult("mismatch", position=zeros[0] if zeros else 0)
    start = zeros[0]
    for off in range(0, k, 3):
        i = (start + off) % k
        if labs[i] != 0:
            return PatternResult("mismatch", position=i)
        if labs[(i + 1) % k] == 0:
            return PatternResult("mismatch", position=(i + 1) % k)
        if labs[(i + 2) % k] == 0:
            return PatternResult("mismatch", position=(i + 2) % k)
    if len(zeros) != k // 3:
        return PatternResult("mismatch", position=zeros[1])
    pairs = tuple(
        (labs[(start + off + 1) % k], labs[(start + off + 2) % k]) for off in range(0, k, 3)
    )
    return PatternResult("pattern", m=k // 3, pairs=pairs)


# ---------------------------------------------------------------------------
# Beads, strings, necklaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bead:
    """K4 minus the (0, -k) edge: a 4-vertex block of a string."""

    zero: int
    inner: tuple[int, int]
    kvert: int
    type_label: int  # the label of kvert (-1, -2 or -3)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset((self.zero, self.kvert) + self.inner)


@dataclass(frozen=True)
class StringDesc:
    """Maximal chain of beads plus its two terminal edges.

    Beads are listed from the black end (the external -k vertex the first
    bead's zero attaches to) to the white end (the external 0 the last
    bead's -k vertex attaches to); all beads share the type label.
    """

    beads: tuple[Bead, ...]
    type_label: int
    neg_terminal: tuple[int, int]  # (first bead zero, external -k vertex)
    zero_terminal: tuple[int, int]  # (last bead kvert, external 0 vertex)
    maximal: bool = True

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        out = set()
        for b in self.beads:
            out |= b.vertices
        out.add(self.neg_terminal[1])
        out.add(self.zero_terminal[1])
        return frozenset(out)

    def path_from_zero_end(self) -> tuple[int, ...]:
        """Spine of the string from its 0-terminal up to its -k-terminal,
        omitting the inner vertices (both lie off the spine)."""
        out = [self.zero_terminal[1]]
        for b in reversed(self.beads):
            out.extend((b.kvert, b.zero))
        out.append(self.neg_terminal[1])
        return tuple(out)


def find_beads(g: LabeledGraph) -> list[Bead]:
    """All bead subgraphs of a K4-cover fragment (graph-level)."""
    beads = []
    for x, y in g.edges:
        lx, ly = g.labels[x], g.labels[y]
        if lx not in _NEG_SET or ly not in _NEG_SET:
            continue
        nx_, ny_ = set(g.adj[x]), set(g.adj[y])
        common = sorted(nx_ & ny_)
        zeros = [v for v in common if g.labels[v] == 0]
        negs = [v for v in common if g.labels[v] in _NEG_SET]
        for z in zeros:
            for k in negs:
                if not g.has_edge(z, k):
                    if set(g.adj[x]) <= {y, z, k} and set(g.adj[y]) <= {x, z, k}:
                        beads.append(Bead(z, (x, y), k, g.labels[k]))
    return sorted(beads, key=lambda b: (b.zero, b.inner))


def detect_beads(emb: PlaneEmbedding) -> list[Bead]:
    """Beads of an embedded fragment.

    Also checks that the two inner vertices of every bead lie on two
    distinct non-triangular faces of the embedding.
    """
    beads = find_beads(emb.graph)
    nontri = [f for f in emb.faces if f.length > 3]
    for b in beads:
        homes = []
        for v in b.inner:
            on = [i for i, f in enumerate(nontri) if v in f.vertex_set]
            if len(on) != 1:
                raise StructureError(
                    f"bead inner vertex {v} lies on {len(on)} non-triangular faces"
                )
            homes.append(on[0])
        if homes[0] == homes[1]:
            raise StructureError(
                f"both inner vertices of bead at zero {b.zero} lie on one face"
            )
    return beads


def _chain_maps(g: LabeledGraph, beads: list[Bead]):
    by_zero = {b.zero: b for b in beads}
    by_k = {b.kvert: b for b in beads}
    in_bead: dict[int, Bead] = {}
    for b in beads:
        for v in b.vertices:
            in_bead[v] = b
    return by_zero, by_k, in_bead


def _external_neighbor(g: LabeledGraph, bead: Bead, v: int) -> int:
    outside = [u for u in g.adj[v] if u not in bead.vertices]
    if len(outside) != 1:
        raise StructureError(f"bead corner {v} has {len(outside)} external edges")
    return outside[0]


def detect_strings(emb: PlaneEmbedding) -> list[StringDesc]:
    """Maximal strings of an embedded fragment (empty for a necklace)."""
    g = emb.graph
    beads = find_beads(g)
    by_zero, by_k, _ = _chain_maps(g, beads)
    strings = []
    for b in beads:
        prev = _external_neighbor(g, b, b.zero)
        if prev in by_k:
            continue  # not the first bead of a chain
        chain = [b]
        cur = b
        while True:
            nxt = _external_neighbor(g, cur, cur.kvert)
            if nxt in by_zero:
                cur = by_zero[nxt]
                chain.append(cur)
            else:
                break
        strings.append(
            StringDesc(
                beads=tuple(chain),
                type_label=b.type_label,
                neg_terminal=(chain[0].zero, prev),
                zero_terminal=(chain[-1].kvert, nxt),
            )
        )
    return sorted(strings, key=lambda s: s.beads[0].zero)


def is_necklace(emb: PlaneEmbedding) -> bool:
    """True iff the whole fragment is one cyclic chain of beads."""
    g = emb.graph
    beads = find_beads(g)
    if not beads:
        return False
    covered = set()
    for b in beads:
        covered |= b.vertices
    if covered != set(range(g.n)):
        return False
    by_zero, by_k, _ = _chain_maps(g, beads)
    start = beads[0]
    cur = start
    seen = 0
    while True:
        nxt = _external_neighbor(g, cur, cur.kvert)
        if nxt not in by_zero:
            return False
        cur = by_zero[nxt]
        seen += 1
        if cur is start:
            break
        if seen > len(beads):
            return False
    return seen == len(beads)


# ---------------------------------------------------------------------------
# Trapezia
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Trapezium:
    """A (1,2,3) triangle with -i and -k attached by four edges."""

    type_label: int  # j
    triangle: tuple[int, int, int]  # vertices labelled 1, 2, 3 in order
    neg_i: int
    neg_k: int
    i_label: int
    k_label: int


def positive_triangles(g: LabeledGraph) -> list[tuple[int, int, int]]:
    """Vertex-disjoint (1,2,3) triangles, as (v1, v2, v3) by label."""
    out = []
    for t in all_triangles(g):
        labs = tuple(g.labels[v] for v in t)
        if set(labs) == _POS_SET:
            ordered = tuple(v for _, v in sorted(zip(labs, t)))
            out.append(ordered)
    return sorted(out)


def detect_trapezia(sc: SemiCover) -> list[Trapezium]:
    """All trapezium subgraphs (any type) in a semi-cover."""
    g = sc.graph
    out = []
    for v1, v2, v3 in positive_triangles(g):
        by_label = {1: v1, 2: v2, 3: v3}
        for j in (1, 2, 3):
            i, k = sorted(_POS_SET - {j})
            vi, vj, vk = by_label[i], by_label[j], by_label[k]
            negk = [
                v
                for v in g.adj[vj]
                if g.labels[v] == -k and g.has_edge(v, vi)
            ]
            negi = [
                v
                for v in g.adj[vj]
                if g.labels[v] == -i and g.has_edge(v, vk)
            ]
            for x in negk:
                for y in negi:
                    out.append(Trapezium(j, (v1, v2, v3), y, x, i, k))
    return sorted(out, key=lambda t: (t.triangle, t.type_label))


# ---------------------------------------------------------------------------
# Face refinement: faces of the ambient graph grouped by fragment face
# ---------------------------------------------------------------------------


@dataclass
class FaceRefinement:
    """How the ambient embedding's faces subdivide the fragment's faces."""

    h_vertices: tuple[int, ...]
    h_embedding: PlaneEmbedding
    h_vmap: dict[int, int]  # ambient vertex id -> fragment vertex id
    h_outer: int  # fragment face id containing the ambient outer face
    group_of_ambient_face: tuple[int, ...]  # ambient face id -> fragment face id
    triangles_in_face: dict[int, tuple[tuple[int, int, int], ...]]  # fragment face -> (1,2,3) triangles


def refine_faces(sc: SemiCover) -> FaceRefinement:
    """Group the semi-cover's faces into faces of its K4-labelled part."""
    emb = sc.embedding
    g = emb.graph
    if not is_connected(g):
        raise StructureError("semi-cover graph must be connected")
    h_vertices = tuple(v for v in range(g.n) if g.labels[v] in _K4_LABEL_SET)
    if not h_vertices:
        raise StructureError("no K4-labelled vertices present")
    h_emb, vmap, emap = emb.restrict(h_vertices)
    h_edge_ids = set(emap)

    # Union-find over ambient faces: faces sharing a non-fragment edge lie
    # in the same fragment face region.
    nf = len(emb.faces)
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    dart_face = emb.dart_face
    for eid in range(g.m):
        if eid not in h_edge_ids:
            union(dart_face[2 * eid], dart_face[2 * eid + 1])

    # Identify each region with the fragment face holding its darts.
    h_dart_face = h_emb.dart_face
    region_to_hface: dict[int, int] = {}
    for eid, sub_eid in emap.items():
        for side in (0, 1):
            amb = find(dart_face[2 * eid + side])
            hf = h_dart_face[2 * sub_eid + side]
            prev = region_to_hface.setdefault(amb, hf)
            if prev != hf:
                raise StructureError("ambient faces do not refine the fragment faces")
    group = []
    for i in range(nf):
        r = find(i)
        if r not in region_to_hface:
            raise StructureError("a face region touches no fragment edge")
        group.append(region_to_hface[r])

    tri_in_face: dict[int, list] = {}
    for tri in positive_triangles(g):
        faces_touching = {
            group[i]
            for i, f in enumerate(emb.faces)
            if set(tri) & set(f.vertices)
        }
        if len(faces_touching) != 1:
            raise StructureError(f"triangle {tri} spans multiple fragment faces")
        tri_in_face.setdefault(faces_touching.pop(), []).append(tri)

    h_outer = group[emb.outer_face]
    h_emb = PlaneEmbedding(h_emb.graph, h_emb.rotation, h_outer)
    return FaceRefinement(
        h_vertices=h_vertices,
        h_embedding=h_emb,
        h_vmap=vmap,
        h_outer=h_outer,
        group_of_ambient_face=tuple(group),
        triangles_in_face={k: tuple(v) for k, v in tri_in_face.items()},
    )


# ---------------------------------------------------------------------------
# Triangles supported on a string
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SupportedTriangle:
    """One (1,2,3) triangle in a face, with its attachment data."""

    triangle: tuple[int, int, int]
    attachments: tuple[int, ...]  # attachment vertices, ambient ids
    on_string: bool  # every attachment lies on the string
    span: tuple[int, int] | None  # (bottom, top) positions along the string
    bottom_label: int | None
    top_label: int | None
    minimal: bool
    configuration: int | None  # 1..3 for minimal supported triangles


@dataclass(frozen=True)
class SupportReport:
    string_positions: tuple[int, ...]  # spine vertices, bottom (0 end) first
    triangles: tuple[SupportedTriangle, ...]


def triangles_supported_on_string(
    sc: SemiCover, string: StringDesc, face_id: int, refinement: FaceRefinement | None = None
) -> SupportReport:
    """Attachment analysis for the (1,2,3) triangles inside one face.

    Positions along the string run upward from the 0-terminal to the
    -k-terminal; a triangle is supported when all its attachment vertices
    lie on the string, and supported triangles are ordered by attachment
    interval nesting, with minimal ones classified into the three possible
    local configurations.
    """
    g = sc.graph
    ref = refinement or refine_faces(sc)
    h_to_ambient = {sub: amb for amb, sub in ref.h_vmap.items()}

    spine_sub = string.path_from_zero_end()
    # The string description lives on the fragment; translate to ambient ids
    # when it was built from the fragment embedding.
    if all(v in h_to_ambient for v in spine_sub):
        spine = tuple(h_to_ambient[v] for v in spine_sub)
        string_vertices = {h_to_ambient[v] for v in string.vertex_set}
        inner_pairs = [tuple(h_to_ambient[x] for x in b.inner) for b in string.beads]
    else:
        spine = spine_sub
        string_vertices = set(string.vertex_set)
        inner_pairs = [b.inner for b in string.beads]

    face_walk = ref.h_embedding.faces[face_id]
    face_vs_ambient = {h_to_ambient[v] for v in face_walk.vertex_set}
    if not face_vs_ambient & string_vertices:
        raise StructureError("the string does not bound the given face")

    # Insert the face-side inner vertex of each bead into the spine order;
    # walking up from the 0-terminal each bead reads kvert, inner, zero.
    positions: list[int] = []
    for idx, v in enumerate(spine):
        positions.append(v)
        if idx % 2 == 1 and (idx - 1) // 2 < len(inner_pairs):
            pair = inner_pairs[len(inner_pairs) - 1 - (idx - 1) // 2]
            face_side = [x for x in pair if x in face_vs_ambient]
            if len(face_side) == 1:
                positions.append(face_side[0])
    pos_index = {v: i for i, v in enumerate(positions)}

    tris = ref.triangles_in_face.get(face_id, ())
    entries = []
    spans = {}
    for tri in tris:
        tri_set = set(tri)
        attach = sorted({u for v in tri for u in g.adj[v] if u not in tri_set})
        on_string = bool(attach) and all(u in string_vertices for u in attach)
        here = sorted(pos_index[u] for u in attach if u in pos_index)
        span = (here[0], here[-1]) if here else None
        spans[tri] = (span, on_string)
        entries.append((tri, attach, on_string, span))

    inner_set = {x for pair in inner_pairs for x in pair}
    out = []
    for tri, attach, on_string, span in entries:
        minimal = False
        config = None
        if on_string and span is not None:
            minimal = not any(
                other != tri
                and sp is not None
                and o_on
                and span[0] <= sp[0]
                and sp[1] <= span[1]
                and sp != span
                for other, (sp, o_on) in spans.items()
            )
            if minimal:
                config = _classify_configuration(g, tri, pos_index, inner_set)
        out.append(
            SupportedTriangle(
                triangle=tri,
                attachments=tuple(attach),
                on_string=on_string,
                span=span,
                bottom_label=g.labels[min((u for u in attach if u in pos_index), key=lambda u: pos_index[u])] if any(u in pos_index for u in attach) else None,
                top_label=g.labels[max((u for u in attach if u in pos_index), key=lambda u: pos_index[u])] if any(u in pos_index for u in attach) else None,
                minimal=minimal,
                configuration=config,
            )
        )
    return SupportReport(tuple(positions), tuple(out))


def _classify_configuration(g, tri, pos_index, inner_set) -> int | None:
    """Which of the three minimal-triangle pictures is present.

    The two inner vertices served by the triangle sit on consecutive
    beads; the free choices are whether the lower triangle vertex takes
    its -k attachment from above or below, and whether the upper one takes
    its 0 attachment from above or below.
    """
    inner_attach: dict[int, set[int]] = {}
    for v in tri:
        for u in g.adj[v]:
            if u in pos_index and u in inner_set:
                inner_attach.setdefault(u, set()).add(v)
    served = [u for u, vs in inner_attach.items() if len(vs) == 2]
    if len(served) != 2:
        return None
    served.sort(key=lambda u: pos_index[u])
    low, up = served
    kv = next(iter(inner_attach[low] & inner_attach[up]), None)
    if kv is None:
        return None
    jv = (inner_attach[up] - {kv}).pop()
    iv = (inner_attach[low] - {kv}).pop()
    i_negk = [
        u
        for u in g.adj[iv]
        if u in pos_index and g.labels[u] in _NEG_SET and u not in served
    ]
    j_zero = [u for u in g.adj[jv] if u in pos_index and g.labels[u] == 0]
    if len(i_negk) != 1 or len(j_zero) != 1:
        return None
    ik_above = pos_index[i_negk[0]] > pos_index[up]
    j0_above = pos_index[j_zero[0]] > pos_index[up]
    if j0_above and ik_above:
        return 1
    if j0_above and not ik_above:
        return 2
    if not j0_above and not ik_above:
        return 3
    return None


# ---------------------------------------------------------------------------
# Admissibility conditions
# ---------------------------------------------------------------------------

#: Conditions an embedded fragment must satisfy inside a genuine minimal
#: cover.  Keys are stable identifiers used in reports and certificates.
CONDITION_KEYS = (
    "lift_cover",            # (a) connected genuine K4-cover, boundary a cycle of it
    "triangles_facial",      # (b) every 3-cycle of the semi-cover bounds a face
    "short_octahedral_facial",  # (c) cyclic octahedral lifts are triangular faces
    "paths_reach_boundary",  # (d) path lifts end on the boundary; (1,2,3)/(-1,-2,-3) lifts are triangles
    "not_k4",                # (e)
    "positive_triangle",     # (f) at least one (1,2,3) triangle present
    "two_connected",         # (g)
    "face_patterns",         # (h) non-triangular faces read 0,a,b,0,a,b,...
    "no_internal_hexagon",   # (i)
    "triangle_capacity",     # (j) a 3m-gonal face holds t < 2m/3 triangles
)

#: Conditions that need interior data of the ambient semi-cover and are
#: therefore skipped when analyzing a bare fragment.
INTERIOR_CONDITION_KEYS = (
    "triangles_facial",
    "short_octahedral_facial",
    "paths_reach_boundary",
    "positive_triangle",
    "triangle_capacity",
)


@dataclass(frozen=True)
class FaceRecord:
    face_id: int
    length: int
    labels: tuple[int, ...]
    internal: bool
    pattern: PatternResult
    triangles: int  # (1,2,3) triangles inside the face region
    beads: tuple[int, ...]  # indices into the bead list, by inner vertex


@dataclass(frozen=True)
class StructureReport:
    """Everything the exclusion predicates need about one fragment."""

    faces: tuple[FaceRecord, ...]
    beads: tuple[Bead, ...]
    strings: tuple[StringDesc, ...]
    necklace: bool  # graph-level: the fragment is one cyclic bead chain
    bead_faces: tuple[tuple[int, int], ...]  # per bead: its two host faces
    conditions: dict
    h_outer: int

    @property
    def internal_nontriangular(self) -> tuple[FaceRecord, ...]:
        return tuple(f for f in self.faces if f.internal and f.length > 3)

    def passed(self, skip=()) -> bool:
        return all(v for k, v in self.conditions.items() if v is not None and k not in skip)


def _bead_hosts(h_emb: PlaneEmbedding, beads) -> list[tuple[int, int]]:
    """For each bead, the two faces its inner vertices lie on."""
    hosts = []
    nontri = [(i, f) for i, f in enumerate(h_emb.faces) if f.length > 3]
    for b in beads:
        homes = []
        for v in b.inner:
            on = [i for i, f in nontri if v in f.vertex_set]
            if len(on) != 1:
                raise StructureError(f"bead inner vertex {v} on {len(on)} non-triangular faces")
            homes.append(on[0])
        hosts.append(tuple(sorted(homes)))
    return hosts


def admissibility_report(
    sc: SemiCover,
    fragment: LabeledGraph | None = None,
    patterns_internal_only: bool = False,
) -> StructureReport:
    """Evaluate the admissibility conditions of a semi-cover's fragment.

    The fragment is the subgraph on K4-labelled vertices; passing one in
    explicitly only asserts it matches.  Conditions needing interior data
    are still evaluated here (the semi-cover carries its interior); the
    search module skips them when no interior is available.
    """
    emb = sc.embedding
    g = emb.graph
    ref = refine_faces(sc)
    h_emb = ref.h_embedding
    h = h_emb.graph
    if fragment is not None and canonical_form(fragment) != canonical_form(h):
        raise StructureError("supplied fragment is not the lift of the K4 subgraph")

    k4 = make_base(K4NEG)
    conditions: dict = {}

    # (a) connected genuine cover of K4; ambient boundary is a cycle of it.
    outer_walk = emb.outer
    boundary_in_h = all(g.labels[v] in _K4_LABEL_SET for v in outer_walk.vertices)
    verdict_a = is_connected(h)
    if verdict_a:
        try:
            verdict_a = verify_cover(h, k4, label_projection(h, k4).vertex_map).ok
        except Exception:
            verdict_a = False
    conditions["lift_cover"] = verdict_a and boundary_in_h and outer_walk.is_simple_cycle()

    # (b) all 3-cycles of the ambient graph are facial.
    facial = triangle_faces(emb)
    conditions["triangles_facial"] = all(
        frozenset(t) in facial for t in all_triangles(g)
    )

    # (c)/(d) lifts of octahedral triangles.
    k1222 = make_base("k1222")
    boundary = emb.outer.vertex_set
    short_ok = True
    paths_ok = True
    for t in k1222.octahedral_triangles:
        if not set(t) & set(g.labels):
            continue
        for comp in find_cycles_covering(g, t, k1222):
            if comp.kind == "cycle":
                if comp.length != 3 or frozenset(comp.vertices) not in facial:
                    short_ok = False
            else:
                ends = [v for v in comp.vertices if sum(1 for e in comp.edges if v in e) == 1]
                if not all(v in boundary for v in ends):
                    paths_ok = False
                if set(t) in ({1, 2, 3}, {-1, -2, -3}):
                    paths_ok = False
    conditions["short_octahedral_facial"] = short_ok
    conditions["paths_reach_boundary"] = paths_ok

    # (e), (f), (g)
    conditions["not_k4"] = not (h.n == 4 and h.m == 6)
    conditions["positive_triangle"] = bool(positive_triangles(g))
    conditions["two_connected"] = h.n >= 4 and connectivity(h) >= 2

    # Face-level records on the fragment embedding.
    beads = find_beads(h)
    bead_hosts = _bead_hosts(h_emb, beads)
    face_records = []
    patterns_ok = True
    hexagon_ok = True
    capacity_ok = True
    for i, f in enumerate(h_emb.faces):
        internal = i != ref.h_outer
        pattern = face_label_pattern(f.labels)
        tris = len(ref.triangles_in_face.get(i, ()))
        if f.length > 3:
            if (internal or not patterns_internal_only) and pattern.kind != "pattern":
                patterns_ok = False
        if internal and f.length == 6:
            hexagon_ok = False
        if internal and f.length > 3 and f.length % 3 == 0:
            if 3 * tris >= 2 * (f.length // 3):
                capacity_ok = False
        face_records.append(
            FaceRecord(
                face_id=i,
                length=f.length,
                labels=f.labels,
                internal=internal,
                pattern=pattern,
                triangles=tris,
                beads=tuple(j for j, hosts in enumerate(bead_hosts) if i in hosts),
            )
        )
    conditions["face_patterns"] = patterns_ok
    conditions["no_internal_hexagon"] = hexagon_ok
    conditions["triangle_capacity"] = capacity_ok

    strings = detect_strings(h_emb)
    return StructureReport(
        faces=tuple(face_records),
        beads=tuple(beads),
        strings=tuple(strings),
        necklace=is_necklace(h_emb),
        bead_faces=tuple(bead_hosts),
        conditions=conditions,
        h_outer=ref.h_outer,
    )


# ---------------------------------------------------------------------------
# Exclusion predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExclusionVerdict:
    necklace: bool
    two_internal_faces: bool
    bead_sharing: tuple[tuple[int, int, int, int], ...]  # (face, face, m, shared)
    excluded: bool

    def reasons(self) -> tuple[str, ...]:
        out = []
        if self.necklace:
            out.append("necklace")
        if self.two_internal_faces:
            out.append("two_internal_faces")
        if self.bead_sharing:
            out.append("bead_sharing")
        return tuple(out)


def check_exclusions(report: StructureReport) -> ExclusionVerdict:
    """Shape-level exclusions on an admissible fragment.

    A fragment with exactly one internal non-triangular face is a
    necklace shape; with exactly two it is the double-face shape; and two
    internal faces of length at most 3m (m >= 3) may not share m-2 or
    more beads.  Any hit disqualifies the fragment.
    """
    internal = report.internal_nontriangular
    necklace = len(internal) == 1
    two_faces = len(internal) == 2

    shared_fired = []
    for fa, fb in itertools.combinations(internal, 2):
        shared = sum(
            1
            for hosts in report.bead_faces
            if set(hosts) == {fa.face_id, fb.face_id}
        )
        la = -(-fa.length // 3)
        lb = -(-fb.length // 3)
        m = max(la, lb, 3)
        if shared >= m - 2:
            shared_fired.append((fa.face_id, fb.face_id, m, shared))
    return ExclusionVerdict(
        necklace=necklace,
        two_internal_faces=two_faces,
        bead_sharing=tuple(shared_fired),
        excluded=necklace or two_faces or bool(shared_fired),
    )


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientGraph:
    """Cubic bipartite plane multigraph with bead counts on edges.

    Vertices 0..a-1 are the surviving 0-vertices (white); a..2a-1 are the
    contracted (-1,-2,-3) triangles (black).  Each edge remembers how many
    beads its string carried.
    """

    a: int
    edges: tuple[tuple[int, int, int], ...]  # (white, black, beads)
    rotation: tuple[tuple[int, ...], ...]
    outer_face: int
    white_vertices: tuple[int, ...] = ()  # provenance in the fragment, if any
    black_triangles: tuple[tuple[int, int, int], ...] = ()

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        simple_edges = tuple((u, v) for u, v, _ in self.edges)
        faces = trace_faces(2 * self.a, simple_edges, self.rotation)
        if 2 * self.a - len(simple_edges) + len(faces) != 2:
            raise QuotientError("quotient rotation is not spherical")
        return tuple(faces)

    @cached_property
    def face_edge_sides(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids bounding each face, one entry per side."""
        return tuple(tuple(d // 2 for d in f) for f in self.faces)

    @cached_property
    def census(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.faces:
            out[len(f)] = out.get(len(f), 0) + 1
        return dict(sorted(out.items()))

    @property
    def total_beads(self) -> int:
        return sum(b for _, _, b in self.edges)

    def counts(self) -> tuple[int, int, int]:
        """(vertices, edges, faces) -- always (2a, 3a, a+2)."""
        return 2 * self.a, len(self.edges), len(self.faces)

    def canonical_key(self) -> bytes:
        """Isomorphism key ignoring bead counts (brute force, a <= 4)."""
        best = None
        mat = [[0] * self.a for _ in range(self.a)]
        for u, v, _ in self.edges:
            mat[u][v - self.a] += 1
        for pw in itertools.permutations(range(self.a)):
            for pb in itertools.permutations(range(self.a)):
                key = tuple(
                    tuple(mat[pw[i]][pb[j]] for j in range(self.a)) for i in range(self.a)
                )
                if best is None or key < best:
                    best = key
        return repr(best).encode()


@dataclass(frozen=True)
class QuotientSkeleton:
    """Graph-level quotient of a fragment: no embedding involved yet."""

    a: int
    edges: tuple[tuple[int, int, int], ...]  # (white idx, black idx, beads)
    whites: tuple[int, ...]
    black_triangles: tuple[tuple[int, int, int], ...]
    white_neighbor: tuple[int, ...]  # per edge: the white end's fragment neighbor
    black_corner: tuple[int, ...]  # per edge: the triangle corner it reaches


def quotient_skeleton(h: LabeledGraph) -> QuotientSkeleton:
    """Contract (-1,-2,-3) triangles and replace bead strings by edges.

    Requires every (-1,-2,-3) lift component to be a triangle and at
    least one surviving 0-vertex and one non-bead triangle (a closed bead
    chain has neither and is rejected).
    """
    k4 = make_base(K4NEG)
    for comp in find_cycles_covering(h, (-1, -2, -3), k4):
        if comp.kind != "cycle" or comp.length != 3:
            raise QuotientError("a (-1,-2,-3) lift component is not a triangle")
    beads = find_beads(h)
    by_zero, by_k, in_bead = _chain_maps(h, beads)
    bead_vertices = set(in_bead)

    whites = [v for v in range(h.n) if h.labels[v] == 0 and v not in bead_vertices]
    neg_tris = [
        t
        for t in all_triangles(h)
        if set(h.labels[v] for v in t) == _NEG_SET and not set(t) & bead_vertices
    ]
    if not whites or not neg_tris:
        raise QuotientError("degenerate quotient: the fragment is a closed bead chain")
    black_of: dict[int, int] = {}
    for bi, t in enumerate(neg_tris):
        for v in t:
            black_of[v] = bi
    a = len(whites)
    if len(neg_tris) != a:
        raise QuotientError(f"white/black mismatch: {a} zeros vs {len(neg_tris)} triangles")
    white_index = {v: i for i, v in enumerate(whites)}

    q_edges = []
    white_neighbor = []
    black_corner = []
    for z in whites:
        for w in h.adj[z]:
            count = 0
            cur = w
            prev = z
            while cur not in black_of:
                bead = by_k.get(cur)
                if bead is None or prev not in h.adj[cur]:
                    raise QuotientError(f"string tracing failed at vertex {cur}")
                count += 1
                nxt = _external_neighbor(h, bead, bead.zero)
                prev, cur = bead.zero, nxt
            q_edges.append((white_index[z], a + black_of[cur], count))
            white_neighbor.append(w)
            black_corner.append(cur)
    return QuotientSkeleton(
        a=a,
        edges=tuple(q_edges),
        whites=tuple(whites),
        black_triangles=tuple(neg_tris),
        white_neighbor=tuple(white_neighbor),
        black_corner=tuple(black_corner),
    )


def quotient_graph(h_emb: PlaneEmbedding) -> tuple[QuotientGraph, dict[int, int]]:
    """Quotient of an embedded fragment, with the inherited embedding.

    Beyond the skeleton requirements, every contracted triangle must be a
    face.  Returns the quotient and the map from fragment face ids to
    quotient face ids.
    """
    h = h_emb.graph
    sk = quotient_skeleton(h)
    a = sk.a
    whites, neg_tris, q_edges = sk.whites, sk.black_triangles, sk.edges
    white_index = {v: i for i, v in enumerate(whites)}
    beads = find_beads(h)

    facial = triangle_faces(h_emb)
    for t in neg_tris:
        if frozenset(t) not in facial:
            raise QuotientError(f"triangle {t} is not facial; cannot contract")

    edge_id_of = {e: i for i, e in enumerate(h.edges)}

    def dart(u, v):
        e = edge_id_of[(u, v) if u < v else (v, u)]
        return 2 * e if h.edges[e][0] == u else 2 * e + 1

    white_dart = [dart(sk.whites[u], w) for (u, _, _), w in zip(q_edges, sk.white_neighbor)]

    # Rotations: whites inherit the fragment order; blacks take their
    # corners' external edges in reverse facial order.
    qedge_of_white_dart = {d: qid for qid, d in enumerate(white_dart)}
    rotation: list[tuple[int, ...]] = [()] * (2 * a)
    for z in whites:
        order = []
        for eid in h_emb.rotation[z]:
            u, v = h.edges[eid]
            d = 2 * eid if u == z else 2 * eid + 1
            order.append(qedge_of_white_dart[d])
        rotation[white_index[z]] = tuple(order)
    corner_qedge = {corner: qid for qid, corner in enumerate(sk.black_corner)}
    for bi, t in enumerate(neg_tris):
        tri_face = next(f for f in h_emb.faces if f.length == 3 and f.vertex_set == frozenset(t))
        rotation[a + bi] = tuple(corner_qedge[v] for v in reversed(tri_face.vertices))

    q = QuotientGraph(
        a=a,
        edges=tuple(q_edges),
        rotation=tuple(rotation),
        outer_face=0,
        white_vertices=tuple(whites),
        black_triangles=tuple(neg_tris),
    )

    # Identify quotient faces with fragment faces through the white darts
    # and fix the outer face accordingly.
    q_simple_edges = tuple((u, v) for u, v, _ in q.edges)
    q_dart_face = {}
    for i, f in enumerate(q.faces):
        for d in f:
            q_dart_face[d] = i
    h_dart_face = h_emb.dart_face
    face_map: dict[int, int] = {}
    for qid, d in enumerate(white_dart):
        for flip in (0, 1):
            hf = h_dart_face[d ^ flip]
            qd = 2 * qid if flip == 0 else 2 * qid + 1
            qf = q_dart_face[qd]
            if face_map.setdefault(hf, qf) != qf:
                raise QuotientError("face correspondence is inconsistent")
    # Cross-check lengths: a fragment 3l-face with beta beads maps to a
    # quotient 2(l - beta)-face.
    bead_hosts = _bead_hosts(h_emb, beads)
    beads_on = {i: 0 for i in range(len(h_emb.faces))}
    for hosts in bead_hosts:
        for fid in set(hosts):
            beads_on[fid] += 1
    for hf, qf in face_map.items():
        L = h_emb.faces[hf].length
        if L % 3 or 2 * (L // 3 - beads_on[hf]) != len(q.faces[qf]):
            raise QuotientError("quotient face census does not match the fragment")
    if h_emb.outer_face not in face_map:
        raise QuotientError("outer face of the fragment vanished in the quotient")
    q = QuotientGraph(
        a=q.a,
        edges=q.edges,
        rotation=q.rotation,
        outer_face=face_map[h_emb.outer_face],
        white_vertices=q.white_vertices,
        black_triangles=q.black_triangles,
    )
    return q, face_map
