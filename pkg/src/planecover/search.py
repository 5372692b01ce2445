"""Exhaustive, certificate-producing searches.

Covers are enumerated through normalized voltage assignments (spanning
tree fixed to the identity); fixing the first cotree voltage to conjugacy
class representatives is sound because sheet relabeling acts by
simultaneous conjugation, and residual duplicates fall to canonical-form
dedup.  The K4-fragment search then applies, per candidate and per plane
embedding, every condition an admissible fragment must satisfy, plus the
shape exclusions and the bead-demand feasibility of its quotient.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, replace

import networkx as nx

from .covers import (
    VoltageAssignment,
    conjugacy_representatives,
    derive,
    normalized_assignment,
)
from .embedding import (
    PlaneEmbedding,
    all_triangles,
    is_planar,
    planarity,
    triangle_faces,
)
from .graphs import (
    K4NEG,
    BaseGraph,
    LabeledGraph,
    canonical_form,
    connectivity,
    find_cycles_covering,
    is_connected,
    make_base,
)
from .structure import (
    QuotientError,
    QuotientGraph,
    StructureError,
    _bead_hosts,
    face_label_pattern,
    find_beads,
    quotient_graph,
    quotient_skeleton,
)

FORMAT_VERSION = 1

COVER_FILTERS = ("connected", "planar", "admissible", "exclusions")

#: Admissibility conditions that need the interior of the ambient
#: semi-cover; the bare-fragment search skips them and says so.
SKIPPED_INTERIOR_CONDITIONS = (
    "triangles_facial",
    "short_octahedral_facial",
    "paths_reach_boundary",
    "positive_triangle",
    "triangle_capacity",
)

#: Extra fragment-level conditions the bare search applies beyond the
#: face-census exclusions.  Each is a restriction of an interior condition
#: to data visible on the fragment alone, so pruning by it is sound.
EXTRA_FRAGMENT_FILTERS = (
    "fragment_triangles_facial",   # 3-cycles of the fragment bound faces
    "negative_lift_triangular",    # (-1,-2,-3) lift splits into triangles
    "outer_face_nontriangular",    # the boundary cycle cannot be a triangle
)


class BudgetExceeded(RuntimeError):
    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpec:
    base: str
    n: int
    filters: tuple[str, ...] = ("connected", "planar")
    dedup: bool = True
    budget: int = 10**9

    def __post_init__(self):
        if self.n < 1:
            raise SearchError("fold must be at least 1")
        bad = [f for f in self.filters if f not in COVER_FILTERS]
        if bad:
            raise SearchError(f"unknown filters: {bad}")
        if set(self.filters) & {"admissible", "exclusions"} and self.base != K4NEG:
            raise SearchError("structural filters require the k4 base")

    def to_obj(self) -> dict:
        return {
            "mode": "covers",
            "base": self.base,
            "n": self.n,
            "filters": list(self.filters),
            "dedup": self.dedup,
            "budget": self.budget,
        }


def estimate_nodes(base: BaseGraph, n: int) -> int:
    """Pre-pruning size of the normalized voltage space."""
    import math

    return math.factorial(n) ** len(base.cotree_edges)


def _digest(cert_bytes: bytes) -> str:
    return hashlib.sha256(cert_bytes).hexdigest()[:16]


# ---------------------------------------------------------------------------
# Voltage scanning
# ---------------------------------------------------------------------------


def _derived_edges(base: BaseGraph, n: int, cotree_perms) -> list[tuple[int, int]]:
    g = base.graph
    cotree = set(base.cotree_edges)
    edges = []
    ci = 0
    for eid, (u, w) in enumerate(g.edges):
        if eid in cotree:
            s = cotree_perms[ci]
            ci += 1
            for i in range(n):
                edges.append((u * n + i, w * n + s[i]))
        else:
            for i in range(n):
                edges.append((u * n + i, w * n + i))
    return edges


def _sheets_transitive(perms, n: int) -> bool:
    if n == 1:
        return True
    orbit = 1  # bitmask over sheets
    stack = [0]
    seen = 1
    while stack:
        i = stack.pop()
        for p in perms:
            j = p[i]
            b = 1 << j
            if not seen & b:
                seen |= b
                stack.append(j)
            j = p.index(i)
            b = 1 << j
            if not seen & b:
                seen |= b
                stack.append(j)
    return seen == (1 << n) - 1


def _scan_chunk(base: BaseGraph, n: int, firsts, want_connected, want_planar):
    """Scan assignments with the given first-cotree voltages.

    Returns (visited, connected_count, planar_count, classes) where
    classes maps canonical form -> [min voltage witness, hit count].
    """
    perms = tuple(itertools.permutations(range(n)))
    cotree_count = len(base.cotree_edges)
    labels = tuple(
        base.graph.labels[b] for b in range(base.graph.n) for _ in range(n)
    )
    visited = 0
    connected_count = 0
    planar_count = 0
    classes: dict[bytes, list] = {}
    for first in firsts:
        for rest in itertools.product(perms, repeat=cotree_count - 1):
            volt = (first, *rest)
            visited += 1
            if want_connected and not _sheets_transitive(volt, n):
                continue
            connected_count += 1
            edges = _derived_edges(base, n, volt)
            if want_planar:
                G = nx.Graph(edges)
                ok, _ = nx.check_planarity(G, counterexample=False)
                if not ok:
                    continue
            planar_count += 1
            g = LabeledGraph(labels, tuple(edges))
            key = canonical_form(g)
            entry = classes.get(key)
            if entry is None:
                classes[key] = [volt, 1]
            else:
                entry[1] += 1
                if volt < entry[0]:
                    entry[0] = volt
    return visited, connected_count, planar_count, classes


def _merge_chunks(results):
    visited = connected = planar = 0
    classes: dict[bytes, list] = {}
    for v, c, p, cls in results:
        visited += v
        connected += c
        planar += p
        for key, (volt, count) in cls.items():
            entry = classes.get(key)
            if entry is None:
                classes[key] = [volt, count]
            else:
                entry[1] += count
                if volt < entry[0]:
                    entry[0] = volt
    return visited, connected, planar, classes


def _scan(base: BaseGraph, n: int, want_connected: bool, want_planar: bool, workers: int = 1):
    firsts = conjugacy_representatives(n)
    if workers <= 1 or len(firsts) == 1:
        return _scan_chunk(base, n, firsts, want_connected, want_planar)
    import multiprocessing as mp

    chunks = [[f] for f in firsts]
    with mp.Pool(min(workers, len(chunks))) as pool:
        results = pool.starmap(
            _scan_chunk,
            [(base, n, ch, want_connected, want_planar) for ch in chunks],
        )
    return _merge_chunks(results)


# ---------------------------------------------------------------------------
# Cover enumeration
# ---------------------------------------------------------------------------


def enumerate_covers(spec: SearchSpec, workers: int = 1) -> dict:
    """Enumerate normalized voltage assignments and filter.

    Returns the certificate as a plain JSON-ready dict; the "timing"
    entry is a sidecar excluded from byte-for-byte comparisons.
    """
    import time

    base = make_base(spec.base)
    estimate = estimate_nodes(base, spec.n)
    if estimate > spec.budget:
        raise BudgetExceeded(
            f"voltage space for base {spec.base!r} at fold {spec.n} has about "
            f"{estimate:.3g} assignments, beyond the budget {spec.budget:.3g}",
            estimate,
        )
    t0 = time.monotonic()
    want_connected = "connected" in spec.filters
    want_planar = "planar" in spec.filters
    visited, connected, planar, classes = _scan(base, spec.n, want_connected, want_planar, workers)

    structural = set(spec.filters) & {"admissible", "exclusions"}
    candidates = []
    survivors = []
    quotient_censuses = []
    for key in sorted(classes):
        volt, count = classes[key]
        entry = {
            "canonical": _digest(key),
            "assignments": count,
            "voltage": [list(p) for p in volt],
            "filters": {},
        }
        if want_connected:
            entry["filters"]["connected"] = True
        if want_planar:
            entry["filters"]["planar"] = True
        if structural:
            g, _ = derive(normalized_assignment(base, spec.n, volt))
            if "exclusions" in spec.filters:
                analysis = analyze_fragment_candidate(g)
            else:
                # admissibility without the shape exclusions: the quotient
                # route bakes the necklace and face-count exclusions into
                # its degenerate cases, so enumerate embeddings directly
                analysis = analyze_fragment_direct(g, apply_exclusions=False)
            entry["filters"].update(analysis["filters"])
            entry["excluded_by"] = analysis["excluded_by"]
            entry["embeddings"] = analysis["embeddings"]
            quotient_censuses.extend(analysis["quotient_censuses"])
            entry["survivor"] = analysis["survivor"]
        else:
            entry["survivor"] = True
        candidates.append(entry)
        if entry["survivor"]:
            survivors.append(entry)

    if not spec.dedup and not structural:
        # survivors are assignments, not classes
        survivor_count = sum(e["assignments"] for e in survivors)
    else:
        survivor_count = len(survivors)

    alarms = []
    if (
        spec.base == "k1222"
        and want_planar
        and want_connected
        and survivors
        and spec.n % 2 == 1
    ):
        alarms.append(
            "odd-fold connected planar cover of a non-planar base found; "
            "this contradicts the even-fold law and demands investigation"
        )

    cert = {
        "format_version": FORMAT_VERSION,
        "spec": spec.to_obj(),
        "visited": visited,
        "pre_prune_estimate": estimate,
        "connected": connected,
        "planar": planar,
        "classes": len(classes),
        "candidates": candidates,
        "survivors": [e["canonical"] for e in survivors],
        "survivor_count": survivor_count,
        "alarms": alarms,
        "skipped_conditions": list(SKIPPED_INTERIOR_CONDITIONS) if structural else [],
        "extra_conditions": list(EXTRA_FRAGMENT_FILTERS) if structural else [],
        "quotient_censuses": quotient_censuses,
        "timing": {"seconds": time.monotonic() - t0, "workers": workers},
    }
    return cert


def enumerate_covers_unnormalized(base_kind: str, n: int, filters=("connected", "planar")) -> dict[bytes, list]:
    """Full scan over all |S_n|^m assignments, tree edges included.

    Only used to certify that spanning-tree normalization loses nothing;
    returns the canonical classes of the survivors.
    """
    base = make_base(base_kind)
    perms = tuple(itertools.permutations(range(n)))
    labels = tuple(base.graph.labels[b] for b in range(base.graph.n) for _ in range(n))
    classes: dict[bytes, list] = {}
    for volt in itertools.product(perms, repeat=base.graph.m):
        va = VoltageAssignment(base, n, volt)
        g, proj = derive(va)
        from .graphs import is_connected

        if "connected" in filters and not is_connected(g):
            continue
        if "planar" in filters and not is_planar(g):
            continue
        key = canonical_form(g)
        entry = classes.setdefault(key, [volt, 0])
        entry[1] += 1
    return classes


# ---------------------------------------------------------------------------
# Fragment candidate analysis (bare K4-cover, all embeddings)
# ---------------------------------------------------------------------------


def _rotation_structures(g: LabeledGraph):
    """All spherical face structures of a cubic graph whose faces are all
    triangles or 0,a,b patterns, enumerated over rotation systems up to
    reflection.  Yields (mask, faces) with faces as dart tuples."""
    n, m = g.n, g.m
    nd = 2 * m
    tail = [0] * nd
    head = [0] * nd
    for e, (u, v) in enumerate(g.edges):
        tail[2 * e], head[2 * e] = u, v
        tail[2 * e + 1], head[2 * e + 1] = v, u
    out_darts = [[] for _ in range(n)]
    for d in range(nd):
        out_darts[tail[d]].append(d)
    if any(len(o) != 3 for o in out_darts):
        raise SearchError("rotation enumeration expects a cubic graph")
    zero_tail = [g.labels[tail[d]] == 0 for d in range(nd)]

    # succ[d]: next out-dart after d at its tail; two options per vertex
    options = []
    for v in range(n):
        d0, d1, d2 = out_darts[v]
        options.append(
            (
                ((d0, d1), (d1, d2), (d2, d0)),
                ((d0, d2), (d2, d1), (d1, d0)),
            )
        )
    succ = [0] * nd
    for v in range(n):
        for a, b in options[v][0]:
            succ[a] = b
    state = [0] * n
    visited = [0] * nd
    stamp = 0
    euler_target = 2 - n + m

    def evaluate():
        nonlocal stamp
        stamp += 1
        st = stamp
        faces = []
        for d0 in range(nd):
            if visited[d0] == st:
                continue
            d = d0
            length = 0
            zero_pos = -1
            while True:
                visited[d] = st
                if zero_tail[d]:
                    if zero_pos < 0:
                        zero_pos = length
                    elif (length - zero_pos) % 3:
                        return None
                else:
                    if zero_pos >= 0 and (length - zero_pos) % 3 == 0:
                        return None
                    if zero_pos < 0 and length >= 3:
                        return None
                length += 1
                d = succ[d ^ 1]
                if d == d0:
                    break
                if visited[d] == st:
                    return None
            if zero_pos < 0:
                if length != 3:
                    return None
            else:
                if length % 3 or zero_pos >= 3:
                    return None
            faces.append(length)
        if len(faces) != euler_target:
            return None
        # re-trace to collect darts (cheap relative to the scan)
        stamp += 1
        st = stamp
        out = []
        for d0 in range(nd):
            if visited[d0] == st:
                continue
            walk = []
            d = d0
            while visited[d] != st:
                visited[d] = st
                walk.append(d)
                d = succ[d ^ 1]
            out.append(tuple(walk))
        return out

    total = 1 << (n - 1)
    gray = 0
    seen_structures = set()
    first = evaluate()
    if first is not None:
        key = frozenset(_min_rotation(f) for f in first)
        seen_structures.add(key)
        yield list(state), first
    for k in range(1, total):
        flip = (k & -k).bit_length()  # vertex 1..n-1
        v = flip
        state[v] ^= 1
        for a, b in options[v][state[v]]:
            succ[a] = b
        faces = evaluate()
        if faces is not None:
            key = frozenset(_min_rotation(f) for f in faces)
            if key not in seen_structures:
                seen_structures.add(key)
                yield list(state), faces


def _min_rotation(seq: tuple) -> tuple:
    best = seq
    for i in range(1, len(seq)):
        c = seq[i:] + seq[:i]
        if c < best:
            best = c
    return best


def _embedding_from_state(g: LabeledGraph, state) -> PlaneEmbedding:
    rot = []
    for v in range(g.n):
        eids = list(g.incident_edges[v])
        if state[v]:
            eids = [eids[0], eids[2], eids[1]]
        rot.append(tuple(eids))
    return PlaneEmbedding(g, tuple(rot), 0)


def _pattern_ok(emb: PlaneEmbedding) -> bool:
    for f in emb.faces:
        if f.length > 3 and face_label_pattern(f.labels).kind != "pattern":
            return False
        if f.length == 3 and face_label_pattern(f.labels).kind != "triangle":
            return False
    return True


def _graph_level_filters(g: LabeledGraph, result: dict) -> bool:
    """Shared graph-level gate; False means already excluded."""
    filters = result["filters"]
    filters["not_k4"] = not (g.n == 4 and g.m == 6)
    if not filters["not_k4"]:
        result["excluded_by"] = ["not_k4"]
        return False
    kappa = connectivity(g)
    filters["two_connected"] = kappa >= 2
    if kappa < 2:
        result["excluded_by"] = ["two_connected"]
        return False
    k4 = make_base(K4NEG)
    neg_ok = all(
        comp.kind == "cycle" and comp.length == 3
        for comp in find_cycles_covering(g, (-1, -2, -3), k4)
    )
    filters["negative_lift_triangular"] = neg_ok
    if not neg_ok:
        result["excluded_by"] = ["negative_lift_triangular"]
        return False
    return True


def _empty_result() -> dict:
    return {
        "filters": {},
        "excluded_by": [],
        "embeddings": {"structures": 0, "outer_choices": 0, "passing": 0},
        "quotient_censuses": [],
        "survivor": False,
    }


def spherical_rotations(nverts: int, edges):
    """All spherical rotation systems of a connected cubic multigraph,
    up to reflection, as (rotation, faces) pairs with distinct face
    structures.  Sizes here are tiny (at most 10 vertices)."""
    from .embedding import trace_faces

    incident = [[] for _ in range(nverts)]
    for eid, (u, v) in enumerate(edges):
        incident[u].append(eid)
        incident[v].append(eid)
    if any(len(i) != 3 for i in incident):
        raise SearchError("rotation enumeration expects a cubic multigraph")
    target = 2 - nverts + len(edges)
    seen = set()
    for mask in range(1 << (nverts - 1)):
        rotation = []
        for v in range(nverts):
            ids = incident[v]
            if v and (mask >> (v - 1)) & 1:
                ids = [ids[0], ids[2], ids[1]]
            rotation.append(tuple(ids))
        faces = trace_faces(nverts, edges, rotation)
        if len(faces) != target:
            continue
        key = frozenset(_min_rotation(f) for f in faces)
        if key in seen:
            continue
        seen.add(key)
        yield tuple(rotation), faces


def analyze_fragment_candidate(g: LabeledGraph, apply_exclusions: bool = True) -> dict:
    """Run the bare-fragment filter pipeline over every plane embedding.

    Embeddings are enumerated on the contracted quotient: an admissible
    embedding must make every 3-cycle facial, which pins the bead and
    triangle interiors and leaves exactly the quotient's rotation choices
    (bead reflections change nothing any condition can see).  Every
    quotient face corresponds to a non-triangular fragment face of length
    3(k + beads) where 2k is the quotient face length; triangular outer
    choices are excluded wholesale by the boundary condition.
    """
    result = _empty_result()
    if not _graph_level_filters(g, result):
        return result
    filters = result["filters"]
    censuses = result["quotient_censuses"]
    excluded_by = set()

    try:
        sk = quotient_skeleton(g)
    except QuotientError:
        # No surviving 0-vertex or triangle: a closed bead chain.  Every
        # admissible embedding of it has a single internal non-triangular
        # face, so the necklace exclusion applies to all of them.
        result["excluded_by"] = ["necklace"]
        filters["quotient"] = False
        return result
    filters["quotient"] = True
    if sk.a == 1:
        # Three internal faces are required, hence at least two zeros.
        result["excluded_by"] = ["two_internal_faces"]
        return result

    b_actual = sum(b for _, _, b in sk.edges)
    simple_edges = tuple((u, v) for u, v, _ in sk.edges)
    n_tri_faces = 2 * len(find_beads(g)) + len(sk.black_triangles)
    passing = 0
    outer_choices = 0
    structures = 0
    for rotation, faces in spherical_rotations(2 * sk.a, simple_edges):
        structures += 1
        q = QuotientGraph(
            a=sk.a,
            edges=sk.edges,
            rotation=rotation,
            outer_face=0,
            white_vertices=sk.whites,
            black_triangles=sk.black_triangles,
        )
        face_sides = q.face_edge_sides
        face_beads = [sum(sk.edges[e][2] for e in sides) for sides in face_sides]
        thirds = [len(f) // 2 + face_beads[i] for i, f in enumerate(q.faces)]
        edge_hosts = [set() for _ in sk.edges]
        for fid, sides in enumerate(face_sides):
            for e in sides:
                edge_hosts[e].add(fid)
        censuses.append({str(k): v for k, v in q.census.items()})
        outer_choices += n_tri_faces  # triangular fragment faces as outer
        if n_tri_faces:
            excluded_by.add("outer_face_nontriangular")
        for i in range(len(q.faces)):
            outer_choices += 1
            internal = [j for j in range(len(q.faces)) if j != i]
            if any(thirds[j] == 2 for j in internal):
                excluded_by.add("no_internal_hexagon")
                continue
            if not apply_exclusions:
                passing += 1
                continue
            if len(internal) == 1:
                excluded_by.add("necklace")
                continue
            if len(internal) == 2:
                excluded_by.add("two_internal_faces")
                continue
            shared_fired = False
            for fa, fb in itertools.combinations(internal, 2):
                shared = sum(
                    beads
                    for e, (_, _, beads) in enumerate(sk.edges)
                    if edge_hosts[e] == {fa, fb}
                )
                if shared >= max(thirds[fa], thirds[fb], 3) - 2:
                    shared_fired = True
                    break
            if shared_fired:
                excluded_by.add("bead_sharing")
                continue
            mb = min_beads(q, outer_face=i, cap=b_actual)
            if mb is None:
                excluded_by.add("bead_demand")
                continue
            passing += 1
    result["embeddings"] = {
        "structures": structures,
        "outer_choices": outer_choices,
        "passing": passing,
    }
    result["survivor"] = passing > 0
    result["excluded_by"] = sorted(excluded_by)
    return result


def analyze_fragment_direct(g: LabeledGraph, apply_exclusions: bool = True) -> dict:
    """Reference analyzer enumerating fragment rotation systems directly.

    Exponential in the fragment size; kept as an independent check of the
    quotient-based analyzer on small folds.
    """
    result = _empty_result()
    if not _graph_level_filters(g, result):
        return result
    censuses = result["quotient_censuses"]

    triangles = [frozenset(t) for t in all_triangles(g)]
    beads = find_beads(g)

    structures = []
    for state, _faces in _rotation_structures(g):
        structures.append(_embedding_from_state(g, state))
    result["embeddings"]["structures"] = len(structures)
    if not structures:
        result["excluded_by"] = ["face_patterns"]

    excluded_by = set(result["excluded_by"])
    passing = 0
    outer_choices = 0
    for emb in structures:
        tri_faces = triangle_faces(emb)
        if not all(t in tri_faces for t in triangles):
            excluded_by.add("fragment_triangles_facial")
            continue
        try:
            hosts = _bead_hosts(emb, beads)
        except StructureError:
            excluded_by.add("fragment_triangles_facial")
            continue
        nontri = [i for i, f in enumerate(emb.faces) if f.length > 3]
        for i, f in enumerate(emb.faces):
            outer_choices += 1
            if f.length == 3:
                excluded_by.add("outer_face_nontriangular")
                continue
            internal = [j for j in nontri if j != i]
            if any(emb.faces[j].length == 6 for j in internal):
                excluded_by.add("no_internal_hexagon")
                continue
            if not apply_exclusions:
                passing += 1
                continue
            if len(internal) == 1:
                excluded_by.add("necklace")
                continue
            if len(internal) == 2:
                excluded_by.add("two_internal_faces")
                continue
            shared_fired = False
            for fa, fb in itertools.combinations(internal, 2):
                shared = sum(1 for hp in hosts if set(hp) == {fa, fb})
                la = -(-emb.faces[fa].length // 3)
                lb = -(-emb.faces[fb].length // 3)
                if shared >= max(la, lb, 3) - 2:
                    shared_fired = True
                    break
            if shared_fired:
                excluded_by.add("bead_sharing")
                continue
            try:
                q, _ = quotient_graph(PlaneEmbedding(emb.graph, emb.rotation, i))
            except QuotientError:
                excluded_by.add("degenerate_quotient")
                continue
            censuses.append({str(k): v for k, v in q.census.items()})
            if min_beads(q, cap=q.total_beads) is None:
                excluded_by.add("bead_demand")
                continue
            passing += 1
    result["embeddings"]["outer_choices"] = outer_choices
    result["embeddings"]["passing"] = passing
    result["survivor"] = passing > 0
    result["excluded_by"] = sorted(excluded_by)
    return result


# ---------------------------------------------------------------------------
# Fragment search over folds
# ---------------------------------------------------------------------------


def search_k4_fragments(h_max: int, budget: int = 10**9, workers: int = 1, progress=None) -> dict:
    """Enumerate admissible K4-cover fragments for every fold up to h_max.

    For each fold, connected planar covers of K4 are generated from
    normalized, conjugacy-pruned voltage assignments, deduplicated, and
    pushed through the bare-fragment conditions over all their plane
    embeddings and outer-face choices.
    """
    import time

    if h_max > 6:
        raise SearchError("fragment search is budgeted for folds up to 6")
    base = make_base(K4NEG)
    t0 = time.monotonic()
    folds = []
    all_censuses = []
    survivors_total = 0
    for h in range(1, h_max + 1):
        estimate = estimate_nodes(base, h)
        if estimate > budget:
            raise BudgetExceeded(
                f"fold {h} needs about {estimate:.3g} assignments, beyond {budget:.3g}",
                estimate,
            )
        if progress is not None:
            progress(f"fold {h}: scanning {estimate} pre-prune assignments ...")
        visited, connected, planar, classes = _scan(base, h, True, True, workers)
        if progress is not None:
            progress(
                f"fold {h}: {visited} visited, {planar} planar, {len(classes)} classes"
            )
        candidates = []
        survivors = []
        fold_censuses = set()
        for key in sorted(classes):
            volt, count = classes[key]
            g, _ = derive(normalized_assignment(base, h, volt))
            analysis = analyze_fragment_candidate(g)
            entry = {
                "canonical": _digest(key),
                "fold": h,
                "assignments": count,
                "voltage": [list(p) for p in volt],
                "connectivity": connectivity(g),
                "filters": analysis["filters"],
                "excluded_by": analysis["excluded_by"],
                "embeddings": analysis["embeddings"],
                "survivor": analysis["survivor"],
            }
            for census in analysis["quotient_censuses"]:
                fold_censuses.add(tuple(sorted(census.items())))
            candidates.append(entry)
            if analysis["survivor"]:
                survivors.append(entry)
                if h == 6:
                    entry["interior_triangle_check"] = _h6_survivor_check(g)
        survivors_total += len(survivors)
        all_censuses.extend(dict(items) for items in sorted(fold_censuses))
        folds.append(
            {
                "fold": h,
                "visited": visited,
                "pre_prune_estimate": estimate,
                "connected": connected,
                "planar": planar,
                "classes": len(classes),
                "candidates": candidates,
                "survivors": [e["canonical"] for e in survivors],
            }
        )
    return {
        "format_version": FORMAT_VERSION,
        "spec": {"mode": "fragments", "h_max": h_max, "budget": budget},
        "folds": folds,
        "survivor_count": survivors_total,
        "skipped_conditions": list(SKIPPED_INTERIOR_CONDITIONS),
        "extra_conditions": list(EXTRA_FRAGMENT_FILTERS),
        "quotient_censuses": all_censuses,
        "timing": {"seconds": time.monotonic() - t0, "workers": workers},
    }


def _h6_survivor_check(g: LabeledGraph) -> dict:
    """For a fold-6 survivor: the forced interior-triangle count from its
    outer face length must reach 3 (the necklace case being excluded)."""
    from .bounds import interior_triangle_bound

    emb = planarity(g)
    out = []
    if isinstance(emb, PlaneEmbedding):
        for f in emb.faces:
            if f.length > 3 and f.length % 3 == 0:
                m = f.length // 3
                if 3 * 6 >= 2 * m:
                    out.append({"m": m, "bound": interior_triangle_bound(6, m)[1]})
    return {"per_outer_m": out, "ok": all(e["bound"] >= 3 or e["m"] == 6 for e in out)}


# ---------------------------------------------------------------------------
# Quotient universe and bead demands
# ---------------------------------------------------------------------------


def quotient_with_outer(q: QuotientGraph, face_id: int) -> QuotientGraph:
    if not (0 <= face_id < len(q.faces)):
        raise SearchError(f"quotient has no face {face_id}")
    return replace(q, outer_face=face_id)


def _degree_matrices(a: int):
    """All a-by-a nonnegative matrices with row and column sums 3."""

    def rows(remaining_cols, rows_left):
        if rows_left == 0:
            if all(c == 0 for c in remaining_cols):
                yield ()
            return
        def build(j, left, acc):
            if j == len(remaining_cols):
                if left == 0:
                    yield tuple(acc)
                return
            top = min(3, left, remaining_cols[j])
            for x in range(top, -1, -1):
                acc.append(x)
                yield from build(j + 1, left - x, acc)
                acc.pop()
        for row in build(0, 3, []):
            new_cols = tuple(c - x for c, x in zip(remaining_cols, row))
            for rest in rows(new_cols, rows_left - 1):
                yield (row,) + rest

    yield from rows(tuple([3] * a), a)


def _matrix_canonical(mat) -> tuple:
    a = len(mat)
    best = None
    for pr in itertools.permutations(range(a)):
        for pc in itertools.permutations(range(a)):
            key = tuple(tuple(mat[pr[i]][pc[j]] for j in range(a)) for i in range(a))
            if best is None or key < best:
                best = key
    return best


def _matrix_connected(mat) -> bool:
    a = len(mat)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(a):
            if mat[i][j] and ("b", j) not in seen:
                seen.add(("b", j))
                for i2 in range(a):
                    if mat[i2][j] and i2 not in seen:
                        seen.add(i2)
                        stack.append(i2)
    return len([s for s in seen if not isinstance(s, tuple)]) == a


def enumerate_quotients(a_max: int, require_a_ge_2: bool = True) -> list[QuotientGraph]:
    """All connected cubic bipartite plane multigraphs with up to a_max
    0-vertices, one entry per isomorphism class and face census.

    The two-vertex triple edge is excluded unless the flag is lowered:
    a fragment has at least three internal non-triangular faces, which
    forces at least two 0-vertices in the quotient.
    """
    if a_max > 4:
        raise SearchError("quotient enumeration is budgeted for a <= 4")
    out = []
    a_min = 1 if not require_a_ge_2 else 2
    for a in range(a_min, a_max + 1):
        seen_mats = set()
        for mat in _degree_matrices(a):
            if not _matrix_connected(mat):
                continue
            key = _matrix_canonical(mat)
            if key in seen_mats:
                continue
            seen_mats.add(key)
            edges = []
            for i in range(a):
                for j in range(a):
                    edges.extend([(i, a + j, 0)] * mat[i][j])
            seen_census = set()
            simple_edges = tuple((u, v) for u, v, _ in edges)
            for rotation, faces in spherical_rotations(2 * a, simple_edges):
                census = tuple(sorted(len(f) for f in faces))
                if census in seen_census:
                    continue
                seen_census.add(census)
                out.append(
                    QuotientGraph(
                        a=a,
                        edges=tuple(edges),
                        rotation=rotation,
                        outer_face=0,
                    )
                )
    return out


@dataclass(frozen=True)
class MinBeadsResult:
    total: int
    placement: tuple[int, ...]
    checked_pairs: tuple[tuple[int, int], ...]


def min_beads(
    q: QuotientGraph, outer_face: int | None = None, cap: int | None = None
) -> MinBeadsResult | None:
    """Minimum bead count meeting every face demand of the quotient.

    Internal 2-faces need two beads and internal 4-faces one (their
    fragment faces must reach length nine); an outer 2-face needs one; a
    bead counts toward the two faces flanking its edge; and no two
    internal short faces may share beads up to the forbidden threshold.
    With a cap, returns None when no placement of at most that many beads
    works; without one, a placement always exists.
    """
    outer = q.outer_face if outer_face is None else outer_face
    nf = len(q.faces)
    side_faces = [[] for _ in range(len(q.edges))]
    for fid, sides in enumerate(q.face_edge_sides):
        for e in sides:
            side_faces[e].append(fid)
    demands = []
    for fid, f in enumerate(q.faces):
        L = len(f)
        if fid == outer:
            demands.append(1 if L == 2 else 0)
        else:
            demands.append(2 if L == 2 else (1 if L == 4 else 0))
    short_internal = [
        fid for fid, f in enumerate(q.faces) if fid != outer and len(f) in (2, 4)
    ]
    pairs = list(itertools.combinations(short_internal, 2))

    ne = len(q.edges)
    edge_faces = [tuple(side_faces[e]) for e in range(ne)]

    def feasible(total: int):
        counts = [0] * nf
        placement = [0] * ne

        def deficit():
            return sum(max(0, demands[f] - counts[f]) for f in range(nf))

        def pairs_ok():
            for fa, fb in pairs:
                shared = sum(
                    placement[e]
                    for e in range(ne)
                    if set(edge_faces[e]) == {fa, fb}
                )
                la = len(q.faces[fa]) // 2 + counts[fa]
                lb = len(q.faces[fb]) // 2 + counts[fb]
                if shared >= max(la, lb, 3) - 2:
                    return False
            return True

        def go(e: int, left: int):
            if deficit() > 2 * left:
                return None
            if e == ne:
                if left == 0 and deficit() == 0 and pairs_ok():
                    return tuple(placement)
                return None
            for b in range(left + 1):
                placement[e] = b
                for f in edge_faces[e]:
                    counts[f] += b
                got = go(e + 1, left - b)
                for f in edge_faces[e]:
                    counts[f] -= b
                placement[e] = 0
                if got is not None:
                    return got
            return None

        return go(0, total)

    hard_cap = 3 * q.a + 6 if cap is None else cap
    for total in range(hard_cap + 1):
        got = feasible(total)
        if got is not None:
            return MinBeadsResult(total, got, tuple(pairs))
    if cap is not None:
        return None
    raise SearchError("bead demand search exceeded its cap; malformed quotient")
