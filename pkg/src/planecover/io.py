"""JSON and DOT serialization.

Graph JSON and the round-trip guarantee: dumping is canonical (sorted
keys, fixed separators), so load followed by dump reproduces the bytes of
any canonically-dumped file.
"""

from __future__ import annotations

import json
from typing import Any

from .covers import SemiCover, VoltageAssignment
from .embedding import PlaneEmbedding, make_embedding
from .graphs import GraphError, LabeledGraph, make_base


class FormatError(ValueError):
    """Input file does not match the expected schema."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def graph_to_obj(g: LabeledGraph) -> dict:
    return {
        "vertices": [{"id": v, "label": g.labels[v]} for v in range(g.n)],
        "edges": [[u, v] for u, v in g.edges],
    }


def graph_from_obj(obj: dict) -> LabeledGraph:
    try:
        verts = obj["vertices"]
        ids = [v["id"] for v in verts]
        if sorted(ids) != list(range(len(ids))):
            raise FormatError("vertex ids must be 0..n-1")
        labels = [0] * len(ids)
        for v in verts:
            labels[v["id"]] = v["label"]
        edges = [tuple(e) for e in obj["edges"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad graph object: {exc}") from exc
    simple = len(set(tuple(sorted(e)) for e in edges)) == len(edges)
    return LabeledGraph(tuple(labels), tuple(edges), simple=simple)


def embedding_to_obj(emb: PlaneEmbedding) -> dict:
    obj = graph_to_obj(emb.graph)
    obj["rotation"] = [list(r) for r in emb.rotation]
    obj["outer_face"] = emb.outer_face
    obj["faces"] = [
        {"vertices": list(f.vertices), "labels": list(f.labels)} for f in emb.faces
    ]
    return obj


def embedding_from_obj(obj: dict) -> PlaneEmbedding:
    g = graph_from_obj(obj)
    try:
        rotation = [tuple(r) for r in obj["rotation"]]
        outer = obj.get("outer_face", None)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad embedding object: {exc}") from exc
    return make_embedding(g, rotation, outer)


def semicover_to_obj(sc: SemiCover) -> dict:
    obj = {"base": sc.base.kind, "embedding": embedding_to_obj(sc.embedding)}
    if sc.vertex_map is not None:
        obj["vertex_map"] = list(sc.vertex_map)
    return obj


def semicover_from_obj(obj: dict) -> SemiCover:
    try:
        base = make_base(obj["base"])
        emb = embedding_from_obj(obj["embedding"])
    except (KeyError, GraphError) as exc:
        raise FormatError(f"bad semicover object: {exc}") from exc
    vmap = tuple(obj["vertex_map"]) if "vertex_map" in obj else None
    return SemiCover(emb, base, vmap)


def voltage_to_obj(v: VoltageAssignment) -> dict:
    return {
        "base": v.base.kind,
        "n": v.n,
        "edges": [
            {"from": u, "to": w, "perm": list(v.perms[i])}
            for i, (u, w) in enumerate(v.base.graph.edges)
        ],
    }


def voltage_from_obj(obj: dict) -> VoltageAssignment:
    try:
        base = make_base(obj["base"])
        n = int(obj["n"])
        given = {(e["from"], e["to"]): tuple(e["perm"]) for e in obj["edges"]}
    except (KeyError, TypeError, GraphError) as exc:
        raise FormatError(f"bad voltage object: {exc}") from exc
    perms = []
    ident = tuple(range(n))
    for u, w in base.graph.edges:
        perms.append(given.get((u, w), ident))
    return VoltageAssignment(base, n, tuple(perms))


def vertex_map_to_obj(vmap) -> dict:
    return {"vertex_map": list(vmap)}


def vertex_map_from_obj(obj: dict) -> tuple[int, ...]:
    try:
        return tuple(obj["vertex_map"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad vertex map object: {exc}") from exc


_LABEL_COLORS = {
    0: "black",
    1: "red",
    -1: "salmon",
    2: "blue",
    -2: "lightblue",
    3: "darkgreen",
    -3: "palegreen",
}


def graph_to_dot(g: LabeledGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        color = _LABEL_COLORS.get(g.labels[v], "gray")
        lines.append(
            f'  v{v} [label="{g.labels[v]}" style=filled fillcolor={color} fontcolor=white];'
        )
    for u, v in g.edges:
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quotient_to_obj(q) -> dict:
    return {
        "a": q.a,
        "edges": [list(e) for e in q.edges],
        "rotation": [list(r) for r in q.rotation],
        "outer_face": q.outer_face,
        "census": {str(k): v for k, v in q.census.items()},
        "total_beads": q.total_beads,
    }


def quotient_from_obj(obj: dict):
    from .structure import QuotientGraph

    try:
        return QuotientGraph(
            a=obj["a"],
            edges=tuple(tuple(e) for e in obj["edges"]),
            rotation=tuple(tuple(r) for r in obj["rotation"]),
            outer_face=obj["outer_face"],
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad quotient object: {exc}") from exc


def report_to_obj(report, exclusions=None) -> dict:
    obj = {
        "faces": [
            {
                "face_id": f.face_id,
                "length": f.length,
                "labels": list(f.labels),
                "internal": f.internal,
                "pattern": f.pattern.kind,
                "pattern_m": f.pattern.m,
                "triangles": f.triangles,
                "beads": list(f.beads),
            }
            for f in report.faces
        ],
        "beads": [
            {"zero": b.zero, "inner": list(b.inner), "kvert": b.kvert, "type": b.type_label}
            for b in report.beads
        ],
        "strings": [
            {
                "type": s.type_label,
                "beads": len(s.beads),
                "neg_terminal": list(s.neg_terminal),
                "zero_terminal": list(s.zero_terminal),
            }
            for s in report.strings
        ],
        "necklace": report.necklace,
        "conditions": dict(report.conditions),
        "outer_face": report.h_outer,
    }
    if exclusions is not None:
        obj["exclusions"] = {
            "necklace": exclusions.necklace,
            "two_internal_faces": exclusions.two_internal_faces,
            "bead_sharing": [list(x) for x in exclusions.bead_sharing],
            "excluded": exclusions.excluded,
            "reasons": list(exclusions.reasons()),
        }
    return obj
