"""Command-line entry point.

Subcommands: verify, derive, lift, embed, analyze, quotient, search,
bounds, export-dot.  Exit codes: 0 success or valid, 1 predicate failure,
2 budget refusal, 3 input error.  All outputs are deterministic; the only
run-dependent data (wall clock) lives in the "timing" sidecar field of
certificates.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures as fx
from . import io as pio
from .bounds import BoundsError, fold_verdict
from .covers import CoverError, lift_subgraph, verify_cover
from .covers import derive as derive_cover
from .embedding import EmbeddingError, PlaneEmbedding, planarity
from .graphs import GraphError, make_base
from .search import (
    BudgetExceeded,
    SearchError,
    SearchSpec,
    enumerate_covers,
    min_beads,
    search_k4_fragments,
)
from .structure import (
    QuotientError,
    StructureError,
    admissibility_report,
    check_exclusions,
    quotient_graph,
    refine_faces,
)

EXIT_OK = 0
EXIT_PREDICATE = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


def _load_json(path: str | None, fixture: str | None, fixture_suffix: str = ""):
    if fixture is not None:
        try:
            return fx.load_fixture_obj(fixture + fixture_suffix)
        except KeyError as exc:
            raise InputError(str(exc)) from exc
    if path is None:
        raise InputError("an input path or --fixture is required")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _write_out(args, obj) -> None:
    text = pio.dumps(obj)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_writable(path: str | None) -> None:
    if not path:
        return
    try:
        with open(path, "a", encoding="utf-8"):
            pass
    except OSError as exc:
        raise InputError(f"output path not writable: {exc}") from exc


def cmd_verify(args) -> int:
    gobj = _load_json(args.graph, args.fixture, ".graph")
    mobj = _load_json(args.map, args.fixture, ".map")
    g = pio.graph_from_obj(gobj)
    vmap = pio.vertex_map_from_obj(mobj)
    base = make_base(args.base)
    verdict = verify_cover(g, base, vmap)
    if verdict.ok:
        if verdict.fold is not None:
            print(f"valid cover of {args.base}: fold {verdict.fold}")
        else:
            print(
                f"valid cover of {args.base} on each component: folds "
                f"{list(verdict.per_component_folds)}"
            )
        return EXIT_OK
    print(f"not a cover: {verdict.violation}")
    return EXIT_PREDICATE


def cmd_derive(args) -> int:
    import hashlib

    from .graphs import canonical_form

    vobj = _load_json(args.voltage, args.fixture)
    va = pio.voltage_from_obj(vobj)
    g, proj = derive_cover(va)
    verdict = verify_cover(g, va.base, proj.vertex_map)
    out = {
        "voltage": vobj,
        "graph": pio.graph_to_obj(g),
        "canonical": hashlib.sha256(canonical_form(g)).hexdigest()[:16],
        "vertex_map": list(proj.vertex_map),
        "fold": verdict.fold,
        "per_component_folds": list(verdict.per_component_folds),
        "valid": verdict.ok,
    }
    _write_out(args, out)
    print(f"derived {g.n} vertices, {g.m} edges; verification: {verdict.ok}", file=sys.stderr)
    return EXIT_OK if verdict.ok else EXIT_PREDICATE


def cmd_lift(args) -> int:
    gobj = _load_json(args.graph, args.fixture, ".graph")
    mobj = _load_json(args.map, args.fixture, ".map")
    g = pio.graph_from_obj(gobj)
    vmap = pio.vertex_map_from_obj(mobj)
    base = make_base(args.base)
    labels = [int(x) for x in args.labels.split(",")]
    from .covers import CoverProjection

    lifted, _ = lift_subgraph(CoverProjection(g, base, vmap), labels)
    _write_out(args, pio.graph_to_obj(lifted))
    print(f"lift has {lifted.n} vertices, {lifted.m} edges", file=sys.stderr)
    return EXIT_OK


def cmd_embed(args) -> int:
    gobj = _load_json(args.graph, args.fixture, ".graph")
    g = pio.graph_from_obj(gobj)
    result = planarity(g)
    if isinstance(result, PlaneEmbedding):
        _write_out(args, pio.embedding_to_obj(result))
        print(f"planar: {len(result.faces)} faces", file=sys.stderr)
        return EXIT_OK
    _write_out(
        args,
        {
            "non_planar": True,
            "witness_kind": result.kind,
            "witness_edges": [list(e) for e in result.edges],
            "branch_vertices": list(result.branch_vertices),
        },
    )
    print(f"non-planar: contains a {result.kind} subdivision", file=sys.stderr)
    return EXIT_PREDICATE


def cmd_analyze(args) -> int:
    obj = _load_json(args.semicover, args.fixture)
    sc = pio.semicover_from_obj(obj)
    from .covers import verify_semicover

    verdict = verify_semicover(sc)
    report = admissibility_report(sc, patterns_internal_only=args.internal_only_patterns)
    exclusions = check_exclusions(report)
    out = pio.report_to_obj(report, exclusions)
    out["semicover_valid"] = verdict.ok
    if verdict.violation is not None:
        out["semicover_violation"] = str(verdict.violation)
    try:
        q, _ = quotient_graph(refine_faces(sc).h_embedding)
        out["quotient_census"] = {str(k): v for k, v in q.census.items()}
    except (QuotientError, StructureError):
        out["quotient_census"] = None
    _write_out(args, out)
    failed = [k for k, v in report.conditions.items() if v is False]
    print(
        f"semicover valid: {verdict.ok}; conditions failed: {failed or 'none'}; "
        f"exclusions: {list(exclusions.reasons()) or 'none'}"
    )
    if not verdict.ok:
        print(f"invalid semi-cover: {verdict.violation}")
        return EXIT_PREDICATE
    return EXIT_OK


def cmd_quotient(args) -> int:
    obj = _load_json(args.semicover, args.fixture)
    sc = pio.semicover_from_obj(obj)
    ref = refine_faces(sc)
    q, _ = quotient_graph(ref.h_embedding)
    _write_out(args, pio.quotient_to_obj(q))
    mb = min_beads(q)
    print(
        f"quotient: a={q.a}, census {q.census}, beads {q.total_beads}, "
        f"minimum demand {mb.total}"
    )
    return EXIT_OK


def _dump_survivor_dots(args, cert, fold_key=None) -> None:
    if not args.dot_dir:
        return
    import os

    from .covers import normalized_assignment
    from .covers import derive as derive_cover_fn
    from .graphs import make_base as mk

    os.makedirs(args.dot_dir, exist_ok=True)
    folds = cert["folds"] if "folds" in cert else [cert]
    for fold in folds:
        base = mk("k4" if "fold" in fold else cert["spec"].get("base", "k4"))
        n = fold.get("fold", cert["spec"].get("n"))
        for entry in fold["candidates"]:
            if not entry["survivor"]:
                continue
            volt = [tuple(p) for p in entry["voltage"]]
            g, _ = derive_cover_fn(normalized_assignment(base, n, volt))
            path = os.path.join(args.dot_dir, f"survivor-{n}-{entry['canonical']}.dot")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(pio.graph_to_dot(g))


def cmd_search(args) -> int:
    obj = _load_json(args.spec, args.fixture, "")
    _check_writable(args.out)
    mode = obj.get("mode", "covers")
    budget = args.budget if args.budget is not None else obj.get("budget", 10**9)
    progress = lambda msg: print(msg, file=sys.stderr)  # noqa: E731
    if mode == "covers":
        filters = tuple(args.filters.split(",")) if args.filters else tuple(obj.get("filters", ["connected", "planar"]))
        spec = SearchSpec(
            base=obj["base"],
            n=obj["n"],
            filters=filters,
            dedup=obj.get("dedup", True),
            budget=budget,
        )
        progress(f"scanning base {spec.base} at fold {spec.n} ...")
        cert = enumerate_covers(spec, workers=args.workers)
        _write_out(args, cert)
        _dump_survivor_dots(args, cert)
        print(
            f"visited {cert['visited']} assignments; "
            f"{cert['survivor_count']} survivors"
        )
        return EXIT_OK
    if mode == "fragments":
        cert = search_k4_fragments(
            obj["h_max"], budget=budget, workers=args.workers, progress=progress
        )
        _write_out(args, cert)
        _dump_survivor_dots(args, cert)
        per_fold = ", ".join(
            f"fold {f['fold']}: {len(f['survivors'])}" for f in cert["folds"]
        )
        print(f"survivors per fold: {per_fold}")
        return EXIT_OK
    raise InputError(f"unknown search mode {mode!r}")


def cmd_bounds(args) -> int:
    verdict = fold_verdict(args.n)
    _write_out(args, verdict.to_obj())
    print("contradiction" if verdict.contradiction else "no contradiction")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    gobj = _load_json(args.graph, args.fixture, ".graph")
    g = pio.graph_from_obj(gobj)
    text = pio.graph_to_dot(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="planecover",
        description="Verify, analyze and exhaustively search planar covers of K(1,2,2,2).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        sp.add_argument("--fixture", help="use a bundled fixture instead of an input path")
        if out:
            sp.add_argument("--out", help="write the JSON result to this path")

    sp = sub.add_parser("verify", help="check a claimed cover projection")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("map", nargs="?")
    sp.add_argument("--base", default="k1222", choices=["k1222", "k4"])
    common(sp, out=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("derive", help="build the cover generated by a voltage assignment")
    sp.add_argument("voltage", nargs="?")
    common(sp)
    sp.set_defaults(func=cmd_derive)

    sp = sub.add_parser("lift", help="preimage of a base subgraph under a cover")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("map", nargs="?")
    sp.add_argument("--base", default="k1222", choices=["k1222", "k4"])
    sp.add_argument("--labels", default="0,-1,-2,-3", help="base vertex labels to lift")
    common(sp)
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("embed", help="planarity test with embedding or witness")
    sp.add_argument("graph", nargs="?")
    common(sp)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("analyze", help="admissibility and exclusion report of a semi-cover")
    sp.add_argument("semicover", nargs="?")
    sp.add_argument(
        "--internal-only-patterns",
        action="store_true",
        help="skip the label-pattern check on the outer face (exploratory)",
    )
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("quotient", help="contract a fragment to its cubic bipartite quotient")
    sp.add_argument("semicover", nargs="?")
    common(sp)
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("search", help="run an exhaustive search from a spec file")
    sp.add_argument("spec", nargs="?")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--filters", default=None, help="comma-separated filter override")
    sp.add_argument("--dot-dir", default=None, help="write one DOT file per survivor here")
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("bounds", help="fold exclusion verdict with its numeric trace")
    sp.add_argument("n", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("export-dot", help="DOT rendering with label-derived colors")
    sp.add_argument("graph", nargs="?")
    common(sp)
    sp.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, pio.FormatError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GraphError, EmbeddingError, CoverError, StructureError, QuotientError, BoundsError, SearchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
