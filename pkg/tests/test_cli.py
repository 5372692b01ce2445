import json

import pytest

from planecover import fixtures as fx
from planecover import io as pio
from planecover.cli import main


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(pio.dumps(obj), encoding="utf-8")
    return str(p)


def test_verify_identity_cover(capsys):
    rc = main(["verify", "--fixture", "k1222-identity", "--base", "k1222"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "fold 1" in out


def test_verify_cube_double_cover(capsys):
    rc = main(["verify", "--fixture", "k4-double", "--base", "k4"])
    assert rc == 0
    assert "fold 2" in capsys.readouterr().out


def test_verify_broken_map(tmp_path, capsys):
    g = _write(tmp_path, "g.json", fx.load_fixture_obj("k4-double.graph"))
    m = _write(tmp_path, "m.json", fx.load_fixture_obj("k4-double.broken-map"))
    rc = main(["verify", g, m, "--base", "k4"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "vertex" in out


def test_verify_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json", encoding="utf-8")
    g = _write(tmp_path, "g.json", fx.load_fixture_obj("k4-double.graph"))
    rc = main(["verify", g, str(p), "--base", "k4"])
    assert rc == 3
    assert "input error" in capsys.readouterr().err


def test_search_k4_n2(tmp_path, capsys):
    out = tmp_path / "cert.json"
    rc = main(["search", "--fixture", "spec-k4-n2", "--out", str(out)])
    assert rc == 0
    cert = json.loads(out.read_text())
    assert cert["visited"] == 8
    assert cert["survivor_count"] >= 1


def test_search_budget_refusal(tmp_path, capsys):
    spec = {"mode": "covers", "base": "k1222", "n": 4, "filters": ["connected", "planar"], "dedup": True}
    p = _write(tmp_path, "spec.json", spec)
    rc = main(["search", p, "--out", str(tmp_path / "c.json")])
    assert rc == 2
    assert "budget" in capsys.readouterr().err


def test_search_deterministic_output(tmp_path):
    o1, o2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["search", "--fixture", "spec-k4-n2", "--out", str(o1)]) == 0
    assert main(["search", "--fixture", "spec-k4-n2", "--out", str(o2)]) == 0
    c1, c2 = json.loads(o1.read_text()), json.loads(o2.read_text())
    c1.pop("timing"), c2.pop("timing")
    assert pio.dumps(c1) == pio.dumps(c2)


def test_analyze_necklace_reports_exclusion(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = main(["analyze", "--fixture", "necklace4", "--out", str(out)])
    assert rc == 0
    report = json.loads(out.read_text())
    assert report["exclusions"]["necklace"]
    assert "necklace" in capsys.readouterr().out


def test_analyze_invalid_semicover_exits_one(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = main(["analyze", "--fixture", "hub_violation", "--out", str(out)])
    assert rc == 1
    assert "invalid semi-cover" in capsys.readouterr().out
    # the report is still written, naming the failed invariant
    report = json.loads(out.read_text())
    assert not report["semicover_valid"]
    assert "semicover_violation" in report


def test_bounds_command(tmp_path, capsys):
    assert main(["bounds", "12"]) == 0
    assert "contradiction" in capsys.readouterr().out
    assert main(["bounds", "14"]) == 0
    assert "no contradiction" in capsys.readouterr().out
    assert main(["bounds", "7"]) == 3


def test_embed_commands(tmp_path, capsys):
    out = tmp_path / "emb.json"
    rc = main(["embed", "--fixture", "k4-double", "--out", str(out)])
    assert rc == 0
    emb = json.loads(out.read_text())
    assert len(emb["faces"]) == 6
    # non-planar input: witness and exit 1
    g = _write(tmp_path, "k1222.json", fx.load_fixture_obj("k1222-identity.graph"))
    rc = main(["embed", g, "--out", str(tmp_path / "w.json")])
    assert rc == 1
    witness = json.loads((tmp_path / "w.json").read_text())
    assert witness["non_planar"] and witness["witness_kind"] in ("K5", "K33")


def test_quotient_command(tmp_path, capsys):
    out = tmp_path / "q.json"
    rc = main(["quotient", "--fixture", "nine_face_pair", "--out", str(out)])
    assert rc == 0
    q = json.loads(out.read_text())
    assert q["a"] == 2 and q["total_beads"] == 3
    assert "minimum demand 4" in capsys.readouterr().out


def test_derive_and_lift(tmp_path, capsys):
    volt = {
        "base": "k4",
        "n": 2,
        "edges": [
            {"from": u, "to": v, "perm": [1, 0]}
            for u, v in [(1, 2), (1, 3), (2, 3)]
        ],
    }
    vp = _write(tmp_path, "volt.json", volt)
    out = tmp_path / "derived.json"
    assert main(["derive", vp, "--out", str(out)]) == 0
    derived = json.loads(out.read_text())
    assert derived["fold"] == 2 and derived["valid"]

    g = _write(tmp_path, "g.json", derived["graph"])
    m = _write(tmp_path, "m.json", {"vertex_map": derived["vertex_map"]})
    lifted = tmp_path / "lift.json"
    assert main(["lift", g, m, "--base", "k4", "--labels", "0,-1,-2,-3", "--out", str(lifted)]) == 0
    obj = json.loads(lifted.read_text())
    assert len(obj["vertices"]) == 8


def test_export_dot(tmp_path):
    out = tmp_path / "g.dot"
    assert main(["export-dot", "--fixture", "k4-double", "--out", str(out)]) == 0
    assert "graph" in out.read_text()


@pytest.mark.slow
def test_search_fragments_cli(tmp_path, capsys):
    out = tmp_path / "frag.json"
    rc = main(["search", "--fixture", "spec-k4-h-le-5", "--out", str(out)])
    assert rc == 0
    cert = json.loads(out.read_text())
    assert all(len(f["survivors"]) == 0 for f in cert["folds"])


def test_search_k1222_n2_cli(tmp_path, capsys):
    out = tmp_path / "cert.json"
    rc = main(["search", "--fixture", "spec-k1222-n2", "--out", str(out)])
    assert rc == 0
    cert = json.loads(out.read_text())
    assert cert["visited"] == 4096
    assert cert["survivor_count"] == 0
    assert "0 survivors" in capsys.readouterr().out


def test_search_dot_dump(tmp_path):
    out = tmp_path / "cert.json"
    dots = tmp_path / "dots"
    rc = main(["search", "--fixture", "spec-k4-n2", "--out", str(out), "--dot-dir", str(dots)])
    assert rc == 0
    cert = json.loads(out.read_text())
    files = list(dots.glob("survivor-*.dot"))
    assert len(files) == cert["survivor_count"]
    assert "graph" in files[0].read_text()
