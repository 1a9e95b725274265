import io
import json
import math

import pytest

from oriented_containers.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    return code, json.loads(out), err


def test_rect_fig1():
    code, doc, _ = call_json("rect", "--vertices", "0,0 1,0 0,1")
    assert code == 0
    assert doc["schema_version"] == 1 and doc["version"]
    assert doc["tolerances"]["tie_rel"] == 1e-9
    r = doc["result"]
    assert r["r_perim"]["perimeter"] == pytest.approx(4)
    assert len(r["area_ties"]) == 2


def test_octagon():
    code, doc, _ = call_json("octagon", "--r1", "10,9.9", "--r2", "11,8.99", "--angle", "80")
    assert code == 0
    assert doc["result"]["valid"] is True
    assert doc["result"]["gap_degrees"] == pytest.approx(80, abs=0.01)


def test_octagon_flag_exit_2():
    code, doc, _ = call_json("octagon", "--angle", "30")
    assert code == 2 and doc["result"]["valid"] is False


def test_octagon_sweep():
    code, doc, _ = call_json("octagon", "--sweep")
    assert 82 <= doc["result"]["sweep"]["largest_valid_deg"] <= 84


def test_missing_file_no_output():
    code, out, err = call("hull", "--file", "missing.json")
    assert code == 1 and out == "" and "missing.json" in err


@pytest.mark.parametrize("argv", [
    ["hull"],
    ["hull", "--vertices", "0,0 1,0", "--fixture", "fig1"],
    ["hull", "--vertices", "0,0 1,x 0,1"],
    ["hull", "--vertices", "0,0 1,1 2,2"],
    ["hull", "--fixture", "nope"],
    ["octagon", "--r1", "9,10"],
    ["octagon", "--angle", "95"],
    ["hexagon"],
    ["hexagon", "--s", "1.5"],
    ["hexagon", "--sweep", "10"],
    ["fig1", "--apex", "190"],
    ["study", "--kind", "triangle", "--family", "rect", "--n", "0"],
    ["study", "--kind", "convex_ngon", "--family", "rect", "--n", "2"],
    ["nosuchcommand"],
])
def test_invalid_input_exit_1(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err.startswith("error:")


def test_file_input_and_hull_warning(tmp_path):
    f = tmp_path / "poly.json"
    f.write_text(json.dumps({"vertices": [[0, 0], [1, 0], [0.2, 0.2], [0, 1], [1, 1]]}))
    code, doc, err = call_json("hull", "--file", str(f))
    assert code == 0 and "convex hull" in err
    assert len(doc["result"]["vertices"]) == 4


def test_bad_json_file(tmp_path):
    f = tmp_path / "poly.json"
    f.write_text('{"points": []}')
    assert call("hull", "--file", str(f))[0] == 1


def test_round_trip(tmp_path):
    code, doc, _ = call_json("hull", "--fixture", "octagon")
    f = tmp_path / "again.json"
    f.write_text(json.dumps({"vertices": doc["input"]["vertices"]}))
    _, doc2, _ = call_json("hull", "--file", str(f))
    assert doc2["input"]["vertices"] == doc["input"]["vertices"]


@pytest.mark.parametrize("cmd", ["isotri", "righttri", "ellipse"])
def test_container_commands(cmd, tmp_path):
    svg = tmp_path / "out.svg"
    code, doc, _ = call_json(cmd, "--fixture", "right_isosceles", "--svg", str(svg))
    assert code == 0 and svg.read_text().startswith("<?xml")
    assert all(math.isfinite(v) for v in [doc["result"]["gap_degrees"]])


def test_render(tmp_path):
    svg = tmp_path / "r.svg"
    assert call("render", "--fixture", "hexagon", "--svg", str(svg))[0] == 0
    assert "<polygon" in svg.read_text()
    assert call("render", "--fixture", "hexagon")[0] == 1


def test_unwritable_svg(tmp_path):
    code, out, _ = call("rect", "--fixture", "fig1", "--svg", str(tmp_path / "no" / "dir" / "x.svg"))
    assert code == 1 and out == ""


def test_hexagon():
    _, doc, _ = call_json("hexagon", "--s", "0.55")
    assert doc["result"]["gap_degrees"] == pytest.approx(45, abs=0.1)
    _, doc, _ = call_json("hexagon", "--sweep", "1000")
    assert doc["result"]["s_area_switch"] == pytest.approx(0.5, abs=2e-3)


def test_fig1_apex():
    _, doc, _ = call_json("fig1", "--apex", "91")
    assert 40 < doc["result"]["gap_degrees"] <= 45


def test_fig7():
    code, doc, _ = call_json("fig7")
    assert code == 0 and doc["result"]["hexagonal"] is True
    assert isinstance(doc["result"]["guess_holds"], bool)


def test_study_csv(tmp_path):
    csv = tmp_path / "s.csv"
    code, doc, _ = call_json("study", "--kind", "triangle", "--family", "rect", "--n", "5", "--seed", "3",
                             "--csv", str(csv))
    assert code == 0 and doc["result"]["aggregates"]["samples"] == 5
    lines = csv.read_text().splitlines()
    assert lines[0].startswith("shape_id,kind,family,gap_degrees") and len(lines) == 6


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["--version"])
    assert exc.value.code == 0
