import io
import json

import pytest

from conftest import FIXTURES
from orthospace.cli import run
from orthospace.greechie import GraphSpec, GreechieDiagram
from orthospace.omlcore import FiniteOml
from orthospace.rays3 import Ray


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    lines = [json.loads(ln) for ln in text.splitlines() if ln.strip()]
    for ln, obj in zip(text.splitlines(), lines):
        # every line re-parses to the same value and re-serialises to the same bytes
        assert json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) == ln
    return lines


def summary(text):
    recs = records(text)
    assert "summary" in recs[-1]
    return recs[-1]["summary"]


def test_check_oml_o6_fails_with_witness():
    code, out, _ = call("check-oml", FIXTURES / "o6.json")
    assert code == 1
    s = summary(out)
    assert s["law"] == "orthomodular" and s["witness_labels"] == ["a", "b"]


@pytest.mark.parametrize("name", ["bool1", "bool2", "bool3", "bool4", "mo1", "mo2", "mo3"])
def test_check_oml_accepts_fixtures(name):
    code, out, _ = call("check-oml", FIXTURES / f"{name}.json")
    assert code == 0 and summary(out)["passed"]


def test_check_oml_covers(tmp_path):
    js = json.loads((FIXTURES / "mo1.json").read_text())
    covers = {"n": 4, "covers": [[0, 1], [0, 2], [1, 3], [2, 3]], "ortho": js["ortho"], "labels": js["labels"]}
    p = tmp_path / "covers.json"
    p.write_text(json.dumps(covers))
    assert call("check-oml", p, "--covers")[0] == 0


def test_witness_verify():
    code, out, _ = call("witness", "--verify")
    assert code == 0
    s = summary(out)
    assert s["rays"] == 47 and s["blocks"] == 31 and s["centers_orthogonal"]
    rays = [Ray.from_json(r["ray"]) for r in records(out)[:-1]]
    assert len(set(rays)) == 47
    assert all(Ray.from_json(r.to_json()).to_json() == r.to_json() for r in rays)


def test_embed_p3_atoms(tmp_path):
    code, out, _ = call("embed", "--graph", FIXTURES / "p3.json", "--stage", "atoms", "--stats")
    assert code == 0
    recs = records(out)
    oml_js = recs[0]["oml"]
    L = FiniteOml.from_json(oml_js)
    assert L.to_json() == oml_js
    emb = recs[1]["embedding"]
    vm = {int(k): v for k, v in emb["vertex_map"].items()}
    assert all(L.is_atom(x) for x in vm.values())
    assert L.orthogonal(vm[0], vm[1]) and L.orthogonal(vm[1], vm[2]) and not L.orthogonal(vm[0], vm[2])
    assert any("stats" in r for r in recs)
    target = tmp_path / "oml.json"
    code, out2, _ = call("embed", "--graph", FIXTURES / "p3.json", "--emit-oml", target)
    assert code == 0 and json.loads(target.read_text()) == oml_js
    assert "oml" not in records(out2)[0]


def test_embed_faithful_nonzero():
    code, out, _ = call("embed", "--graph", FIXTURES / "graphs" / "n2_00.json", "--mode", "faithful", "--stage", "nonzero")
    assert code == 0 and summary(out)["size"] == 10


def test_tao_emits_scalars():
    code, out, _ = call("tao", "--graph", FIXTURES / "p3.json", "--emit-gram")
    assert code == 0
    recs = records(out)
    assert recs[3]["gram"] == [["2", "0", "1"], ["0", "1", "0"], ["1", "0", "2"]]
    assert summary(out)["rank"] == 3


def test_figure_center_mub(tmp_path):
    dot = tmp_path / "f1.dot"
    code, out, _ = call("figure1", "--x", "1", "--y", "2", "--z", "3", "--emit-dot", dot)
    assert code == 0 and summary(out)["rays"] == 22 and summary(out)["min_loop_order"] == 6
    assert dot.read_text().startswith("digraph figure1 {")
    code, out, _ = call("figure1", "--x", "1", "--y", "w", "--z", "1/2", "--field", "Qw")
    assert code == 0 and summary(out)["field"] == "Qw"
    code, out, _ = call("center", "--x", "1", "--y", "w", "--z", "w2")
    assert code == 0 and summary(out)["is_center"] is True
    code, out, _ = call("center", "--x", "1", "--y", "1", "--z", "2")
    assert code == 0 and summary(out)["is_center"] is False and summary(out)["products"] == ["3", "3", "0"]
    code, out, _ = call("mub")
    assert code == 0 and summary(out)["cross_pairs"] == 54


def test_loops_find_render():
    code, out, _ = call("loops", FIXTURES / "figure1.json")
    assert code == 0 and summary(out)["min_loop_order"] == 6
    code, out, _ = call("loops", FIXTURES / "two_block.json")
    assert summary(out)["min_loop_order"] is None
    code, out, _ = call("find-subdiagram", FIXTURES / "triangle.json", FIXTURES / "two_block.json")
    assert code == 0 and records(out)[0]["mapping"] == {"0": "a", "1": "b", "2": "c"}
    code, out, _ = call("find-subdiagram", FIXTURES / "figure1.json", FIXTURES / "two_block.json")
    assert code == 1 and summary(out)["status"] == "none"
    code, out, _ = call("render", "--builtin", "witness")
    assert code == 0 and out.count("shape=box") == 31
    code, out, _ = call("render", FIXTURES / "two_block.json")
    assert code == 0 and out.endswith("}\n")


def test_obstruct_small():
    code, out, _ = call("obstruct", "--samples", "200", "--height", "2", "--seed", "4")
    assert code == 0
    recs = records(out)
    assert recs[0]["sign_certificate"]["min_abs_inner"] == 1
    assert recs[1]["sampled_pairs"]["violations"] == 0
    assert recs[2]["bounded_search"]["status"] == "none"


@pytest.mark.parametrize(
    "argv",
    [
        ["obstruct", "--samples", "300", "--height", "2", "--seed", "11"],
        ["embed", "--graph", str(FIXTURES / "graphs" / "n4_37.json"), "--stats"],
        ["tao", "--graph", str(FIXTURES / "graphs" / "n4_05.json"), "--emit-gram"],
        ["witness", "--verify", "--pretty"],
        ["check-oml", str(FIXTURES / "bool3.json"), "--seed", "2"],
    ],
)
def test_byte_identical_reruns(argv):
    a, b = call(*argv), call(*argv)
    assert a == b and a[1]


def test_graph_fixtures_round_trip():
    files = sorted((FIXTURES / "graphs").glob("*.json"))
    assert len(files) == 1 + 2 + 8 + 64
    for f in files:
        js = json.loads(f.read_text())
        assert GraphSpec.from_json(js).to_json() == js
    for name in ("figure1", "figure2", "witness", "two_block"):
        js = json.loads((FIXTURES / f"{name}.json").read_text())
        assert GreechieDiagram.from_json(js).to_json() == js


@pytest.mark.parametrize(
    "argv",
    [
        ["frob"],
        ["mub", "--bogus"],
        ["check-oml", "no-such-file.json"],
        ["center", "--x", "0", "--y", "1", "--z", "1"],
        ["center", "--x", "1/0", "--y", "1", "--z", "1"],
        ["figure1", "--x", "1", "--y", "2"],
        ["render"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == ""
    assert "error" in json.loads(err.splitlines()[-1])


def test_bad_inputs_exit_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert call("check-oml", p)[0] == 2
    p.write_text(json.dumps({"n": 2, "leq": [[0, 0], [1, 1]], "ortho": [0, 0]}))
    assert call("check-oml", p)[0] == 2
    p.write_text(json.dumps({"n": 2, "edges": [[0, 5]]}))
    assert call("tao", "--graph", p)[0] == 2


def test_size_cap_is_an_input_error(monkeypatch):
    monkeypatch.setenv("ORTHOSPACE_SIZE_CAP", "8")
    code, _, err = call("embed", "--graph", FIXTURES / "p3.json")
    assert code == 2 and "size limit" in err
