import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hopfbrauer import io
from hopfbrauer.cli import main
from hopfbrauer.exact import FieldSpec
from hopfbrauer.families import HndParams, braided_line, c_object, hnd, r_s
from hopfbrauer.galois import regular_galois
from hopfbrauer.hopf import FDAlgebra
from hopfbrauer.modcat import end_algebra, regular_module

Q = FieldSpec.rational()
F13 = FieldSpec.prime(13, 6)
P33 = ["--n", "2", "--m", "3", "--d", "3,3", "--s", "3", "--p", "13"]


def _objects():
    H4 = hnd(HndParams(1, 1, (1,)), Q)
    yield "h4+R", H4, r_s(1, 1, Q, H4)
    yield "line", braided_line(HndParams(2, 3, (3, 3), 3), F13), None
    yield "C", c_object(4, (7,), HndParams(2, 3, (3, 3), 3), F13), None
    yield "End", end_algebra(regular_module(braided_line(HndParams(1, 1, (1,), 1), Q))), None
    yield "frac", FDAlgebra(H4.mult.scale(Fraction(1, 1)), H4.unit, "A"), None


@pytest.mark.parametrize("label,obj,R", list(_objects()), ids=lambda x: x if isinstance(x, str) else "")
def test_emit_load_roundtrip_is_exact(label, obj, R, tmp_path):
    doc = io.dump(obj, R)
    path = tmp_path / "x.json"
    io.write_json(str(path), doc)
    back = io.Loader().load(io.read_json(str(path)))
    assert io.dump(back, R and io.Loader().rmatrix(doc, back)) == doc
    for attr in ("mult", "unit", "comult", "counit", "antipode", "coaction", "action"):
        if hasattr(obj, attr):
            assert getattr(back, attr) == getattr(obj, attr), attr


def test_rational_scalars_are_strings():
    from hopfbrauer.exact import Matrix

    A = FDAlgebra(Matrix(Q, [[1, 0, 0, Fraction(-3, 4)], [0, 1, 1, 0]]), Matrix(Q, [[1], [0]]), "A")
    doc = io.dump(A)
    assert [1, 1, 0, "-3/4"] in doc["mult"]
    assert doc["format"] == 1


def run(argv, capsys):
    code = main(argv)
    out = json.loads(capsys.readouterr().out)
    return code, out


def test_family_and_verify(tmp_path, capsys):
    h4 = str(tmp_path / "h4.json")
    code, out = run(["family", "--n", "1", "--m", "1", "--d", "1", "--s", "1", "--emit", h4], capsys)
    assert code == 0 and out["pass"] and out["versions"] == {"format": 1}
    code, out = run(["verify", "hopf", h4], capsys)
    assert code == 0
    code, out = run(["verify", "qt", h4], capsys)
    assert code == 0 and out["witness"] is None
    assert {"check", "pass", "details", "witness", "seed", "versions"} <= set(out)


def test_qt_failure_has_witness(tmp_path, capsys):
    h4 = str(tmp_path / "h4.json")
    run(["family", "--n", "1", "--m", "1", "--d", "1", "--s", "1", "--emit", h4], capsys)
    doc = io.read_json(h4)
    doc["rmatrix"] = [[0, 0, "1"]]
    io.write_json(h4, doc)
    code, out = run(["verify", "qt", h4], capsys)
    assert code == 1
    assert out["pass"] is False
    assert out["witness"]["index"] == [1]


def test_input_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", "hopf", str(bad)], capsys)[0] == 2
    assert run(["family", "--n", "1", "--m", "1", "--d", "2", "--s", "1"], capsys)[0] == 2
    assert run(["verify", "hopf", str(tmp_path / "missing.json")], capsys)[0] == 2
    missing = tmp_path / "m.json"
    missing.write_text(json.dumps({"format": 1, "field": {"kind": "rational"}, "dim": 2, "unit": [[0, "1"]]}))
    assert run(["verify", "algebra", str(missing)], capsys)[0] == 2
    oob = tmp_path / "o.json"
    oob.write_text(json.dumps({"format": 1, "field": {"kind": "rational"}, "dim": 1,
                               "mult": [[0, 0, 3, "1"]], "unit": [[0, "1"]]}))
    assert run(["verify", "algebra", str(oob)], capsys)[0] == 2


def test_galois_pipeline(tmp_path, capsys):
    p = lambda name: str(tmp_path / name)
    run(["family", *P33, "--object", "line", "--emit", p("B.json")], capsys)
    run(["family", *P33, "--object", "c", "--a", "2", "--alpha", "1", "--emit", p("S.json")], capsys)
    run(["family", *P33, "--object", "c", "--a", "7", "--alpha", "4", "--emit", p("T.json")], capsys)
    code, out = run(["verify", "galois", p("S.json"), "--over", p("B.json")], capsys)
    assert code == 0
    code, out = run(["galois", "cotensor", p("S.json"), p("T.json"), "--emit", p("C.json")], capsys)
    assert code == 0
    code, out = run(["galois", "invariant", p("C.json")], capsys)
    assert out == {"a": "9", "alpha": ["5"]}
    run(["galois", "opposite", p("S.json"), "--emit", p("O.json")], capsys)
    assert run(["galois", "invariant", p("O.json")], capsys)[1] == {"a": "11", "alpha": ["12"]}
    assert run(["galois", "roundtrip", p("S.json")], capsys)[0] == 0
    code, out = run(["galois", "normal-basis", p("S.json")], capsys)
    assert code == 1 and out["map"] is None
    code, out = run(["galois", "twist", p("B.json"), "--sigma", "0,0,1;1,1,2", "--emit", p("W.json")], capsys)
    assert code == 0
    assert run(["galois", "invariant", p("W.json")], capsys)[1] == {"a": "2", "alpha": ["0"]}


def test_invariant_example_with_two_alphas(tmp_path, capsys):
    t = str(tmp_path / "T.json")
    args = ["family", "--n", "3", "--m", "3", "--d", "3,3,3", "--s", "3", "--p", "13",
            "--object", "c", "--a", "0", "--alpha", "1,0", "--emit", t]
    assert run(args, capsys)[0] == 0
    assert run(["galois", "invariant", t], capsys)[1] == {"a": "0", "alpha": ["1", "0"]}


def test_upsilon_and_azumaya_from_files(tmp_path, capsys):
    B = braided_line(HndParams(1, 1, (1,), 1), Q)
    E = end_algebra(regular_module(B))
    e = str(tmp_path / "E.json")
    io.write_json(e, io.dump(E))
    assert run(["verify", "module-algebra", e], capsys)[0] == 0
    assert run(["verify", "azumaya", e], capsys)[0] == 0
    code, out = run(["galois", "upsilon", e, "--emit", str(tmp_path / "U.json")], capsys)
    assert code == 0
    code, out = run(["galois", "normal-basis", str(tmp_path / "U.json")], capsys)
    assert code == 0 and out["map"] is not None
    r = str(tmp_path / "R.json")
    io.write_json(r, io.dump(regular_galois(B)))
    code, out = run(["galois", "iso", str(tmp_path / "U.json"), r], capsys)
    assert code == 0
    # a plain Hopf document stands for the regular Galois object
    h = str(tmp_path / "B.json")
    io.write_json(h, io.dump(B))
    assert run(["galois", "iso", str(tmp_path / "U.json"), h], capsys)[0] == 0
    assert run(["galois", "invariant", h], capsys)[1] == {"a": "0", "alpha": []}


def test_reports_are_deterministic(tmp_path, capsys):
    t = str(tmp_path / "T.json")
    run(["family", *P33, "--object", "c", "--a", "1", "--alpha", "0", "--emit", t], capsys)
    first = run(["galois", "normal-basis", t, "--seed", "3"], capsys)
    second = run(["galois", "normal-basis", t, "--seed", "3"], capsys)
    assert first == second
    assert first[1]["seed"] == 3


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "hopfbrauer", "family", "--n", "0", "--m", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["document"]["dim"] == 2
