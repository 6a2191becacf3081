import json

import numpy as np
import pytest

from liberatrix.cli import _jsonable, _parse_pairs, main
from liberatrix.exactla import RatMatrix
from liberatrix.graphs import add_edges, catalog, format_graph_text


@pytest.fixture
def k4k1_matrix(tmp_path):
    p = tmp_path / "a.txt"
    rows = ["5 5"]
    for i in range(4):
        rows.append(" ".join("1" if j < 4 else "0" for j in range(5)))
    rows.append("0 0 0 0 4")
    p.write_text("\n".join(rows) + "\n")
    return str(p)


def test_parse_pairs():
    assert _parse_pairs("3-5,4-5") == ((3, 5), (4, 5))
    assert _parse_pairs("1-1", allow_equal=True) == ((1, 1),)
    with pytest.raises(ValueError):
        _parse_pairs("1-1")
    with pytest.raises(ValueError):
        _parse_pairs("3:5")


def test_verify_exit_codes(k4k1_matrix, tmp_path, capsys):
    # the block-of-ones matrix is the canonical rank-deficient case
    code = main(["verify", "--kind", "ssp", "--graph", "catalog:K4uK1",
                 "--matrix", k4k1_matrix])
    assert code == 1
    assert "answer=False" in capsys.readouterr().out

    # relative to the two-pair supergraph the surviving rows are independent
    h = tmp_path / "h.txt"
    h.write_text(format_graph_text(
        add_edges(catalog("K4uK1"), ((3, 5), (4, 5)))))
    code = main(["verify", "--kind", "ssp", "--graph", "catalog:K4uK1",
                 "--wrt", str(h), "--matrix", k4k1_matrix])
    assert code == 0
    assert "answer=True" in capsys.readouterr().out


def test_libset_check_and_enumerate(k4k1_matrix, capsys):
    code = main(["libset", "--check", "--graph", "catalog:K4uK1",
                 "--matrix", k4k1_matrix, "--beta", "3-5,4-5"])
    assert code == 0
    assert "liberation set: True" in capsys.readouterr().out

    code = main(["libset", "--enumerate", "--graph", "catalog:K4uK1",
                 "--matrix", k4k1_matrix, "--max-size", "2"])
    assert code == 0
    assert "6 minimal" in capsys.readouterr().out


def test_libset_false_exits_one(k4k1_matrix):
    code = main(["libset", "--check", "--graph", "catalog:K4uK1",
                 "--matrix", k4k1_matrix, "--beta", "3-5"])
    assert code == 1


def test_zf_number_and_cover(capsys):
    assert main(["zf", "--number", "--graph", "catalog:P3xP4"]) == 0
    assert "Z = 3" in capsys.readouterr().out

    assert main(["zf", "--cover", "--graph", "catalog:C5",
                 "--filled", "1,3,4,5"]) == 0
    assert main(["zf", "--cover", "--graph", "catalog:C5",
                 "--filled", "1,2"]) == 1


def test_zf_local_cover(capsys):
    code = main(["zf", "--local-cover", "--graph", "catalog:C4",
                 "--graph-h", "catalog:P2", "--pairs", "1-1,2-1,3-2,4-2"])
    assert code == 0
    assert "local cover: True" in capsys.readouterr().out


def test_graph_file_input(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(format_graph_text(catalog("P4")))
    assert main(["zf", "--number", "--graph", str(p)]) == 0


def test_bad_inputs_exit_two(tmp_path, capsys):
    assert main(["zf", "--number", "--graph", "catalog:NOPE"]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["zf", "--closure", "--graph", "catalog:P4"]) == 2
    assert main(["verify", "--kind", "ssp", "--graph", "catalog:P4",
                 "--matrix", str(tmp_path / "missing.txt")]) == 2


def test_liberate_writes_matrix_and_report(k4k1_matrix, tmp_path, capsys):
    out = tmp_path / "lib.txt"
    rep = tmp_path / "rep.json"
    code = main(["liberate", "--graph", "catalog:K4uK1",
                 "--matrix", k4k1_matrix, "--beta", "3-5,4-5",
                 "--seed", "1", "--out", str(out), "--json", str(rep)])
    assert code == 0
    assert out.exists()
    doc = json.loads(rep.read_text())
    assert doc["command"] == "liberate"
    assert doc["verdicts"]["verified"] is True
    assert doc["verdicts"]["multiplicities"] == [3, 2]
    assert doc["version"]
    assert doc["timings"] == {}


def test_json_byte_identical_for_exact_command(k4k1_matrix, tmp_path):
    paths = []
    for tag in ("one", "two"):
        rp = tmp_path / ("%s.json" % tag)
        code = main(["libset", "--check", "--graph", "catalog:K4uK1",
                     "--matrix", k4k1_matrix, "--beta", "3-5,4-5",
                     "--json", str(rp)])
        assert code == 0
        paths.append(rp.read_bytes())
    assert paths[0] == paths[1]


def test_timed_adds_timings(k4k1_matrix, tmp_path):
    rp = tmp_path / "t.json"
    main(["libset", "--check", "--graph", "catalog:K4uK1",
          "--matrix", k4k1_matrix, "--beta", "3-5,4-5",
          "--timed", "--json", str(rp)])
    doc = json.loads(rp.read_text())
    assert doc["timings"]["total_s"] >= 0


def test_realize_shape(tmp_path, capsys):
    code = main(["realize", "--spectrum", "0,1,1,1,4", "--shape", "star",
                 "--seed", "0"])
    assert code == 0
    assert "deviation=" in capsys.readouterr().out


def test_reproduce_command(tmp_path, capsys):
    rp = tmp_path / "r.json"
    code = main(["reproduce", "k4k1", "--seed", "2", "--json", str(rp)])
    assert code == 0
    out = capsys.readouterr().out
    assert "k4k1: pass" in out
    doc = json.loads(rp.read_text())
    assert doc["verdicts"]["ok"] is True
    assert doc["verdicts"]["failed_stage"] is None


def test_seed_env_default(k4k1_matrix, tmp_path, monkeypatch):
    monkeypatch.setenv("LIBERATRIX_SEED", "7")
    rp = tmp_path / "e.json"
    main(["liberate", "--graph", "catalog:K4uK1", "--matrix", k4k1_matrix,
          "--beta", "3-5,4-5", "--json", str(rp)])
    assert json.loads(rp.read_text())["inputs"]["seed"] == 7

    monkeypatch.setenv("LIBERATRIX_SEED", "zebra")
    assert main(["zf", "--number", "--graph", "catalog:P3"]) == 2


def test_jsonable_covers_the_payload_types():
    from fractions import Fraction

    m = RatMatrix.zeros(1, 2)
    m[0, 1] = Fraction(1, 3)
    doc = _jsonable({"f": Fraction(-2, 7), "m": m,
                     "a": np.array([[1.5, 0.0]]), "g": catalog("P2"),
                     "t": (1, "x"), "s": {3, 1}})
    assert doc["f"] == "-2/7"
    assert doc["m"]["entries"] == [["0", "1/3"]]
    assert doc["a"] == [[1.5, 0.0]]
    assert doc["g"]["edges"] == [[1, 2]]
    assert doc["t"] == [1, "x"]
    assert doc["s"] == [1, 3]
