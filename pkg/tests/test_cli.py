"""End-to-end command-line checks: frozen report text, exit codes,
JSON emission, and determinism of repeated runs."""

import json
import re
import subprocess
import sys

import pytest

from frobcode.cli import main

F3_IDENTITY = "ring: GF(3)\nk: 2 n: 2\n1 0\n0 1\n"
Z4_ONE_WEIGHT = "ring: Z4\nk: 1 n: 3\n1 2 3\n"
Z4_ZERO_COLUMN = "ring: Z4\nk: 1 n: 2\n1 0\n"
Z9_IDENTITY = "ring: Z9\nk: 2 n: 2\n1 0\n0 1\n"


def run_cli(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def write_code(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_ring_z4(capsys):
    rc, out, err = run_cli(capsys, ["ring", "Z4"])
    assert rc == 0 and err == ""
    lines = out.splitlines()
    assert "order: 4" in lines
    assert "units: 2" in lines
    assert "character exponent: 4" in lines
    assert "  0: 0" in lines
    assert "  1: 1" in lines
    assert "  2: 2" in lines
    assert "  3: 1" in lines
    assert "zero-weight elements: 0" in lines
    assert "check zero-set: pass" in lines
    assert "check coset-sums: pass" in lines


def test_ring_json_file(capsys, tmp_path):
    path = tmp_path / "ring.json"
    rc, out, err = run_cli(capsys, ["ring", "Z4", "--json", str(path)])
    assert rc == 0
    payload = json.loads(path.read_text())
    assert payload["ring"] == "Z4"
    assert payload["order"] == 4
    assert payload["units"] == 2
    assert payload["weights"] == {"0": "0", "1": "1", "2": "2", "3": "1"}
    assert payload["zero_weight_elements"] == ["0"]
    assert payload["checks"] == {"zero-set": True, "coset-sums": True}


def test_weights_gf4(capsys):
    rc, out, err = run_cli(capsys, ["weights", "GF(2^2)"])
    assert rc == 0
    values = [line.split(": ")[1] for line in out.splitlines()]
    assert sorted(values) == ["0", "4/3", "4/3", "4/3"]


def test_verify_z4(capsys, tmp_path):
    path = tmp_path / "verify.json"
    rc, out, err = run_cli(capsys, ["verify", "Z4", "--json", str(path)])
    assert rc == 0 and err == ""
    payload = json.loads(path.read_text())
    checks = payload["checks"]
    assert checks["zero-set"] == "pass"
    assert checks["coset-sums"] == "pass"
    assert checks["word-correlation-k1"] == "pass"
    assert checks["word-correlation-k2"] == "pass"


def test_verify_fault_injection(capsys):
    rc, out, err = run_cli(capsys, ["verify", "Z4", "--inject-fault"])
    assert rc == 1
    assert "verification failure" in err
    assert "witness" in err
    assert "ideal" in err


def test_verify_sampled_fallback(capsys):
    argv = ["verify", "M2(GF(2))", "--cap", "10"]
    rc, out, err = run_cli(capsys, argv)
    assert rc == 0
    assert "word-correlation-k1: pass (sampled, n=200, seed=0)" in out
    assert "word-correlation-k2: pass (sampled, n=200, seed=0)" in out
    rc2, out2, err2 = run_cli(capsys, argv)
    assert out2 == out


def test_verify_full_respects_cap(capsys):
    rc, out, err = run_cli(capsys,
                           ["verify", "M2(GF(2))", "--full", "--cap", "10"])
    assert rc == 2
    assert "error:" in err


def test_parse_errors_exit_2(capsys):
    for spec in ["Z4x", "Z1", "GF(6)", "M0(GF(2))"]:
        rc, out, err = run_cli(capsys, ["ring", spec])
        assert rc == 2, spec
        assert "error:" in err


def test_missing_file_exit_2(capsys, tmp_path):
    rc, out, err = run_cli(capsys, ["analyze", str(tmp_path / "nope.code")])
    assert rc == 2
    assert "error:" in err


def test_zero_column_exit_2(capsys, tmp_path):
    path = write_code(tmp_path, "zc.code", Z4_ZERO_COLUMN)
    rc, out, err = run_cli(capsys, ["analyze", path])
    assert rc == 2
    assert "column" in err


def test_env_cap_and_override(capsys, tmp_path, monkeypatch):
    path = write_code(tmp_path, "z9.code", Z9_IDENTITY)
    monkeypatch.setenv("FROBCODE_CAP", "10")
    rc, out, err = run_cli(capsys, ["analyze", path])
    assert rc == 2
    assert "error:" in err
    rc, out, err = run_cli(capsys, ["analyze", path, "--cap", "100"])
    assert rc == 0


def test_analyze_f3_identity(capsys, tmp_path):
    path = write_code(tmp_path, "f3.code", F3_IDENTITY)
    rc, out, err = run_cli(capsys, ["analyze", path])
    assert rc == 0
    payload = json.loads(out)
    assert payload["ring"] == "GF(3)"
    assert (payload["k"], payload["n"], payload["size"]) == (2, 2, 9)
    assert payload["b0"] == 1
    assert payload["histogram"] == {"0": 1, "3/2": 4, "3": 4}
    assert payload["modular_index"] == "1/2"
    profile = payload["profile"]
    assert (profile["w1"], profile["w2"]) == ("3/2", "3")
    assert (profile["b1"], profile["b2"]) == (4, 4)
    assert profile["trivial"] is False
    assert payload["lemma_checks"] == {
        "code-correlation": True,
        "class-coset-sums": True,
        "coordinate-identities": True,
    }


def test_analyze_byte_identical(capsys, tmp_path):
    path = write_code(tmp_path, "f3.code", F3_IDENTITY)
    _, first, _ = run_cli(capsys, ["analyze", path])
    _, second, _ = run_cli(capsys, ["analyze", path])
    assert first == second


def test_graph_f3(capsys, tmp_path):
    path = write_code(tmp_path, "f3.code", F3_IDENTITY)
    rc, out, err = run_cli(capsys, ["graph", path])
    assert rc == 0
    assert ("measured:  N=9 K=4 lambda=1 mu=2 trivial=false"
            in out.splitlines())
    assert ("predicted: N=9 K=4 lambda=1 mu=2 trivial=false"
            in out.splitlines())
    assert "graph parameters: pass" in out


def test_graph_dot_output(capsys, tmp_path):
    path = write_code(tmp_path, "f3.code", F3_IDENTITY)
    dot = tmp_path / "f3.dot"
    rc, out, err = run_cli(capsys, ["graph", path, "--dot", str(dot)])
    assert rc == 0
    assert "wrote" in out and "9 vertices, 18 edges" in out
    text = dot.read_text()
    assert text.startswith("graph coset_graph {")
    assert text.count(" -- ") == 18
    assert text.count("[label=") == 9


def test_graph_rejects_one_weight(capsys, tmp_path):
    path = write_code(tmp_path, "ow.code", Z4_ONE_WEIGHT)
    rc, out, err = run_cli(capsys, ["graph", path])
    assert rc == 2
    assert "two-weight" in err


def test_dual_f3(capsys, tmp_path):
    path = write_code(tmp_path, "f3.code", F3_IDENTITY)
    rc, out, err = run_cli(capsys, ["dual", path])
    assert rc == 0
    payload = json.loads(out)
    assert payload["w1_dual"] == "3"
    assert payload["w2_dual"] == "6"
    assert payload["srg_measured"] == [9, 4, 1, 2]
    assert payload["srg_predicted"] == [9, 4, 1, 2]
    assert payload["dual_modular_index"] == "1"
    assert payload["trivial"] is False
    assert len(payload["checks"]) == 8
    assert all(payload["checks"].values())


def test_search_gf3(capsys):
    rc, out, err = run_cli(capsys, ["search", "GF(3)", "k=2", "n_max=4"])
    assert rc == 0
    lines = out.splitlines()
    target = ("[two-weight] points=1,3 r=1/2 n=2 |C|=9 b0=1 w=(3/2,3) "
              "srg=(9,4,1,2) trivial=false dual_w=(3,6) pds=(9,4,1,2)")
    assert target in lines
    assert re.fullmatch(
        r"candidates: \d+ \(one-weight: \d+, two-weight: \d+, mixed: \d+\)",
        lines[-1])
    _, again, _ = run_cli(capsys, ["search", "GF(3)", "k=2", "n_max=4"])
    assert again == out


def test_search_json(capsys, tmp_path):
    path = tmp_path / "search.json"
    rc, out, err = run_cli(capsys, ["search", "GF(3)", "k=2", "n_max=3",
                                    "--json", str(path)])
    assert rc == 0
    payload = json.loads(path.read_text())
    assert payload["ring"] == "GF(3)"
    assert payload["records"]
    for rec in payload["records"]:
        assert rec["classification"] in ("one-weight", "two-weight", "mixed")
        if rec["classification"] == "two-weight" and rec["b0"] == 1:
            assert rec["dual"] is not None
            assert rec["equivalence"]["pds"] is not None


def test_search_dedupe_is_stable(capsys):
    _, plain, _ = run_cli(capsys, ["search", "Z4", "k=2", "n_max=3"])
    _, deduped, _ = run_cli(capsys,
                            ["search", "Z4", "k=2", "n_max=3", "--dedupe"])
    assert plain == deduped


def test_search_index1(capsys):
    rc, out, err = run_cli(capsys,
                           ["search", "GF(3)", "k=2", "n_max=4", "--index1"])
    assert rc == 0
    for line in out.splitlines()[:-1]:
        assert " r=1 " in line


def test_search_bad_params(capsys):
    for argv in (["search", "Z4", "k=x"],
                 ["search", "Z4", "bogus"],
                 ["search", "Z4", "depth=3"]):
        rc, out, err = run_cli(capsys, argv)
        assert rc == 2, argv
        assert "error:" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "frobcode", "weights", "Z4"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "2: 2" in proc.stdout


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2
