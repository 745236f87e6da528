import json
import subprocess
import sys

import pytest

from cases import EVEN_STEP
from hoca_lab import cli
from hoca_lab.models import HocaRule, PnuCaRule, lca_1d


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    return {
        "even_step": _write(tmp_path / "even_step.json", EVEN_STEP.to_json()),
        "rule90": _write(tmp_path / "r90.json", lca_1d(2, [1, 0, 1]).to_json()),
        "ident2": _write(
            tmp_path / "id.json", {"kind": "lca", "m": 4, "n": 2, "radius": 0, "matrices": [[[1, 0], [0, 1]]]}
        ),
        "consts": _write(tmp_path / "c.json", {"kind": "frobenius", "m": 2, "n": 2, "row": [[[0, 1]], [[0, 1]]]}),
        "hoca": _write(tmp_path / "h.json", HocaRule(3, 2, 1, [[1, 0, 2], [0, 1, 1]]).to_json()),
        "pnuca": _write(tmp_path / "p.json", PnuCaRule(2, 2, 1, [[1, 0, 0], [0, 0, 1]]).to_json()),
        "point": _write(tmp_path / "pt.json", {"m": 2, "n": 1, "cells": {"0": [1]}}),
        "dir": tmp_path,
    }


def test_analyze_even_step(capsys, files):
    code, out, _ = run(capsys, "analyze", files["even_step"])
    d = json.loads(out)
    assert code == 0
    assert (d["sensitive"], d["equicontinuous"]) == (True, False)
    assert d["factors"] == [
        {"p": 7, "k": 2, "sensitive": True, "witness": {"i": 0, "monomial": [6, 16], "side": "deg+"}}
    ]


def test_analyze_identity_and_rule90(capsys, files):
    d = json.loads(run(capsys, "analyze", files["ident2"])[1])
    assert (d["injective"], d["surjective"]) == (True, True)
    assert d["status"] == "undecided-non-frobenius"
    d = json.loads(run(capsys, "analyze", files["rule90"])[1])
    assert (d["sensitive"], d["surjective"], d["injective"]) == (True, True, False)


def test_analyze_strict_exit_code(capsys, files):
    code, _, err = run(capsys, "analyze", "--strict", files["ident2"])
    assert code == 3
    assert json.loads(err)["code"] == 3


def test_schema_errors(capsys, files, tmp_path):
    bad = _write(tmp_path / "bad.json", {"kind": "lca", "m": 2, "n": 1, "radius": 0, "matrices": [[[5]]]})
    code, _, err = run(capsys, "analyze", bad)
    assert code == 2 and json.loads(err)["code"] == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(capsys, "analyze", str(junk))[0] == 2
    wrong = _write(tmp_path / "wrong.json", {"kind": "hoca", "m": 2})
    assert run(capsys, "convert", wrong, "--to", "frobenius")[0] == 2
    cfg = _write(tmp_path / "cfg3.json", {"m": 3, "n": 1, "cells": {"0": [1]}})
    out = str(tmp_path / "x.pgm")
    assert run(capsys, "simulate", files["rule90"], cfg, "--out", out)[0] == 2


def test_analyze_hoca_equals_converted(capsys, files, tmp_path):
    direct = run(capsys, "analyze", files["hoca"])[1]
    converted = _write(tmp_path / "hf.json", json.loads(run(capsys, "convert", files["hoca"], "--to", "frobenius")[1]))
    assert run(capsys, "analyze", converted)[1] == direct


def test_convert_round_trip(capsys, files, tmp_path):
    f = _write(tmp_path / "f.json", json.loads(run(capsys, "convert", files["hoca"], "--to", "frobenius")[1]))
    back = json.loads(run(capsys, "convert", f, "--to", "hoca")[1])
    assert back == json.loads(open(files["hoca"]).read())


def test_convert_pnuca_and_unsupported(capsys, files):
    code, out, _ = run(capsys, "convert", files["pnuca"], "--to", "lca")
    d = json.loads(out)
    assert code == 0 and (d["n"], d["radius"]) == (2, 1)
    assert run(capsys, "convert", files["rule90"], "--to", "pnuca")[0] == 3
    assert run(capsys, "convert", files["ident2"], "--to", "frobenius")[0] == 3
    code, out, _ = run(capsys, "convert", files["even_step"], "--to", "lca")
    assert code == 0 and json.loads(out)["n"] == 4


def test_simulate_rule90(capsys, files):
    out = files["dir"] / "r90.pgm"
    code, stdout, _ = run(capsys, "simulate", files["rule90"], files["point"], "--steps", "16", "--out", str(out))
    d = json.loads(stdout)
    assert code == 0 and d["window"] == [-16, 16]
    assert d["support"][16] == [-16, 16]
    assert out.read_bytes().startswith(b"P5\n33 17\n255\n")


def test_simulate_zero_steps_csv(capsys, files):
    out = files["dir"] / "t0.csv"
    code, stdout, _ = run(
        capsys, "simulate", files["rule90"], files["point"], "--steps", "0", "--format", "csv", "--window=-2:2", "--out", str(out)
    )
    assert code == 0
    assert out.read_text().splitlines() == ["-2,-1,0,1,2", "0,0,1,0,0"]


def test_simulate_hoca_stack(capsys, files, tmp_path):
    e1 = _write(tmp_path / "e1.json", {"m": 3, "n": 1, "cells": {"0": [1]}})
    e2 = _write(tmp_path / "e2.json", {"m": 3, "n": 1, "cells": {"1": [2]}})
    stacked = _write(tmp_path / "st.json", {"m": 3, "n": 2, "cells": {"0": [1, 0], "1": [0, 2]}})
    a = json.loads(run(capsys, "simulate", files["hoca"], e1, e2, "--steps", "5", "--format", "csv", "--out", str(tmp_path / "a.csv"))[1])
    f = _write(tmp_path / "hf.json", json.loads(run(capsys, "convert", files["hoca"], "--to", "frobenius")[1]))
    b = json.loads(run(capsys, "simulate", f, stacked, "--steps", "5", "--format", "csv", "--out", str(tmp_path / "b.csv"))[1])
    assert a["support"] == b["support"]
    for j in range(2):
        assert (tmp_path / f"a_c{j}.csv").read_text() == (tmp_path / f"b_c{j}.csv").read_text()


def test_simulate_pnuca(capsys, files):
    out = files["dir"] / "p.csv"
    code, stdout, _ = run(capsys, "simulate", files["pnuca"], files["point"], "--steps", "3", "--format", "csv", "--out", str(out))
    assert code == 0 and len(out.read_text().splitlines()) == 5


def test_oracle_reports(capsys, files):
    code, out, _ = run(capsys, "oracle", files["consts"])
    d = json.loads(out)
    assert code == 0 and d["census"]["outcome"] == "cycle" and d["agreement"]["sensitivity"] == "ok"
    d = json.loads(run(capsys, "oracle", files["even_step"], "--periods", "1")[1])
    assert d["census"]["outcome"] == "growth" and d["status"] == "ok"
    d = json.loads(run(capsys, "oracle", files["rule90"], "--periods", "3")[1])
    assert d["periodic"][2]["kernel_witness"] == [1, 1, 1]


def test_oracle_contradiction_exit_code(capsys, files, monkeypatch):
    real = cli.analyze

    def lying(rule):
        out = real(rule)
        out["equicontinuous"] = not out["equicontinuous"]
        return out

    monkeypatch.setattr(cli, "analyze", lying)
    code, out, _ = run(capsys, "oracle", files["rule90"], "--periods", "2")
    assert code == 4 and json.loads(out)["status"] == "contradiction"


def test_oracle_inconclusive(capsys, files):
    code, out, _ = run(capsys, "oracle", files["rule90"], "--max-steps", "2", "--periods", "1")
    assert code == 0 and json.loads(out)["status"] == "inconclusive"


def test_entry_point_is_deterministic(files):
    cmd = [sys.executable, "-m", "hoca_lab", "analyze", files["even_step"]]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["sensitive"] is True
