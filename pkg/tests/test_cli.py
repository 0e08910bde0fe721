from __future__ import annotations

import json

import numpy as np
import pytest

from lsgame.cli import main
from lsgame.gf2core import magic_square_system, read_lsys, write_lsys
from lsgame.presentations import dumps_grp, k_presentation, solution_group
from lsgame.replab.core import perturb, read_rep, write_rep
from lsgame.replab.models import pauli_magic_rep


@pytest.fixture
def files(tmp_path):
    write_lsys(magic_square_system(), tmp_path / "ms.lsys")
    write_rep(pauli_magic_rep(), tmp_path / "pauli.json")
    noisy = perturb(pauli_magic_rep(), 0.02, np.random.default_rng(3),
                    gens=magic_square_system().names)
    write_rep(noisy, tmp_path / "noisy.json")
    (tmp_path / "ms.grp").write_text(dumps_grp(solution_group(magic_square_system())))
    (tmp_path / "k.grp").write_text(dumps_grp(k_presentation()))
    return tmp_path


def test_compile_builtin(files, capsys):
    out = files / "k.lsys"
    prov = files / "prov.json"
    assert main(["compile", "builtin:K", "-o", str(out), "--report", str(prov)]) == 0
    assert out.read_text().splitlines()[0] == "184 235"
    assert read_lsys(out).n == 235
    doc = json.loads(prov.read_text())
    assert [p["name"] for p in doc["passes"]][-1] == "gadgetize"
    summary = json.loads(capsys.readouterr().out)
    assert (summary["variables"], summary["equations"]) == (235, 184)


def test_compile_is_byte_identical(files):
    a, b = files / "a.lsys", files / "b.lsys"
    main(["compile", "builtin:K", "-o", str(a), "--report", str(files / "a.json")])
    main(["compile", "builtin:K", "-o", str(b), "--report", str(files / "b.json")])
    assert a.read_bytes() == b.read_bytes()
    assert (files / "a.json").read_bytes() == (files / "b.json").read_bytes()


def test_forecast_builtin(capsys):
    assert main(["forecast", "builtin:K"]) == 0
    rows = json.loads(capsys.readouterr().out)
    last = rows[-1]
    assert last["forecast"] == {"variables": 235, "equations": 184}
    assert last["measured"] == {"variables": 235, "equations": 184}
    hnn = next(r for r in rows if r["pass"] == "hnn_z2")
    assert hnn["measured"] == {"variables": 14, "equations": 2, "triples": 10}


def test_compile_grp_lpc(files, capsys):
    assert main(["compile", str(files / "ms.grp"), "-o", str(files / "out.lsys")]) == 0
    assert read_lsys(files / "out.lsys").n == 11 * 9 + 1


def test_defect_command(files, capsys):
    assert main(["defect", str(files / "pauli.json"), str(files / "ms.grp")]) == 0
    assert json.loads(capsys.readouterr().out)["epsilon"] < 1e-12


def test_strategy_and_evaluate(files, capsys):
    s = files / "s.json"
    assert main(["strategy", str(files / "pauli.json"), str(files / "ms.lsys"), "-o", str(s)]) == 0
    capsys.readouterr()
    assert main(["evaluate", str(s), str(files / "ms.lsys")]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "i,p_min,bias_min"
    assert len(lines) == 7
    assert all(line.split(",")[1] == "1.000000000" for line in lines[1:])
    assert main(["evaluate", str(s), str(files / "ms.lsys"), "--pairs"]) == 0
    assert capsys.readouterr().out.startswith("i,j,a,b,p")


@pytest.mark.parametrize("lemma,extra", [
    ("involution", []),
    ("abelian", ["--gens", "x1", "x2", "x3"]),
    ("commuting", ["--gens", "x1", "--y", "x2"]),
])
def test_round_command(files, capsys, lemma, extra):
    src = files / ("noisy.json" if lemma != "commuting" else "pauli.json")
    out = files / f"{lemma}.json"
    assert main(["round", str(src), "--lemma", lemma, "-o", str(out)] + extra) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["lemma"] == lemma
    assert read_rep(out).dim == 4


def test_round_split_j(files, capsys):
    assert main(["round", str(files / "noisy.json"), "--lemma", "splitJ",
                 "--presentation", str(files / "ms.grp"), "--delta", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 4
    assert main(["round", str(files / "noisy.json"), "--lemma", "splitJ"]) == 2


def test_homs_command(files, capsys):
    assert main(["homs", str(files / "k.grp"), "--degree", "3", "--gen", "a"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["all_identity"] and summary["count"] == 30


def test_exit_codes(files, capsys):
    assert main(["homs", "builtin:K", "--degree", "9"]) == 3
    assert main(["defect", str(files / "missing.json"), str(files / "ms.grp")]) == 2
    bad = files / "bad.lsys"
    bad.write_text("3 3\n111\n")
    assert main(["strategy", str(files / "pauli.json"), str(bad), "-o", str(files / "x.json")]) == 2
    bad_grp = files / "bad.grp"
    bad_grp.write_text("gen a\nrel a b\n")
    assert main(["homs", str(bad_grp), "--degree", "2"]) == 2
    assert main(["strategy", str(files / "noisy.json"), str(files / "ms.lsys"),
                 "-o", str(files / "y.json")]) == 2
    assert main(["homs", str(files / "k.grp"), "--degree", "2", "--gen", "zz"]) == 2


def test_seed_from_environment(monkeypatch):
    from lsgame.cli import _seed, build_parser
    args = build_parser().parse_args(["selftest"])
    monkeypatch.setenv("LSGAME_SEED", "99")
    assert _seed(args) == 99
    args = build_parser().parse_args(["--seed", "5", "selftest"])
    assert _seed(args) == 5


@pytest.mark.slow
def test_selftest_quick(capsys):
    assert main(["--seed", "1", "selftest", "--quick"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 8
