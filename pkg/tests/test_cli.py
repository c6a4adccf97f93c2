from __future__ import annotations

import json
import math

import pytest

from altquot import builders as B
from altquot.cli import main
from altquot.diagram import to_dict


def lines(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_build_emits_three_diagrams(capsys):
    assert main(["build", "--case", "1", "--p", "7", "--q", "13", "--r", "17"]) == 0
    cap = capsys.readouterr()
    objs = lines(cap.out)
    assert [o["which"] for o in objs] == ["K1", "K2", "K3"]
    assert [o["n"] for o in objs] == [109, 18, 126]
    assert "conditions pass" in cap.err


def test_build_single_and_verify_round_trip(tmp_path, capsys):
    assert main(["build", "--case", "1", "--p", "7", "--q", "13", "--r", "17", "--which", "K3"]) == 0
    path = tmp_path / "k3.json"
    path.write_text(capsys.readouterr().out)
    assert main(["verify", str(path)]) == 0
    out = lines(capsys.readouterr().out)[0]
    assert out["valid"] and out["connected"] and out["bad_cycles"] == []


def test_verify_reports_invalid_diagram(tmp_path, capsys):
    path = tmp_path / "gon.json"
    path.write_text(json.dumps(to_dict(B.qgon(13, 7, 17))))
    assert main(["verify", str(path)]) == 1
    cap = capsys.readouterr()
    assert not lines(cap.out)[0]["valid"]
    assert "13" in cap.err


def test_verify_with_order(tmp_path, capsys, triple_3_17_19):
    path = tmp_path / "k2.json"
    path.write_text(json.dumps(to_dict(triple_3_17_19.K2)))
    assert main(["verify", str(path), "--order"]) == 0
    out = lines(capsys.readouterr().out)[0]
    assert int(out["order"]) == math.factorial(out["n"]) // 2


def test_realize_and_recheck(tmp_path, capsys):
    assert main(["realize", "--p", "7", "--q", "13", "--r", "17", "--case", "1", "--degree", "360"]) == 0
    cap = capsys.readouterr()
    rec = lines(cap.out)[0]
    assert rec["n"] == 360 and rec["certificate"]["conclusion"] == "A_n"
    path = tmp_path / "cert.json"
    path.write_text(cap.out)
    assert main(["recheck", str(path)]) == 0
    assert lines(capsys.readouterr().out)[0]["ok"] is True


def test_recheck_fails_on_tampered_certificate(tmp_path, capsys):
    main(["realize", "--p", "7", "--q", "13", "--r", "17", "--degree", "126", "--no-cache"])
    rec = lines(capsys.readouterr().out)[0]
    rec["certificate"]["exponent"] *= 13
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(rec))
    assert main(["recheck", str(path)]) == 1


def test_realize_unrepresentable(capsys):
    assert main(["realize", "--p", "7", "--q", "13", "--r", "17", "--degree", "200"]) == 1
    out = lines(capsys.readouterr().out)[0]
    assert out["representable"] is False and out["frobenius_bound"] == 279260


def test_enumerate(capsys):
    args = ["enumerate", "--p", "7", "--q", "13", "--r", "17", "--case", "1", "--from", "125", "--to", "127"]
    assert main(args) == 0
    cap = capsys.readouterr()
    assert [o["representable"] for o in lines(cap.out)] == [False, True, False]
    assert "B = 279260" in cap.err


def test_enumerate_with_certify_and_jobs(capsys):
    args = ["enumerate", "--p", "7", "--q", "13", "--r", "17", "--from", "126", "--to", "126", "--certify", "--jobs", "2"]
    assert main(args) == 0
    assert lines(capsys.readouterr().out)[0]["certified"] is True


def test_export_dot(tmp_path, capsys):
    path = tmp_path / "gon.json"
    path.write_text(json.dumps(to_dict(B.qgon(5, 3, 7))))
    assert main(["export", "--dot", str(path)]) == 0
    assert capsys.readouterr().out.lstrip().startswith("digraph")


def test_reduce_signature(capsys):
    assert main(["reduce", "--signature", "(0;2,3,8;0;0)"]) == 0
    cap = capsys.readouterr()
    assert lines(cap.out)[0]["terminal"] == 'Exceptional("(2,3,8)")'
    assert main(["reduce", "--signature", "(0;2,3,6;0;0)"]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["reduce", "--signature", "(0;1,x;0)"],
        ["build", "--case", "4", "--p", "7", "--q", "13", "--r", "17"],
        ["enumerate", "--p", "7", "--q", "13", "--r", "17", "--from", "10", "--to", "5"],
        ["verify", "/nonexistent/file.json"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("altquot:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "--p", "7"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--p", "7", "--q", "13", "--r", "17", "--from", "1", "--to", "2", "--jobs", "0"])
    assert exc.value.code == 2


def test_verify_rejects_non_json(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("not json at all")
    assert main(["verify", str(path)]) == 2
