import json

import pytest

from majork.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_rearrange(capsys):
    code, out = run(capsys, "rearrange", "--x", "0,2,-1")
    assert code == 0 and out["x_star"]["values"] == ["2", "1", "0"]


def test_kfunc(capsys):
    code, out = run(capsys, "kfunc", "--t", "3/2", "--x", "3,1,2")
    assert code == 0 and out["K"] == "4"
    code, out = run(capsys, "kfunc", "--couple", "1,q", "--t", "1", "--x", "1,1", "--q", "2")
    assert code == 0 and abs(out["K"]["value"] - 2 ** 0.5) < 1e-9
    assert main(["kfunc", "--couple", "1,q", "--t", "1", "--x", "1,1"]) == 2


def test_majorize_exit_codes(capsys):
    code, out = run(capsys, "majorize", "check", "--x", "2,1", "--y", "3/2,0")
    assert code == 0 and out["holds"]
    code, out = run(capsys, "majorize", "check", "--x", "1,1", "--y", "2,0")
    assert code == 1 and out["first_violation"] == 1
    code, out = run(capsys, "majorize", "check", "--kind", "sq", "--u", "2,0", "--v", "1,1", "--q", "2")
    assert code == 1


def test_transfer(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out = run(capsys, "transfer", "--x", "2,1", "--y", "3/2,0", "--json", str(path))
    assert code == 0 and out["check"] == "exact"
    assert json.loads(path.read_text()) == out
    assert main(["transfer", "--x", "1,1", "--y", "2,0"]) == 1


def test_procp(capsys):
    code, out = run(capsys, "procp", "run", "--x", "3,1,1", "--y", "2,2,1", "--q", "2", "--space", "l1")
    assert code == 0 and out["bound_holds"] and out["C3"] == "9225/1024"
    code, out = run(capsys, "procp", "run", "--raw", "--x", "5,1,1,1,1,1,1,1,1,1", "--y", "2,2,2,2,2",
                    "--q", "2")
    assert code == 0 and [s["outcome"] for s in out["steps"]] == ["O-1", "O-3"]
    assert main(["procp", "run", "--raw", "--x", "1,1", "--y", "1,1", "--q", "2"]) == 1


def test_space(capsys):
    code, out = run(capsys, "space", "norm", "--space", "l2", "--x", "3,4")
    assert code == 0 and out["norm"] == "5"
    code, out = run(capsys, "space", "sq-probe", "--space", "l1", "--q", "2", "--trials", "20")
    assert code == 0 and out["violations"] == []


def test_verify_and_replay(capsys):
    code, out = run(capsys, "verify", "thm-enough", "--space", "l1", "--trials", "10", "--seed", "4")
    assert code == 0 and out["pass"] is True and out["seed"] == 4
    code, out = run(capsys, "verify", "thm-enough", "--space", "l1", "--C", "1/2", "--trials", "10")
    assert code == 1
    replay = out["violations"][0]["replay"].split()[1:]
    code, again = run(capsys, *replay)
    assert code == 1 and again["violations"][-1]["witness"] == out["violations"][0]["witness"]


def test_bad_mode_and_space(capsys):
    assert main(["space", "norm", "--space", "nope", "--x", "1"]) == 2
    with pytest.raises(SystemExit):
        main(["rearrange"])
