from __future__ import annotations

import json
import subprocess
import sys

import pytest

from colorednc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_d5(capsys):
    code, out, _ = run(capsys, "enumerate", "--s", "5", "--upper", "0", "--lower", "4")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 5
    assert json.loads(lines[0]) == {"upper": 0, "lower": 4, "blocks": [[1, 2], [3, 4]], "colors": "bwbw"}


@pytest.mark.parametrize("argv,count", [
    (("--s", "3", "--upper", "0", "--lower", "0"), 1),
    (("--s", "inf", "--lower", "2"), 1),
    (("--dbar", "--upper", "2", "--lower", "2"), 3),
])
def test_enumerate_counts(capsys, argv, count):
    code, out, _ = run(capsys, "enumerate", *argv)
    assert code == 0 and len(out.splitlines()) == count


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--s", "5", "--lower", "8")
    assert code == 0 and json.loads(out)["count"] == 249


def test_moments_table(capsys):
    code, out, _ = run(capsys, "moments", "--s", "5", "--R", "4")
    assert out == "r,kappa,moment\n1,0,0\n2,1,1\n3,0,0\n4,3,5\n"
    _, out, _ = run(capsys, "cumulants", "--s", "inf", "--R", "7")
    assert out.splitlines()[-1].startswith("7,0,")
    _, out, _ = run(capsys, "moments", "--s", "3", "--R", "0")
    assert out == "r,kappa,moment\n"


def test_gram(capsys):
    code, out, _ = run(capsys, "gram", "--s", "1", "--lower", "2", "--n", "2")
    assert code == 0 and json.loads(out)["det"] == "128"
    _, out, _ = run(capsys, "gram", "--s", "5", "--lower", "4", "--n", "2")
    assert json.loads(out)["rank"] == 5
    _, out, _ = run(capsys, "gram", "--s", "5", "--lower", "1")
    assert json.loads(out)["det"] == "1"


def test_closure_report(capsys):
    code, out, _ = run(capsys, "closure", "--s", "4", "--max-legs", "4", "--check")
    report = json.loads(out)
    assert code == 0 and report["match"]
    assert {"upper", "lower", "generated", "enumerated", "match"} <= set(report["shapes"][0])


def test_closure_empty_generators(capsys, tmp_path):
    path = tmp_path / "gens.json"
    path.write_text("[]")
    code, out, _ = run(capsys, "closure", "--s", "5", "--generators", str(path), "--max-legs", "4")
    report = json.loads(out)
    assert code == 0 and report["generators"] == [] and not report["match"]
    code, _, _ = run(capsys, "closure", "--s", "5", "--generators", str(path), "--max-legs", "4", "--check")
    assert code == 1


def test_closure_generator_file(capsys, tmp_path):
    path = tmp_path / "gens.jsonl"
    path.write_text('{"upper":0,"lower":2,"blocks":[[1,2]],"colors":"bw"}\n'
                    '{"upper":2,"lower":2,"blocks":[[1,2,3,4]],"colors":"bwbw"}\n')
    code, out, _ = run(capsys, "closure", "--dbar", "--generators", str(path), "--max-legs", "4", "--check")
    assert code == 0 and json.loads(out)["match"]


def test_density_csv(capsys, tmp_path):
    code, out, err = run(capsys, "density", "--s", "5", "--points", "11")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,density" and len(lines) == 12
    assert "atom at 0" in err
    measure = tmp_path / "m.json"
    measure.write_text(json.dumps({"atoms": [{"re": 1.0, "im": 0.0, "w": 1.0}]}))
    code, out, _ = run(capsys, "density", "--measure", str(measure), "--xmin", "0.5", "--xmax", "3.5",
                       "--points", "4")
    assert code == 0 and len(out.splitlines()) == 5


@pytest.mark.parametrize("content", ['{"atoms":[{"re":1', '{"atoms":[{"re":1,"w":-1}]}', '{"nope":1}',
                                     '{"atoms":[{"re":1,"im":1,"w":1}]}'])
def test_malformed_measure(capsys, tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, _, err = run(capsys, "density", "--measure", str(path))
    assert code == 2 and err


def test_sample_is_byte_deterministic(capsys, tmp_path):
    target = tmp_path / "a.csv"
    code, _, _ = run(capsys, "sample", "--s", "5", "--N", "30", "--trials", "2", "--seed", "4", "--out", str(target))
    assert code == 0
    _, out, _ = run(capsys, "sample", "--s", "5", "--N", "30", "--trials", "2", "--seed", "4")
    assert target.read_text() == out
    assert len(out.splitlines()) == 61


def test_verify_pass_and_perturb(capsys):
    code, out, _ = run(capsys, "verify", "--s", "5", "--R", "8")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(capsys, "verify", "--s", "5", "--R", "8", "--perturb")
    assert code == 1 and not json.loads(out)["pass"]


@pytest.mark.parametrize("argv,code", [
    (("enumerate", "--s", "5", "--lower", "40"), 3),
    (("enumerate", "--s", "0"), 2),
    (("enumerate",), 2),
    (("moments", "--s", "5", "--R", "-1"), 2),
    (("moments", "--s", "5", "--R", "100000"), 3),
    (("sample", "--s", "5", "--N", "5000"), 3),
    (("density", "--s", "inf"), 2),
    (("verify", "--s", "x"), 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "colorednc", "moments", "--s", "5", "--R", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "r,kappa,moment\n1,0,0\n2,1,1\n"
