import json

import pytest

from tkserver.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_gen_and_check(tmp_path, capsys):
    path = tmp_path / "g.json"
    assert run_cli(capsys, "gen", "layered", '{"k": 2}', "-o", str(path))[0] == 0
    code, out = run_cli(capsys, "check", "--space", str(path))
    doc = json.loads(out.out)
    assert code == 0 and doc["ok"] and doc["vertices"] == 18 and doc["edges"] == 48


def test_check_fails_on_tampered_counts(tmp_path, capsys):
    path = tmp_path / "g.json"
    run_cli(capsys, "gen", "clique", '{"n": 4}', "-o", str(path))
    doc = json.loads(path.read_text())
    doc["edges"] = doc["edges"][:-1]
    path.write_text(json.dumps(doc))
    code, out = run_cli(capsys, "check", "--space", str(path))
    assert code == 1 and not json.loads(out.out)["ok"]


def test_run_outputs_json_and_csv(tmp_path, capsys):
    csv_path = tmp_path / "r.csv"
    code, out = run_cli(capsys, "run", "--alg", "greedy", "--adv", "line", "--params", '{"k": 2}',
                        "--phases", "3", "--opt", "both", "--csv", str(csv_path))
    doc = json.loads(out.out)
    assert code == 0 and doc["dp_opt"] == "3" and doc["cert_opt"] == "3"
    assert csv_path.read_text().startswith("run_id,")


def test_yao(capsys):
    code, out = run_cli(capsys, "yao", "--dist", "rand-strict-line", "--params", '{"k": 2}',
                        "--alg", "greedy", "--samples", "20")
    assert code == 0 and json.loads(out.out)["samples"] == 20


def test_opt_line_and_graph(tmp_path, capsys):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"space": {"kind": "line"}, "initial": [2, 4], "requests": [3, 5, 1]}))
    code, out = run_cli(capsys, "opt", "--instance", str(inst), "--schedule")
    doc = json.loads(out.out)
    assert code == 0 and doc["cost"] == "3" and len(doc["schedule"]) == 3
    g = tmp_path / "g.json"
    run_cli(capsys, "gen", "path", '{"n": 5}', "-o", str(g))
    inst.write_text(json.dumps({"space": json.loads(g.read_text()), "initial": ["0", "4"],
                                "requests": ["2", "2"]}))
    code, out = run_cli(capsys, "opt", "--instance", str(inst), "--model", "distance")
    assert code == 0 and json.loads(out.out)["cost"] == "2"


@pytest.mark.parametrize("argv,code", [
    (["run", "--alg", "greedy", "--adv", "nope"], 2),
    (["run", "--alg", "dc-line", "--adv", "uniform", "--params", '{"k": 2}'], 2),
    (["run", "--alg", "greedy", "--adv", "uniform", "--params", "[1]"], 2),
    (["gen", "layered", '{"k": 9}'], 3),
])
def test_exit_codes(capsys, argv, code):
    got, out = run_cli(capsys, *argv)
    assert got == code and out.err.startswith("error:")


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2
