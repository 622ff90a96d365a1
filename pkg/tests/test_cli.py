import json

import pytest

from lmokit.cli import EXIT_RESOURCE, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lmo_unknot_prints_one(capsys):
    code, out, _ = run(capsys, "lmo", "--n", "1", "--link", "fixtures/unknot+1")
    assert code == 0 and out.strip() == "1"


def test_kirby_stab_basic_passes(capsys):
    code, out, _ = run(capsys, "kirby-check", "--pair", "stab-basic", "--n", "1")
    assert code == 0 and out.startswith("PASS")


def test_dims_table(capsys):
    code, out, _ = run(capsys, "dims", "--space", "D", "--max-degree", "2")
    assert code == 0
    assert out.split("\n")[1:3] == ["D 1 1", "D 2 2"]


def test_json_is_deterministic(capsys):
    args = ("lmo", "--link", "fixtures/trefoil+1", "--json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    doc = json.loads(a)
    assert doc["manifest"]["subcommand"] == "lmo"
    assert len(doc["manifest"]["associator"]) == 16
    assert "wall_time" not in doc["manifest"]


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "lmo", "--link", "fixtures/unknot+1", "--json", "--timing")
    assert "wall_time" in json.loads(out)["manifest"]


def test_jobs_do_not_change_result(capsys, tmp_path):
    comb = tmp_path / "comb.txt"
    comb.write_text("coef 2 ; link trefoil 1\ncoef -1/3 ; link hopf 1 1\n")
    _, a, _ = run(capsys, "lmo", "--combination", str(comb), "--json")
    _, b, _ = run(capsys, "lmo", "--combination", str(comb), "--json", "--jobs", "2")
    da, db = json.loads(a), json.loads(b)
    assert da["result"] == db["result"]


def test_resource_exit_code(capsys):
    code, _, err = run(capsys, "lmo", "--n", "2", "--link", "fixtures/unknot+1")
    assert code == EXIT_RESOURCE and "budget" in err


def test_missing_file_is_usage_error(capsys):
    code, _, _ = run(capsys, "lmo", "--link", "no/such/file")
    assert code == EXIT_USAGE


def test_argparse_usage(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == EXIT_USAGE


def test_weight_and_zhat(capsys):
    code, out, _ = run(capsys, "weight", "--diagram", "fixtures/theta.diagram")
    assert code == 0 and out.strip() == "12"
    code, out, _ = run(capsys, "zhat", "--tangle", "fixtures/g12g23", "--cap", "1")
    assert code == 0 and out.startswith("1 + ")


def test_graph_surgery(capsys):
    code, out, _ = run(capsys, "graph-surgery", "--graph", "theta", "--n", "1")
    assert code == 0 and out.startswith("PASS")
