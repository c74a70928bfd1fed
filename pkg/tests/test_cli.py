import csv
import io
import json
import subprocess
import sys

import pytest

from qaoa_pf.cli import main
from qaoa_pf.graphs import generate_regular, read_graph, write_graph


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / "g.txt"
    write_graph(generate_regular(6, 3, 0), path)
    return path


def test_gen_graph(tmp_path, capsys):
    assert main(["gen-graph", "--n", "8", "--seed", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "8 12"
    out = tmp_path / "er.txt"
    assert main(["gen-graph", "--kind", "er", "--n", "5", "--prob", "1.0", "--out", str(out)]) == 0
    assert read_graph(out).num_edges == 10


def test_gen_graph_infeasible(capsys):
    assert main(["gen-graph", "--n", "5", "--degree", "3"]) == 2
    assert "error:" in capsys.readouterr().err


def test_maxcut(graph_file, capsys):
    main(["maxcut", "--graph", str(graph_file)])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("c_max ")
    assert len(lines[1].split()[1]) == 6


@pytest.mark.parametrize("strategy", ["random", "pf"])
def test_solve(graph_file, capsys, strategy):
    main(["solve", "--graph", str(graph_file), "--strategy", strategy, "--p", "2", "--trials", "2",
          "--max-evals", "100"])
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [r["depth"] for r in rows] == ["1", "2"]
    assert len(rows[1]["best_params"].split(";")) == 4


def test_landscape(graph_file, tmp_path, capsys):
    main(["landscape", "--graph", str(graph_file), "--prefix", "0.5,0.3", "--resolution", "3"])
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4 and len(lines[0].split(",")) == 4
    out = tmp_path / "grid.csv"
    main(["landscape", "--graph", str(graph_file), "--resolution", "2", "--out", str(out)])
    assert len(out.read_text().splitlines()) == 3


def test_experiment_and_compare(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "ensemble": {"kind": "regular", "degree": 3}, "node_counts": [6], "instances_per_n": 1,
        "p_max": 2, "trials_per_depth": 2, "strategy": "random", "master_seed": 1,
        "optimizer": {"max_evals": 100},
    }))
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["experiment", "--config", str(cfg), "--out", str(a), "--workers", "1"]) == 0
    assert main(["experiment", "--config", str(cfg), "--out", str(b), "--strategy", "pf", "--seed", "1",
                 "--workers", "1"]) == 0
    manifest = json.loads((b / "manifest.json").read_text())
    assert manifest["config"]["strategy"] == "parameters_fixing"
    capsys.readouterr()
    out = tmp_path / "cmp.csv"
    assert main(["compare", "--a", str(a), "--b", str(b), "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 2
    # identical depth-1 records: both strategies start from the same seeds
    assert rows[0]["outcome"] == "tie"
    assert "wins" in capsys.readouterr().err


def test_experiment_needs_output(tmp_path):
    with pytest.raises(SystemExit):
        main(["experiment", "--p-max", "1"])


def test_module_entry_point(graph_file):
    res = subprocess.run([sys.executable, "-m", "qaoa_pf", "maxcut", "--graph", str(graph_file)],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("c_max")
