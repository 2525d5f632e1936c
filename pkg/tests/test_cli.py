import json

import pytest
from click.testing import CliRunner

from graph.generators import cycle_graph
from graph.io import parse_graph
from main import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def routing_scenario(tmp_path, path3, graph_file):
    graph_file(path3, "g.txt")
    target = tmp_path / "scenario.json"
    target.write_text(json.dumps({"graph": "g.txt", "protocol": "apsp", "horizon": 30}))
    return str(target)


def test_main_without_command_lists_commands(runner):
    result = runner.invoke(cli, [])
    assert result.exit_code == 0


def test_solve_path(runner, path3, graph_file):
    result = runner.invoke(cli, ["solve", "--graph", graph_file(path3)])
    assert result.exit_code == 0
    assert "center 1-2@0.5 sep 1.5 diameter 3.0" in result.output
    assert "tree 0-1 1-2" in result.output


@pytest.mark.parametrize("flags", [[], ["--no-skip"]])
def test_solve_single_edge(runner, single_edge, graph_file, flags):
    result = runner.invoke(cli, ["solve", "--graph", graph_file(single_edge)] + flags)
    assert result.exit_code == 0
    assert "center 0-1@2 sep 2.0 diameter 4.0" in result.output


def test_solve_rejects_disconnected_graph(runner, tmp_path):
    target = tmp_path / "split.txt"
    target.write_text("4 2\n0 1 1\n2 3 1\n")
    result = runner.invoke(cli, ["solve", "--graph", str(target)])
    assert result.exit_code == 2


@pytest.mark.parametrize("weight", ["inf", "nan", "0", "-1"])
def test_solve_rejects_bad_weights(runner, tmp_path, weight):
    target = tmp_path / "bad.txt"
    target.write_text(f"3 2\n0 1 1\n1 2 {weight}\n")
    result = runner.invoke(cli, ["solve", "--graph", str(target)])
    assert result.exit_code == 2


def test_solve_missing_file(runner, tmp_path):
    result = runner.invoke(cli, ["solve", "--graph", str(tmp_path / "absent.txt")])
    assert result.exit_code == 2


def test_gen_path_with_weights(runner, tmp_path):
    target = tmp_path / "p.txt"
    result = runner.invoke(cli, ["gen", "path", "--n", "3", "--weights", "1,2", "--out", str(target)])
    assert result.exit_code == 0
    assert "n=3 m=2" in result.output
    assert target.read_text() == "3 2\n0 1 1\n1 2 2\n"


def test_gen_cycle(runner, tmp_path):
    target = tmp_path / "c.txt"
    result = runner.invoke(cli, ["gen", "cycle", "--n", "4", "--out", str(target)])
    assert result.exit_code == 0
    assert parse_graph(target.read_text()) == cycle_graph(4)


def test_gen_random_connected_is_reproducible(runner, tmp_path):
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    for target in (first, second):
        result = runner.invoke(cli, ["gen", "random-connected", "--n", "8", "--m", "12", "--wmax", "5",
                                     "--seed", "3", "--out", str(target)])
        assert result.exit_code == 0
    assert first.read_text() == second.read_text()


@pytest.mark.parametrize("args", [
    ["random-connected", "--n", "5"],
    ["path", "--n", "3", "--weights", "1,x"],
    ["path", "--n", "3", "--weights", "1"],
])
def test_gen_rejects_bad_parameters(runner, tmp_path, args):
    result = runner.invoke(cli, ["gen"] + args + ["--out", str(tmp_path / "g.txt")])
    assert result.exit_code == 2


def test_simulate_short_horizon_is_not_stabilized(runner, tmp_path, path3, graph_file):
    out = tmp_path / "out" / "report.json"
    result = runner.invoke(cli, ["simulate", "--graph", graph_file(path3), "--horizon", "1", "--out", str(out)])
    assert result.exit_code == 3
    assert "theta did not stabilize within horizon" in result.output
    report = json.loads(out.read_text())
    assert report["stabilized"] is False
    assert report["scenario"]["horizon"] == 1


def test_simulate_rejects_broken_scenarios(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert runner.invoke(cli, ["simulate", "--scenario", str(bad)]).exit_code == 2
    assert runner.invoke(cli, ["simulate"]).exit_code == 2


def test_simulate_routing_scenario(runner, tmp_path, routing_scenario):
    out = tmp_path / "report.json"
    trace = tmp_path / "trace.jsonl"
    result = runner.invoke(cli, ["simulate", "--scenario", routing_scenario, "--out", str(out),
                                 "--trace", str(trace), "--dump-tables"])
    assert result.exit_code == 0
    assert "psi_prime stabilized" in result.output
    assert trace.exists()
    tables = json.loads((tmp_path / "report_tables.json").read_text())["tables"]
    assert len(tables) == 31


def test_check_reproduces_a_report(runner, tmp_path, routing_scenario):
    out = tmp_path / "report.json"
    assert runner.invoke(cli, ["simulate", "--scenario", routing_scenario, "--out", str(out)]).exit_code == 0
    saved = json.loads(out.read_text())

    result = runner.invoke(cli, ["check", str(out)])
    assert result.exit_code == 0
    assert f"check reproduced {saved['final_digest']}" in result.output

    saved["final_digest"] = "0" * 64
    out.write_text(json.dumps(saved))
    result = runner.invoke(cli, ["check", str(out)])
    assert result.exit_code == 1
    assert "check mismatch" in result.output


def test_check_missing_report(runner, tmp_path):
    assert runner.invoke(cli, ["check", str(tmp_path / "absent.json")]).exit_code == 2
