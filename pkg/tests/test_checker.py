import json
import math

import pytest

from checker import (
    PredicateReport, build_run_report, composition_audit, eval_lp_apsp, eval_lp_un, eval_theta, layered_order_holds,
    oracle_separation, psi, psi_prime, reset_latencies, stabilization_time, theta,
)
from checker.stabilization import suffix_start
from core.config import SimulationConfig
from graph.generators import random_connected
from graph.paths import all_pairs_distances, hop_diameter
from netsim.scenario import Scenario
from netsim.simulator import Simulator, run
from netsim.trace import CrossWrite, Trace
from protocols.naming import PHASE_STABLE

PATH_EDGES = [[0, 1, 1.0], [1, 2, 2.0]]
LAYERS = ["un", "apsp", "mdst"]


def named(phase, id_list):
    return {"phase": phase, "id_list": id_list}


def routed(ident, dist):
    return {"id": ident, "dist": dist}


@pytest.mark.parametrize("nodes, holds", [
    ([named(3, [1, 2]), named(3, [1, 2])], True),
    ([named(2, [1, 2]), named(3, [1, 2])], False),
    ([named(3, [1, 1]), named(3, [1, 2])], False),
    ([{"id": 1}, {"id": 2}], True),
])
def test_lp_un(nodes, holds):
    assert eval_lp_un({"edges": [[0, 1, 1.0]], "nodes": nodes}, 0, 1) is holds


@pytest.mark.parametrize("first, second, holds", [
    ({1: 0.0, 2: 4.0}, {1: 4.0, 2: 0.0}, True),
    ({1: 0.0, 2: 4.0}, {2: 0.0}, False),
    ({1: 0.0, 2: math.inf}, {1: 4.0, 2: 0.0}, False),
])
def test_lp_apsp(first, second, holds):
    config = {"edges": [[0, 1, 4.0]], "nodes": [routed(1, first), routed(2, second)]}
    assert eval_lp_apsp(config, 0, 1) is holds


def test_lp_apsp_without_routing_holds():
    assert eval_lp_apsp({"edges": [[0, 1, 1.0]], "nodes": [{"id": 1}, {"id": 2}]}, 0, 1)


def test_global_predicates_over_edges():
    nodes = [dict(named(3, [1, 2, 3]), **routed(i + 1, {1: 0.0, 2: 1.0, 3: 3.0})) for i in range(3)]
    config = {"edges": PATH_EDGES, "nodes": nodes}
    assert psi(config)
    assert psi_prime(config)
    nodes[2]["phase"] = 1
    assert not psi(config)


def test_lone_node_is_its_own_neighborhood():
    config = {"edges": [], "nodes": [dict(named(3, [5]), id=5, dist={5: 0.0}, phi_star=0.0)]}
    assert psi(config)
    assert psi_prime(config)
    assert theta(config)


def test_theta_against_the_oracle():
    config = {"edges": PATH_EDGES, "nodes": [{"phi_star": 1.5} for _ in range(3)]}
    assert oracle_separation(config) == 1.5
    assert theta(config)
    config["nodes"][1]["phi_star"] = 2.0
    assert not theta(config)
    assert not eval_theta({"nodes": [{"phi_star": math.inf}]}, 1.5)


@pytest.mark.parametrize("truth, expected", [
    ([True, False, True, True], 2),
    ([True, True, True, True], 0),
    ([True, True, True, False], None),
    ([], None),
])
def test_suffix_start(truth, expected):
    assert suffix_start(list(range(len(truth))), truth) == expected


def flag_trace(flags):
    trace = Trace()
    for time, flag in enumerate(flags):
        trace.record_config(time, {"edges": [], "nodes": [{"ok": flag}]})
    return trace


def holds_ok(config):
    return config["nodes"][0]["ok"]


def test_stabilization_time():
    report = stabilization_time(flag_trace([False, True, False, True, True, True]), holds_ok, "ok")
    assert report.first_suffix_time == 3
    assert report.stabilized
    assert report.to_dict()["units_evaluated"] == 6
    assert report.to_dict()["units_holding"] == 4


def test_stabilization_is_measured_after_the_last_fault():
    trace = flag_trace([True, True, False, True, True])
    trace.fault_times.append(2)
    report = stabilization_time(trace, holds_ok, "ok")
    assert report.after == 3
    assert report.times == [3, 4]
    assert report.first_suffix_time == 3


def test_unstable_predicate_reports_the_horizon_message():
    report = stabilization_time(flag_trace([True, False]), holds_ok, "ok")
    assert not report.stabilized
    assert report.to_dict()["outcome"] == "did not stabilize within horizon"


def reports(psi_at, psi_prime_at, theta_at):
    return {
        "psi": PredicateReport("psi", first_suffix_time=psi_at),
        "psi_prime": PredicateReport("psi_prime", first_suffix_time=psi_prime_at),
        "theta": PredicateReport("theta", first_suffix_time=theta_at),
    }


@pytest.mark.parametrize("times, holds", [
    ((3, 5, 7), True),
    ((3, 3, 3), True),
    ((3, 5, 4), False),
    ((None, 5, 7), False),
    ((3, 5, None), True),
])
def test_layered_order(times, holds):
    assert layered_order_holds(reports(*times)) is holds


def test_composition_audit_flags_late_naming_writes():
    trace = Trace()
    trace.writes = [
        CrossWrite(2, 0, "un", "apsp", "dist"),
        CrossWrite(9, 1, "un", "apsp", "dist"),
        CrossWrite(9, 1, "apsp", "mdst", "phi_star"),
    ]
    trace.log(1, "node:0", "tick", None, {"layers": LAYERS})
    trace.log(2, "node:0", "tick", None, {"layers": LAYERS})
    audit = composition_audit(trace, 5, LAYERS)
    assert audit.cross_writes_before == 1
    assert [write.time for write in audit.cross_writes_after] == [9]
    assert audit.units_checked == 2
    assert not audit.passed

    clean = composition_audit(trace, 9, LAYERS)
    assert clean.cross_writes_before == 2
    assert clean.passed


def test_composition_audit_counts_skipped_layers():
    trace = Trace()
    trace.log(1, "node:0", "tick", None, {"layers": ["un", "apsp"]})
    audit = composition_audit(trace, 0, LAYERS)
    assert audit.unfair_ticks == 1
    assert not audit.passed
    assert not composition_audit(Trace(), None, LAYERS).passed


def test_composition_audit_ignores_dormant_layers():
    trace = Trace()
    trace.log(1, "node:0", "tick", None, {"layers": ["un"], "enabled": ["un"]})
    trace.log(1, "node:1", "tick", None, {"layers": ["un", "apsp"], "enabled": ["un", "apsp", "mdst"]})
    audit = composition_audit(trace, 0, LAYERS)
    assert audit.unfair_ticks == 1
    assert audit.dormant_steps == 2
    assert audit.to_dict()["dormant_steps"] == 2


def test_reset_latencies():
    trace = Trace()
    trace.log(3, "node:0", "un.reset_start", None, {"gen": 1})
    trace.log(4, "node:2", "un.reset_start", None, {"gen": 1})
    trace.log(3, "node:0", "un.redraw", None, {"gen": 1})
    trace.log(6, "node:1", "un.redraw", None, {"gen": 1})
    trace.log(8, "node:1", "un.reset_start", None, {"gen": 2})
    assert reset_latencies(trace) == [
        {"gen": 1, "start": 3, "end": 6, "latency": 3},
        {"gen": 2, "start": 8, "end": 8, "latency": 0},
    ]


def test_run_report_for_the_routing_stack(tmp_path, path3):
    result = run(Scenario(path3, horizon=30, protocol="apsp"), SimulationConfig())
    report = build_run_report(result)
    assert list(report.predicates) == ["psi_prime"]
    assert report.stabilized
    assert report.layered_order
    assert report.oracle["separation"] == 1.5
    assert report.oracle["mdst_diameter"] == 3
    assert report.composition is None
    assert report.tree is None

    target = tmp_path / "report.json"
    report.save(str(target))
    saved = json.loads(target.read_text())
    assert saved["final_digest"] == result.final_digest
    assert saved["predicates"]["psi_prime"]["outcome"] == "stabilized"
    assert saved["scenario"]["protocol"] == "apsp"


def settle_naming(sim, limit=1000, step=50):
    while sim.time < limit:
        sim.run(sim.time + step)
        nodes = sim.snapshot()["nodes"]
        ids = [node["id"] for node in nodes]
        if len(set(ids)) == len(ids) and all(node["phase"] == PHASE_STABLE for node in nodes):
            return sim.time
    raise AssertionError("naming did not settle")


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(5))
def test_forced_conflict_resets_within_the_bound(seed):
    graph = random_connected(10, 14, 3, seed=seed)
    bound = 2 * hop_diameter(all_pairs_distances(graph)) + graph.n
    sim = Simulator(graph, "un", seed=seed, config=SimulationConfig())
    settled = settle_naming(sim)
    sim.hosts[1].node.un.id = sim.hosts[0].node.un.id
    settle_naming(sim, limit=settled + 1000)

    latencies = reset_latencies(sim.trace)
    assert any(entry["start"] > settled for entry in latencies)
    assert all(entry["latency"] <= bound for entry in latencies)
