import math
import random

import pytest

from core.config import SimulationConfig
from core.errors import ScenarioError
from protocols.base import NO_ID, Effects, NodeContext
from protocols.mdst import (
    NONE_ELT, Aggregate, Elt, MdstPayload, MdstState, better, convergecast, extract_tree, local_candidates,
    root_broadcast, tick,
)
from protocols.naming import PHASE_DRAW, PHASE_STABLE
from protocols.routing import ROOT, RouteState, VectorMessage
from protocols.stack import Frame, ProtocolNode, get_stack, stack_names

PATH_CENTER = Elt(0.5, 1.5, 2, 3, 2.0)


def vector(sender, dist):
    return VectorMessage(sender, tuple((dest, d, 0) for dest, d in sorted(dist.items())), max(dist.values()))


def payload(parent_id, done_cycle=None, report=None, root_id=1):
    return MdstPayload(root_id, parent_id, done_cycle, report, 0, NONE_ELT, math.inf, math.inf, NO_ID)


@pytest.fixture
def path_routes():
    """Converged routing state of the path a - u (1), u - v (2) with identifiers 1, 2, 3"""
    dists = {1: {1: 0.0, 2: 1.0, 3: 3.0}, 2: {1: 1.0, 2: 0.0, 3: 2.0}, 3: {1: 3.0, 2: 2.0, 3: 0.0}}
    ports = {1: {1: 1.0}, 2: {0: 1.0, 2: 2.0}, 3: {1: 2.0}}
    next_hops = {1: {2: 1, 3: 1}, 2: {1: 0, 3: 2}, 3: {1: 1, 2: 1}}
    routes, ctxs = {}, {}
    for ident in (1, 2, 3):
        vectors = {port: vector(port + 1, dists[port + 1]) for port in ports[ident]}
        routes[ident] = RouteState(True, dict(dists[ident]), {}, next_hops[ident], vectors,
                                   sep=max(dists[ident].values()), d_est=3.0, r_est=2.0)
        ctxs[ident] = NodeContext(ports[ident], random.Random(ident))
    return routes, ctxs


def test_better_orders_by_upbound_then_identifiers():
    assert better(Elt(0.0, 1.5, 2, 3), Elt(0.0, 1.5, 1, 4)) == Elt(0.0, 1.5, 1, 4)
    assert better(NONE_ELT, PATH_CENTER) == PATH_CENTER
    # the vertex sentinel wins ties against an edge point
    assert better(PATH_CENTER, Elt(0.0, 1.5)) == Elt(0.0, 1.5)


def test_aggregate_merge():
    first = Aggregate(PATH_CENTER, 2.0, 1.0, 3)
    second = Aggregate(NONE_ELT, 3.0, 1.0, 2)
    merged = first.merge(second)
    assert merged == Aggregate(PATH_CENTER, 3.0, 1.0, 2)


def test_local_candidate_on_a_single_edge():
    route = RouteState(True, {1: 0.0, 2: 4.0}, nbr_vectors={1: vector(2, {1: 4.0, 2: 0.0})})
    ctx = NodeContext({1: 4.0}, random.Random(0))
    assert local_candidates(route, 1, ctx) == Elt(2.0, 2.0, 1, 2, 4.0)


def test_larger_endpoint_owns_nothing():
    route = RouteState(True, {1: 4.0, 2: 0.0}, nbr_vectors={0: vector(1, {1: 0.0, 2: 4.0})}, r_est=2.0)
    assert local_candidates(route, 2, NodeContext({0: 4.0}, random.Random(0))) == Elt(0.0, 2.0)


def test_local_candidate_on_the_path(path_routes):
    routes, ctxs = path_routes
    assert local_candidates(routes[2], 2, ctxs[2]) == PATH_CENTER
    # the edge a - u cannot beat R = 2
    assert local_candidates(routes[1], 1, ctxs[1]) == Elt(0.0, 2.0)


def test_local_candidate_needs_matching_vectors(path_routes):
    routes, ctxs = path_routes
    routes[2].nbr_vectors[2] = vector(3, {2: 2.0, 3: 0.0})
    assert local_candidates(routes[2], 2, ctxs[2]) is None


def test_convergecast_at_a_leaf(path_routes):
    routes, ctxs = path_routes
    state = MdstState(root_id=1)
    aggregate = convergecast(state, PATH_CENTER, routes[2], 2, NodeContext({}, random.Random(0)))
    assert aggregate == Aggregate(PATH_CENTER, 2.0, 2.0, 2)
    assert state.lam == [PATH_CENTER]
    sentinel = convergecast(state, Elt(0.0, 2.0), routes[3], 3, NodeContext({}, random.Random(0)))
    assert sentinel.best == NONE_ELT


def test_convergecast_waits_for_every_son(path_routes):
    routes, ctxs = path_routes
    state = MdstState(root_id=1, cycle=4)
    state.nbr_payloads = {1: payload(parent_id=1, done_cycle=3)}
    assert convergecast(state, Elt(0.0, 2.0), routes[1], 1, ctxs[1]) is None

    report = Aggregate(PATH_CENTER, 3.0, 2.0, 2)
    state.nbr_payloads = {1: payload(parent_id=1, done_cycle=4, report=report)}
    merged = convergecast(state, Elt(0.0, 2.0), routes[1], 1, ctxs[1])
    assert merged == Aggregate(PATH_CENTER, 3.0, 2.0, 2)
    assert state.lam == [Elt(0.0, 2.0), PATH_CENTER]


def test_root_broadcast_keeps_the_winner(path_routes):
    routes, _ = path_routes
    state = MdstState(cycle=0)
    fx = Effects()
    root_broadcast(state, Aggregate(PATH_CENTER, 3.0, 2.0, 2), routes[1], fx)
    assert state.phi_star == PATH_CENTER
    assert state.r_vertex == 2
    assert (routes[1].d_est, routes[1].r_est) == (3.0, 2.0)
    assert state.cycle == 1
    assert fx.events == [("mdst.cycle", {"cycle": 0, "upbound": 1.5})]

    root_broadcast(state, Aggregate(NONE_ELT, 2.0, 1.0, 2), routes[1], Effects())
    assert state.phi_star == Elt(0.0, 1.0)


def test_extract_tree_on_the_path(path_routes):
    routes, _ = path_routes
    parents = {}
    for ident in (1, 2, 3):
        parents[ident] = extract_tree(MdstState(phi_star=PATH_CENTER), routes[ident], ident)
    # 1 hangs under 2 through port 1, 3 hangs under 2 through port 1
    assert parents == {1: 1, 2: ROOT, 3: 1}


def test_extract_tree_from_a_vertex_center(path_routes):
    routes, _ = path_routes
    state = MdstState(phi_star=Elt(0.0, 2.0), r_vertex=2)
    assert extract_tree(state, routes[2], 2) == ROOT
    assert extract_tree(state, routes[1], 1) == 1
    assert extract_tree(state, routes[3], 3) == 1


def test_extract_tree_without_a_center(path_routes):
    routes, _ = path_routes
    assert extract_tree(MdstState(), routes[1], 1) is None
    assert extract_tree(MdstState(phi_star=Elt(0.5, 1.5, 2, 9, 2.0)), routes[1], 1) is None


def test_tick_while_not_ready_clears_the_layer(path_routes):
    routes, ctxs = path_routes
    state = MdstState(phi_star=PATH_CENTER, root_id=1)
    sent = tick(state, routes[2], 2, ctxs[2], False, Effects())
    assert state.phi_star == NONE_ELT
    assert sent.root_id == NO_ID
    assert sent.report is None


def test_lone_root_closes_a_cycle_every_tick():
    route = RouteState(True, {1: 0.0}, sep=0.0)
    state = MdstState()
    fx = Effects()
    tick(state, route, 1, NodeContext({}, random.Random(0)), True, fx)
    assert state.phi_star == Elt(0.0, 0.0)
    assert state.cycle == 1
    assert extract_tree(state, route, 1) == ROOT


def test_stack_names_and_layers():
    assert stack_names() == ["apsp", "composed", "mdst", "un"]
    assert get_stack("composed").layer_names() == ["un", "apsp", "mdst"]
    assert get_stack("mdst").layer_names() == ["apsp", "mdst"]
    with pytest.raises(ScenarioError, match="Unknown stack"):
        get_stack("paxos")


def test_frame_merge_keeps_the_newest_vector():
    first = Frame(("a",), vector=vector(1, {1: 0.0}))
    merged = first.merge(Frame(("b",)))
    assert merged.un == ("a", "b")
    assert merged.vector == first.vector


def test_routing_stack_uses_fixed_identifiers():
    node = ProtocolNode(get_stack("apsp"), 2, NodeContext({1: 1.0}, random.Random(0)), SimulationConfig())
    assert node.own_id == 3
    assert node.route.dist == {3: 0.0}


def test_naming_gates_the_layers_above():
    node = ProtocolNode(get_stack("composed"), 0, NodeContext({}, random.Random(0)), SimulationConfig())
    assert not node.route.active
    fx = Effects()
    node.on_tick(fx)
    assert node.un.phase == PHASE_STABLE
    assert fx.writes == [("un", "apsp", "dist")]
    assert node.route.dist == {node.own_id: 0.0}
    assert node.snapshot()["tree_parent"] == "root"

    node.un.phase = PHASE_DRAW
    fx = Effects()
    node._sync(fx)
    assert not node.route.active
    assert fx.writes == [("un", "apsp", "dist"), ("apsp", "mdst", "phi_star")]
    assert node.tree_parent() is None


def test_tick_records_which_layers_were_enabled():
    lone = ProtocolNode(get_stack("composed"), 0, NodeContext({}, random.Random(0)), SimulationConfig())
    fx = Effects()
    lone.on_tick(fx)
    assert fx.enabled == fx.acted == ["un", "apsp", "mdst"]

    waiting = ProtocolNode(get_stack("composed"), 0, NodeContext({1: 1.0}, random.Random(0)), SimulationConfig())
    fx = Effects()
    waiting.on_tick(fx)
    assert waiting.un.phase != PHASE_STABLE
    assert fx.enabled == fx.acted == ["un"]
