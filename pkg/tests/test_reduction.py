"""The end-to-end reduction: geometry of the output model, the 8k + t cut
identity, parity bookkeeping, doubling, and the JSON contract."""

import json
import random
from fractions import Fraction

import pytest

from udgcut.errors import InconsistencyError, InputError
from udgcut.gadget import build_H, h_model
from udgcut.geometry import dist2
from udgcut.graph_core import (complete_graph, cycle_graph, graph,
                               path_graph, random_graph)
from udgcut.reduction import (ROLE_DETOUR_APEX, ROLE_GADGET_W, ROLE_ORIGINAL,
                              ROLE_SUBDIVISION, bisection_double,
                              load_output_json, model_to_json, recover_mc,
                              reduce, to_json, validate_reduction)
from udgcut.solvers import (greedy_tree_decomposition, max_bisection_bruteforce,
                            max_cut_bruteforce, max_cut_treewidth_dp)
from udgcut.udg_model import precision2, validate_model

ALLOWED_EDGE_DIST2 = {Fraction(1), Fraction(1, 2), Fraction(73, 100),
                      Fraction(13, 16), Fraction(9, 16)}


def test_reduce_k2_is_a_path():
    r = reduce(graph(2, [(0, 1)]))
    assert r.k == 0
    assert r.t % 2 == 0
    assert r.result.m == r.result.n - 1
    assert all(r.result.degree(v) <= 2 for v in range(r.result.n))
    # a path is bipartite: its maximum cut is the edge count, so mc = 1 + t
    assert max_cut_treewidth_dp(r.result) == 1 + r.t


def test_reduce_rejects_degree_five():
    with pytest.raises(InputError):
        reduce(graph(6, [(0, i) for i in range(1, 6)]))


def test_reduce_edgeless_and_single_vertex():
    r = reduce(graph(3))
    assert (r.k, r.t, r.result.n) == (0, 0, 3)
    assert validate_model(r.model).ok
    assert reduce(graph(1)).result.n == 1
    assert reduce(graph(0)).result.n == 0


def test_reduce_k4_identity():
    g = complete_graph(4)
    r = reduce(g)
    mc_u = max_cut_treewidth_dp(r.result)
    assert recover_mc(mc_u, r.k, r.t) == max_cut_bruteforce(g)[0] == 4


def test_reduce_k5_identity_and_precision():
    g = complete_graph(5)
    r = reduce(g)
    assert r.k >= 1
    assert precision2(r.model) == Fraction(1, 2)
    mc_u = max_cut_treewidth_dp(r.result)
    assert recover_mc(mc_u, r.k, r.t) == 6


def test_edge_lengths_come_from_the_construction_menu():
    rng = random.Random(7)
    cases = [complete_graph(4), cycle_graph(5),
             random_graph(rng, 7, p=0.5, max_deg=4)]
    for g in cases:
        r = reduce(g)
        for u, v in r.result.edges:
            d = dist2(r.model.points[u], r.model.points[v])
            assert d in ALLOWED_EDGE_DIST2
            assert d <= 1


def test_provenance_roles_and_counters():
    g = complete_graph(4)
    r = reduce(g)
    roles = [r.provenance[v].role for v in range(r.result.n)]
    assert roles[:g.n] == [ROLE_ORIGINAL] * g.n
    assert r.k == sum(1 for x in roles if x == ROLE_GADGET_W) // 4
    on_path = sum(1 for x in roles if x in (ROLE_SUBDIVISION, ROLE_DETOUR_APEX))
    assert on_path == r.t
    assert all(cnt % 2 == 0 for cnt in r.per_edge_subdivisions.values())
    assert sum(r.per_edge_subdivisions.values()) == r.t
    assert set(r.per_edge_subdivisions) == set(g.edges)


def test_route_walk_steps_are_exactly_one_unit():
    from udgcut.drawing import mesh_draw, standardize
    from udgcut.geometry import dist2 as d2
    from udgcut.reduction import _route_mesh_points
    d = standardize(mesh_draw(complete_graph(4)))
    for route in d.routes.values():
        pts = _route_mesh_points(route)
        assert pts[0] == route[0] and pts[-1] == route[-1]
        for a, b in zip(pts, pts[1:]):
            assert d2(a, b) == 1


def test_provenance_origins_point_at_real_objects():
    g = complete_graph(5)
    r = reduce(g)
    centers = {(inst.center.xu, inst.center.yu - 10) for inst in r.gadgets}
    for v in range(r.result.n):
        prov = r.provenance[v]
        if prov.role == ROLE_ORIGINAL:
            assert prov.edge is None and prov.crossing is None
        elif prov.role in (ROLE_SUBDIVISION, ROLE_DETOUR_APEX):
            assert prov.edge in g.edges
        else:
            assert prov.role == ROLE_GADGET_W
            # the recorded crossing sits half a unit below the gadget center
            assert prov.crossing in centers
    # every gadget's vertex ids carry consistent roles
    for inst in r.gadgets:
        for w in inst.w_ids:
            assert r.provenance[w].role == ROLE_GADGET_W


def test_nonadjacent_pairs_are_strictly_farther_than_one():
    r = reduce(cycle_graph(4))
    assert validate_model(r.model).ok
    pts = r.model.points
    for i in range(r.result.n):
        for j in range(i + 1, r.result.n):
            if not r.result.has_edge(i, j):
                assert dist2(pts[i], pts[j]) > 1


def test_abstract_surgery_reconstruction():
    """U(G) as an abstract graph equals G with each edge subdivided t_e times
    and the gadget planted per crossing: certify via vertex degrees and the
    counted identity mc computed by the DP both before and after."""
    g = cycle_graph(5)
    r = reduce(g)
    # degree of an original vertex is preserved
    for v in range(g.n):
        assert r.result.degree(v) == g.degree(v)
    # gadget apexes have degree 2; chain and path vertices degree 2 or more
    for v in range(g.n, r.result.n):
        prov = r.provenance[v]
        if prov.role == ROLE_GADGET_W:
            assert r.result.degree(v) == 2
        elif prov.role == ROLE_DETOUR_APEX:
            assert r.result.degree(v) == 2


def test_gadget_layout_matches_the_model_offsets():
    from udgcut.gadget import V_OFFSETS, W_OFFSETS
    r = reduce(complete_graph(5))
    assert r.gadgets
    for inst in r.gadgets:
        cx, cy = inst.center.xu, inst.center.yu
        for vid, (dx, dy) in zip(inst.v_ids, V_OFFSETS):
            assert r.model.points[vid] == (cx + dx, cy + dy)
        for wid, (dx, dy) in zip(inst.w_ids, W_OFFSETS):
            assert r.model.points[wid] == (cx + dx, cy + dy)


def test_recover_mc_examples():
    assert recover_mc(10, 1, 0) == 2
    assert recover_mc(7, 0, 0) == 7
    assert recover_mc(7, 0, 6) == 1
    with pytest.raises(InconsistencyError):
        recover_mc(7, 1, 0)


def test_bisection_double_trivial_models():
    from udgcut.geometry import Point
    from udgcut.udg_model import ProximityModel
    single = ProximityModel(graph(1), (Point.mesh(0, 0),))
    doubled = bisection_double(single)
    assert doubled.graph.n == 2
    assert max_bisection_bruteforce(doubled.graph)[0] == 0
    k2 = ProximityModel(graph(2, [(0, 1)]), (Point.mesh(0, 0), Point.mesh(1, 0)))
    doubled = bisection_double(k2)
    assert max_bisection_bruteforce(doubled.graph)[0] == 2


def test_bisection_double_h_model():
    doubled = bisection_double(h_model())
    assert validate_model(doubled).ok
    assert doubled.graph.n == 16
    assert max_bisection_bruteforce(doubled.graph)[0] == 20
    assert max_cut_bruteforce(build_H())[0] == 10


def test_bisection_double_reduction_output():
    r = reduce(graph(2, [(0, 1)]))
    doubled = bisection_double(r)
    assert doubled.graph.n == 2 * r.result.n
    assert validate_model(doubled).ok
    # both copies are paths: max bisection is all edges, twice mc
    assert max_cut_treewidth_dp(doubled.graph) == 2 * (1 + r.t)


def test_json_round_trip_and_determinism():
    g = complete_graph(4)
    text1 = to_json(reduce(g))
    text2 = to_json(reduce(g))
    assert text1 == text2
    loaded = load_output_json(text1)
    r = reduce(g)
    assert loaded.model.graph.edges == r.result.edges
    assert loaded.model.points == r.model.points
    assert (loaded.k, loaded.t) == (r.k, r.t)
    payload = json.loads(text1)
    assert payload["scale"] == 20
    assert all(isinstance(rec["x"], int) and isinstance(rec["y"], int)
               for rec in payload["vertices"])
    assert payload["source"]["n"] == 4
    per_edge = {tuple(e): cnt for e, cnt in payload["per_edge_subdivisions"]}
    assert per_edge == r.per_edge_subdivisions
    assert sum(per_edge.values()) == payload["t"]


def test_model_json_for_standalone_models():
    text = model_to_json(h_model())
    loaded = load_output_json(text)
    assert loaded.model.graph.edges == build_H().edges
    assert validate_model(loaded.model).ok


def test_load_output_json_rejects_garbage():
    with pytest.raises(InputError):
        load_output_json("{not json")
    with pytest.raises(InputError):
        load_output_json('{"scale": 7}')


def test_validate_reduction_accepts_all_outputs():
    rng = random.Random(97)
    for _ in range(5):
        g = random_graph(rng, rng.randint(2, 7), p=0.5, max_deg=4)
        validate_reduction(reduce(g))


def test_random_identity_suite():
    rng = random.Random(101)
    for _ in range(6):
        g = random_graph(rng, rng.randint(2, 8), p=rng.uniform(0.3, 0.8), max_deg=4)
        r = reduce(g)
        td = greedy_tree_decomposition(r.result)
        assert td.width <= 12
        mc_u = max_cut_treewidth_dp(r.result, td)
        assert recover_mc(mc_u, r.k, r.t) == max_cut_bruteforce(g)[0]


def test_path_graph_reduction():
    g = path_graph(4)
    r = reduce(g)
    mc_u = max_cut_treewidth_dp(r.result)
    assert recover_mc(mc_u, r.k, r.t) == 3
