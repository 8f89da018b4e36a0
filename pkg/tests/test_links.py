import math

import pytest
from hypothesis import given, strategies as st

from npcverify.cells import Complex, graph_power
from npcverify.graphs import loop_graph
from npcverify.links import (
    AngleStructure, LinkGraph, SimplicialLink, boundary_period, flag_check,
    pentagon_side, regular_polygon_angle, structural_large_check, vertex_link,
    weighted_girth,
)

PI = math.pi


def square_complex():
    c = Complex("square")
    vs = [c.add_vertex(i) for i in range(4)]
    es = [c.add_edge(vs[i], vs[(i + 1) % 4]) for i in range(4)]
    c.add_face(es)
    return c, vs


def right_angles(c):
    return AngleStructure({(fid, slot): PI / 2
                           for fid, f in c.faces.items()
                           for slot in range(len(f.boundary))})


def test_torus_vertex_link():
    t = graph_power(loop_graph(), 2)
    v = next(iter(t.vertices))
    lg = vertex_link(t, right_angles(t), v)
    assert len(lg.nodes) == 4
    assert len(lg.edges) == 4
    assert all(lg.degree(u) == 2 for u in lg.nodes)
    assert abs(lg.total_weight() - 2 * PI) < 1e-12
    assert abs(weighted_girth(lg) - 2 * PI) < 1e-12


def test_single_square_corner_link():
    c, vs = square_complex()
    lg = vertex_link(c, right_angles(c), vs[0])
    assert len(lg.edges) == 1
    assert abs(lg.edges[0][2] - PI / 2) < 1e-12
    assert weighted_girth(lg) == math.inf


def test_girth_tree_is_infinite():
    lg = LinkGraph(nodes=["a", "b", "c"])
    lg.add("a", "b", 1.0)
    lg.add("b", "c", 2.0)
    assert weighted_girth(lg) == math.inf


def test_girth_multi_edge_bigon():
    lg = LinkGraph(nodes=["a", "b"])
    lg.add("a", "b", 1.0)
    lg.add("a", "b", 1.25)
    assert abs(weighted_girth(lg) - 2.25) < 1e-12


def test_girth_never_increases_under_adding_edges():
    lg = LinkGraph(nodes=list(range(5)))
    for i in range(5):
        lg.add(i, (i + 1) % 5, 1.0)
    g0 = weighted_girth(lg)
    lg.add(0, 2, 0.5)
    assert weighted_girth(lg) <= g0


def test_structural_check_mixed_parts_fails():
    t = graph_power(loop_graph(), 2)
    v = next(iter(t.vertices))
    lg = vertex_link(t, right_angles(t), v)
    minus = {g for g in lg.nodes if g[1] == 0}
    plus = {g for g in lg.nodes if g[1] == 1}
    rep = structural_large_check(lg, (plus, minus))
    assert not rep["bipartite"]
    assert not rep["ok"]


def test_structural_check_good_bipartition():
    lg = LinkGraph(nodes=["a+", "a-", "b+", "b-"])
    lg.add("a+", "b-", PI / 2)
    lg.add("b+", "a-", PI / 2)
    rep = structural_large_check(lg, ({"a+", "b+"}, {"a-", "b-"}))
    assert rep["ok"]


def test_pentagon_side_value():
    s = pentagon_side()
    assert abs(s - 1.0612750619) < 1e-9
    golden = (1 + math.sqrt(5)) / 2
    assert abs(math.cosh(s) - golden) < 1e-12


def test_pentagon_side_bisection_oracle():
    # independent root find for cosh(s/2) * sin(pi/4) = cos(pi/5)
    def f(s):
        return math.cosh(s / 2) * math.sin(PI / 4) - math.cos(PI / 5)
    lo, hi = 0.5, 2.0
    for _ in range(80):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    assert abs(pentagon_side() - lo) < 1e-12


def test_regular_polygon_angle_pentagon_roundtrip():
    s = pentagon_side()
    assert abs(regular_polygon_angle(5, s) - PI / 2) < 1e-9


def test_regular_polygon_angle_hexagon():
    assert abs(regular_polygon_angle(6, pentagon_side()) - 1.7165) < 1e-3


def test_regular_polygon_angle_at_least_right():
    s = pentagon_side()
    for k in range(5, 51):
        assert regular_polygon_angle(k, s) >= PI / 2 - 1e-9


def test_regular_polygon_angle_monotone_in_k():
    s = pentagon_side()
    angles = [regular_polygon_angle(k, s) for k in range(3, 30)]
    assert all(a < b for a, b in zip(angles, angles[1:]))


@given(st.floats(min_value=0.1, max_value=4.0),
       st.floats(min_value=0.05, max_value=1.0))
def test_regular_polygon_angle_decreasing_in_side(side, delta):
    a1 = regular_polygon_angle(7, side)
    a2 = regular_polygon_angle(7, side + delta)
    assert a2 < a1


def test_regular_polygon_angle_errors():
    with pytest.raises(ValueError):
        regular_polygon_angle(2, 1.0)
    with pytest.raises(ValueError):
        regular_polygon_angle(5, 0.0)


def test_boundary_period():
    assert boundary_period((1, 2, 3, 4)) == 4
    assert boundary_period((1, 2, 1, 2)) == 2
    assert boundary_period((5, 5, 5)) == 1


def test_collapse_periodic_counts_once():
    c = Complex("kgon")
    v = c.add_vertex("v")
    e = c.add_edge(v, v, "a1")
    c.add_face([e] * 5)
    angles = AngleStructure({(1, s): 2.0 for s in range(5)})
    full = vertex_link(c, angles, v, collapse_periodic=False)
    once = vertex_link(c, angles, v, collapse_periodic=True)
    assert len(full.edges) == 5
    assert len(once.edges) == 1


def test_flag_three_torus_octahedron():
    t3 = graph_power(loop_graph(), 3)
    v = next(iter(t3.vertices))
    link = SimplicialLink.at_vertex(t3, v)
    assert len(link.vertices) == 6
    assert len(link.edges) == 12
    assert len(link.triangles) == 8
    assert flag_check(link)


def test_flag_empty_triangle_fails():
    link = SimplicialLink(
        vertices={"x", "y", "z"},
        edges={frozenset(p) for p in (("x", "y"), ("y", "z"), ("x", "z"))},
        triangles=set())
    assert not flag_check(link)


def test_flag_theta_cubed_vertices():
    from npcverify.graphs import theta_graph
    g3 = graph_power(theta_graph(), 3)
    for v in g3.vertices:
        assert flag_check(SimplicialLink.at_vertex(g3, v))
