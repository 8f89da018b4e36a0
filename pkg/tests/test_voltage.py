import pytest

from npcverify.cells import Complex, EdgePath, graph_power
from npcverify.graphs import loop_graph
from npcverify.homotopy import SpanningTreeGens
from npcverify.perm import Perm
from npcverify.voltage import (
    VoltageAssignment, build_cover, cover_connected, graph_monodromy_orbits,
    lift_automorphism, pullback_voltages, sheet_index, sheet_triple,
    triple_voltage, voltage_complete,
)


def two_loop_rose():
    c = Complex("rose")
    v = c.add_vertex("v")
    c.add_edge(v, v, "x")
    c.add_edge(v, v, "y")
    return c, v


def test_holonomy_is_homomorphism():
    c, v = two_loop_rose()
    a = Perm.parse("(1 2 3)", 3)
    b = Perm.parse("(1 2)", 3)
    va = VoltageAssignment(c, 3, {1: a, 2: b})
    p = EdgePath(v, (1, 2))
    q = EdgePath(v, (-1,))
    assert va.holonomy(p) == a * b
    assert va.holonomy(p.concat(q, c)) == va.holonomy(p) * va.holonomy(q)
    assert va.holonomy(p.inverse(c)) == va.holonomy(p).inverse()


def test_tree_loops_have_identity_holonomy():
    c = Complex("path")
    v0 = c.add_vertex()
    v1 = c.add_vertex()
    e = c.add_edge(v0, v1)
    va = VoltageAssignment(c, 2, {e: Perm.identity(2)})
    assert va.holonomy(EdgePath(v0, (e, -e))).is_identity()


def test_voltage_complete_torus_commuting():
    t = graph_power(loop_graph(), 2)
    e1, e2 = sorted(t.edges)
    a = Perm.parse("(1 2 3)", 3)
    out = voltage_complete(t, {e1: a, e2: a * a}, 3)
    out.check_flat()
    # completion is order independent
    out2 = voltage_complete(t, {e1: a, e2: a * a}, 3, reverse_order=True)
    assert out.voltages == out2.voltages


def test_voltage_complete_torus_noncommuting_fails():
    t = graph_power(loop_graph(), 2)
    e1, e2 = sorted(t.edges)
    a = Perm.parse("(1 2 3)", 3)
    b = Perm.parse("(1 2)", 3)
    with pytest.raises(ValueError):
        voltage_complete(t, {e1: a, e2: b}, 3)


def test_voltage_complete_solves_single_unknown():
    c = Complex("bigon")
    v = c.add_vertex()
    w = c.add_vertex()
    e1 = c.add_edge(v, w)
    e2 = c.add_edge(v, w)
    c.add_face([e1, -e2])
    a = Perm.parse("(1 2 3 4)", 4)
    out = voltage_complete(c, {e1: a}, 4)
    assert out.voltages[e2] == a


def test_voltage_complete_stalls_without_generators():
    c = Complex("rose+")
    v = c.add_vertex()
    c.add_edge(v, v, "x")
    with pytest.raises(ValueError):
        voltage_complete(c, {}, 2)


def test_sheet_indexing_roundtrip():
    for i in (1, 2, 5):
        for j in (1, 3):
            for k in (1, 4, 5):
                assert sheet_triple(sheet_index((i, j, k))) == (i, j, k)


def test_triple_voltage_componentwise():
    a = Perm.parse("(1 2)", 5)
    b = Perm.parse("(2 3)", 5)
    c = Perm.parse("(4 5)", 5)
    t = triple_voltage(a, b, c)
    assert t.degree == 125
    s = sheet_index((1, 2, 4))
    assert sheet_triple(t(s)) == (2, 3, 5)


def test_cover_connected_circle():
    c = Complex("circle")
    v = c.add_vertex()
    e = c.add_edge(v, v)
    n = 6
    va = VoltageAssignment(c, n, {e: Perm.from_cycles([tuple(range(1, n + 1))],
                                                      n)})
    gens = SpanningTreeGens(c, v)
    connected, orbit = cover_connected(va, gens)
    assert connected and orbit == n
    cover = build_cover(va)
    assert cover.component_count() == 1
    assert len(cover.complex.vertices) == n
    assert len(cover.complex.edges) == n


def test_cover_trivial_voltages_disconnected():
    c = Complex("circle")
    v = c.add_vertex()
    e = c.add_edge(v, v)
    va = VoltageAssignment(c, 5, {e: Perm.identity(5)})
    gens = SpanningTreeGens(c, v)
    connected, orbit = cover_connected(va, gens)
    assert not connected and orbit == 1
    assert build_cover(va).component_count() == 5


def test_build_cover_torus_chi_and_fibers():
    t = graph_power(loop_graph(), 2)
    e1, e2 = sorted(t.edges)
    a = Perm.parse("(1 2 3)", 3)
    va = voltage_complete(t, {e1: a, e2: a}, 3)
    cover = build_cover(va)
    cx = cover.complex
    assert cx.euler_characteristic() == 3 * t.euler_characteristic()
    base_v = next(iter(t.vertices))
    assert cover.fiber_size(base_v) == 3
    # projection of every derived face boundary equals the base boundary
    for fid, f in cx.faces.items():
        base_fid = f.key[1]
        want = t.faces[base_fid].boundary
        got = tuple((1 if s > 0 else -1) * cx.edges[abs(s)].key[1]
                    for s in f.boundary)
        assert got == want


def test_cover_of_cube_complex():
    t3 = graph_power(loop_graph(), 3)
    es = sorted(t3.edges)
    a = Perm.parse("(1 2)", 2)
    va = voltage_complete(t3, {es[0]: a, es[1]: a, es[2]: a}, 2)
    cover = build_cover(va)
    cover.complex.validate()
    assert cover.complex.euler_characteristic() == 0
    assert len(cover.complex.cubes) == 2


def test_graph_monodromy_orbits():
    a = Perm.parse("(1 2 3 4 5)", 5)
    rep = graph_monodromy_orbits(["u", "v"],
                                 [("u", "v", a), ("u", "v",
                                                  Perm.identity(5))], 5)
    # cover of a bigon with holonomy a 5-cycle: connected
    assert rep["components"] == 1
    assert len(rep["generators"]) == 1
    rep2 = graph_monodromy_orbits(["u"], [], 5)
    assert rep2["components"] == 5


def test_lift_automorphism_identity():
    c, v = two_loop_rose()
    a = Perm.parse("(1 2 3)", 3)
    b = Perm.parse("(1 2)", 3)
    va = VoltageAssignment(c, 3, {1: a, 2: b})
    gens = SpanningTreeGens(c, v)
    from npcverify.cells import CellMap
    ident = CellMap.identity(c)
    rep = lift_automorphism(va, ident, gens)
    assert rep["lifts"]
    assert rep["fiber_permutation"].is_identity()


def test_lift_automorphism_swap_loops():
    c, v = two_loop_rose()
    a = Perm.parse("(1 2 3)", 3)
    va = VoltageAssignment(c, 3, {1: a, 2: a})
    gens = SpanningTreeGens(c, v)
    from npcverify.cells import CellMap
    swap = CellMap(c, c, {v: v}, {1: ("e", 2, 1), 2: ("e", 1, 1)})
    rep = lift_automorphism(va, swap, gens)
    assert rep["lifts"]
    assert rep["fiber_permutation"].is_identity()


def test_lift_automorphism_obstruction():
    c, v = two_loop_rose()
    a = Perm.parse("(1 2 3)", 3)
    b = Perm.parse("(1 2)", 3)
    va = VoltageAssignment(c, 3, {1: a, 2: b})
    gens = SpanningTreeGens(c, v)
    from npcverify.cells import CellMap
    swap = CellMap(c, c, {v: v}, {1: ("e", 2, 1), 2: ("e", 1, 1)})
    rep = lift_automorphism(va, swap, gens)
    assert not rep["lifts"]
    assert "obstruction" in rep
