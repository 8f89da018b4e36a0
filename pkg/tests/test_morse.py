import pytest

from npcverify.cells import CellSet, Complex
from npcverify.morse import (
    AbstractSimplicial, HeightFunction, ascending_link, collapses_to,
    edge_up_link, is_simplex,
)


def vee_complex():
    """Two rising edges joined by a horizontal top arc and a spanning face."""
    c = Complex("vee")
    v0 = c.add_vertex("v0")
    va = c.add_vertex("va")
    vb = c.add_vertex("vb")
    r1 = c.add_edge(v0, va, "r1")
    r2 = c.add_edge(v0, vb, "r2")
    top = c.add_edge(va, vb, "top")
    c.add_face([r1, top, -r2])
    hf = HeightFunction({r1: 1, r2: 1, top: 0},
                        vertex_levels={v0: 0, va: 1, vb: 1})
    return c, hf, v0, (r1, r2, top)


def test_height_function_validation():
    c, hf, v0, _ = vee_complex()
    hf.validate(c)
    bad = HeightFunction({e: 1 for e in c.edges})
    with pytest.raises(ValueError):
        bad.validate(c)


def test_face_profile():
    c, hf, v0, (r1, r2, top) = vee_complex()
    prof = hf.face_profile(c, 1)
    assert prof["class"] == "spanning"
    assert prof["span"] == 1
    assert prof["total"] == 0


def test_ascending_link_arc():
    c, hf, v0, (r1, r2, top) = vee_complex()
    lk = ascending_link(c, hf, v0)
    assert sorted(lk.nodes) == [(r1, 0), (r2, 0)]
    assert len(lk.arcs) == 1
    assert lk.arcs[0][2] == (top,)
    census = lk.census()
    assert census["components"] == 1
    assert census["singletons"] == []
    assert len(census["trees"]) == 1


def test_descending_link_of_top_vertices():
    c, hf, v0, (r1, r2, top) = vee_complex()
    lk = ascending_link(c, hf, 2, down=True)  # va
    assert lk.nodes == [(r1, 1)]
    assert lk.arcs == []


def test_single_vertical_edge_bottom():
    c = Complex("seg")
    v0 = c.add_vertex()
    v1 = c.add_vertex()
    e = c.add_edge(v0, v1)
    hf = HeightFunction({e: 1}, vertex_levels={v0: 0, v1: 1})
    lk = ascending_link(c, hf, v0)
    assert lk.nodes == [(e, 0)]
    assert lk.census()["components"] == 1
    assert lk.census()["singletons"] == [(e, 0)]


def test_edge_up_link():
    c = Complex("slab")
    v0 = c.add_vertex("u0")
    v1 = c.add_vertex("u1")
    w = c.add_vertex("w")
    a = c.add_edge(v0, v1, "a")
    t1 = c.add_edge(v0, w, "t1")
    t2 = c.add_edge(v1, w, "t2")
    c.add_face([a, t2, -t1])
    hf = HeightFunction({a: 0, t1: 1, t2: 1},
                        vertex_levels={v0: 0, v1: 0, w: 1})
    pts = edge_up_link(c, hf, a)
    assert len(pts) == 1
    assert edge_up_link(c, hf, a, down=True) == []
    with pytest.raises(ValueError):
        edge_up_link(c, hf, t1)


def test_is_simplex_conventions():
    empty = AbstractSimplicial.from_faces([])
    assert is_simplex(empty) == (True, -1)
    point = AbstractSimplicial.from_faces([("x",)])
    assert is_simplex(point) == (True, 0)
    two = AbstractSimplicial.from_faces([("x",), ("y",)])
    ok, _ = is_simplex(two)
    assert not ok
    seg = AbstractSimplicial.from_faces([("x", "y")])
    assert is_simplex(seg) == (True, 1)


def triangle_complex():
    c = Complex("tri")
    vs = [c.add_vertex(i) for i in range(3)]
    e01 = c.add_edge(vs[0], vs[1])
    e12 = c.add_edge(vs[1], vs[2])
    e20 = c.add_edge(vs[2], vs[0])
    c.add_face([e01, e12, e20])
    return c, vs, (e01, e12, e20)


def test_collapse_triangle_to_two_edges():
    c, vs, (e01, e12, e20) = triangle_complex()
    target = CellSet(vids=set(vs), eids={e01, e12})
    res = collapses_to(c, target)
    assert res.status == "ok"
    assert res.sequence.replay(c, target)


def test_collapse_disk_to_nothing_fails():
    c, vs, edges = triangle_complex()
    target = CellSet(vids=set(), eids=set())
    res = collapses_to(c, target, budget=5000)
    assert res.status in ("stuck", "budget")
    assert res.sequence is None


def test_collapse_segment_to_point():
    c = Complex("seg")
    v0 = c.add_vertex()
    v1 = c.add_vertex()
    e = c.add_edge(v0, v1)
    res = collapses_to(c, CellSet(vids={v0}, eids=set()))
    assert res.status == "ok"
    assert res.sequence.steps == [((0, v1), (1, e))]


def test_collapse_respects_loops():
    c = Complex("loopy")
    v = c.add_vertex()
    w = c.add_vertex()
    c.add_edge(v, v)      # loop: w's collapse must not use it
    e = c.add_edge(v, w)
    res = collapses_to(c, CellSet(vids={v}, eids={1}))
    assert res.status == "ok"
    assert res.sequence.steps == [((0, w), (1, e))]
