import pytest

from npcverify.cells import (
    CellMap, CellSet, Complex, EdgePath, complement_of_star, graph_power,
    product_map, projection_map,
)
from npcverify.graphs import loop_graph, theta_graph, theta_flip
from npcverify.homotopy import betti_one, pi1_generators
from npcverify.subdivision import Subdivision, induce_on_subdivision


def test_theta_counts():
    g = theta_graph()
    assert len(g.vertices) == 2 and len(g.edges) == 4
    assert g.euler_characteristic() == -2


def test_theta_squared_counts():
    g2 = graph_power(theta_graph(), 2)
    assert len(g2.vertices) == 4
    assert len(g2.edges) == 16
    assert len(g2.faces) == 16
    assert g2.euler_characteristic() == 4
    g2.validate()


def test_torus_from_loop():
    t = graph_power(loop_graph(), 2)
    assert (len(t.vertices), len(t.edges), len(t.faces)) == (1, 2, 1)
    t.validate()


def test_power_one_is_same_graph():
    g = theta_graph()
    g1 = graph_power(g, 1)
    assert len(g1.vertices) == len(g.vertices)
    assert len(g1.edges) == len(g.edges)
    assert g1.euler_characteristic() == g.euler_characteristic()


def test_theta_cubed_counts_and_validation():
    g3 = graph_power(theta_graph(), 3)
    assert (len(g3.vertices), len(g3.edges)) == (8, 48)
    assert (len(g3.faces), len(g3.cubes)) == (96, 64)
    assert g3.euler_characteristic() == -8
    g3.validate()


def test_chi_multiplicative():
    g = theta_graph()
    chi = g.euler_characteristic()
    for n in (1, 2, 3):
        assert graph_power(g, n).euler_characteristic() == chi ** n


def test_subdivide_theta():
    sub = Subdivision(theta_graph())
    assert len(sub.cx.vertices) == 6
    assert len(sub.cx.edges) == 8
    assert sub.cx.euler_characteristic() == -2


def test_subdivide_single_square():
    c = Complex("square")
    vs = [c.add_vertex(i) for i in range(4)]
    e01 = c.add_edge(vs[0], vs[1])
    e12 = c.add_edge(vs[1], vs[2])
    e23 = c.add_edge(vs[2], vs[3])
    e30 = c.add_edge(vs[3], vs[0])
    c.add_face([e01, e12, e23, e30])
    sub = Subdivision(c)
    assert len(sub.cx.vertices) == 9
    assert len(sub.cx.edges) == 12
    assert len(sub.cx.faces) == 4
    sub.cx.validate()
    assert sub.cx.euler_characteristic() == 1


def test_subdivide_theta_cubed():
    g3 = graph_power(theta_graph(), 3)
    sub = Subdivision(g3)
    cx = sub.cx
    assert len(cx.vertices) == 8 + 48 + 96 + 64
    assert len(cx.edges) == 2 * 48 + 4 * 96 + 6 * 64
    assert len(cx.faces) == 4 * 96 + 12 * 64
    assert len(cx.cubes) == 8 * 64
    assert cx.euler_characteristic() == -8
    cx.validate()


def test_flip_maps_are_cellular():
    g = theta_graph()
    sigma = theta_flip(g)
    sigma.check_cellular()
    g3 = graph_power(g, 3)
    sigma3 = product_map(g, [sigma] * 3, g3, g3, name="sigma3")
    sigma3.check_cellular()
    sig_sq = sigma3.then(sigma3)
    assert sig_sq.same_assignments(CellMap.identity(g3))


def test_projection_commutes_with_flip_on_base():
    g = theta_graph()
    sigma = theta_flip(g)
    g2 = graph_power(g, 2)
    g3 = graph_power(g, 3)
    sigma2 = product_map(g, [sigma] * 2, g2, g2, name="sigma2")
    sigma3 = product_map(g, [sigma] * 3, g3, g3, name="sigma3")
    for i in (1, 2, 3):
        coords = [(i % 3), (i + 1) % 3]
        pr = projection_map(g3, g2, coords, name=f"pr{i}")
        pr.check_cellular()
        lhs = sigma3.then(pr)
        rhs = pr.then(sigma2)
        assert lhs.same_assignments(rhs)


def test_induced_maps_on_subdivision():
    g = theta_graph()
    g2 = graph_power(g, 2)
    g3 = graph_power(g, 3)
    sub2 = Subdivision(g2)
    sub3 = Subdivision(g3)
    sigma = theta_flip(g)
    sigma2 = product_map(g, [sigma] * 2, g2, g2, name="sigma2")
    sigma3 = product_map(g, [sigma] * 3, g3, g3, name="sigma3")
    s2 = induce_on_subdivision(sigma2, sub2, sub2)
    s2.check_cellular()
    s3 = induce_on_subdivision(sigma3, sub3, sub3)
    s3.check_cellular()
    pr1 = projection_map(g3, g2, [1, 2], name="pr1")
    p1 = induce_on_subdivision(pr1, sub3, sub2)
    p1.check_cellular()
    lhs = s3.then(p1)
    rhs = p1.then(s2)
    assert lhs.same_assignments(rhs)


def test_edge_path_ops():
    g = theta_graph()
    a, b = g.find(1, "a"), g.find(1, "b")
    v0 = g.find(0, "0")
    p = EdgePath(v0, (a, -b))
    p.validate(g)
    assert p.is_closed(g)
    q = p.concat(p, g)
    assert q.steps == (a, -b, a, -b)
    assert p.inverse(g).steps == (b, -a)
    assert EdgePath(v0, (a, -a)).reduced().steps == ()


def test_apply_path_drops_degenerate():
    g = theta_graph()
    g2 = graph_power(g, 2)
    pr = projection_map(g2, graph_power(g, 1), [0])
    a = g.find(1, "a")
    v0k = (("v", g.find(0, "0")), ("v", g.find(0, "0")))
    start = g2.find(0, v0k)
    ea_right = g2.find(1, (("v", g.find(0, "0")), ("e", a)))
    loopish = EdgePath(start, (ea_right, -ea_right))
    img = pr.apply_path(loopish)
    assert img.steps == ()


def test_complement_of_star_circle():
    c = Complex("circle")
    v = c.add_vertex("v")
    w = c.add_vertex("w")
    c.add_edge(v, w, "e1")
    c.add_edge(w, v, "e2")
    locus = CellSet(vids={v}, eids=set())
    out = complement_of_star(c, locus)
    assert len(out.vertices) == 1 and len(out.edges) == 0


def test_complement_requires_full_locus():
    g = theta_graph()
    locus = CellSet(vids={g.find(0, "0"), g.find(0, "1")}, eids=set())
    with pytest.raises(ValueError):
        complement_of_star(g, locus)


def test_pi1_wedge_of_two_circles():
    c = Complex("w2")
    v = c.add_vertex("v")
    c.add_edge(v, v, "x")
    c.add_edge(v, v, "y")
    stg = pi1_generators(c, v)
    assert len(stg.gens) == 2
    rank, leftover = stg.free_rank()
    assert (rank, leftover) == (2, [])
    assert betti_one(c) == 2


def test_pi1_torus():
    t = graph_power(loop_graph(), 2)
    v = next(iter(t.vertices))
    stg = pi1_generators(t, v)
    assert len(stg.gens) == 2
    assert betti_one(t) == 2
    word = stg.word_of_path(EdgePath(v, t.faces[1].boundary))
    # commutator boundary word: reduces to length 4 over the two generators
    assert sorted(map(abs, word)) == [1, 1, 2, 2]


def test_dump_text_roundtrip_shape():
    g = theta_graph()
    text = g.dump_text()
    assert text.splitlines()[0].startswith("V 1 ")
    assert any(line.startswith("E ") for line in text.splitlines())
