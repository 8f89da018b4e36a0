"""Base graphs used by the pipelines: the four-edge theta graph and the
wedge of two circles subdivided at the flip fixed point."""

from __future__ import annotations

from .cells import CellMap, Complex

__all__ = ["theta_graph", "theta_flip", "wedge_graph", "wedge_flip",
           "loop_graph"]


def theta_graph() -> Complex:
    """Two vertices 0, 1 with edges a, b oriented 0->1 and c, d oriented 1->0.

    The orientations are pinned by requiring the six standard basis loops of
    the punctured square complement to close up; see the pipeline tests.
    """
    g = Complex("theta")
    v0 = g.add_vertex("0", "0")
    v1 = g.add_vertex("1", "1")
    g.add_edge(v0, v1, "a", "a")
    g.add_edge(v0, v1, "b", "b")
    g.add_edge(v1, v0, "c", "c")
    g.add_edge(v1, v0, "d", "d")
    return g


def theta_flip(g: Complex) -> CellMap:
    """The involution fixing both vertices and swapping a<->b, c<->d."""
    def e(k):
        return g.find(1, k)
    vmap = {g.find(0, "0"): g.find(0, "0"), g.find(0, "1"): g.find(0, "1")}
    emap = {e("a"): ("e", e("b"), 1), e("b"): ("e", e("a"), 1),
            e("c"): ("e", e("d"), 1), e("d"): ("e", e("c"), 1)}
    return CellMap(g, g, vmap, emap, name="sigma")


def wedge_graph() -> Complex:
    """Wedge of two circles, the second subdivided at its midpoint p.

    The loop a is based at 0; the circle b is split into b1: 0 -> p and
    b2: p -> 0 so that the flip below is cellular.
    """
    g = Complex("wedge")
    v0 = g.add_vertex("0", "0")
    vp = g.add_vertex("p", "p")
    g.add_edge(v0, v0, "a", "a")
    g.add_edge(v0, vp, "b1", "b1")
    g.add_edge(vp, v0, "b2", "b2")
    return g


def wedge_flip(g: Complex) -> CellMap:
    """Identity on the a-circle, reflection of the b-circle fixing p."""
    vmap = {g.find(0, "0"): g.find(0, "0"), g.find(0, "p"): g.find(0, "p")}
    emap = {g.find(1, "a"): ("e", g.find(1, "a"), 1),
            g.find(1, "b1"): ("e", g.find(1, "b2"), -1),
            g.find(1, "b2"): ("e", g.find(1, "b1"), -1)}
    return CellMap(g, g, vmap, emap, name="sigma")


def loop_graph() -> Complex:
    g = Complex("loop")
    v = g.add_vertex("v", "v")
    g.add_edge(v, v, "e", "e")
    return g
