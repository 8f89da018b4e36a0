"""Vertex links as angle-weighted graphs, weighted girth, large-link and flag
conditions, and right-angled hyperbolic polygon trigonometry."""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable

from .cells import Complex

__all__ = [
    "AngleStructure", "LinkGraph", "SimplicialLink", "vertex_link",
    "weighted_girth", "structural_large_check", "regular_polygon_angle",
    "pentagon_side", "flag_check", "boundary_period", "germ_label",
]

TOL = 1e-9


def germ_label(c: Complex, germ: tuple[int, int]) -> str:
    """Label an edge end: '-' at the source of the edge, '+' at the target."""
    eid, end = germ
    return c.label(1, eid) + ("-" if end == 0 else "+")


@dataclass
class AngleStructure:
    """Corner angles in radians, one per (2-cell, boundary slot)."""
    corner_angle: dict[tuple[int, int], float]

    def angle(self, fid: int, slot: int) -> float:
        return self.corner_angle[(fid, slot)]

    def validate(self, c: Complex):
        for (fid, slot), a in self.corner_angle.items():
            if not 0.0 < a <= math.pi + TOL:
                raise ValueError(f"corner angle out of range at {(fid, slot)}")
            if fid not in c.faces or slot >= len(c.faces[fid].boundary):
                raise ValueError(f"dangling corner {(fid, slot)}")


@dataclass
class LinkGraph:
    """A weighted multigraph of directions at a vertex.

    Vertices are edge-end germs; each 2-cell corner contributes one weighted
    edge (weight = the corner angle), so parallel edges and near-bigons are
    preserved.
    """
    nodes: list[Hashable]
    edges: list[tuple[Hashable, Hashable, float, Any]] = field(
        default_factory=list)

    def add(self, u, v, w, tag=None):
        self.edges.append((u, v, w, tag))

    def degree(self, u) -> int:
        return sum((e[0] == u) + (e[1] == u) for e in self.edges)

    def total_weight(self) -> float:
        return sum(e[2] for e in self.edges)

    def dump_text(self, label=str) -> str:
        lines = [f"{label(u)} {label(v)} {w:.12f}" for u, v, w, _ in
                 sorted(self.edges, key=lambda e: (str(e[0]), str(e[1])))]
        return "\n".join(lines) + "\n"


def boundary_period(boundary: tuple[int, ...]) -> int:
    """Smallest cyclic period of the attaching word of a 2-cell."""
    k = len(boundary)
    for p in range(1, k + 1):
        if k % p == 0 and all(boundary[i] == boundary[(i + p) % k]
                              for i in range(k)):
            return p
    return k


def vertex_link(c: Complex, angles: AngleStructure, v: int,
                collapse_periodic: bool = False) -> LinkGraph:
    """The angle-weighted link of a vertex of a 2-complex.

    One link vertex per edge end at v; one link edge per 2-cell corner.  With
    ``collapse_periodic`` corners are counted once per cyclic-symmetry orbit
    of the attaching word, which models complexes in which the cells over a
    proper-power attaching map have been identified to a single cell.
    """
    if v not in c.vertices:
        raise ValueError(f"no vertex {v}")
    nodes = list(c.germs_at(v))
    lg = LinkGraph(nodes=nodes)
    for fid, slot in c.face_corners_at(v):
        if collapse_periodic:
            p = boundary_period(c.faces[fid].boundary)
            if slot >= p:
                continue
        gin, gout = c.face_corner_germs(fid, slot)
        lg.add(gin, gout, angles.angle(fid, slot), (fid, slot))
    return lg


def weighted_girth(lg: LinkGraph) -> float:
    """Length of the shortest essential cycle; ``inf`` for a forest.

    Computed exactly: for every edge, the edge weight plus the shortest path
    between its endpoints with that edge removed; loops count as their own
    weight and parallel edges yield two-edge cycles.
    """
    adj: dict[Any, list[tuple[Any, float, int]]] = {u: [] for u in lg.nodes}
    for idx, (u, v, w, _) in enumerate(lg.edges):
        adj.setdefault(u, []).append((v, w, idx))
        adj.setdefault(v, []).append((u, w, idx))
    best = math.inf
    for idx, (u, v, w, _) in enumerate(lg.edges):
        if u == v:
            best = min(best, w)
            continue
        dist = {u: 0.0}
        heap = [(0.0, 0, u)]
        counter = 1
        while heap:
            d, _, x = heapq.heappop(heap)
            if d > dist.get(x, math.inf) or d >= best - w:
                continue
            if x == v:
                break
            for y, wy, eidx in adj[x]:
                if eidx == idx:
                    continue
                nd = d + wy
                if nd < dist.get(y, math.inf):
                    dist[y] = nd
                    heapq.heappush(heap, (nd, counter, y))
                    counter += 1
        if v in dist:
            best = min(best, w + dist[v])
    return best


def structural_large_check(lg: LinkGraph, parts: tuple[set, set],
                           min_angle: float = math.pi / 2,
                           tol: float = TOL) -> dict:
    """The combinatorial large-link certificate on a designated subgraph.

    Checks that the edges between the designated vertices cross the given
    bipartition, that there are no parallel edges among them, and that every
    such edge has weight at least ``min_angle``; together these force every
    cycle within the subgraph to have length at least 4 * min_angle.
    """
    side_a, side_b = parts
    designated = side_a | side_b
    if side_a & side_b:
        raise ValueError("bipartition sides overlap")
    sub_edges = [e for e in lg.edges
                 if e[0] in designated and e[1] in designated]
    crossing = all((e[0] in side_a) != (e[1] in side_a) for e in sub_edges)
    pairs = [frozenset((e[0], e[1])) for e in sub_edges]
    no_bigons = len(pairs) == len(set(pairs)) and all(
        len(p) == 2 for p in pairs)
    min_weight = min((e[2] for e in sub_edges), default=math.inf)
    ok = crossing and no_bigons and min_weight >= min_angle - tol
    return {
        "ok": ok,
        "bipartite": crossing,
        "no_bigons": no_bigons,
        "min_weight": min_weight,
        "subgraph_edges": len(sub_edges),
    }


def regular_polygon_angle(k: int, side: float) -> float:
    """Interior angle of the regular hyperbolic k-gon with the given side.

    Defined by cos(pi/k) = cosh(side/2) * sin(angle/2); strictly increasing
    in k and strictly decreasing in the side length.
    """
    if k < 3:
        raise ValueError("need k >= 3")
    if side <= 0:
        raise ValueError("need side > 0")
    ratio = math.cos(math.pi / k) / math.cosh(side / 2)
    if ratio >= 1.0:
        raise ValueError("no hyperbolic solution for these parameters")
    return 2.0 * math.asin(ratio)


def pentagon_side() -> float:
    """Side length of the regular right-angled hyperbolic pentagon."""
    return 2.0 * math.acosh(math.cos(math.pi / 5) / math.sin(math.pi / 4))


@dataclass
class SimplicialLink:
    """The simplicial link of a vertex in a complex of dimension <= 3.

    Vertices are edge-end germs, edges come from 2-cell corners, triangles
    from 3-cell corners.  Construction fails on non-simplicial input
    (repeated germs in a corner, or two corners spanning the same germs).
    """
    vertices: set
    edges: set          # frozensets of 2 germs
    triangles: set      # frozensets of 3 germs

    @classmethod
    def at_vertex(cls, c: Complex, v: int) -> "SimplicialLink":
        verts = set(c.germs_at(v))
        edges = set()
        for fid, slot in c.face_corners_at(v):
            gin, gout = c.face_corner_germs(fid, slot)
            if gin == gout:
                raise ValueError(f"loop corner at face {fid} slot {slot}")
            pair = frozenset((gin, gout))
            if pair in edges:
                raise ValueError(f"doubled link edge {pair} at vertex {v}")
            edges.add(pair)
        triangles = set()
        for cid, ci in c.cube_corners_at(v):
            germs = _cube_corner_germs(c, cid, ci)
            if len(set(germs)) != 3:
                raise ValueError(f"degenerate cube corner at {cid}")
            tri = frozenset(germs)
            if tri in triangles:
                raise ValueError(f"doubled link triangle {tri} at vertex {v}")
            for pair in itertools.combinations(germs, 2):
                if frozenset(pair) not in edges:
                    raise ValueError(
                        f"cube corner at {cid} missing link edge {pair}")
            triangles.add(tri)
        return cls(verts, edges, triangles)

    def component_count(self) -> int:
        parent = {u: u for u in self.vertices}

        def root(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for pair in self.edges:
            a, b = tuple(pair)
            parent[root(a)] = root(b)
        return len({root(u) for u in self.vertices})


def _cube_corner_germs(c: Complex, cid: int, ci: int):
    from .cells import corner_bits, edge_pos
    cube = c.cubes[cid]
    x = corner_bits(ci)
    germs = []
    for a in range(3):
        others = [b for b in range(3) if b != a]
        signed = cube.edges[edge_pos(a, x[others[0]], x[others[1]])]
        # germ at the corner: outgoing if the corner is the edge's source
        if (x[a] == 0) == (signed > 0):
            germs.append((abs(signed), 0))
        else:
            germs.append((abs(signed), 1))
    return germs


def flag_check(link: SimplicialLink) -> bool:
    """Gromov's flag condition: every clique of the 1-skeleton spans."""
    adj: dict[Any, set] = {u: set() for u in link.vertices}
    for pair in link.edges:
        a, b = tuple(pair)
        adj[a].add(b)
        adj[b].add(a)
    order = sorted(adj, key=str)
    index = {u: i for i, u in enumerate(order)}
    for a in order:
        later = [b for b in adj[a] if index[b] > index[a]]
        for b in later:
            for cc in later:
                if index[cc] <= index[b] or cc not in adj[b]:
                    continue
                if frozenset((a, b, cc)) not in link.triangles:
                    return False
                # any fourth mutual neighbour would need a 3-simplex,
                # which a 3-dimensional complex cannot provide
                common = adj[a] & adj[b] & adj[cc]
                if any(index[d] > index[cc] for d in common):
                    return False
    return True
