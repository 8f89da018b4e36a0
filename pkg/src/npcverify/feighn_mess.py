"""The wedge-of-circles involution pipeline: fixed sets of the coordinatewise
flip on powers of the wedge, horizontal-cell link classification, and a
finite-ball fixed-point check for the preferred lift."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cells import CellMap, Complex, graph_power, product_map
from .graphs import wedge_flip, wedge_graph
from .morse import AbstractSimplicial, HeightFunction, is_simplex

__all__ = [
    "FixedSetCensus", "build_power", "fixed_census",
    "classify_horizontal_links", "ball_fixed_points",
]

MAX_CELL_LEVEL = 3


def build_power(n: int) -> tuple[Complex, CellMap, Complex]:
    """The n-fold power of the wedge with its coordinatewise flip."""
    g = wedge_graph()
    sigma = wedge_flip(g)
    power = graph_power(g, n, truncate=(n > 3))
    sig_n = product_map(g, [sigma] * n, power, power, name=f"sigma_{n}")
    return power, sig_n, g


def height_function(power: Complex, g: Complex) -> HeightFunction:
    """Slope +1 on every a-factor edge, 0 on the b-halves."""
    a_edge = g.find(1, "a")
    slopes = {}
    for eid, e in power.edges.items():
        slot = next(x for x in e.key if x[0] == "e")
        slopes[eid] = 1 if slot[1] == a_edge else 0
    return HeightFunction(slopes)


def _factor_kind(g: Complex, factor) -> str:
    kind, cid = factor
    if kind == "v":
        return g.cell_key(0, cid)          # "0" or "p"
    key = g.cell_key(1, cid)
    return "a" if key == "a" else "b"


@dataclass
class FixedSetCensus:
    n: int
    level: str                  # "cells" (verified on the complex) or
    components: list[dict]      # "signature" (factorwise bookkeeping)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def type_count(self) -> int:
        return len({c["a_count"] for c in self.components})


def fixed_census(n: int) -> FixedSetCensus:
    """Components of the fixed subcomplex of the coordinatewise flip.

    For n <= 3 the census is verified cell by cell on the built complex; for
    4 <= n <= 6 only the factor signatures are enumerated, since cells above
    dimension 3 are never materialized.
    """
    if not 1 <= n <= 6:
        raise ValueError("need 1 <= n <= 6")
    if n > MAX_CELL_LEVEL:
        comps = [{"signature": sig, "a_count": sig.count("a")}
                 for sig in itertools.product("ap", repeat=n)]
        return FixedSetCensus(n, "signature", comps)

    power, sig_n, g = build_power(n)
    fixed_cells: dict[int, list] = {0: [], 1: []}
    for vid in power.vertices:
        if sig_n.vmap[vid] == vid:
            fixed_cells[0].append(vid)
    for eid in power.edges:
        if sig_n.emap[eid] == ("e", eid, 1):
            fixed_cells[1].append(eid)
    # sanity: the fixed 1-skeleton is exactly the products of {0, p, a}
    for vid, v in power.vertices.items():
        expect = all(_factor_kind(g, f) in ("0", "p") for f in v.key)
        assert (vid in set(fixed_cells[0])) == expect
    for eid, e in power.edges.items():
        kinds = [_factor_kind(g, f) for f in e.key]
        expect = all(k in ("0", "p", "a") for k in kinds)
        assert (eid in set(fixed_cells[1])) == expect

    parent = {v: v for v in fixed_cells[0]}

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in fixed_cells[1]:
        e = power.edges[eid]
        parent[root(e.src)] = root(e.dst)
    groups: dict[int, list[int]] = {}
    for v in fixed_cells[0]:
        groups.setdefault(root(v), []).append(v)

    comps = []
    for members in groups.values():
        sig = []
        for slot in range(n):
            kinds = {_factor_kind(g, power.vertices[v].key[slot])
                     for v in members}
            sig.append("p" if kinds == {"p"} else "a")
        a_count = sig.count("a")
        # an i-torus component has 2^i fixed vertices (0 and p per a-slot
        # after the subdivision-free wedge: the a-circle has one vertex)
        comps.append({"signature": tuple(sig), "a_count": a_count,
                      "vertices": len(members)})
    comps.sort(key=lambda c: c["signature"])
    assert len({c["signature"] for c in comps}) == len(comps)
    return FixedSetCensus(n, "cells", comps)


def _horizontal_cells(power: Complex, g: Complex):
    for dim, table in ((0, power.vertices), (1, power.edges),
                       (2, power.faces), (3, power.cubes)):
        for cid, cell in table.items():
            kinds = [_factor_kind(g, f) for f in cell.key]
            if "a" not in kinds:
                yield dim, cid, cell.key, kinds


def _join_model(kinds: list[str], down: bool) -> AbstractSimplicial:
    zero_slots = [i for i, k in enumerate(kinds) if k == "0"]
    if not zero_slots:
        return AbstractSimplicial.from_faces([])
    return AbstractSimplicial.from_faces([tuple(zero_slots)])


def _star_oracle(power: Complex, g: Complex, dim: int, key,
                 kinds: list[str]) -> AbstractSimplicial:
    """Brute-force ascending star: cells whose lowest face is the center.

    A product cell rises off the center exactly when it extends it by a-edges
    over 0-slots and nothing else; its direction simplex is that slot set.
    """
    a_edge = g.find(1, "a")
    n = len(key)
    faces = []
    for d, table in ((1, power.edges), (2, power.faces), (3, power.cubes)):
        for cid, cell in table.items():
            slots = []
            ok = True
            for i in range(n):
                if cell.key[i] == key[i]:
                    continue
                if key[i][0] == "v" and cell.key[i] == ("e", a_edge) \
                        and g.cell_key(0, key[i][1]) == "0":
                    slots.append(i)
                else:
                    ok = False
                    break
            if ok and slots:
                faces.append(tuple(slots))
    return AbstractSimplicial.from_faces(faces)


def classify_horizontal_links(n: int) -> list[dict]:
    """Ascending/descending link classification of every horizontal cell.

    The per-factor join model (one direction per 0-factor, nothing from p- or
    b-factors) is cross-checked against the brute-force ascending-star
    oracle on the built complex.  The flip swaps the two b-halves, so the
    a-direction census is the same ascending and descending.
    """
    if not 1 <= n <= 3:
        raise ValueError("full enumeration only for n <= 3")
    power, _, g = build_power(n)
    out = []
    for dim, cid, key, kinds in _horizontal_cells(power, g):
        model = _join_model(kinds, down=False)
        ok_model, dim_model = is_simplex(model)
        oracle = _star_oracle(power, g, dim, key, kinds)
        ok_oracle, dim_oracle = is_simplex(oracle)
        zero = kinds.count("0")
        record = {
            "dim": dim,
            "kinds": tuple(kinds),
            "zero_factors": zero,
            "empty": zero == 0,
            "simplex_dim": dim_model,
            "oracle_agrees": (ok_model, dim_model,
                              sorted(model.vertices())) ==
                             (ok_oracle, dim_oracle,
                              sorted(oracle.vertices())),
            # the claimed (n - i)-simplex dimension exceeds the computed one
            # by this gap; reported, not patched
            "dimension_convention_gap": (n - dim) - dim_model
            if zero else None,
        }
        assert ok_model and ok_oracle
        out.append(record)
    return out


# --- universal-cover ball and the preferred lift -------------------------------

_EDGES = {"a": ("0", "0"), "b1": ("0", "p"), "b2": ("p", "0")}
_FLIP = {"a": ("a", 1), "b1": ("b2", -1), "b2": ("b1", -1)}


def _tree_neighbors(path: tuple, at: str):
    """Neighbors of a vertex of the universal cover of the wedge.

    Vertices are reduced signed-edge paths from the basepoint; a step is
    (label, sign) and reduction cancels immediate backtracks.
    """
    out = []
    for label, (src, dst) in _EDGES.items():
        if src == at:
            out.append(((label, 1), dst))
        if dst == at:
            out.append(((label, -1), src))
    res = []
    for step, to in out:
        if path and path[-1] == (step[0], -step[1]):
            res.append((path[:-1], to))
        else:
            res.append((path + (step,), to))
    return res


def _flip_path(path: tuple) -> tuple:
    out = []
    for label, sign in path:
        nl, ns = _FLIP[label]
        out.append((nl, sign * ns))
    return tuple(out)


def _tree_ball(radius: int, root_type: str):
    """Vertices of the ball: reduced paths with their endpoint type."""
    seen = {(): root_type}
    frontier = [()]
    dist = {(): 0}
    for _ in range(radius):
        nxt = []
        for p in frontier:
            for q, t in _tree_neighbors(p, seen[p]):
                if q not in seen:
                    seen[q] = t
                    dist[q] = dist[p] + 1
                    nxt.append(q)
        frontier = nxt
    return seen, dist


def _height(path: tuple) -> int:
    return sum(sign for label, sign in path if label == "a")


def ball_fixed_points(n: int, radius: int,
                      use_identity: bool = False) -> dict:
    """Fixed vertices of the preferred lift inside a finite ball.

    The lift fixes the basepoint in the fiber over p and acts coordinatewise
    for n = 2.  ``use_identity`` swaps in the identity lift as a negative
    control (everything is fixed).
    """
    if n not in (1, 2):
        raise ValueError("ball check supports n in {1, 2}")
    if radius > 4:
        raise ValueError("radius capped at 4")
    ball, dist = _tree_ball(radius, "p")
    verts = sorted(ball)
    if n == 1:
        fixed = [p for p in verts
                 if (p if use_identity else _flip_path(p)) == p]
        heights = sorted({_height(p) for p in fixed})
        return {"ball_vertices": len(verts), "fixed": len(fixed),
                "f_image": heights}
    pairs = [(p, q) for p in verts for q in verts
             if dist[p] + dist[q] <= radius]
    if use_identity:
        fixed = pairs
    else:
        fixed = [(p, q) for p, q in pairs
                 if _flip_path(p) == p and _flip_path(q) == q]
    heights = sorted({_height(p) + _height(q) for p, q in fixed})
    return {"ball_vertices": len(pairs), "fixed": len(fixed),
            "f_image": heights}


def flip_preserves_heights(n: int) -> bool:
    """Slope data is invariant under the flip (it swaps the b-halves)."""
    power, sig_n, g = build_power(min(n, 3))
    hf = height_function(power, g)
    for eid in power.edges:
        img = sig_n.emap[eid]
        if img[0] != "e":
            return False
        if hf.slopes[abs(img[1])] * img[2] != hf.slopes[eid]:
            return False
    return True
