"""Circle/line-valued Morse data with horizontal cells.

Heights are carried as integer slopes on edges (a cocycle in the
circle-valued case); 2-cells are classified as horizontal or spanning from
their boundary level profile.  Ascending links of vertices are assembled by
corner scanning: the link vertices are the rising edge germs, and every
spanning-cell corner whose two germs both rise contributes the top arc of
that cell instance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .cells import CellSet, Complex

__all__ = [
    "HeightFunction", "AscLink", "ascending_link", "edge_up_link",
    "AbstractSimplicial", "is_simplex", "CollapseSequence", "CollapseResult",
    "collapses_to",
]


@dataclass
class HeightFunction:
    """Integer slopes per edge; optionally absolute levels per vertex."""
    slopes: dict[int, int]
    vertex_levels: dict[int, int] | None = None

    def slope(self, signed_edge: int) -> int:
        s = self.slopes[abs(signed_edge)]
        return s if signed_edge > 0 else -s

    def validate(self, c: Complex, strict_spans: bool = True):
        for eid, s in self.slopes.items():
            if s not in (-1, 0, 1):
                raise ValueError(f"slope of edge {eid} not in -1..1")
        if self.vertex_levels is not None:
            for eid, e in c.edges.items():
                want = self.vertex_levels[e.dst] - self.vertex_levels[e.src]
                if want != self.slopes[eid]:
                    raise ValueError(f"slope of edge {eid} inconsistent")
        for fid in c.faces:
            prof = self.face_profile(c, fid)
            if prof["total"] != 0:
                raise ValueError(f"face {fid} boundary slope sum nonzero")
            if strict_spans and prof["span"] > 1:
                raise ValueError(f"face {fid} spans more than one slab")

    def face_profile(self, c: Complex, fid: int) -> dict:
        """Relative corner levels along the boundary, span, and class."""
        b = c.faces[fid].boundary
        levels = [0]
        for s in b[:-1]:
            levels.append(levels[-1] + self.slope(s))
        total = levels[-1] + self.slope(b[-1])
        lo = min(levels)
        levels = [l - lo for l in levels]
        span = max(levels) if levels else 0
        return {
            "levels": levels,
            "span": span,
            "total": total,
            "class": "horizontal" if span == 0 else "spanning",
        }

    def rising_germs(self, c: Complex, v: int, down: bool = False):
        sign = -1 if down else 1
        out = []
        for eid, end in c.germs_at(v):
            s = sign * self.slopes[eid]
            if (end == 0 and s == 1) or (end == 1 and s == -1):
                out.append((eid, end))
        return out


@dataclass
class AscLink:
    """The ascending (or descending) link of a vertex, with its census."""
    center: int
    nodes: list[tuple[int, int]]
    arcs: list[tuple[tuple[int, int], tuple[int, int], tuple[int, ...], Any]]
    down: bool = False

    def components(self) -> list[set]:
        parent = {u: u for u in self.nodes}

        def root(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b, _, _ in self.arcs:
            parent[root(a)] = root(b)
        comps: dict = {}
        for u in self.nodes:
            comps.setdefault(root(u), set()).add(u)
        return sorted(comps.values(), key=lambda s: sorted(s))

    def census(self) -> dict:
        comps = self.components()
        arc_count = {id(c): 0 for c in comps}
        node_comp = {}
        for comp in comps:
            for u in comp:
                node_comp[u] = id(comp)
        for a, b, _, _ in self.arcs:
            arc_count[node_comp[a]] += 1
        singles = [next(iter(comp)) for comp in comps if len(comp) == 1
                   and arc_count[id(comp)] == 0]
        trees = [comp for comp in comps
                 if arc_count[id(comp)] == len(comp) - 1]
        return {
            "components": len(comps),
            "component_list": comps,
            "singletons": singles,
            "trees": trees,
            "arc_labels": [lbl for _, _, lbl, _ in self.arcs],
        }


def ascending_link(c: Complex, hf: HeightFunction, v: int,
                   down: bool = False) -> AscLink:
    """Slab-star ascending link of a vertex of a 2-complex.

    Nodes are the rising edge germs at v.  A corner of a spanning 2-cell
    whose germs both rise is attached along its top arc (the run of
    horizontal boundary edges at the top level of that cell instance); the
    arc label records the signed horizontal edges it traverses.
    """
    nodes = hf.rising_germs(c, v, down=down)
    arcs = []
    sign = -1 if down else 1
    for fid, slot in c.face_corners_at(v):
        gin, gout = c.face_corner_germs(fid, slot)
        rises = []
        for eid, end in (gin, gout):
            s = sign * hf.slopes[eid]
            rises.append((end == 0 and s == 1) or (end == 1 and s == -1))
        if not all(rises):
            continue
        b = c.faces[fid].boundary
        k = len(b)
        levels = [0]
        for i in range(k):
            levels.append(levels[-1] + sign * hf.slope(b[(slot + i) % k]))
        top = [b[(slot + i) % k] for i in range(k)
               if levels[i] == 1 and levels[i + 1] == 1]
        arcs.append((gin, gout, tuple(top), (fid, slot)))
    return AscLink(center=v, nodes=nodes, arcs=arcs, down=down)


def edge_up_link(c: Complex, hf: HeightFunction, eid: int,
                 down: bool = False) -> list[tuple[int, int]]:
    """Top points over a horizontal edge: spanning cofaces with the edge at
    their bottom level, one point per boundary occurrence."""
    if hf.slopes[eid] != 0:
        raise ValueError("edge is not horizontal")
    sign = -1 if down else 1
    points = []
    for fid, slot in c.cofaces_of_edge(eid):
        prof = hf.face_profile(c, fid)
        if prof["class"] != "spanning":
            continue
        lvl = prof["levels"][slot] if sign == 1 else \
            prof["span"] - prof["levels"][slot]
        if lvl == 0:
            points.append((fid, slot))
    return points


# --- abstract simplicial complexes and the simplex test ----------------------

@dataclass
class AbstractSimplicial:
    """A small abstract simplicial complex given by its faces."""
    faces: set  # frozensets, nonempty
    max_recorded_dim: int | None = None

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable],
                   max_recorded_dim: int | None = None):
        out = set()
        for f in faces:
            fs = frozenset(f)
            if fs:
                out.add(fs)
        closed = set(out)
        for f in out:
            for r in range(1, len(f)):
                for sub in itertools.combinations(f, r):
                    closed.add(frozenset(sub))
        return cls(closed, max_recorded_dim)

    def vertices(self) -> set:
        return set().union(*self.faces) if self.faces else set()

    def dim(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1


def is_simplex(k: AbstractSimplicial) -> tuple[bool, int]:
    """Is the complex the full simplex on its vertices?

    The empty complex counts as the (-1)-simplex.  When the complex only
    records faces up to some dimension, fullness is required up to that
    record.
    """
    verts = sorted(k.vertices(), key=str)
    if not verts:
        return True, -1
    limit = len(verts)
    if k.max_recorded_dim is not None:
        limit = min(limit, k.max_recorded_dim + 1)
    for r in range(1, limit + 1):
        for sub in itertools.combinations(verts, r):
            if frozenset(sub) not in k.faces:
                return False, len(verts) - 1
    return True, len(verts) - 1


# --- elementary collapses -----------------------------------------------------

@dataclass
class CollapseSequence:
    """Ordered elementary collapses: (free cell, its unique coface)."""
    steps: list[tuple[tuple[int, int], tuple[int, int]]] = field(
        default_factory=list)

    def replay(self, c: Complex, target: CellSet) -> bool:
        """Re-run the collapses, checking freeness at every step, and verify
        the result is exactly the target subcomplex."""
        removed: set[tuple[int, int]] = set()
        for free, coface in self.steps:
            fd, fi = free
            cd, ci = coface
            if cd != fd + 1 or free in removed or coface in removed:
                return False
            cofs = _cofaces(c, fd, fi, removed)
            if cofs != [coface]:
                return False
            removed.add(free)
            removed.add(coface)
        return _remaining_equals(c, removed, target)


def _cofaces(c: Complex, dim: int, cid: int,
             removed: set[tuple[int, int]]) -> list[tuple[int, int]]:
    """Cofaces with multiplicity: a cell met twice by one coface is not free."""
    if dim == 0:
        out = [(1, eid) for eid, _ in c.germs_at(cid)]
    elif dim == 1:
        out = [(2, fid) for fid, _ in c.cofaces_of_edge(cid)]
    else:
        out = [(3, qid) for qid, _ in c.cofaces_of_face(cid)]
    return sorted(x for x in out if x not in removed)


def _remaining_equals(c: Complex, removed, target: CellSet) -> bool:
    keep = {(0, v) for v in c.vertices} | {(1, e) for e in c.edges} | \
        {(2, f) for f in c.faces} | {(3, q) for q in c.cubes}
    keep -= removed
    want = {(0, v) for v in target.vids} | {(1, e) for e in target.eids} | \
        {(2, f) for f in target.fids} | {(3, q) for q in target.cids}
    return keep == want


@dataclass
class CollapseResult:
    sequence: CollapseSequence | None
    status: str  # "ok", "stuck" (search exhausted), or "budget"

    def __bool__(self) -> bool:
        return self.status == "ok"


def collapses_to(c: Complex, target: CellSet,
                 budget: int = 100_000) -> CollapseResult:
    """Search for an elementary-collapse sequence from c down to the target.

    Deterministic greedy in cell-id order with backtracking.  A "budget"
    status means the search ran out of steam, which is weaker than the
    "stuck" certificate that the greedy search space holds no sequence.
    """
    if not target.is_subcomplex(c):
        raise ValueError("target is not a subcomplex")
    protected = {(0, v) for v in target.vids} | \
        {(1, e) for e in target.eids} | {(2, f) for f in target.fids} | \
        {(3, q) for q in target.cids}

    state_budget = [budget]

    def free_pairs(removed):
        pairs = []
        for eid in sorted(c.edges):
            cell = (1, eid)
            if cell in removed or cell in protected:
                continue
            cofs = _cofaces(c, 1, eid, removed)
            if len(cofs) == 1 and cofs[0] not in protected:
                pairs.append((cell, cofs[0]))
        for vid in sorted(c.vertices):
            cell = (0, vid)
            if cell in removed or cell in protected:
                continue
            cofs = _cofaces(c, 0, vid, removed)
            if len(cofs) == 1 and cofs[0] not in protected:
                pairs.append((cell, cofs[0]))
        return pairs

    def search(removed, steps):
        # iterative depth-first search with explicit choice stacks
        stack = [iter(free_pairs(removed))]
        while stack:
            if state_budget[0] <= 0:
                return None
            state_budget[0] -= 1
            if _remaining_equals(c, removed, target):
                return list(steps)
            pair = next(stack[-1], None)
            if pair is None:
                stack.pop()
                if steps:
                    free, coface = steps.pop()
                    removed.discard(free)
                    removed.discard(coface)
                continue
            free, coface = pair
            if free in removed or coface in removed:
                continue
            cofs = _cofaces(c, free[0], free[1], removed)
            if cofs != [coface]:
                continue
            removed.add(free)
            removed.add(coface)
            steps.append((free, coface))
            stack.append(iter(free_pairs(removed)))
        if _remaining_equals(c, removed, target):
            return list(steps)
        return None

    got = search(set(), [])
    if got is None:
        return CollapseResult(None,
                              "budget" if state_budget[0] <= 0 else "stuck")
    seq = CollapseSequence(got)
    if not seq.replay(c, target):
        raise AssertionError("collapse replay failed")
    return CollapseResult(seq, "ok")
