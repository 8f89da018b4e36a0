"""S_N-valued edge voltages, holonomy, derived covers, and completion data.

Voltages live on oriented edges (the reversed edge carries the inverse) and
multiply left-to-right along paths, so holonomy is a homomorphism from the
edge-path groupoid.  Flat assignments (trivial holonomy around every 2-cell)
produce honest covering complexes; branching data is carried by holonomy
around cycles that survive in a deleted-star complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .cells import CellMap, Complex, EdgePath, corner_bits, edge_pos, \
    edge_pos_endpoints, face_corners
from .homotopy import SpanningTreeGens
from .perm import Perm, PermGroup

__all__ = [
    "VoltageAssignment", "voltage_complete", "pullback_voltages",
    "triple_voltage", "sheet_index", "sheet_triple", "cover_connected",
    "CoverComplex", "build_cover", "graph_monodromy_orbits",
    "BranchCompletionCensus", "lift_automorphism",
]


class VoltageAssignment:
    """Edge voltages of a fixed degree on a complex."""

    def __init__(self, c: Complex, degree: int,
                 voltages: dict[int, Perm]):
        self.complex = c
        self.degree = degree
        self.voltages = dict(voltages)
        for eid, p in self.voltages.items():
            if p.degree != degree:
                raise ValueError(f"voltage at edge {eid} has wrong degree")

    def w(self, signed_edge: int) -> Perm:
        p = self.voltages[abs(signed_edge)]
        return p if signed_edge > 0 else p.inverse()

    def holonomy(self, p: EdgePath) -> Perm:
        """Ordered product of edge voltages, first step acting first."""
        p.validate(self.complex)
        out = Perm.identity(self.degree)
        for s in p.steps:
            out = out * self.w(s)
        return out

    def face_flat(self, fid: int) -> bool:
        b = self.complex.faces[fid].boundary
        base = self.complex.face_corner_vertex(fid, 0)
        return self.holonomy(EdgePath(base, b)).is_identity()

    def check_flat(self):
        for fid in self.complex.faces:
            if not self.face_flat(fid):
                raise ValueError(f"holonomy around face {fid} is nontrivial")

    def dump_text(self) -> str:
        lines = [f"{eid} {self.voltages[eid].cycle_str()}"
                 for eid in sorted(self.voltages)]
        return "\n".join(lines) + "\n"


def voltage_complete(c: Complex, seed: dict[int, Perm], degree: int,
                     reverse_order: bool = False) -> VoltageAssignment:
    """Extend seed voltages over a complex by forcing every 2-cell flat.

    Repeatedly solves 2-cells that have exactly one undetermined edge; stalls
    (seed not generating) and flatness violations (seed inconsistent) both
    raise.  The result is independent of the propagation order, which the
    ``reverse_order`` flag lets callers verify.
    """
    known = dict(seed)
    ident = Perm.identity(degree)
    pending = set(c.faces)
    progress = True
    while pending and progress:
        progress = False
        for fid in sorted(pending, reverse=reverse_order):
            b = c.faces[fid].boundary
            unknown = [i for i, s in enumerate(b) if abs(s) not in known]
            if not unknown:
                pending.discard(fid)
                progress = True
                continue
            if len(unknown) > 1:
                continue
            j = unknown[0]
            prefix = ident
            for s in b[:j]:
                prefix = prefix * (known[abs(s)] if s > 0
                                   else known[abs(s)].inverse())
            suffix = ident
            for s in b[j + 1:]:
                suffix = suffix * (known[abs(s)] if s > 0
                                   else known[abs(s)].inverse())
            # prefix * w(b_j) * suffix == id
            solved = prefix.inverse() * suffix.inverse()
            if b[j] < 0:
                solved = solved.inverse()
            known[abs(b[j])] = solved
            pending.discard(fid)
            progress = True
    missing = set(c.edges) - set(known)
    if missing:
        raise ValueError(f"voltage propagation stalled; undetermined "
                         f"edges {sorted(missing)[:5]}...")
    out = VoltageAssignment(c, degree, known)
    out.check_flat()
    return out


def pullback_voltages(base_voltage: VoltageAssignment, pr: CellMap,
                      source: Complex) -> VoltageAssignment:
    """Voltages pulled back along a cellular map into the voltage domain.

    Each edge receives the voltage of its image edge (identity when the
    image degenerates), so holonomy of any loop equals the holonomy of its
    image loop.
    """
    if pr.source is not source or pr.target is not base_voltage.complex:
        raise ValueError("projection does not match complexes")
    volts = {}
    ident = Perm.identity(base_voltage.degree)
    for eid in source.edges:
        img = pr.emap[eid]
        if img[0] == "v":
            volts[eid] = ident
        else:
            _, tid, sign = img
            volts[eid] = (base_voltage.voltages[tid] if sign > 0
                          else base_voltage.voltages[tid].inverse())
    return VoltageAssignment(source, base_voltage.degree, volts)


def sheet_index(triple: tuple[int, int, int], n: int = 5) -> int:
    i, j, k = triple
    return (i - 1) * n * n + (j - 1) * n + k


def sheet_triple(index: int, n: int = 5) -> tuple[int, int, int]:
    index -= 1
    return index // (n * n) + 1, (index // n) % n + 1, index % n + 1


def triple_voltage(p1: Perm, p2: Perm, p3: Perm) -> Perm:
    """The product permutation acting componentwise on sheet triples."""
    n = p1.degree
    images = [0] * (n ** 3)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                images[sheet_index((i, j, k), n) - 1] = sheet_index(
                    (p1(i), p2(j), p3(k)), n)
    return Perm(images)


def cover_connected(v: VoltageAssignment, gens: SpanningTreeGens,
                    base_sheet: int = 1) -> tuple[bool, int]:
    """Connectivity of the associated cover via the monodromy orbit."""
    hols = [v.holonomy(gens.loop(e)) for e in gens.gens]
    group = PermGroup(v.degree, hols)
    orbit = group.orbit(base_sheet)
    return len(orbit) == v.degree, len(orbit)


# --- derived covers -----------------------------------------------------------

@dataclass
class CoverComplex:
    """A derived cover: cells are (base cell, sheet) pairs."""
    base: Complex
    voltage: VoltageAssignment
    complex: Complex

    def vertex_at(self, base_vid: int, sheet: int) -> int:
        return self.complex.find(0, ("cv", base_vid, sheet))

    def fiber_size(self, base_vid: int) -> int:
        return sum(1 for v in self.complex.vertices.values()
                   if v.key[1] == base_vid)

    def component_count(self) -> int:
        return self.complex.component_count()


def build_cover(v: VoltageAssignment) -> CoverComplex:
    """Assemble the derived cover of a flat voltage assignment.

    Vertices are (base vertex, sheet); an edge lifts from the sheet at its
    source by the edge voltage; faces and cubes lift by transporting a base
    corner around, which closes up exactly because the assignment is flat.
    """
    v.check_flat()
    base = v.complex
    n = v.degree
    out = Complex(base.name + f"~{n}")
    for vid in sorted(base.vertices):
        for s in range(1, n + 1):
            out.add_vertex(("cv", vid, s))
    for eid in sorted(base.edges):
        e = base.edges[eid]
        w = v.voltages[eid]
        for s in range(1, n + 1):
            out.add_edge(out.find(0, ("cv", e.src, s)),
                         out.find(0, ("cv", e.dst, w(s))),
                         ("ce", eid, s))
    for fid in sorted(base.faces):
        f = base.faces[fid]
        anchor = base.face_corner_vertex(fid, 0)
        for s in range(1, n + 1):
            sheet = s
            lifted = []
            for signed in f.boundary:
                eid = abs(signed)
                if signed > 0:
                    lifted.append(out.find(1, ("ce", eid, sheet)))
                    sheet = v.voltages[eid](sheet)
                else:
                    sheet = v.voltages[eid].inverse()(sheet)
                    lifted.append(-out.find(1, ("ce", eid, sheet)))
            if sheet != s:
                raise AssertionError(f"face {fid} does not close in cover")
            out.add_face(lifted, ("cf", fid, s))
    for cid in sorted(base.cubes):
        cube = base.cubes[cid]
        for s in range(1, n + 1):
            corner_sheets = _cube_corner_sheets(v, cube, s)
            corners = [out.find(0, ("cv", cube.corners[ci],
                                    corner_sheets[ci])) for ci in range(8)]
            edges = []
            for pos in range(12):
                signed = cube.edges[pos]
                lo, hi = edge_pos_endpoints_cached[pos]
                src_ci = lo if signed > 0 else hi
                lifted = out.find(1, ("ce", abs(signed),
                                      corner_sheets[src_ci]))
                edges.append(lifted if signed > 0 else -lifted)
            faces = []
            for fpos in range(6):
                fid = cube.faces[fpos]
                slots = cube.face_slots[fpos]
                cis = face_corners(fpos)
                slot0_ci = cis[slots.index(0)]
                faces.append(out.find(2, ("cf", fid,
                                          corner_sheets[slot0_ci])))
            out.add_cube(corners, edges, faces, cube.face_slots,
                         ("cc3", cid, s))
    return CoverComplex(base, v, out)


edge_pos_endpoints_cached = [edge_pos_endpoints(pos) for pos in range(12)]


def _cube_corner_sheets(v: VoltageAssignment, cube, s: int) -> list[int]:
    """Sheets at all 8 cube corners, transported from corner 0."""
    sheets = [0] * 8
    sheets[0] = s
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for ci in frontier:
            x = corner_bits(ci)
            for axis in range(3):
                others = [b for b in range(3) if b != axis]
                pos = edge_pos(axis, x[others[0]], x[others[1]])
                signed = cube.edges[pos]
                cj = ci ^ (4 >> axis)
                if cj in seen:
                    continue
                w = v.w(signed)
                # signed edge runs from the x_axis = 0 corner to x_axis = 1
                if x[axis] == 0:
                    sheets[cj] = w(sheets[ci])
                else:
                    sheets[cj] = w.inverse()(sheets[ci])
                seen.add(cj)
                nxt.append(cj)
        frontier = nxt
    return sheets


# --- branched completion data --------------------------------------------------

def graph_monodromy_orbits(nodes: Sequence[Hashable],
                           edges: Iterable[tuple[Hashable, Hashable, Perm]],
                           degree: int) -> dict:
    """Components of the cover of an abstract connected graph.

    Nodes all carry the same sheet set {1..degree}; each edge (u, v, g)
    glues (u, s) to (v, g(s)).  Returns component count and the holonomy
    image generators read off a spanning tree.
    """
    index = {u: i for i, u in enumerate(nodes)}
    parent = list(range(len(nodes) * degree))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def unite(a, b):
        ra, rb = root(a), root(b)
        if ra != rb:
            parent[ra] = rb

    edges = list(edges)
    for u, v, g in edges:
        iu, iv = index[u], index[v]
        for s in range(1, degree + 1):
            unite(iu * degree + (s - 1), iv * degree + (g(s) - 1))
    comps = len({root(i) for i in range(len(parent))})

    # holonomy generators via a spanning tree of the node graph
    tree: dict[Hashable, Perm] = {nodes[0]: Perm.identity(degree)}
    adj: dict[Hashable, list[tuple[Hashable, Perm]]] = {u: [] for u in nodes}
    for u, v, g in edges:
        adj[u].append((v, g))
        adj[v].append((u, g.inverse()))
    frontier = [nodes[0]]
    while frontier:
        nxt = []
        for u in frontier:
            for v2, g in adj[u]:
                if v2 not in tree:
                    tree[v2] = tree[u] * g
                    nxt.append(v2)
        frontier = nxt
    if len(tree) != len(nodes):
        raise ValueError("punctured link graph is disconnected")
    gens = []
    for u, v, g in edges:
        h = tree[u] * g * tree[v].inverse()
        if not h.is_identity():
            gens.append(h)
    return {"components": comps, "generators": gens}


@dataclass
class BranchCompletionCensus:
    """Per-component branching data and the Euler characteristic balance."""
    degree: int
    base_chi: int
    components: list[dict] = field(default_factory=list)
    cell_lifts: dict = field(default_factory=dict)

    def chi_formula(self) -> int:
        total = self.degree * self.base_chi
        for comp in self.components:
            total += (comp["meridian_orbits"] - self.degree) * comp["chi"]
        return total

    def chi_direct(self) -> int:
        total = 0
        for (dim, _), lifts in self.cell_lifts.items():
            total += lifts if dim % 2 == 0 else -lifts
        return total


# --- lifting automorphisms -----------------------------------------------------

def lift_automorphism(v: VoltageAssignment, auto: CellMap,
                      gens: SpanningTreeGens, base_sheet: int = 1) -> dict:
    """Lift a base automorphism fixing the tree basepoint to the cover.

    The lift is pinned by fixing the sheet ``base_sheet`` over the basepoint.
    Returns the induced permutation of the basepoint fiber, checking the
    consistency condition on every (sheet, generator) pair; an inconsistency
    is the lifting obstruction and is reported instead.
    """
    base = gens.base
    if auto.vmap[base] != base:
        raise ValueError("automorphism must fix the basepoint")
    hol = {e: v.holonomy(gens.loop(e)) for e in gens.gens}
    hol_img = {e: v.holonomy(auto.apply_path(gens.loop(e)))
               for e in gens.gens}
    n = v.degree
    fiber_map = {base_sheet: base_sheet}
    frontier = [base_sheet]
    obstruction = None
    while frontier:
        nxt = []
        for s in frontier:
            for e in gens.gens:
                t = hol[e](s)
                img = hol_img[e](fiber_map[s])
                if t not in fiber_map:
                    fiber_map[t] = img
                    nxt.append(t)
                elif fiber_map[t] != img:
                    obstruction = (s, e, fiber_map[t], img)
        frontier = nxt
    if len(fiber_map) != n:
        raise ValueError("monodromy is not transitive; lift fiber ambiguous")
    if obstruction is not None:
        return {"lifts": False, "obstruction": obstruction}
    images = [fiber_map[s] for s in range(1, n + 1)]
    return {"lifts": True, "fiber_permutation": Perm(images)}
