"""Combinatorial CW complexes of dimension <= 3.

Cells carry stable integer ids (per dimension, starting at 1, so signed edge
ids can encode orientation) plus hashable keys and human-readable labels.
Faces are polygons given by cyclic signed-edge boundaries; 3-cells are
combinatorial cubes with explicit corner, edge-position and face-position
structure so that subdivisions and covers can be assembled mechanically.

Cube conventions
----------------
Corners are indexed by bits: ``ci = x0*4 + x1*2 + x2``.  The edge position
``(axis, y, z)`` is the edge along ``axis`` whose other two coordinates (in
ascending axis order) are ``y, z``; the stored signed edge id is positive iff
the underlying edge runs from the ``x_axis = 0`` corner to the ``x_axis = 1``
corner.  Face position ``(axis, side)`` is the face where ``x_axis == side``.
``face_slots[fpos]`` aligns the four cube corners lying on that face (in
increasing corner-index order) with the face's own boundary corner slots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

__all__ = [
    "Complex", "EdgePath", "CellMap", "CellSet",
    "corner_bits", "bits_corner", "edge_pos", "edge_pos_decode",
    "edge_pos_endpoints", "face_pos", "face_pos_decode", "face_corners",
    "edge_positions_of_face", "face_positions_of_edge", "graph_power",
    "product_map", "projection_map", "complement_of_star",
]


# --- cube position combinatorics -------------------------------------------

def corner_bits(ci: int) -> tuple[int, int, int]:
    return ((ci >> 2) & 1, (ci >> 1) & 1, ci & 1)


def bits_corner(x0: int, x1: int, x2: int) -> int:
    return x0 * 4 + x1 * 2 + x2


def edge_pos(axis: int, y: int, z: int) -> int:
    return axis * 4 + y * 2 + z


def edge_pos_decode(pos: int) -> tuple[int, int, int]:
    return pos // 4, (pos % 4) // 2, pos % 2


def edge_pos_endpoints(pos: int) -> tuple[int, int]:
    """Corner indices (x_axis = 0, x_axis = 1) of the edge at this position."""
    axis, y, z = edge_pos_decode(pos)
    others = [a for a in range(3) if a != axis]
    lo = [0, 0, 0]
    lo[others[0]], lo[others[1]] = y, z
    hi = list(lo)
    hi[axis] = 1
    return bits_corner(*lo), bits_corner(*hi)


def face_pos(axis: int, side: int) -> int:
    return axis * 2 + side


def face_pos_decode(fpos: int) -> tuple[int, int]:
    return fpos // 2, fpos % 2


def face_corners(fpos: int) -> tuple[int, ...]:
    """Corner indices on the face, in increasing order."""
    axis, side = face_pos_decode(fpos)
    return tuple(ci for ci in range(8) if corner_bits(ci)[axis] == side)


def edge_positions_of_face(fpos: int) -> tuple[int, ...]:
    axis, side = face_pos_decode(fpos)
    out = []
    for pos in range(12):
        a, y, z = edge_pos_decode(pos)
        if a == axis:
            continue
        others = [b for b in range(3) if b != a]
        coords = dict(zip(others, (y, z)))
        if coords[axis] == side:
            out.append(pos)
    return tuple(out)


def face_positions_of_edge(pos: int) -> tuple[int, int]:
    """The two face positions containing the edge position, ascending axis."""
    axis, y, z = edge_pos_decode(pos)
    others = [a for a in range(3) if a != axis]
    return face_pos(others[0], y), face_pos(others[1], z)


def edge_positions_at_corner(ci: int) -> tuple[int, int, int]:
    x = corner_bits(ci)
    out = []
    for a in range(3):
        others = [b for b in range(3) if b != a]
        out.append(edge_pos(a, x[others[0]], x[others[1]]))
    return tuple(out)


# the slot of the product-face corner with local bits (bi, bj), axes i < j
BITS2SLOT = {(0, 0): 0, (1, 0): 1, (1, 1): 2, (0, 1): 3}


# --- cells -------------------------------------------------------------------

@dataclass(frozen=True)
class Vertex:
    key: Any
    label: str | None = None


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    key: Any
    label: str | None = None


@dataclass(frozen=True)
class Face:
    boundary: tuple[int, ...]
    key: Any
    label: str | None = None


@dataclass(frozen=True)
class Cube:
    corners: tuple[int, ...]
    edges: tuple[int, ...]
    faces: tuple[int, ...]
    face_slots: tuple[tuple[int, ...], ...]
    key: Any
    label: str | None = None


class Complex:
    """A CW complex of dimension <= 3 with polygon faces and cube 3-cells."""

    def __init__(self, name: str = ""):
        self.name = name
        self.vertices: dict[int, Vertex] = {}
        self.edges: dict[int, Edge] = {}
        self.faces: dict[int, Face] = {}
        self.cubes: dict[int, Cube] = {}
        self._by_key: dict[tuple[int, Any], int] = {}
        self._next = [1, 1, 1, 1]
        self._star_cache: dict | None = None

    # -- construction --------------------------------------------------------

    def _register(self, dim: int, key: Any, cid: int):
        if key is not None:
            k = (dim, key)
            if k in self._by_key:
                raise ValueError(f"duplicate key {key} in dim {dim}")
            self._by_key[k] = cid

    def _take_id(self, dim: int, explicit: int | None) -> int:
        if explicit is None:
            cid = self._next[dim]
            self._next[dim] += 1
            return cid
        self._next[dim] = max(self._next[dim], explicit + 1)
        return explicit

    def add_vertex(self, key: Any = None, label: str | None = None,
                   _id: int | None = None) -> int:
        vid = self._take_id(0, _id)
        if vid in self.vertices:
            raise ValueError(f"vertex id {vid} in use")
        self.vertices[vid] = Vertex(key, label)
        self._register(0, key, vid)
        self._star_cache = None
        return vid

    def add_edge(self, src: int, dst: int, key: Any = None,
                 label: str | None = None, _id: int | None = None) -> int:
        if src not in self.vertices or dst not in self.vertices:
            raise ValueError(f"edge endpoints {src},{dst} missing")
        eid = self._take_id(1, _id)
        if eid in self.edges:
            raise ValueError(f"edge id {eid} in use")
        self.edges[eid] = Edge(src, dst, key, label)
        self._register(1, key, eid)
        self._star_cache = None
        return eid

    def edge_ends(self, signed: int) -> tuple[int, int]:
        e = self.edges[abs(signed)]
        return (e.src, e.dst) if signed > 0 else (e.dst, e.src)

    def add_face(self, boundary: Sequence[int], key: Any = None,
                 label: str | None = None, _id: int | None = None) -> int:
        boundary = tuple(boundary)
        if not boundary:
            raise ValueError("empty face boundary")
        for s, t in zip(boundary, boundary[1:] + boundary[:1]):
            if self.edge_ends(s)[1] != self.edge_ends(t)[0]:
                raise ValueError(f"face boundary not a closed path: {boundary}")
        fid = self._take_id(2, _id)
        if fid in self.faces:
            raise ValueError(f"face id {fid} in use")
        self.faces[fid] = Face(boundary, key, label)
        self._register(2, key, fid)
        self._star_cache = None
        return fid

    def add_cube(self, corners: Sequence[int], edges: Sequence[int],
                 faces: Sequence[int], face_slots: Sequence[Sequence[int]],
                 key: Any = None, label: str | None = None,
                 _id: int | None = None) -> int:
        corners = tuple(corners)
        edges = tuple(edges)
        faces = tuple(faces)
        face_slots = tuple(tuple(s) for s in face_slots)
        if len(corners) != 8 or len(edges) != 12 or len(faces) != 6:
            raise ValueError("cube needs 8 corners, 12 edges, 6 faces")
        for pos in range(12):
            lo, hi = edge_pos_endpoints(pos)
            s, t = self.edge_ends(edges[pos])
            if (s, t) != (corners[lo], corners[hi]):
                raise ValueError(f"cube edge at position {pos} mismatched")
        for fpos in range(6):
            fid = faces[fpos]
            face = self.faces[fid]
            if len(face.boundary) != 4:
                raise ValueError("cube face must be a quadrilateral")
            slots = face_slots[fpos]
            for idx, ci in enumerate(face_corners(fpos)):
                if self.face_corner_vertex(fid, slots[idx]) != corners[ci]:
                    raise ValueError(
                        f"face_slots misaligned at face position {fpos}")
            fedges = {abs(s) for s in face.boundary}
            for pos in edge_positions_of_face(fpos):
                if abs(edges[pos]) not in fedges:
                    raise ValueError(
                        f"cube face {fid} missing edge position {pos}")
        cid = self._take_id(3, _id)
        if cid in self.cubes:
            raise ValueError(f"cube id {cid} in use")
        self.cubes[cid] = Cube(corners, edges, faces, face_slots, key, label)
        self._register(3, key, cid)
        self._star_cache = None
        return cid

    # -- lookups --------------------------------------------------------------

    def find(self, dim: int, key: Any) -> int:
        return self._by_key[(dim, key)]

    def has(self, dim: int, key: Any) -> bool:
        return (dim, key) in self._by_key

    def cell_key(self, dim: int, cid: int) -> Any:
        return (self.vertices, self.edges, self.faces, self.cubes)[dim][cid].key

    def label(self, dim: int, cid: int) -> str:
        cell = (self.vertices, self.edges, self.faces, self.cubes)[dim][cid]
        if cell.label is not None:
            return cell.label
        if cell.key is not None:
            return str(cell.key)
        return f"d{dim}#{cid}"

    def face_corner_vertex(self, fid: int, slot: int) -> int:
        return self.edge_ends(self.faces[fid].boundary[slot])[0]

    def face_corner_germs(self, fid: int, slot: int):
        """The two edge-end germs at a face corner: (incoming, outgoing).

        A germ is ``(edge_id, end)`` with end 0 at the source, 1 at the target.
        """
        b = self.faces[fid].boundary
        prev = b[slot - 1]
        cur = b[slot]
        germ_in = (abs(prev), 1 if prev > 0 else 0)
        germ_out = (abs(cur), 0 if cur > 0 else 1)
        return germ_in, germ_out

    def cell_vertices(self, dim: int, cid: int) -> set[int]:
        if dim == 0:
            return {cid}
        if dim == 1:
            e = self.edges[cid]
            return {e.src, e.dst}
        if dim == 2:
            return {self.edge_ends(s)[0] for s in self.faces[cid].boundary}
        return set(self.cubes[cid].corners)

    # -- stars ----------------------------------------------------------------

    def _stars(self):
        if self._star_cache is None:
            germs: dict[int, list] = {v: [] for v in self.vertices}
            for eid, e in sorted(self.edges.items()):
                germs[e.src].append((eid, 0))
                germs[e.dst].append((eid, 1))
            corners: dict[int, list] = {v: [] for v in self.vertices}
            for fid, f in sorted(self.faces.items()):
                for slot in range(len(f.boundary)):
                    corners[self.face_corner_vertex(fid, slot)].append(
                        (fid, slot))
            cubecorners: dict[int, list] = {v: [] for v in self.vertices}
            for cid, c in sorted(self.cubes.items()):
                for ci, v in enumerate(c.corners):
                    cubecorners[v].append((cid, ci))
            edge_cofaces: dict[int, list] = {e: [] for e in self.edges}
            for fid, f in sorted(self.faces.items()):
                for slot, s in enumerate(f.boundary):
                    edge_cofaces[abs(s)].append((fid, slot))
            face_cofaces: dict[int, list] = {f: [] for f in self.faces}
            for cid, c in sorted(self.cubes.items()):
                for fpos, fid in enumerate(c.faces):
                    face_cofaces[fid].append((cid, fpos))
            self._star_cache = dict(
                germs=germs, corners=corners, cubecorners=cubecorners,
                edge_cofaces=edge_cofaces, face_cofaces=face_cofaces)
        return self._star_cache

    def germs_at(self, vid: int) -> list[tuple[int, int]]:
        return self._stars()["germs"][vid]

    def face_corners_at(self, vid: int) -> list[tuple[int, int]]:
        return self._stars()["corners"][vid]

    def cube_corners_at(self, vid: int) -> list[tuple[int, int]]:
        return self._stars()["cubecorners"][vid]

    def cofaces_of_edge(self, eid: int) -> list[tuple[int, int]]:
        return self._stars()["edge_cofaces"][eid]

    def cofaces_of_face(self, fid: int) -> list[tuple[int, int]]:
        return self._stars()["face_cofaces"][fid]

    # -- global invariants ----------------------------------------------------

    def euler_characteristic(self) -> int:
        return (len(self.vertices) - len(self.edges)
                + len(self.faces) - len(self.cubes))

    def component_count(self) -> int:
        parent = {v: v for v in self.vertices}

        def root(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges.values():
            parent[root(e.src)] = root(e.dst)
        return len({root(v) for v in self.vertices})

    def validate(self):
        """Re-check all incidence structure; raises on the first violation."""
        for eid, e in self.edges.items():
            if e.src not in self.vertices or e.dst not in self.vertices:
                raise AssertionError(f"edge {eid} dangling")
        for fid, f in self.faces.items():
            b = f.boundary
            for s, t in zip(b, b[1:] + b[:1]):
                if self.edge_ends(s)[1] != self.edge_ends(t)[0]:
                    raise AssertionError(f"face {fid} boundary broken")
        for cid, c in self.cubes.items():
            for pos in range(12):
                lo, hi = edge_pos_endpoints(pos)
                if self.edge_ends(c.edges[pos]) != (c.corners[lo],
                                                    c.corners[hi]):
                    raise AssertionError(f"cube {cid} edge {pos} broken")
            for pos in range(12):
                fp1, fp2 = face_positions_of_edge(pos)
                for fp in (fp1, fp2):
                    fedges = {abs(s) for s in self.faces[c.faces[fp]].boundary}
                    if abs(c.edges[pos]) not in fedges:
                        raise AssertionError(
                            f"cube {cid} edge {pos} not on face {fp}")

    # -- serialization --------------------------------------------------------

    def dump_text(self) -> str:
        lines = []
        for vid in sorted(self.vertices):
            lines.append(f"V {vid} {self.label(0, vid)}")
        for eid in sorted(self.edges):
            e = self.edges[eid]
            lines.append(f"E {eid} {e.src} {e.dst} {self.label(1, eid)}")
        for fid in sorted(self.faces):
            f = self.faces[fid]
            sig = ",".join(str(s) for s in f.boundary)
            lines.append(f"F {fid} {sig} {self.label(2, fid)}")
        for cid in sorted(self.cubes):
            c = self.cubes[cid]
            sig = ",".join(str(f) for f in c.faces)
            lines.append(f"C {cid} {sig}")
        return "\n".join(lines) + "\n"

    def restricted(self, vids: set[int], eids: set[int], fids: set[int],
                   cids: set[int], name: str = "") -> "Complex":
        """Subcomplex on the given cells; ids and keys are preserved."""
        out = Complex(name or self.name + "|sub")
        for vid in sorted(vids):
            v = self.vertices[vid]
            out.add_vertex(v.key, v.label, _id=vid)
        for eid in sorted(eids):
            e = self.edges[eid]
            out.add_edge(e.src, e.dst, e.key, e.label, _id=eid)
        for fid in sorted(fids):
            f = self.faces[fid]
            out.add_face(f.boundary, f.key, f.label, _id=fid)
        for cid in sorted(cids):
            c = self.cubes[cid]
            out.add_cube(c.corners, c.edges, c.faces, c.face_slots,
                         c.key, c.label, _id=cid)
        return out

    def __repr__(self) -> str:
        return (f"Complex({self.name!r}, V={len(self.vertices)} "
                f"E={len(self.edges)} F={len(self.faces)} C={len(self.cubes)})")


# --- cell sets (sub-complex descriptions) -----------------------------------

@dataclass
class CellSet:
    """A collection of cells of an ambient complex, one id-set per dimension."""
    vids: set[int]
    eids: set[int]
    fids: set[int] = None
    cids: set[int] = None

    def __post_init__(self):
        self.fids = set(self.fids or ())
        self.cids = set(self.cids or ())
        self.vids = set(self.vids)
        self.eids = set(self.eids)

    def is_subcomplex(self, c: Complex) -> bool:
        for eid in self.eids:
            e = c.edges[eid]
            if e.src not in self.vids or e.dst not in self.vids:
                return False
        for fid in self.fids:
            if any(abs(s) not in self.eids for s in c.faces[fid].boundary):
                return False
        for cid in self.cids:
            if any(f not in self.fids for f in c.cubes[cid].faces):
                return False
        return True

    def is_full(self, c: Complex) -> bool:
        """Every cell of c spanned by locus vertices belongs to the locus."""
        for eid, e in c.edges.items():
            if {e.src, e.dst} <= self.vids and eid not in self.eids:
                return False
        for fid in c.faces:
            if c.cell_vertices(2, fid) <= self.vids and fid not in self.fids:
                return False
        for cid in c.cubes:
            if c.cell_vertices(3, cid) <= self.vids and cid not in self.cids:
                return False
        return True


def complement_of_star(c: Complex, locus: CellSet,
                       name: str = "") -> Complex:
    """Full subcomplex on the cells whose closure misses the locus.

    The locus must be a full subcomplex (subdivide first if it is not); the
    result is then homotopy equivalent to the complement of the locus.
    """
    if not locus.is_subcomplex(c):
        raise ValueError("locus is not a subcomplex")
    if not locus.is_full(c):
        raise ValueError("locus is not full; subdivide edges first")
    bad = locus.vids
    vids = {v for v in c.vertices if v not in bad}
    eids = {e for e in c.edges if not (c.cell_vertices(1, e) & bad)}
    fids = {f for f in c.faces if not (c.cell_vertices(2, f) & bad)}
    cids = {q for q in c.cubes if not (c.cell_vertices(3, q) & bad)}
    return c.restricted(vids, eids, fids, cids,
                        name=name or c.name + "-star")


# --- edge paths --------------------------------------------------------------

@dataclass(frozen=True)
class EdgePath:
    """A path of signed edges starting at a basepoint vertex."""
    start: int
    steps: tuple[int, ...] = ()

    def validate(self, c: Complex):
        at = self.start
        for s in self.steps:
            u, v = c.edge_ends(s)
            if u != at:
                raise ValueError(f"path breaks at step {s}: at {at}, from {u}")
            at = v

    def end(self, c: Complex) -> int:
        at = self.start
        for s in self.steps:
            at = c.edge_ends(s)[1]
        return at

    def is_closed(self, c: Complex) -> bool:
        return self.end(c) == self.start

    def concat(self, other: "EdgePath", c: Complex) -> "EdgePath":
        if self.end(c) != other.start:
            raise ValueError("paths do not compose")
        return EdgePath(self.start, self.steps + other.steps)

    def inverse(self, c: Complex) -> "EdgePath":
        return EdgePath(self.end(c), tuple(-s for s in reversed(self.steps)))

    def reduced(self) -> "EdgePath":
        steps: list[int] = []
        for s in self.steps:
            if steps and steps[-1] == -s:
                steps.pop()
            else:
                steps.append(s)
        return EdgePath(self.start, tuple(steps))


# --- cellular maps -----------------------------------------------------------

class CellMap:
    """A cellular map; image cells may degenerate to lower dimension.

    ``vmap[v] = v'``; ``emap[e]`` is ``('e', e', sign)`` or ``('v', v')``;
    ``fmap[f]`` is ``('f', f')``, ``('e', e')`` or ``('v', v')``; ``cmap[q]``
    likewise down to dimension 0.
    """

    def __init__(self, source: Complex, target: Complex,
                 vmap: dict, emap: dict, fmap: dict | None = None,
                 cmap: dict | None = None, name: str = ""):
        self.source = source
        self.target = target
        self.vmap = dict(vmap)
        self.emap = dict(emap)
        self.fmap = dict(fmap or {})
        self.cmap = dict(cmap or {})
        self.name = name

    @classmethod
    def identity(cls, c: Complex) -> "CellMap":
        return cls(c, c,
                   {v: v for v in c.vertices},
                   {e: ("e", e, 1) for e in c.edges},
                   {f: ("f", f) for f in c.faces},
                   {q: ("c", q) for q in c.cubes},
                   name="id")

    def apply_vertex(self, vid: int) -> int:
        return self.vmap[vid]

    def apply_edge(self, eid: int):
        return self.emap[eid]

    def apply_signed_edge(self, signed: int):
        img = self.emap[abs(signed)]
        if img[0] == "v":
            return img
        _, eid, sign = img
        return ("e", eid, sign if signed > 0 else -sign)

    def apply_path(self, p: EdgePath, drop_backtracks: bool = False) -> EdgePath:
        """Image path, with degenerate (vertex-image) steps deleted."""
        steps = []
        for s in p.steps:
            img = self.apply_signed_edge(s)
            if img[0] == "e":
                steps.append(img[2] * img[1])
        out = EdgePath(self.vmap[p.start], tuple(steps))
        out.validate(self.target)
        return out.reduced() if drop_backtracks else out

    def then(self, other: "CellMap") -> "CellMap":
        """Composite map: self first, then other."""
        if self.target is not other.source:
            raise ValueError("maps do not compose")
        vmap = {v: other.vmap[img] for v, img in self.vmap.items()}
        emap = {}
        for e, img in self.emap.items():
            if img[0] == "v":
                emap[e] = ("v", other.vmap[img[1]])
            else:
                nxt = other.apply_signed_edge(img[2] * img[1])
                emap[e] = nxt if nxt[0] == "e" else ("v", nxt[1])
        fmap = {}
        for f, img in self.fmap.items():
            fmap[f] = _push_cell(other, img)
        cmap = {}
        for q, img in self.cmap.items():
            cmap[q] = _push_cell(other, img)
        return CellMap(self.source, other.target, vmap, emap, fmap, cmap,
                       name=f"{self.name};{other.name}")

    def same_assignments(self, other: "CellMap") -> bool:
        return (self.vmap == other.vmap and self.emap == other.emap
                and self.fmap == other.fmap and self.cmap == other.cmap)

    def check_cellular(self):
        """Verify the assignment commutes with boundary; raises on failure."""
        for eid, e in self.source.edges.items():
            img = self.emap[eid]
            if img[0] == "v":
                if (self.vmap[e.src] != img[1] or self.vmap[e.dst] != img[1]):
                    raise AssertionError(f"edge {eid} degenerates badly")
            else:
                _, tid, sign = img
                te = self.target.edges[tid]
                ends = (te.src, te.dst) if sign > 0 else (te.dst, te.src)
                if (self.vmap[e.src], self.vmap[e.dst]) != ends:
                    raise AssertionError(f"edge {eid} image endpoints broken")
        for fid, f in self.source.faces.items():
            img = self.fmap.get(fid)
            if img is None:
                continue
            base = self.source.face_corner_vertex(fid, 0)
            path = self.apply_path(EdgePath(base, f.boundary)).reduced()
            if img[0] == "f":
                tb = self.target.faces[img[1]].boundary
                if not _cyclic_path_matches(self.target, path, tb):
                    raise AssertionError(f"face {fid} boundary image mismatch")
            else:
                if not _cyclically_trivial(path):
                    raise AssertionError(
                        f"face {fid} degenerates to a non-trivial path")
        for cid, c in self.source.cubes.items():
            img = self.cmap.get(cid)
            if img is None:
                continue
            face_imgs = {tuple(self.fmap[f]) for f in c.faces}
            if img[0] == "c":
                tc = self.target.cubes[img[1]]
                got_faces = {x[1] for x in face_imgs if x[0] == "f"}
                if got_faces != set(tc.faces):
                    raise AssertionError(f"cube {cid} does not cover image")
            elif img[0] == "f":
                got_faces = {x[1] for x in face_imgs if x[0] == "f"}
                if got_faces != {img[1]}:
                    raise AssertionError(
                        f"cube {cid} degenerate image faces wrong")


def _push_cell(m: CellMap, img):
    kind, cid = img[0], img[1]
    if kind == "v":
        return ("v", m.vmap[cid])
    if kind == "e":
        nxt = m.emap[cid]
        return nxt if nxt[0] == "v" else ("e", nxt[1])
    if kind == "f":
        return m.fmap[cid]
    return m.cmap[cid]


def _cyclically_trivial(p: EdgePath) -> bool:
    steps = list(p.steps)
    changed = True
    while changed and steps:
        changed = False
        for i in range(len(steps)):
            j = (i + 1) % len(steps)
            if i != j and steps[i] == -steps[j]:
                for k in sorted((i, j), reverse=True):
                    steps.pop(k)
                changed = True
                break
    return not steps


def _cyclic_path_matches(c: Complex, p: EdgePath, boundary: tuple[int, ...]):
    w = p.steps
    n = len(boundary)
    if len(w) != n:
        return False
    doubled = boundary + boundary
    rev = tuple(-s for s in reversed(boundary))
    doubled_rev = rev + rev
    for off in range(n):
        if doubled[off:off + n] == w or doubled_rev[off:off + n] == w:
            return True
    return False


# --- products ---------------------------------------------------------------

def _pcell_key(cells: tuple) -> tuple:
    return tuple(cells)


def graph_power(g: Complex, n: int, truncate: bool = False,
                name: str = "") -> Complex:
    """The n-fold direct product of a graph, as a cube complex.

    Cells are tuples of factor cells; dimension is the number of edge
    factors.  For dimensions above 3 the cells are omitted only when
    ``truncate`` is set, otherwise the construction raises.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if g.faces or g.cubes:
        raise ValueError("graph_power expects a 1-complex")
    if n > 3 and not truncate:
        raise ValueError("cells above dimension 3 unsupported; pass truncate")
    out = Complex(name or f"{g.name}^{n}")
    vkeys = sorted(g.vertices)
    ekeys = sorted(g.edges)

    def lbl(parts):
        return "(" + ",".join(parts) + ")"

    factors = [("v", v) for v in vkeys] + [("e", e) for e in ekeys]
    for combo in itertools.product(factors, repeat=n):
        dim = sum(1 for kind, _ in combo if kind == "e")
        if dim > 3:
            continue
        key = _pcell_key(combo)
        labels = [g.label(0 if kind == "v" else 1, cid) for kind, cid in combo]
        if dim == 0:
            out.add_vertex(key, lbl(labels))
    for combo in itertools.product(factors, repeat=n):
        dim = sum(1 for kind, _ in combo if kind == "e")
        if dim != 1:
            continue
        slot = next(i for i, (kind, _) in enumerate(combo) if kind == "e")
        e = g.edges[combo[slot][1]]
        src = list(combo)
        dst = list(combo)
        src[slot] = ("v", e.src)
        dst[slot] = ("v", e.dst)
        labels = [g.label(0 if kind == "v" else 1, cid) for kind, cid in combo]
        out.add_edge(out.find(0, _pcell_key(tuple(src))),
                     out.find(0, _pcell_key(tuple(dst))),
                     _pcell_key(combo), lbl(labels))
    for combo in itertools.product(factors, repeat=n):
        dim = sum(1 for kind, _ in combo if kind == "e")
        if dim != 2:
            continue
        slots = [i for i, (kind, _) in enumerate(combo) if kind == "e"]
        i, j = slots
        ei, ej = g.edges[combo[i][1]], g.edges[combo[j][1]]

        def cell_at(bi, bj, edge_slot=None):
            c = list(combo)
            if edge_slot != i:
                c[i] = ("v", [ei.src, ei.dst][bi])
            if edge_slot != j:
                c[j] = ("v", [ej.src, ej.dst][bj])
            return _pcell_key(tuple(c))

        b = [out.find(1, cell_at(0, 0, edge_slot=i)),
             out.find(1, cell_at(1, 0, edge_slot=j)),
             -out.find(1, cell_at(0, 1, edge_slot=i)),
             -out.find(1, cell_at(0, 0, edge_slot=j))]
        labels = [g.label(0 if kind == "v" else 1, cid) for kind, cid in combo]
        out.add_face(b, _pcell_key(combo), lbl(labels))
    for combo in itertools.product(factors, repeat=n):
        dim = sum(1 for kind, _ in combo if kind == "e")
        if dim != 3:
            continue
        slots = [i for i, (kind, _) in enumerate(combo) if kind == "e"]
        fedges = [g.edges[combo[s][1]] for s in slots]

        def sub(bits, keep=()):
            c = list(combo)
            for axis, s in enumerate(slots):
                if s not in keep:
                    c[s] = ("v", [fedges[axis].src, fedges[axis].dst][
                        bits[axis]])
            return _pcell_key(tuple(c))

        corners = [out.find(0, sub(corner_bits(ci))) for ci in range(8)]
        edges = []
        for pos in range(12):
            axis, y, z = edge_pos_decode(pos)
            others = [a for a in range(3) if a != axis]
            bits = [0, 0, 0]
            bits[others[0]], bits[others[1]] = y, z
            edges.append(out.find(1, sub(tuple(bits), keep=(slots[axis],))))
        faces = []
        face_slots = []
        for fpos in range(6):
            axis, side = face_pos_decode(fpos)
            others = [a for a in range(3) if a != axis]
            bits = [0, 0, 0]
            bits[axis] = side
            fid = out.find(2, sub(tuple(bits),
                                  keep=(slots[others[0]], slots[others[1]])))
            faces.append(fid)
            slots_here = []
            for ci in face_corners(fpos):
                x = corner_bits(ci)
                slots_here.append(BITS2SLOT[(x[others[0]], x[others[1]])])
            face_slots.append(tuple(slots_here))
        labels = [g.label(0 if kind == "v" else 1, cid) for kind, cid in combo]
        out.add_cube(corners, edges, faces, face_slots,
                     _pcell_key(combo), lbl(labels))
    return out


def product_map(g: Complex, fmaps: Sequence[CellMap], power: Complex,
                target_power: Complex, name: str = "") -> CellMap:
    """Coordinate-wise map on a graph power from per-factor graph maps."""
    n = len(fmaps)

    def factor_image(kind, cid, m: CellMap):
        if kind == "v":
            return ("v", m.vmap[cid])
        img = m.emap[cid]
        return img if img[0] == "v" else ("e", img[1], img[2])

    def map_combo(combo):
        out = []
        sign = 1
        for slot, (kind, cid) in enumerate(combo):
            img = factor_image(kind, cid, fmaps[slot])
            if img[0] == "v":
                out.append(("v", img[1]))
            else:
                out.append(("e", img[1]))
                sign *= img[2]
        return tuple(out), sign

    vmap, emap, fmap, cmap = {}, {}, {}, {}
    for vid, v in power.vertices.items():
        key, _ = map_combo(v.key)
        vmap[vid] = target_power.find(0, key)
    for eid, e in power.edges.items():
        key, sign = map_combo(e.key)
        dim = sum(1 for kind, _ in key if kind == "e")
        if dim == 0:
            emap[eid] = ("v", target_power.find(0, key))
        else:
            emap[eid] = ("e", target_power.find(1, key), sign)
    for fid, f in power.faces.items():
        key, _ = map_combo(f.key)
        dim = sum(1 for kind, _ in key if kind == "e")
        fmap[fid] = ({0: "v", 1: "e", 2: "f"}[dim],
                     target_power.find(dim, key))
    for cid, c in power.cubes.items():
        key, _ = map_combo(c.key)
        dim = sum(1 for kind, _ in key if kind == "e")
        cmap[cid] = ({0: "v", 1: "e", 2: "f", 3: "c"}[dim],
                     target_power.find(dim, key))
    return CellMap(power, target_power, vmap, emap, fmap, cmap, name=name)


def projection_map(power: Complex, target_power: Complex,
                   coords: Sequence[int], name: str = "") -> CellMap:
    """Project a graph power onto the given coordinates (0-based, in order)."""
    def project(key):
        return tuple(key[i] for i in coords)

    vmap, emap, fmap, cmap = {}, {}, {}, {}
    for vid, v in power.vertices.items():
        vmap[vid] = target_power.find(0, project(v.key))
    for eid, e in power.edges.items():
        key = project(e.key)
        dim = sum(1 for kind, _ in key if kind == "e")
        if dim == 0:
            emap[eid] = ("v", target_power.find(0, key))
        else:
            emap[eid] = ("e", target_power.find(1, key), 1)
    for fid, f in power.faces.items():
        key = project(f.key)
        dim = sum(1 for kind, _ in key if kind == "e")
        fmap[fid] = ({0: "v", 1: "e", 2: "f"}[dim],
                     target_power.find(dim, key))
    for cid, c in power.cubes.items():
        key = project(c.key)
        dim = sum(1 for kind, _ in key if kind == "e")
        cmap[cid] = ({0: "v", 1: "e", 2: "f", 3: "c"}[dim],
                     target_power.find(dim, key))
    return CellMap(power, target_power, vmap, emap, fmap, cmap, name=name)
