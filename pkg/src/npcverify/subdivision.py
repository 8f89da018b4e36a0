"""Edge subdivision of complexes of dimension <= 3.

Each edge is split at a midpoint; every k-gon face becomes k corner
quadrilaterals around a face center; every cube becomes 8 sub-cubes around a
cube center.  New cells are keyed by their provenance in the base complex:

==========  =======================================
vertex      ``('v', vid)  ('m', eid)  ('fc', fid)  ('cc', cid)``
edge        ``('eh', eid, 0|1)  ('sp', fid, slot)  ('ax', cid, fpos)``
face        ``('q', fid, slot)  ('is', cid, epos)``
cube        ``('sc', cid, ci)``
==========  =======================================

``('eh', e, 0)`` runs source -> midpoint, ``('eh', e, 1)`` midpoint -> target;
spokes run midpoint -> face center; axis edges run face center -> cube center.
"""

from __future__ import annotations

from .cells import (
    CellMap, Complex, Cube, bits_corner, corner_bits, edge_pos,
    edge_pos_decode, edge_pos_endpoints, face_corners, face_pos,
    face_pos_decode,
)

__all__ = ["Subdivision", "subdivide_edges", "induce_on_subdivision"]


def _half_as_traversed(signed: int, which: str):
    """The half of the edge met first/second when traversing the signed edge.

    Returns ``(half_index, sign)`` where sign orients the half cell along the
    traversal.
    """
    if signed > 0:
        return (0, 1) if which == "first" else (1, 1)
    return (1, -1) if which == "first" else (0, -1)


class Subdivision:
    """The edge subdivision of a base complex, with structured lookups."""

    def __init__(self, base: Complex):
        self.base = base
        cx = Complex(base.name + "'")
        self.cx = cx

        for vid in sorted(base.vertices):
            cx.add_vertex(("v", vid), base.label(0, vid))
        for eid in sorted(base.edges):
            cx.add_vertex(("m", eid), f"m[{base.label(1, eid)}]")
        for fid in sorted(base.faces):
            cx.add_vertex(("fc", fid), f"fc[{base.label(2, fid)}]")
        for cid in sorted(base.cubes):
            cx.add_vertex(("cc", cid), f"cc[{base.label(3, cid)}]")

        for eid in sorted(base.edges):
            e = base.edges[eid]
            mid = cx.find(0, ("m", eid))
            cx.add_edge(cx.find(0, ("v", e.src)), mid, ("eh", eid, 0))
            cx.add_edge(mid, cx.find(0, ("v", e.dst)), ("eh", eid, 1))
        for fid in sorted(base.faces):
            b = base.faces[fid].boundary
            fcv = cx.find(0, ("fc", fid))
            for slot, s in enumerate(b):
                cx.add_edge(cx.find(0, ("m", abs(s))), fcv, ("sp", fid, slot))
        for cid in sorted(base.cubes):
            cube = base.cubes[cid]
            ccv = cx.find(0, ("cc", cid))
            for fpos in range(6):
                cx.add_edge(cx.find(0, ("fc", cube.faces[fpos])), ccv,
                            ("ax", cid, fpos))

        for fid in sorted(base.faces):
            b = base.faces[fid].boundary
            k = len(b)
            for slot in range(k):
                prev = b[(slot - 1) % k]
                cur = b[slot]
                h2, s2 = _half_as_traversed(prev, "second")
                h1, s1 = _half_as_traversed(cur, "first")
                boundary = (
                    s2 * cx.find(1, ("eh", abs(prev), h2)),
                    s1 * cx.find(1, ("eh", abs(cur), h1)),
                    cx.find(1, ("sp", fid, slot)),
                    -cx.find(1, ("sp", fid, (slot - 1) % k)),
                )
                cx.add_face(boundary, ("q", fid, slot))
        for cid in sorted(base.cubes):
            cube = base.cubes[cid]
            for epos in range(12):
                axis, _, _ = edge_pos_decode(epos)
                fp_b, fp_c = _edge_face_positions(epos)
                slot_b = _edge_slot_in_face(base, cube, fp_b, epos)
                slot_c = _edge_slot_in_face(base, cube, fp_c, epos)
                boundary = (
                    cx.find(1, ("sp", cube.faces[fp_b], slot_b)),
                    cx.find(1, ("ax", cid, fp_b)),
                    -cx.find(1, ("ax", cid, fp_c)),
                    -cx.find(1, ("sp", cube.faces[fp_c], slot_c)),
                )
                cx.add_face(boundary, ("is", cid, epos))

        for cid in sorted(base.cubes):
            self._subdivide_cube(cid)

    # -- cube subdivision -----------------------------------------------------

    def _corner_cell(self, cube: Cube, cid: int, levels: tuple[int, int, int]):
        mids = [a for a in range(3) if levels[a] == 1]
        if not mids:
            return ("v", cube.corners[bits_corner(*(l // 2 for l in levels))])
        if len(mids) == 1:
            a = mids[0]
            others = [b for b in range(3) if b != a]
            pos = edge_pos(a, levels[others[0]] // 2, levels[others[1]] // 2)
            return ("m", abs(cube.edges[pos]))
        if len(mids) == 2:
            a = next(b for b in range(3) if levels[b] != 1)
            return ("fc", cube.faces[face_pos(a, levels[a] // 2)])
        return ("cc", cid)

    def _subdivide_cube(self, cid: int):
        base, cx = self.base, self.cx
        cube = base.cubes[cid]
        for ci in range(8):
            x = corner_bits(ci)
            corners = []
            for li in range(8):
                y = corner_bits(li)
                levels = tuple(x[a] + y[a] for a in range(3))
                corners.append(cx.find(0, self._corner_cell(cube, cid,
                                                            levels)))
            edges = []
            for pos in range(12):
                a, u, v = edge_pos_decode(pos)
                others = [b for b in range(3) if b != a]
                lev = {others[0]: x[others[0]] + u, others[1]: x[others[1]] + v}
                mids = [b for b in others if lev[b] == 1]
                if not mids:
                    E = cube.edges[edge_pos(a, lev[others[0]] // 2,
                                            lev[others[1]] // 2)]
                    sigma = 1 if E > 0 else -1
                    if sigma > 0:
                        half = 0 if x[a] == 0 else 1
                        edges.append(cx.find(1, ("eh", abs(E), half)))
                    else:
                        half = 1 if x[a] == 0 else 0
                        edges.append(-cx.find(1, ("eh", abs(E), half)))
                elif len(mids) == 1:
                    mid_axis = mids[0]
                    fix_axis = next(b for b in others if b != mid_axis)
                    fp = face_pos(fix_axis, lev[fix_axis] // 2)
                    ep_levels = {}
                    for b in (a, fix_axis):
                        ep_levels[b] = 2 * x[b] if b == a else lev[b]
                    op = sorted((a, fix_axis))
                    ep = edge_pos(mid_axis, ep_levels[op[0]] // 2,
                                  ep_levels[op[1]] // 2)
                    slot = _edge_slot_in_face(base, cube, fp, ep)
                    sign = 1 if x[a] == 0 else -1
                    edges.append(sign * cx.find(1, ("sp", cube.faces[fp],
                                                    slot)))
                else:
                    fp = face_pos(a, x[a])
                    sign = 1 if x[a] == 0 else -1
                    edges.append(sign * cx.find(1, ("ax", cid, fp)))
            faces = []
            for fp in range(6):
                a, s_local = face_pos_decode(fp)
                if s_local == x[a]:
                    qfp = face_pos(a, x[a])
                    fid = cube.faces[qfp]
                    idx = face_corners(qfp).index(ci)
                    slot = cube.face_slots[qfp][idx]
                    faces.append(cx.find(2, ("q", fid, slot)))
                else:
                    others = [b for b in range(3) if b != a]
                    ep = edge_pos(a, x[others[0]], x[others[1]])
                    faces.append(cx.find(2, ("is", cid, ep)))
            face_slots = []
            for fp in range(6):
                fid = faces[fp]
                slotmap = {}
                for slot in range(4):
                    v = cx.face_corner_vertex(fid, slot)
                    if v in slotmap:
                        raise ValueError(
                            "ambiguous sub-cube face (repeated corner)")
                    slotmap[v] = slot
                face_slots.append(tuple(slotmap[corners[c]]
                                        for c in face_corners(fp)))
            cx.add_cube(corners, edges, faces, face_slots, ("sc", cid, ci))

    # -- lookups ---------------------------------------------------------------

    def v_orig(self, vid: int) -> int:
        return self.cx.find(0, ("v", vid))

    def v_mid(self, eid: int) -> int:
        return self.cx.find(0, ("m", eid))

    def v_fc(self, fid: int) -> int:
        return self.cx.find(0, ("fc", fid))

    def v_cc(self, cid: int) -> int:
        return self.cx.find(0, ("cc", cid))

    def half(self, eid: int, h: int) -> int:
        return self.cx.find(1, ("eh", eid, h))

    def spoke(self, fid: int, slot: int) -> int:
        return self.cx.find(1, ("sp", fid, slot))

    def axis_edge(self, cid: int, fpos: int) -> int:
        return self.cx.find(1, ("ax", cid, fpos))

    def quarter(self, fid: int, slot: int) -> int:
        return self.cx.find(2, ("q", fid, slot))

    def internal(self, cid: int, epos: int) -> int:
        return self.cx.find(2, ("is", cid, epos))

    def subcube(self, cid: int, ci: int) -> int:
        return self.cx.find(3, ("sc", cid, ci))

    def vertex_image(self, vids: set[int]) -> set[int]:
        return {self.v_orig(v) for v in vids}


def subdivide_edges(c: Complex) -> Complex:
    """One round of edge subdivision; see Subdivision for the cell keys."""
    return Subdivision(c).cx


def _edge_face_positions(epos: int) -> tuple[int, int]:
    axis, y, z = edge_pos_decode(epos)
    others = [a for a in range(3) if a != axis]
    return face_pos(others[0], y), face_pos(others[1], z)


def _edge_slot_in_face(c: Complex, cube: Cube, fpos: int, epos: int) -> int:
    """The boundary slot of the cube edge ``epos`` on the face at ``fpos``."""
    fid = cube.faces[fpos]
    lo, hi = edge_pos_endpoints(epos)
    fcs = face_corners(fpos)
    slots = cube.face_slots[fpos]
    s_lo = slots[fcs.index(lo)]
    s_hi = slots[fcs.index(hi)]
    k = len(c.faces[fid].boundary)
    candidates = []
    if (s_lo + 1) % k == s_hi:
        candidates.append(s_lo)
    if (s_hi + 1) % k == s_lo:
        candidates.append(s_hi)
    candidates = [s for s in candidates
                  if abs(c.faces[fid].boundary[s]) == abs(cube.edges[epos])]
    if len(candidates) != 1:
        raise ValueError(f"cannot align edge {epos} on face position {fpos}")
    return candidates[0]


# --- induced maps on subdivisions --------------------------------------------

def _face_correspondence(m: CellMap, fid: int, tid: int):
    """Boundary alignment (offset, direction) of a face mapped to a face."""
    bF = m.source.faces[fid].boundary
    bG = m.target.faces[tid].boundary
    k = len(bF)
    if len(bG) != k:
        raise ValueError("face images of different size")
    imgs = []
    for s in bF:
        img = m.apply_signed_edge(s)
        if img[0] != "e":
            raise ValueError("boundary degenerates under face-to-face map")
        imgs.append(img[2] * img[1])
    for d in (1, -1):
        for r in range(k):
            if all(imgs[j] == (bG[(r + j) % k] if d == 1
                               else -bG[(r - j) % k]) for j in range(k)):
                return r, d
    raise ValueError("no boundary correspondence for face map")


def _corner_index_map(m: CellMap, cid: int, tid: int):
    src = m.source.cubes[cid]
    tgt = m.target.cubes[tid]
    if len(set(tgt.corners)) != 8 or len(set(src.corners)) != 8:
        raise ValueError("cube corner matching needs embedded cubes")
    where = {v: i for i, v in enumerate(tgt.corners)}
    return [where[m.vmap[v]] for v in src.corners]


def _face_position_map(m: CellMap, cid: int, tid: int):
    src = m.source.cubes[cid]
    tgt = m.target.cubes[tid]
    out = []
    for fp in range(6):
        img = m.fmap[src.faces[fp]]
        if img[0] != "f":
            raise ValueError("cube-to-cube map with degenerate face")
        matches = [p for p in range(6) if tgt.faces[p] == img[1]]
        if len(matches) != 1:
            raise ValueError("ambiguous face position")
        out.append(matches[0])
    return out


def _edge_position_map(m: CellMap, cid: int, tid: int):
    src = m.source.cubes[cid]
    tgt = m.target.cubes[tid]
    out = []
    for ep in range(12):
        img = m.emap[abs(src.edges[ep])]
        if img[0] != "e":
            raise ValueError("cube-to-cube map with degenerate edge")
        matches = [p for p in range(12) if abs(tgt.edges[p]) == img[1]]
        if len(matches) != 1:
            raise ValueError("ambiguous edge position")
        out.append(matches[0])
    return out


def _slot_of_edge_in_face(c: Complex, fid: int, eid: int) -> int:
    slots = [s for s, b in enumerate(c.faces[fid].boundary) if abs(b) == eid]
    if len(slots) != 1:
        raise ValueError("edge not uniquely on face boundary")
    return slots[0]


def _slot_of_vertex_in_face(c: Complex, fid: int, vid: int) -> int:
    slots = [s for s in range(len(c.faces[fid].boundary))
             if c.face_corner_vertex(fid, s) == vid]
    if len(slots) != 1:
        raise ValueError("vertex not uniquely a face corner")
    return slots[0]


def _half_toward(c: Complex, eid: int, vid: int, sub: Subdivision):
    """Signed half of an edge directed from the endpoint vid to the midpoint."""
    e = c.edges[eid]
    if e.src == e.dst:
        raise ValueError("cannot orient half of a loop edge")
    if vid == e.src:
        return sub.half(eid, 0)
    if vid == e.dst:
        return -sub.half(eid, 1)
    raise ValueError("vertex not an endpoint")


def induce_on_subdivision(m: CellMap, subA: Subdivision,
                          subB: Subdivision, name: str = "") -> CellMap:
    """The map induced on edge subdivisions by a cellular map of the bases."""
    A, B = subA.cx, subB.cx
    src, tgt = m.source, m.target
    if subA.base is not src or subB.base is not tgt:
        raise ValueError("subdivisions do not match map")

    face_corr: dict[int, tuple[int, int]] = {}

    def fcorr(fid):
        if fid not in face_corr:
            face_corr[fid] = _face_correspondence(m, fid, m.fmap[fid][1])
        return face_corr[fid]

    vmap: dict[int, int] = {}
    for vid, v in A.vertices.items():
        kind, base_id = v.key[0], v.key[1]
        if kind == "v":
            vmap[vid] = subB.v_orig(m.vmap[base_id])
        elif kind == "m":
            img = m.emap[base_id]
            vmap[vid] = (subB.v_orig(img[1]) if img[0] == "v"
                         else subB.v_mid(img[1]))
        elif kind == "fc":
            img = m.fmap[base_id]
            vmap[vid] = {"v": subB.v_orig, "e": subB.v_mid,
                         "f": subB.v_fc}[img[0]](img[1])
        else:
            img = m.cmap[base_id]
            vmap[vid] = {"v": subB.v_orig, "e": subB.v_mid, "f": subB.v_fc,
                         "c": subB.v_cc}[img[0]](img[1])

    emap: dict[int, tuple] = {}
    for eid, e in A.edges.items():
        key = e.key
        if key[0] == "eh":
            base_e, h = key[1], key[2]
            img = m.emap[base_e]
            if img[0] == "v":
                emap[eid] = ("v", subB.v_orig(img[1]))
            else:
                _, te, sign = img
                half = h if sign > 0 else 1 - h
                emap[eid] = ("e", subB.half(te, half), sign)
        elif key[0] == "sp":
            base_f, slot = key[1], key[2]
            img = m.fmap[base_f]
            if img[0] == "v":
                emap[eid] = ("v", subB.v_orig(img[1]))
            elif img[0] == "f":
                r, d = fcorr(base_f)
                k = len(src.faces[base_f].boundary)
                slot2 = (r + slot) % k if d == 1 else (r - slot) % k
                emap[eid] = ("e", subB.spoke(img[1], slot2), 1)
            else:
                te = img[1]
                mid_img = m.emap[abs(src.faces[base_f].boundary[slot])]
                if mid_img[0] == "e" and mid_img[1] == te:
                    emap[eid] = ("v", subB.v_mid(te))
                elif mid_img[0] == "v":
                    signed = _half_toward(tgt, te, mid_img[1], subB)
                    emap[eid] = ("e", abs(signed),
                                 1 if signed > 0 else -1)
                else:
                    raise ValueError("spoke image unresolved")
        else:
            base_c, fp = key[1], key[2]
            img = m.cmap[base_c]
            F = src.cubes[base_c].faces[fp]
            fimg = m.fmap[F]
            if img[0] == "c":
                fpmap = _face_position_map(m, base_c, img[1])
                emap[eid] = ("e", subB.axis_edge(img[1], fpmap[fp]), 1)
            elif img[0] == "f":
                if fimg[0] == "f":
                    emap[eid] = ("v", subB.v_fc(fimg[1]))
                elif fimg[0] == "e":
                    slot = _slot_of_edge_in_face(tgt, img[1], fimg[1])
                    emap[eid] = ("e", subB.spoke(img[1], slot), 1)
                else:
                    raise ValueError("axis edge image unresolved")
            else:
                raise NotImplementedError("cube image below dimension 2")

    fmap: dict[int, tuple] = {}
    for fid, f in A.faces.items():
        key = f.key
        if key[0] == "q":
            base_f, slot = key[1], key[2]
            img = m.fmap[base_f]
            if img[0] == "v":
                fmap[fid] = ("v", subB.v_orig(img[1]))
            elif img[0] == "f":
                r, d = fcorr(base_f)
                k = len(src.faces[base_f].boundary)
                slot2 = (r + slot) % k if d == 1 else (r - slot + 1) % k
                fmap[fid] = ("f", subB.quarter(img[1], slot2))
            else:
                te = img[1]
                u = m.vmap[src.face_corner_vertex(base_f, slot)]
                ends = tgt.edges[te]
                if ends.src == ends.dst:
                    raise ValueError("degenerate quarter onto loop edge")
                half = 0 if u == ends.src else 1
                fmap[fid] = ("e", subB.half(te, half))
        else:
            base_c, ep = key[1], key[2]
            img = m.cmap[base_c]
            cube = src.cubes[base_c]
            E = abs(cube.edges[ep])
            if img[0] == "c":
                epmap = _edge_position_map(m, base_c, img[1])
                fmap[fid] = ("f", subB.internal(img[1], epmap[ep]))
            elif img[0] == "f":
                eimg = m.emap[E]
                if eimg[0] == "e":
                    slot = _slot_of_edge_in_face(tgt, img[1], eimg[1])
                    fmap[fid] = ("e", subB.spoke(img[1], slot))
                else:
                    slot = _slot_of_vertex_in_face(tgt, img[1], eimg[1])
                    fmap[fid] = ("f", subB.quarter(img[1], slot))
            else:
                raise NotImplementedError("cube image below dimension 2")

    cmap: dict[int, tuple] = {}
    for cid, c in A.cubes.items():
        base_c, ci = c.key[1], c.key[2]
        img = m.cmap[base_c]
        if img[0] == "c":
            cimap = _corner_index_map(m, base_c, img[1])
            cmap[cid] = ("c", subB.subcube(img[1], cimap[ci]))
        elif img[0] == "f":
            u = m.vmap[src.cubes[base_c].corners[ci]]
            slot = _slot_of_vertex_in_face(tgt, img[1], u)
            cmap[cid] = ("f", subB.quarter(img[1], slot))
        else:
            raise NotImplementedError("cube image below dimension 2")

    return CellMap(A, B, vmap, emap, fmap, cmap, name=name or m.name + "'")
