"""Spanning trees, fundamental-group generators, and first Betti numbers."""

from __future__ import annotations

import numpy as np

from .cells import Complex, EdgePath

__all__ = ["SpanningTreeGens", "pi1_generators", "tietze_reduce",
           "free_reduce", "betti_one"]

_RANK_PRIMES = (46337, 46327, 46309)


class SpanningTreeGens:
    """A deterministic spanning tree with one generator loop per extra edge."""

    def __init__(self, c: Complex, base: int):
        self.complex = c
        self.base = base
        parent_step: dict[int, int] = {base: 0}
        order = [base]
        tree: set[int] = set()
        frontier = [base]
        while frontier:
            nxt = []
            for v in frontier:
                for eid, end in sorted(c.germs_at(v)):
                    w = c.edge_ends(eid if end == 0 else -eid)[1]
                    if w not in parent_step:
                        parent_step[w] = eid if end == 0 else -eid
                        tree.add(eid)
                        order.append(w)
                        nxt.append(w)
            frontier = nxt
        if len(parent_step) != len(c.vertices):
            raise ValueError("complex is not connected")
        self.parent_step = parent_step
        self.tree_edges = tree
        self.gens = sorted(e for e in c.edges if e not in tree)
        self.gen_index = {e: i + 1 for i, e in enumerate(self.gens)}

    def _steps_to_base(self, v: int) -> list[int]:
        steps = []
        while v != self.base:
            s = self.parent_step[v]
            steps.append(-s)
            v = self.complex.edge_ends(-s)[1]
        return steps

    def tree_path(self, u: int, v: int) -> EdgePath:
        """The tree geodesic from u to v."""
        up = self._steps_to_base(u)
        down = [-s for s in reversed(self._steps_to_base(v))]
        path = EdgePath(u, tuple(up + down)).reduced()
        return path

    def loop(self, eid: int) -> EdgePath:
        """The generator loop for a non-tree edge: tree in, edge, tree back."""
        e = self.complex.edges[eid]
        first = self.tree_path(self.base, e.src)
        back = self.tree_path(e.dst, self.base)
        return EdgePath(self.base,
                        first.steps + (eid,) + back.steps).reduced()

    def loops(self) -> list[EdgePath]:
        return [self.loop(e) for e in self.gens]

    def word_of_path(self, p: EdgePath) -> list[int]:
        """The path rewritten over the generators (tree edges vanish)."""
        word = []
        for s in p.steps:
            idx = self.gen_index.get(abs(s))
            if idx is not None:
                word.append(idx if s > 0 else -idx)
        return free_reduce(word)

    def relators(self) -> list[list[int]]:
        """Boundary words of the 2-cells, rewritten over the generators."""
        out = []
        for fid in sorted(self.complex.faces):
            base = self.complex.face_corner_vertex(fid, 0)
            word = self.word_of_path(
                EdgePath(base, self.complex.faces[fid].boundary))
            out.append(word)
        return out

    def free_rank(self) -> tuple[int, list[list[int]]]:
        """Generator count and leftover relators after Tietze reduction."""
        return tietze_reduce(len(self.gens), self.relators())


def pi1_generators(c: Complex, base: int) -> SpanningTreeGens:
    return SpanningTreeGens(c, base)


def free_reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def cyclic_reduce(word: list[int]) -> list[int]:
    word = free_reduce(word)
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return word


def tietze_reduce(ngens: int, relators: list[list[int]],
                  max_rounds: int = 100_000) -> tuple[int, list[list[int]]]:
    """Eliminate generators that occur exactly once in some relator.

    Returns the remaining generator count and the leftover (cyclically
    reduced) relators; an empty leftover certifies a free group of the
    returned rank.
    """
    alive = set(range(1, ngens + 1))
    rels = [cyclic_reduce(list(r)) for r in relators]
    rels = [r for r in rels if r]
    for _ in range(max_rounds):
        pick = None
        for ri, r in enumerate(sorted(rels, key=len)):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            singles = sorted(g for g, n in counts.items() if n == 1)
            if singles:
                pick = (r, singles[0])
                break
        if pick is None:
            break
        r, g = pick
        rels.remove(r)
        pos = next(i for i, x in enumerate(r) if abs(x) == g)
        rot = r[pos:] + r[:pos]
        eps = 1 if rot[0] > 0 else -1
        tail = rot[1:]
        expr = [-x for x in reversed(tail)]
        if eps < 0:
            expr = [-x for x in reversed(expr)]
        newrels = []
        for s in rels:
            out: list[int] = []
            for x in s:
                if abs(x) == g:
                    out.extend(expr if x > 0 else [-y for y in reversed(expr)])
                else:
                    out.append(x)
            out = cyclic_reduce(out)
            if out:
                newrels.append(out)
        rels = newrels
        alive.discard(g)
    return len(alive), rels


def _rank_mod_p(rows: list[dict[int, int]], ncols: int, p: int) -> int:
    if not rows or ncols == 0:
        return 0
    mat = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, val in row.items():
            mat[i, j] = val % p
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if mat[r, col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        mat[[rank, pivot]] = mat[[pivot, rank]]
        inv = pow(int(mat[rank, col]), p - 2, p)
        mat[rank] = (mat[rank] * inv) % p
        for r in range(len(rows)):
            if r != rank and mat[r, col]:
                mat[r] = (mat[r] - mat[r, col] * mat[rank]) % p
        rank += 1
        if rank == len(rows):
            break
    return rank


def betti_one(c: Complex) -> int:
    """First Betti number from the edge-face boundary matrix.

    The rank of the boundary map is computed modulo several large primes and
    must agree, which pins the rational rank for these small matrices.
    """
    eids = sorted(c.edges)
    eindex = {e: i for i, e in enumerate(eids)}
    rows = []
    for fid in sorted(c.faces):
        row: dict[int, int] = {}
        for s in c.faces[fid].boundary:
            j = eindex[abs(s)]
            row[j] = row.get(j, 0) + (1 if s > 0 else -1)
        rows.append({j: v for j, v in row.items() if v})
    ranks = {_rank_mod_p(rows, len(eids), p) for p in _RANK_PRIMES}
    if len(ranks) != 1:
        raise RuntimeError(f"modular ranks disagree: {ranks}")
    rank2 = ranks.pop()
    cycle_rank = len(c.edges) - len(c.vertices) + c.component_count()
    return cycle_rank - rank2
