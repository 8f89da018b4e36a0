"""Permutations on {1..N} at small degree, and the groups they generate.

Composition is left-to-right word order throughout: ``(p * q)(x) == q(p(x))``,
so the first edge of a path acts first and holonomy of a concatenated path is
the product of the pieces in reading order.
"""

from __future__ import annotations

import re
from functools import reduce
from typing import Iterable, Sequence

__all__ = [
    "Perm",
    "PermGroup",
    "commutator",
    "is_single_cycle",
    "stabilizer_contains",
]


class Perm:
    """An immutable permutation of {1..degree}.

    ``images[i-1]`` is the image of the point ``i``.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(1, degree + 1))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Perm":
        images = list(range(1, degree + 1))
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= degree:
                    raise ValueError(f"point {x} outside 1..{degree}")
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"repeated point in cycle {cyc}")
            for i, x in enumerate(cyc):
                images[x - 1] = cyc[(i + 1) % len(cyc)]
        p = cls(images)
        return p

    @classmethod
    def parse(cls, text: str, degree: int) -> "Perm":
        """Parse cycle notation, e.g. ``"(2 5 3 4)"`` or ``"(1)(2 5 3 4)"``.

        Fixed points may be written or omitted; ``"()"`` and ``""`` both give
        the identity.  Points may be separated by whitespace or commas.
        """
        text = text.strip()
        if text in ("", "()", "id"):
            return cls.identity(degree)
        chunks = re.findall(r"\(([^()]*)\)", text)
        if not chunks or re.sub(r"\([^()]*\)|\s", "", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = []
        for chunk in chunks:
            pts = [int(t) for t in re.split(r"[,\s]+", chunk.strip()) if t]
            if pts:
                cycles.append(pts)
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if x in seen:
                    raise ValueError(f"point {x} appears twice in {text!r}")
                seen.add(x)
        return cls.from_cycles(cycles, degree)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if not isinstance(other, Perm):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} vs {other.degree}")
        return Perm(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Perm(inv)

    def __pow__(self, n: int) -> "Perm":
        if n < 0:
            return self.inverse() ** (-n)
        result = Perm.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Multiset of cycle lengths (fixed points included), sorted descending."""
        lengths = [len(c) for c in self.cycles(include_fixed=True)]
        return tuple(sorted(lengths, reverse=True))

    def order(self) -> int:
        from math import lcm
        return reduce(lcm, (len(c) for c in self.cycles(include_fixed=True)), 1)

    def cycle_str(self, include_fixed: bool = False) -> str:
        cycs = self.cycles(include_fixed=include_fixed)
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm[{self.cycle_str()}]"


def commutator(p: Perm, q: Perm) -> Perm:
    """The commutator ``p q p^-1 q^-1`` under left-to-right composition."""
    return p * q * p.inverse() * q.inverse()


def is_single_cycle(p: Perm, length: int) -> bool:
    """True iff p is one cycle of the given length with all else fixed."""
    nontrivial = [len(c) for c in p.cycles()]
    return nontrivial == [length]


def stabilizer_contains(group: "PermGroup", point: int, p: Perm) -> bool:
    """True iff p fixes the point (membership in the point stabilizer)."""
    if p.degree != group.degree:
        raise ValueError("degree mismatch")
    if not 1 <= point <= group.degree:
        raise ValueError(f"point {point} outside 1..{group.degree}")
    return p(point) == point


class PermGroup:
    """A permutation group given by generators, with brute-force closure.

    Closure is plain breadth-first enumeration behind a configurable cap;
    orbit computations never require the full closure.
    """

    def __init__(self, degree: int, generators: Iterable[Perm],
                 size_cap: int = 10_000_000):
        self.degree = degree
        self.generators = [g for g in generators]
        for g in self.generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        self.size_cap = size_cap
        self._elements: list[Perm] | None = None

    @classmethod
    def cyclic(cls, n: int) -> "PermGroup":
        return cls(n, [Perm.from_cycles([tuple(range(1, n + 1))], n)])

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, [])

    def orbit(self, point: int) -> set[int]:
        """Smallest generator-closed set containing the point."""
        if not 1 <= point <= self.degree:
            raise ValueError(f"point {point} outside 1..{self.degree}")
        seen = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g(x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def orbits(self) -> list[set[int]]:
        remaining = set(range(1, self.degree + 1))
        out = []
        while remaining:
            orb = self.orbit(min(remaining))
            out.append(orb)
            remaining -= orb
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self.degree if self.degree else True

    def elements(self) -> list[Perm]:
        """Full closure by breadth-first multiplication (cached)."""
        if self._elements is not None:
            return self._elements
        ident = Perm.identity(self.degree)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y not in seen:
                        if len(seen) >= self.size_cap:
                            raise RuntimeError(
                                f"closure exceeded cap {self.size_cap}")
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        self._elements = sorted(seen, key=lambda p: p.images)
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, p: Perm) -> bool:
        return p in set(self.elements())

    def centralizer_elements(self, p: Perm) -> list[Perm]:
        return [g for g in self.elements() if g * p == p * g]

    def conjugacy_class(self, p: Perm) -> set[Perm]:
        return {g.inverse() * p * g for g in self.elements()}

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_str() for g in self.generators) or "id"
        return f"PermGroup(deg={self.degree}, <{gens}>)"
