"""Tangled matchings of ternary trees and Thompson permutations of tree pairs.

A ternary tree with 2n+1 leaves gives a fixed-point-free involution on the
points 0..2n+1: leaves are numbered 1..2n+1 from the left and 0 stands for
the root.  A leaf climbs while it sits in a middle position; when it
arrives at a node from the left (right) it bounces down the middle spine of
that node's right (left) child.  The leaf that climbs all the way to the
root is paired with 0.

For a pair (T+, T-) the two involutions generate a dihedral action on the
same points.  Walking alternately with pi(T-) and pi(T+) sweeps out one
closed strand of the associated link per orbit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .trees import LEAF, Tree, TreePair, caret, graft, leaf_count

__all__ = [
    "NotTangled", "TangledMatching", "Permutation", "ThompsonData", "Violation",
    "middle_foot", "tangled_matching", "matching_to_tree", "validate_tangled",
    "crossings", "crossing_count", "thompson_permutation", "component_count",
]


class NotTangled(ValueError):
    """The involution is not the matching of any ternary tree."""


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """Permutation of 0..m-1 stored as its image array."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(m)))

    @classmethod
    def from_cycles(cls, m: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(m))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(tuple(images))

    def __len__(self):
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """``self * other`` applies ``other`` first."""
        if len(self) != len(other):
            raise ValueError("permutations act on different sets")
        return Permutation(tuple(self.images[x] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its least element, sorted by that element."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __str__(self):
        cyc = self.cycles(include_fixed=False)
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) or "()"


# ---------------------------------------------------------------------------
# Matchings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TangledMatching:
    """Fixed-point-free involution on 0..2n+1, given by ``partner[x]``."""

    partner: tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        m = len(p)
        if m < 2 or m % 2:
            raise ValueError(f"a matching needs an even, nonzero number of points, got {m}")
        for x, y in enumerate(p):
            if not 0 <= y < m or y == x or p[y] != x:
                raise ValueError(f"not a fixed-point-free involution at {x} -> {y}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "TangledMatching":
        pairs = [tuple(pr) for pr in pairs]
        m = 2 * len(pairs)
        partner = [-1] * m
        for a, b in pairs:
            if not (0 <= a < m and 0 <= b < m) or partner[a] != -1 or partner[b] != -1 or a == b:
                raise ValueError(f"pairs {pairs} do not partition 0..{m - 1}")
            partner[a], partner[b] = b, a
        return cls(tuple(partner))

    @property
    def n(self) -> int:
        """Number of carets of the corresponding tree."""
        return len(self.partner) // 2 - 1

    @property
    def size(self) -> int:
        return len(self.partner)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x, y in enumerate(self.partner) if x < y]

    def __call__(self, x: int) -> int:
        return self.partner[x]

    def as_permutation(self) -> Permutation:
        return Permutation(self.partner)

    def to_json(self) -> list[list[int]]:
        return [list(pr) for pr in self.pairs()]

    def __str__(self):
        return "".join(f"({a},{b})" for a, b in self.pairs())


def middle_foot(t: Tree, offset: int = 0) -> int:
    """Index of the leaf reached by descending middle children from the root of ``t``.

    ``offset`` is the number of leaves to the left of ``t`` in the ambient tree.
    """
    k = offset
    node = t
    while node:
        mid = len(node) // 2
        k += sum(leaf_count(c) for c in node[:mid])
        node = node[mid]
    return k + 1


def tangled_matching(t: Tree) -> TangledMatching:
    """The involution pi(t) of a ternary tree."""
    if t and len(t) != 3:
        raise ValueError("tangled matchings are defined for ternary trees")
    m = leaf_count(t) + 1
    partner = [-1] * m

    # every node (A, B, C) pairs the foot of A with the foot of C: the foot
    # of A climbs to this node from the left and bounces down C's spine.
    # go() returns (leaf count, middle foot) of the subtree.
    def go(node: Tree, offset: int) -> tuple[int, int]:
        if not node:
            return 1, offset + 1
        left, mid, right = node
        nl, a = go(left, offset)
        nm, b = go(mid, offset + nl)
        nr, c = go(right, offset + nl + nm)
        partner[a], partner[c] = c, a
        return nl + nm + nr, b

    root_foot = go(t, 0)[1]
    partner[0], partner[root_foot] = root_foot, 0
    return TangledMatching(tuple(partner))


def matching_to_tree(m: TangledMatching) -> Tree:
    """Rebuild the ternary tree whose tangled matching is ``m``.

    Peels carets off one at a time: a pair {i, i+2} with i >= 1 is always a
    caret whose middle leaf is i+1.  Raises NotTangled if ``m`` is not the
    matching of any tree.
    """
    p = list(m.partner)
    if len(p) == 2:
        if p == [1, 0]:
            return LEAF
        raise NotTangled("matching on two points must be {(0,1)}")
    positions = []
    while len(p) > 4:
        i = next((i for i in range(1, len(p) - 2) if p[i] == i + 2), None)
        if i is None:
            raise NotTangled(f"no pair {{i, i+2}} with i >= 1 in {_fmt(p)}")
        positions.append(i)
        p = _delete_caret(p, i)
    if p != [2, 3, 0, 1]:
        raise NotTangled(f"peeling ends at {_fmt(p)}, not (0,2)(1,3)")
    t = caret(3)
    for i in reversed(positions):
        t = graft(t, i, caret(3))
    if tangled_matching(t) != m:
        raise NotTangled(f"{m} is not a tangled matching")
    return t


def _relabel(k: int, i: int) -> int:
    # points i and i+2 are deleted; i+1 moves to i, everything beyond shifts down by 2
    if k < i:
        return k
    if k == i + 1:
        return i
    return k - 2


def _delete_caret(p: list[int], i: int) -> list[int]:
    q = [0] * (len(p) - 2)
    for k, v in enumerate(p):
        if k in (i, i + 2):
            continue
        q[_relabel(k, i)] = _relabel(v, i)
    return q


def _fmt(p: Sequence[int]) -> str:
    return "".join(f"({x},{y})" for x, y in enumerate(p) if x < y)


# ---------------------------------------------------------------------------
# Crossings and the characterization
# ---------------------------------------------------------------------------

def _chords(m) -> list[tuple[int, int]]:
    if isinstance(m, TangledMatching):
        return m.pairs()
    return [(x, y) for x, y in enumerate(m) if x < y]


def crossings(m) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """All pairs of chords {a, c}, {b, d} with a < b < c < d."""
    chords = sorted(_chords(m))
    out = []
    for (a, c), (b, d) in combinations(chords, 2):
        if a < b < c < d:
            out.append(((a, c), (b, d)))
    return out


def crossing_count(m) -> int:
    return len(crossings(m))


@dataclass(frozen=True)
class Violation:
    clause: str
    """One of "malformed", "1", "2", "3", "4", "5"."""
    witness: tuple
    message: str = field(default="", compare=False)


def validate_tangled(m) -> list[Violation]:
    """Check the five properties of tangled matchings; empty list means valid.

    ``m`` may be a TangledMatching or a bare image sequence, so that
    malformed inputs can be reported rather than rejected.
    """
    p = tuple(m.partner) if isinstance(m, TangledMatching) else tuple(m)
    size = len(p)
    bad = [x for x, y in enumerate(p) if not 0 <= y < size or y == x or p[y] != x]
    if bad:
        return [Violation("malformed", tuple(bad), "not a fixed-point-free involution")]
    out = []
    n = size // 2 - 1
    if size % 2 or n < 1:
        out.append(Violation("1", (size,), "ground set must be {0..2n+1} with n >= 1"))
    chords = sorted(_chords(p))
    cross = crossings(p)
    crossed = {c for pair in cross for c in pair}
    for c in chords:
        if c not in crossed:
            out.append(Violation("2", c, f"chord {c} crosses no other chord"))
    for (a1, a4), (a2, a5), (a3, a6) in combinations(chords, 3):
        if a1 < a2 < a3 < a4 < a5 < a6:
            out.append(Violation("3", (a1, a2, a3, a4, a5, a6), "three mutually crossing chords"))
    # chords sorted by left end: {a1,a4}, {a2,a7}, {a3,a6}, {a5,a8}
    for (a1, a4), (a2, a7), (a3, a6), (a5, a8) in combinations(chords, 4):
        if a1 < a2 < a3 < a4 < a5 < a6 < a7 < a8:
            out.append(Violation("4", (a1, a2, a3, a4, a5, a6, a7, a8), "forbidden four-chord pattern"))
    if len(cross) != n:
        out.append(Violation("5", (len(cross), n), f"{len(cross)} crossings, expected {n}"))
    return out


# ---------------------------------------------------------------------------
# Thompson permutation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThompsonData:
    plus: TangledMatching
    minus: TangledMatching
    composition: Permutation
    """pi(T+) o pi(T-), pi(T-) applied first."""
    traversal_cycles: tuple[tuple[int, ...], ...]
    """Alternating walks: minus step, plus step, ... back to the start."""

    @property
    def component_count(self) -> int:
        return len(self.traversal_cycles)

    def to_dict(self) -> dict:
        return {
            "pi_plus": self.plus.to_json(),
            "pi_minus": self.minus.to_json(),
            "composition_cycles": [list(c) for c in self.composition.cycles()],
            "traversal_cycles": [list(c) for c in self.traversal_cycles],
            "component_count": self.component_count,
        }


def _traversal_cycles(plus: TangledMatching, minus: TangledMatching) -> tuple[tuple[int, ...], ...]:
    size = plus.size
    seen = [False] * size
    cycles = []
    # 0 always shares an orbit with some positive point, so start points are 1, 2, ...
    for start in list(range(1, size)) + [0]:
        if seen[start]:
            continue
        cyc = []
        x = start
        while True:
            cyc.append(x)
            seen[x] = True
            y = minus(x)
            cyc.append(y)
            seen[y] = True
            x = plus(y)
            if x == start:
                break
        cycles.append(tuple(cyc))
    return tuple(cycles)


def thompson_permutation(p: TreePair) -> ThompsonData:
    if p.arity != 3:
        raise ValueError("Thompson permutations are defined for ternary tree pairs")
    plus = tangled_matching(p.plus)
    minus = tangled_matching(p.minus)
    composition = plus.as_permutation() * minus.as_permutation()
    return ThompsonData(plus, minus, composition, _traversal_cycles(plus, minus))


def component_count(p: TreePair) -> int:
    """Number of components of the link of ``p``."""
    return thompson_permutation(p).component_count
