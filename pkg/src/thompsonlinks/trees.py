"""Rooted planar trees and the tree-pair model of the Thompson groups F and F3.

Trees are plain nested tuples: the leaf is the empty tuple ``()`` and an
internal node is the tuple of its children.  A binary node has two
children, a ternary node three.  Tuples are immutable and hashable, so
trees can be used as dictionary keys and compared structurally.

Text form::

    tree ::= "." | "(" tree{arity} ")"

so ``"(.(...).)"`` is a ternary root whose middle child is a caret.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

Tree = tuple

LEAF: Tree = ()

__all__ = [
    "Tree", "LEAF", "TreeSyntaxError", "TreePair", "PLMap",
    "caret", "parse_tree", "serialize", "leaf_count", "node_count", "tree_arity",
    "graft", "common_refinement", "reduce", "multiply", "inverse", "inflate",
    "tau", "iota", "leaf_intervals", "pl_map", "compose",
]


class TreeSyntaxError(ValueError):
    """Raised when a tree string does not match the grammar."""

    def __init__(self, message: str, offset: int, text: str):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.offset = offset
        self.text = text


def caret(arity: int = 3) -> Tree:
    return (LEAF,) * arity


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def parse_tree(text: str, arity: int = 3) -> Tree:
    """Parse ``text`` into a tree with the given node arity.

    Whitespace is ignored.  Errors carry the byte offset where parsing failed.
    """
    if arity not in (2, 3):
        raise ValueError(f"arity must be 2 or 3, not {arity}")
    # (offset, char) for every significant character
    toks = [(i, c) for i, c in enumerate(text) if not c.isspace()]
    end = len(text)
    # explicit stack: each frame collects the children of an open node
    stack: list[list] = []
    pos = 0
    result = None
    while pos < len(toks):
        off, c = toks[pos]
        if result is not None:
            raise TreeSyntaxError("trailing input", off, text)
        if c == ".":
            node: Optional[Tree] = LEAF
        elif c == "(":
            stack.append([off])
            node = None
        elif c == ")":
            if not stack:
                raise TreeSyntaxError("unbalanced ')'", off, text)
            frame = stack.pop()
            children = frame[1:]
            if len(children) != arity:
                raise TreeSyntaxError(
                    f"node opened at offset {frame[0]} has {len(children)} children, "
                    f"expected {arity}", off, text)
            node = tuple(children)
        else:
            raise TreeSyntaxError(f"unexpected character {c!r}", off, text)
        pos += 1
        if node is None:
            continue
        if stack:
            if len(stack[-1]) - 1 == arity:
                raise TreeSyntaxError(f"too many children (expected {arity})", off, text)
            stack[-1].append(node)
        else:
            result = node
    if stack:
        raise TreeSyntaxError("unbalanced '(' (unexpected end of input)", end, text)
    if result is None:
        raise TreeSyntaxError("empty input", end, text)
    return result


def serialize(t: Tree) -> str:
    out = []
    stack = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif not item:
            out.append(".")
        else:
            out.append("(")
            stack.append(")")
            stack.extend(reversed(item))
    return "".join(out)


# ---------------------------------------------------------------------------
# Basic structure
# ---------------------------------------------------------------------------

def _walk(t: Tree) -> Iterator[Tree]:
    """Preorder traversal, left to right."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node))


def leaf_count(t: Tree) -> int:
    return sum(1 for node in _walk(t) if not node)


def node_count(t: Tree) -> int:
    """Number of internal nodes (carets)."""
    return sum(1 for node in _walk(t) if node)


def tree_arity(t: Tree) -> Optional[int]:
    """Return the common node arity of ``t``, or None for a bare leaf.

    Raises ValueError if nodes of different arity are mixed.
    """
    arities = {len(node) for node in _walk(t) if node}
    if len(arities) > 1:
        raise ValueError(f"tree mixes node arities {sorted(arities)}")
    return arities.pop() if arities else None


def graft(t: Tree, leaf_index: int, s: Tree) -> Tree:
    """Replace the ``leaf_index``-th leaf of ``t`` (1-based, left to right) by ``s``."""
    n = leaf_count(t)
    if not 1 <= leaf_index <= n:
        raise IndexError(f"leaf index {leaf_index} out of range 1..{n}")

    def go(node: Tree, k: int) -> tuple[Tree, int]:
        # k = number of leaves to the left of ``node``
        if not node:
            return (s if k + 1 == leaf_index else node), k + 1
        children = []
        for child in node:
            child, k = go(child, k)
            children.append(child)
        return tuple(children), k

    return go(t, 0)[0]


def common_refinement(a: Tree, b: Tree) -> Tree:
    """Smallest tree having both ``a`` and ``b`` as rooted subtrees."""
    if not a:
        return b
    if not b:
        return a
    if len(a) != len(b):
        raise ValueError("cannot refine trees of different arity")
    return tuple(common_refinement(x, y) for x, y in zip(a, b))


def _leaf_expansions(small: Tree, big: Tree) -> list[Tree]:
    """For a prefix ``small`` of ``big``, the subtree of ``big`` hanging below each leaf of ``small``."""
    out: list[Tree] = []
    stack = [(small, big)]
    while stack:
        s, b = stack.pop()
        if not s:
            out.append(b)
        else:
            if len(s) != len(b):
                raise ValueError("first tree is not a prefix of the second")
            stack.extend(reversed(list(zip(s, b))))
    return out


def _substitute_leaves(t: Tree, subs: Sequence[Tree]) -> Tree:
    it = iter(subs)

    def go(node: Tree) -> Tree:
        if not node:
            return next(it)
        return tuple(go(child) for child in node)

    return go(t)


def _caret_positions(t: Tree) -> list[int]:
    """1-based index of the first leaf of every caret whose children are all leaves."""
    out = []
    k = 0
    for node in _walk(t):
        if not node:
            k += 1
        elif not any(node):
            out.append(k + 1)
    return out


def _collapse(t: Tree, leaf_index: int) -> Tree:
    """Replace the all-leaf caret starting at ``leaf_index`` by a leaf."""

    def go(node: Tree, k: int) -> tuple[Tree, int]:
        if not node:
            return node, k + 1
        if not any(node) and k + 1 == leaf_index:
            return LEAF, k + len(node)
        children = []
        for child in node:
            child, k = go(child, k)
            children.append(child)
        return tuple(children), k

    return go(t, 0)[0]


# ---------------------------------------------------------------------------
# Tree pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreePair:
    """An element of F (arity 2) or F3 (arity 3) as a pair of trees.

    ``plus`` is drawn on top, ``minus`` upside down below it; both have the
    same number of leaves.
    """

    plus: Tree
    minus: Tree
    arity: int = 3

    def __post_init__(self):
        if self.arity not in (2, 3):
            raise ValueError(f"arity must be 2 or 3, not {self.arity}")
        for t in (self.plus, self.minus):
            a = tree_arity(t)
            if a is not None and a != self.arity:
                raise ValueError(f"tree {serialize(t)} has arity {a}, expected {self.arity}")
        if leaf_count(self.plus) != leaf_count(self.minus):
            raise ValueError(
                f"trees have different leaf counts: {leaf_count(self.plus)} != {leaf_count(self.minus)}")

    @classmethod
    def parse(cls, plus: str, minus: str, arity: int = 3) -> "TreePair":
        return cls(parse_tree(plus, arity), parse_tree(minus, arity), arity)

    @classmethod
    def identity(cls, arity: int = 3) -> "TreePair":
        return cls(LEAF, LEAF, arity)

    @property
    def leaves(self) -> int:
        return leaf_count(self.plus)

    def is_identity(self) -> bool:
        return reduce(self) == TreePair.identity(self.arity)

    def to_dict(self) -> dict:
        return {"arity": self.arity, "plus": serialize(self.plus), "minus": serialize(self.minus)}

    @classmethod
    def from_dict(cls, data: dict) -> "TreePair":
        arity = int(data.get("arity", 3))
        return cls.parse(data["plus"], data["minus"], arity)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "TreePair":
        return cls.from_dict(json.loads(text))

    def __str__(self):
        return f"({serialize(self.plus)}, {serialize(self.minus)})"

    def __mul__(self, other: "TreePair") -> "TreePair":
        return multiply(self, other)

    def __invert__(self) -> "TreePair":
        return inverse(self)


def reduce(p: TreePair, rng: Optional[random.Random] = None) -> TreePair:
    """Cancel opposing carets until none remain.

    Leftmost carets go first unless ``rng`` is given, in which case the
    caret to cancel is drawn at random at every step (the result is the
    same either way).
    """
    plus, minus = p.plus, p.minus
    while True:
        common = sorted(set(_caret_positions(plus)) & set(_caret_positions(minus)))
        if not common:
            break
        i = rng.choice(common) if rng is not None else common[0]
        plus, minus = _collapse(plus, i), _collapse(minus, i)
    return TreePair(plus, minus, p.arity)


def inflate(p: TreePair, leaf_index: int) -> TreePair:
    """Graft a caret at the same leaf of both trees (same group element)."""
    c = caret(p.arity)
    return TreePair(graft(p.plus, leaf_index, c), graft(p.minus, leaf_index, c), p.arity)


def multiply(g: TreePair, h: TreePair) -> TreePair:
    """Product g·h with the rule (A, B)·(B, C) = (A, C), reduced."""
    if g.arity != h.arity:
        raise ValueError("cannot multiply elements of different arity")
    s = common_refinement(g.minus, h.plus)
    plus = _substitute_leaves(g.plus, _leaf_expansions(g.minus, s))
    minus = _substitute_leaves(h.minus, _leaf_expansions(h.plus, s))
    return reduce(TreePair(plus, minus, g.arity))


def inverse(p: TreePair) -> TreePair:
    return TreePair(p.minus, p.plus, p.arity)


def tau(t: Tree) -> Tree:
    """Binary to ternary tree: every binary node gets a new middle leaf."""
    if not t:
        return LEAF
    if len(t) != 2:
        raise ValueError("tau expects a binary tree")
    return (tau(t[0]), LEAF, tau(t[1]))


def iota(g: TreePair) -> TreePair:
    """The embedding F -> F3."""
    if g.arity != 2:
        raise ValueError("iota expects a binary tree pair")
    return TreePair(tau(g.plus), tau(g.minus), 3)


# ---------------------------------------------------------------------------
# Piecewise-linear maps
# ---------------------------------------------------------------------------

def leaf_intervals(t: Tree, arity: int = 3) -> list[tuple[Fraction, Fraction]]:
    """The standard k-adic subintervals of [0, 1] given by the leaves of ``t``."""
    out = []
    stack = [(t, Fraction(0), Fraction(1))]
    while stack:
        node, lo, hi = stack.pop()
        if not node:
            out.append((lo, hi))
            continue
        step = (hi - lo) / arity
        stack.extend(reversed([(c, lo + j * step, lo + (j + 1) * step) for j, c in enumerate(node)]))
    return out


def _log(den: int, base: int) -> int:
    e = 0
    while den % base == 0:
        den //= base
        e += 1
    if den != 1:
        raise ValueError(f"denominator is not a power of {base}")
    return e


@dataclass(frozen=True, eq=False)
class PLMap:
    """Piecewise-linear homeomorphism of [0, 1] given by its breakpoints.

    Breakpoints are kept as produced (a breakpoint between two pieces of the
    same slope is allowed); equality compares the maps as functions.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    base: int = 3

    def __post_init__(self):
        pts = self.breakpoints
        if len(pts) < 2 or pts[0] != (0, 0) or pts[-1] != (1, 1):
            raise ValueError("breakpoints must run from (0, 0) to (1, 1)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x1 > x0 and y1 > y0):
                raise ValueError("breakpoints must be strictly increasing")

    @classmethod
    def identity(cls, base: int = 3) -> "PLMap":
        return cls(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))), base)

    def slopes(self) -> list[Fraction]:
        pts = self.breakpoints
        return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]

    def canonical(self) -> "PLMap":
        """Drop breakpoints where the slope does not change."""
        pts = self.breakpoints
        slopes = self.slopes()
        keep = [pts[0]]
        keep += [pts[i] for i in range(1, len(pts) - 1) if slopes[i - 1] != slopes[i]]
        keep.append(pts[-1])
        return PLMap(tuple(keep), self.base)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError("argument outside [0, 1]")
        pts = self.breakpoints
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x <= x1:
                return y0 + (x - x0) * (y1 - y0) / (x1 - x0)
        raise AssertionError("unreachable")

    def inverse(self) -> "PLMap":
        return PLMap(tuple((y, x) for x, y in self.breakpoints), self.base)

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.canonical().breakpoints == other.canonical().breakpoints

    def __hash__(self):
        return hash(self.canonical().breakpoints)

    def is_identity(self) -> bool:
        return self == PLMap.identity(self.base)

    def to_json(self) -> list:
        """``[[[num, exp], [num, exp]], ...]`` with each coordinate num / base**exp."""
        return [[[c.numerator, _log(c.denominator, self.base)] for c in pt] for pt in self.breakpoints]

    @classmethod
    def from_json(cls, data: list, base: int = 3) -> "PLMap":
        return cls(tuple(tuple(Fraction(num, base ** e) for num, e in pt) for pt in data), base)


def compose(f: PLMap, g: PLMap) -> PLMap:
    """The map x -> f(g(x))."""
    if f.base != g.base:
        raise ValueError("cannot compose maps over different bases")
    xs = {x for x, _ in g.breakpoints}
    # pull back the breakpoints of f through g
    ginv = g.inverse()
    xs |= {ginv(x) for x, _ in f.breakpoints}
    return PLMap(tuple((x, f(g(x))) for x in sorted(xs)), f.base)


def pl_map(p: TreePair) -> PLMap:
    """Map sending the k-th leaf interval of ``minus`` affinely onto that of ``plus``."""
    src = leaf_intervals(p.minus, p.arity)
    dst = leaf_intervals(p.plus, p.arity)
    pts = [(Fraction(0), Fraction(0))] + [(s[1], d[1]) for s, d in zip(src, dst)]
    return PLMap(tuple(pts), p.arity)
