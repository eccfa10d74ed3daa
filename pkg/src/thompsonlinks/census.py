"""Exhaustive enumeration, the characterization check, and component statistics.

Everything here is deterministic: enumeration order is fixed, random
sampling is seeded per sample index, and parallel runs merge their partial
results with order-independent operations.
"""

from __future__ import annotations

import csv
import io
import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Optional, Sequence

from .tangles import (TangledMatching, matching_to_tree, tangled_matching,
                      thompson_permutation, validate_tangled)
from .trees import LEAF, Tree, TreePair, inverse, iota, multiply

__all__ = [
    "tree_count", "enumerate_trees", "rank_tree", "unrank_tree", "random_tree", "random_pair",
    "fixed_point_free_involutions", "CharacterizationReport", "verify_characterization",
    "CensusRecord", "census", "default_generators", "random_walk", "CLAUSES",
]

CLAUSES = ("1", "2", "3", "4", "5")


# ---------------------------------------------------------------------------
# Counting and enumeration
# ---------------------------------------------------------------------------

def tree_count(n: int, arity: int = 3) -> int:
    """Number of trees with ``n`` internal nodes (Fuss-Catalan number)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return comb(arity * n, n) // ((arity - 1) * n + 1)


def _carets_for(leaves: int, arity: int) -> int:
    if leaves < 1 or (leaves - 1) % (arity - 1):
        raise ValueError(f"no {arity}-ary tree has {leaves} leaves")
    return (leaves - 1) // (arity - 1)


@lru_cache(maxsize=None)
def _compositions(n: int, arity: int) -> tuple[tuple[int, ...], ...]:
    """Ways to split n-1 carets among the children of the root, in lexicographic order."""
    def go(total, k):
        if k == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in go(total - first, k - 1):
                yield (first,) + rest
    return tuple(go(n - 1, arity))


@lru_cache(maxsize=None)
def _trees(n: int, arity: int) -> tuple[Tree, ...]:
    if n == 0:
        return (LEAF,)
    out = []
    for split in _compositions(n, arity):
        _product(split, arity, (), out)
    return tuple(out)


def _product(split, arity, prefix, out):
    if not split:
        out.append(prefix)
        return
    for t in _trees(split[0], arity):
        _product(split[1:], arity, prefix + (t,), out)


def enumerate_trees(leaves: int, arity: int = 3) -> Iterator[Tree]:
    """Every tree with ``leaves`` leaves exactly once, in a fixed order.

    Trees are ordered by how many carets sit in each child of the root
    (lexicographically), then recursively child by child.
    """
    return iter(_trees(_carets_for(leaves, arity), arity))


def rank_tree(t: Tree, arity: int = 3) -> int:
    """Position of ``t`` in :func:`enumerate_trees` order."""
    if not t:
        return 0
    sizes = tuple(_size(c) for c in t)
    n = sum(sizes) + 1
    r = 0
    for split in _compositions(n, arity):
        if split == sizes:
            break
        r += _block(split, arity)
    sub = 0
    for c, k in zip(t, sizes):
        sub = sub * tree_count(k, arity) + rank_tree(c, arity)
    return r + sub


def unrank_tree(n: int, r: int, arity: int = 3) -> Tree:
    """The tree with ``n`` carets at position ``r`` of the enumeration order."""
    if not 0 <= r < tree_count(n, arity):
        raise IndexError(f"rank {r} out of range for {n} carets")
    if n == 0:
        return LEAF
    for split in _compositions(n, arity):
        b = _block(split, arity)
        if r < b:
            break
        r -= b
    children = []
    for k in reversed(split):
        r, rk = divmod(r, tree_count(k, arity))
        children.append(unrank_tree(k, rk, arity))
    return tuple(reversed(children))


def _block(split, arity):
    out = 1
    for k in split:
        out *= tree_count(k, arity)
    return out


def _size(t: Tree) -> int:
    return 0 if not t else 1 + sum(_size(c) for c in t)


def random_tree(leaves: int, rng, arity: int = 3) -> Tree:
    """Uniformly random tree by unranking; ``rng`` is a seed or a ``random.Random``."""
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    n = _carets_for(leaves, arity)
    return unrank_tree(n, rng.randrange(tree_count(n, arity)), arity)


def random_pair(max_leaves: int, rng, arity: int = 3) -> TreePair:
    """Random tree pair: leaf count uniform over the admissible values, trees uniform."""
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    counts = range(1, max_leaves + 1, arity - 1)
    leaves = rng.choice(counts)
    return TreePair(random_tree(leaves, rng, arity), random_tree(leaves, rng, arity), arity)


# ---------------------------------------------------------------------------
# Characterization
# ---------------------------------------------------------------------------

def fixed_point_free_involutions(size: int) -> Iterator[tuple[int, ...]]:
    """All perfect matchings of 0..size-1 as image tuples ((size-1)!! of them)."""
    if size % 2:
        return
    p = [-1] * size

    def go():
        try:
            a = p.index(-1)
        except ValueError:
            yield tuple(p)
            return
        for b in range(a + 1, size):
            if p[b] == -1:
                p[a], p[b] = b, a
                yield from go()
                p[a] = p[b] = -1

    yield from go()


@dataclass
class CharacterizationReport:
    n: int
    involutions: int
    tree_count: int
    clause_failures: dict[str, int]
    """How many involutions violate each clause."""
    subset_survivors: dict[tuple[str, ...], int]
    """For every subset of clauses, how many involutions satisfy all of them."""
    survivors: int
    tree_image: int
    equal: bool
    extra: list[tuple[int, ...]] = field(default_factory=list)
    """Survivors that are not the matching of a tree."""
    missing: list[tuple[int, ...]] = field(default_factory=list)
    """Tree matchings rejected by some clause, with the clauses they fail."""
    missing_clauses: list[tuple[str, ...]] = field(default_factory=list)
    inverse_roundtrip: bool = True
    """matching_to_tree accepts exactly the survivors."""
    subset_exact: dict[tuple[str, ...], bool] = field(default_factory=dict)
    """Whether the survivors of each clause subset are exactly the tree image."""
    extra_connected: int = 0
    """Extra survivors whose crossing graph is connected."""

    def sufficient_subsets(self) -> list[tuple[str, ...]]:
        """Minimal clause subsets that already cut the involutions down to the tree image."""
        hits = [s for s, ok in self.subset_exact.items() if ok]
        return [s for s in hits if not any(set(o) < set(s) for o in hits)]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "involutions": self.involutions,
            "tree_count": self.tree_count,
            "survivors": self.survivors,
            "equal": self.equal,
            "inverse_roundtrip": self.inverse_roundtrip,
            "clause_failures": self.clause_failures,
            "subset_survivors": {",".join(s) or "-": k for s, k in self.subset_survivors.items()},
            "sufficient_subsets": [",".join(s) for s in self.sufficient_subsets()],
            "extra": [list(x) for x in self.extra],
            "extra_connected": self.extra_connected,
            "missing": [list(x) for x in self.missing],
        }

    def summary(self) -> str:
        status = "equal" if self.equal else "DIFFERENT"
        lines = [
            f"n={self.n}: {self.involutions} involutions, {self.survivors} pass all clauses, "
            f"{self.tree_count} trees -> {status}",
            "  failures per clause: " + ", ".join(f"({c}) {self.clause_failures[c]}" for c in CLAUSES),
            "  minimal sufficient clause sets: "
            + ("; ".join("{" + ",".join(s) + "}" for s in self.sufficient_subsets()) or "none"),
        ]
        if self.extra:
            lines.append(f"  {len(self.extra)} survivors are not tree matchings; "
                         f"{self.extra_connected} of them have a connected crossing graph")
        if not self.inverse_roundtrip:
            lines.append("  inverse construction disagrees with the clause check")
        for x in self.extra:
            lines.append(f"  survivor without a tree: {list(x)}")
        for x, cl in zip(self.missing, self.missing_clauses):
            lines.append(f"  tree matching {list(x)} fails clauses {cl}")
        return "\n".join(lines)


def verify_characterization(n: int, max_n: int = 5) -> CharacterizationReport:
    """Compare the clause check with the image of the tree map over all involutions on 2n+2 points."""
    if n < 1:
        raise ValueError("the characterization is stated for n >= 1")
    if n > max_n:
        raise ValueError(f"n={n} exceeds the bound {max_n}")
    image = {tangled_matching(t).partner for t in enumerate_trees(2 * n + 1)}
    subsets = [s for k in range(len(CLAUSES) + 1) for s in combinations(CLAUSES, k)]
    subset_survivors = dict.fromkeys(subsets, 0)
    subset_outside = dict.fromkeys(subsets, 0)
    failures = dict.fromkeys(CLAUSES, 0)
    survivors = set()
    count = 0
    roundtrip_ok = True
    missing_clauses = {}
    for p in fixed_point_free_involutions(2 * n + 2):
        count += 1
        failed = {v.clause for v in validate_tangled(p)}
        for c in failed:
            failures[c] = failures.get(c, 0) + 1
        in_image = p in image
        for s in subsets:
            if failed.isdisjoint(s):
                subset_survivors[s] += 1
                subset_outside[s] += not in_image
        if not failed:
            survivors.add(p)
        elif in_image:
            missing_clauses[p] = tuple(sorted(failed))
        try:
            matching_to_tree(TangledMatching(p))
            accepted = True
        except ValueError:
            accepted = False
        if accepted != (not failed):
            roundtrip_ok = False
    extra = sorted(survivors - image)
    missing = sorted(image - survivors)
    return CharacterizationReport(
        n=n, involutions=count, tree_count=tree_count(n), clause_failures=failures,
        subset_survivors=subset_survivors, survivors=len(survivors), tree_image=len(image),
        equal=survivors == image, extra=extra, missing=missing,
        missing_clauses=[missing_clauses.get(p, ()) for p in missing],
        inverse_roundtrip=roundtrip_ok,
        subset_exact={s: subset_outside[s] == 0 and subset_survivors[s] - subset_outside[s] == len(image)
                      for s in subsets},
        extra_connected=sum(_crossing_graph_connected(p) for p in extra),
    )


def _crossing_graph_connected(p: Sequence[int]) -> bool:
    chords = [(x, y) for x, y in enumerate(p) if x < y]
    parent = list(range(len(chords)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(len(chords)), 2):
        (a, c), (b, d) = sorted((chords[i], chords[j]))
        if a < b < c < d:
            parent[find(i)] = find(j)
    return len({find(i) for i in range(len(chords))}) == 1


# ---------------------------------------------------------------------------
# Census
# ---------------------------------------------------------------------------

@dataclass
class CensusRecord:
    n: int
    tree_count: int
    pair_count: int
    histogram: dict[int, int]
    """component count -> number of pairs"""
    distinct_compositions: int
    distinct_traversals: int
    cycle_types: dict[tuple[int, ...], int] = field(default_factory=dict)
    """sorted traversal-cycle lengths -> number of pairs"""

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "tree_count": self.tree_count,
            "pair_count": self.pair_count,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "distinct_compositions": self.distinct_compositions,
            "distinct_traversals": self.distinct_traversals,
            "cycle_types": {" ".join(map(str, k)): v for k, v in sorted(self.cycle_types.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @staticmethod
    def csv_header(max_components: int) -> list[str]:
        return (["n", "tree_count", "pair_count"]
                + [f"components_{k}" for k in range(1, max_components + 1)]
                + ["distinct_compositions", "distinct_traversals"])

    def csv_row(self, max_components: int) -> list:
        return ([self.n, self.tree_count, self.pair_count]
                + [self.histogram.get(k, 0) for k in range(1, max_components + 1)]
                + [self.distinct_compositions, self.distinct_traversals])


def records_to_csv(records: Sequence[CensusRecord]) -> str:
    width = max(r.n + 1 for r in records)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CensusRecord.csv_header(width))
    for r in records:
        w.writerow(r.csv_row(width))
    return buf.getvalue()


def _rotate_to_min(cyc: tuple[int, ...]) -> tuple[int, ...]:
    k = cyc.index(min(cyc))
    return cyc[k:] + cyc[:k]


def _census_chunk(args) -> tuple[Counter, set, set, Counter]:
    n, lo, hi = args
    trees = _trees(n, 3)
    hist: Counter = Counter()
    comps = set()
    travs = set()
    types: Counter = Counter()
    for a in range(lo, hi):
        for b in range(len(trees)):
            data = thompson_permutation(TreePair(trees[a], trees[b]))
            hist[data.component_count] += 1
            comps.add(data.composition.images)
            travs.add(frozenset(_rotate_to_min(c) for c in data.traversal_cycles))
            types[tuple(sorted(len(c) for c in data.traversal_cycles))] += 1
    return hist, comps, travs, types


def census(n: int, workers: int = 1, max_n: int = 5) -> CensusRecord:
    """Component statistics over all pairs of trees with 2n+1 leaves."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_n:
        raise ValueError(f"n={n} exceeds the bound {max_n}")
    total = tree_count(n)
    workers = max(1, min(workers, total))
    bounds = [total * i // workers for i in range(workers + 1)]
    jobs = [(n, bounds[i], bounds[i + 1]) for i in range(workers)]
    if workers == 1:
        parts = [_census_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_census_chunk, jobs))
    hist: Counter = Counter()
    comps: set = set()
    travs: set = set()
    types: Counter = Counter()
    for h, c, t, ty in parts:
        hist.update(h)
        comps |= c
        travs |= t
        types.update(ty)
    return CensusRecord(
        n=n, tree_count=total, pair_count=total * total,
        histogram=dict(sorted(hist.items())),
        distinct_compositions=len(comps), distinct_traversals=len(travs),
        cycle_types=dict(sorted(types.items())),
    )


# ---------------------------------------------------------------------------
# Random walks
# ---------------------------------------------------------------------------

X0 = TreePair(((LEAF, LEAF), LEAF), (LEAF, (LEAF, LEAF)), 2)
X1 = TreePair((LEAF, ((LEAF, LEAF), LEAF)), (LEAF, (LEAF, (LEAF, LEAF))), 2)


def default_generators() -> list[TreePair]:
    """iota(x0), iota(x1) and their inverses."""
    gens = [iota(X0), iota(X1)]
    return gens + [inverse(g) for g in gens]


def _walk_sample(args) -> int:
    gens, steps, seed, index = args
    rng = random.Random(f"{seed}:{index}")
    g = TreePair.identity(3)
    for _ in range(steps):
        g = multiply(g, rng.choice(gens))
    return thompson_permutation(g).component_count


def random_walk(generators: Optional[Sequence[TreePair]] = None, steps: int = 10,
                samples: int = 100, seed: int = 0, workers: int = 1) -> dict[int, int]:
    """Histogram of component counts of the endpoints of seeded random walks.

    Each sample draws from its own stream seeded by (seed, sample index), so
    the histogram does not depend on ``workers``.
    """
    gens = list(generators) if generators is not None else default_generators()
    if not gens:
        raise ValueError("need at least one generator")
    if any(g.arity != 3 for g in gens):
        raise ValueError("walk generators must be ternary tree pairs (apply iota to binary ones)")
    if steps < 0 or samples < 1:
        raise ValueError("steps must be >= 0 and samples >= 1")
    jobs = [(gens, steps, seed, i) for i in range(samples)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            counts = list(ex.map(_walk_sample, jobs, chunksize=max(1, samples // (4 * workers))))
    else:
        counts = [_walk_sample(j) for j in jobs]
    return dict(sorted(Counter(counts).items()))
