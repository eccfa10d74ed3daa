import random
from collections import Counter
from math import comb

import pytest

from thompsonlinks.census import (CLAUSES, X0, X1, CensusRecord, census, default_generators,
                                  enumerate_trees, fixed_point_free_involutions, random_pair,
                                  random_tree, random_walk, rank_tree, records_to_csv,
                                  tree_count, unrank_tree, verify_characterization)
from thompsonlinks.tangles import component_count, tangled_matching, thompson_permutation
from thompsonlinks.trees import TreePair, caret, inverse, iota, leaf_count, serialize


def convolution_count(n):
    """Ternary trees by the recurrence T(n) = sum over a+b+c = n-1 of T(a)T(b)T(c)."""
    t = [1]
    for m in range(1, n + 1):
        t.append(sum(t[a] * t[b] * t[m - 1 - a - b] for a in range(m) for b in range(m - a)))
    return t[n]


# --- enumeration ---------------------------------------------------------

def test_tree_counts():
    assert [tree_count(n) for n in range(7)] == [1, 1, 3, 12, 55, 273, 1428]
    assert tree_count(10) == convolution_count(10) == comb(30, 10) // 21


def test_binary_counts():
    assert [tree_count(n, 2) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_enumeration_matches_count():
    for n in range(7):
        trees = list(enumerate_trees(2 * n + 1))
        assert len(trees) == len(set(trees)) == tree_count(n)
        assert all(leaf_count(t) == 2 * n + 1 for t in trees)


def test_small_enumerations():
    assert [serialize(t) for t in enumerate_trees(3)] == ["(...)"]
    assert len(list(enumerate_trees(5))) == 3


@pytest.mark.parametrize("leaves", [0, 2, 4, -1])
def test_invalid_leaf_count(leaves):
    with pytest.raises(ValueError):
        list(enumerate_trees(leaves))


def test_enumeration_order_stable():
    assert list(enumerate_trees(9)) == list(enumerate_trees(9))


def test_rank_unrank():
    for n in range(6):
        for r, t in enumerate(enumerate_trees(2 * n + 1)):
            assert rank_tree(t) == r
            assert unrank_tree(n, r) == t
    for n in range(6):
        for r, t in enumerate(enumerate_trees(n + 1, 2)):
            assert rank_tree(t, 2) == r


def test_random_tree_uniform():
    rng = random.Random(7)
    seen = Counter(random_tree(7, rng) for _ in range(6000))
    assert len(seen) == 12
    # each of 12 trees expected 500 times; a generous 5-sigma band
    assert all(390 < c < 610 for c in seen.values())


def test_random_pair_leaf_counts():
    rng = random.Random(3)
    leaves = Counter(random_pair(9, rng).leaves for _ in range(2000))
    assert set(leaves) == {1, 3, 5, 7, 9}


# --- characterization ----------------------------------------------------

def test_involution_counts():
    assert [sum(1 for _ in fixed_point_free_involutions(2 * n + 2)) for n in range(5)] == \
        [1, 3, 15, 105, 945]


@pytest.mark.parametrize("n, survivors", [(1, 1), (2, 3), (3, 12), (4, 55)])
def test_characterization_holds(n, survivors):
    r = verify_characterization(n)
    assert r.equal and r.survivors == survivors == r.tree_image
    assert r.extra == [] and r.missing == []
    assert r.inverse_roundtrip
    assert r.subset_exact[CLAUSES]
    assert r.sufficient_subsets()


def test_characterization_counts_n1():
    r = verify_characterization(1)
    assert r.involutions == 3
    assert r.subset_survivors[()] == 3
    assert set(r.sufficient_subsets()) == {("2",), ("5",)}


def test_characterization_report_serializes():
    r = verify_characterization(2)
    d = r.to_dict()
    assert d["survivors"] == 3 and d["equal"] is True
    assert "n=2" in r.summary()


def test_characterization_bound():
    with pytest.raises(ValueError):
        verify_characterization(6)
    with pytest.raises(ValueError):
        verify_characterization(0)


def test_characterization_n5_reports_counterexamples():
    r = verify_characterization(5)
    assert r.involutions == 10395 and r.tree_image == 273
    # the converse fails here; the report must say so rather than abort
    assert not r.equal
    assert r.survivors == 285 and len(r.extra) == 12 and r.missing == []
    assert r.extra_connected == 0
    # the inverse construction rejects the extras, so it no longer matches the clause check
    assert not r.inverse_roundtrip
    assert r.sufficient_subsets() == []
    assert "DIFFERENT" in r.summary()


# --- census --------------------------------------------------------------

def test_census_small():
    r0, r1, r2 = census(0), census(1), census(2)
    assert (r0.pair_count, r0.histogram) == (1, {1: 1})
    assert (r1.pair_count, r1.histogram) == (1, {2: 1})
    assert r2.pair_count == 9 and r2.histogram == {1: 6, 3: 3}


def test_census_invariants():
    for n in range(4):
        r = census(n)
        assert r.pair_count == r.tree_count ** 2
        assert sum(r.histogram.values()) == r.pair_count
        assert set(r.histogram) <= set(range(1, n + 2))
        assert sum(r.cycle_types.values()) == r.pair_count
    assert census(3).histogram == {1: 48, 2: 80, 3: 4, 4: 12}


def test_diagonal_and_symmetry():
    for n in range(4):
        trees = list(enumerate_trees(2 * n + 1))
        for a in trees:
            assert component_count(TreePair(a, a)) == n + 1
            for b in trees:
                p = TreePair(a, b)
                k = component_count(p)
                assert k == component_count(TreePair(b, a)) == component_count(inverse(p))
                same = tangled_matching(a) == tangled_matching(b)
                assert (k == n + 1) == same


def test_census_worker_independence():
    assert census(3, workers=1) == census(3, workers=3)
    assert census(3, workers=2).to_json() == census(3).to_json()


def test_census_outputs():
    recs = [census(n) for n in range(3)]
    text = records_to_csv(recs)
    lines = text.splitlines()
    assert lines[0] == ",".join(CensusRecord.csv_header(3))
    assert lines[3] == "2,3,9,6,0,3,7,9"
    assert census(2).to_dict()["histogram"] == {"1": 6, "3": 3}


def test_census_bound():
    with pytest.raises(ValueError):
        census(6)


# --- random walks --------------------------------------------------------

def test_default_generators():
    gens = default_generators()
    assert gens[0] == iota(X0) and gens[1] == iota(X1)
    assert all(g.arity == 3 for g in gens)
    assert [component_count(g) for g in gens] == [1, 2, 1, 2]


def test_walk_zero_steps():
    assert random_walk(steps=0, samples=25, seed=1) == {1: 25}


def test_walk_one_step():
    allowed = {component_count(g) for g in default_generators()}
    hist = random_walk(steps=1, samples=200, seed=5)
    assert set(hist) <= allowed and sum(hist.values()) == 200


def test_walk_deterministic():
    a = random_walk(steps=6, samples=60, seed=11)
    assert a == random_walk(steps=6, samples=60, seed=11)
    assert a == random_walk(steps=6, samples=60, seed=11, workers=3)


def test_walk_rejects_binary_generators():
    with pytest.raises(ValueError):
        random_walk([X0], steps=2, samples=2)
    with pytest.raises(ValueError):
        random_walk([], steps=2, samples=2)


def test_walk_custom_generators():
    g = TreePair(caret(), caret())
    # the caret pair is the identity element; walks stay at the one-leaf pair
    assert random_walk([g], steps=3, samples=5) == {1: 5}
    assert thompson_permutation(g).component_count == 2
