import random

import pytest
from hypothesis import strategies as st

from thompsonlinks.census import enumerate_trees, random_tree, tree_count, unrank_tree
from thompsonlinks.trees import TreePair

X_PLUS = "(.(...).)"
X_MINUS = "(..(...))"

# the 4_1 example, as printed transposition lists
KNOT41_PLUS = [(1, 3), (2, 8), (4, 12), (5, 7), (6, 9), (10, 18), (11, 14), (13, 15), (16, 0), (17, 19)]
KNOT41_MINUS = [(1, 4), (2, 0), (3, 6), (5, 8), (7, 18), (9, 11), (10, 14), (12, 19), (13, 16), (15, 17)]
KNOT41_CYCLE = (1, 4, 12, 19, 17, 15, 13, 16, 0, 2, 8, 5, 7, 18, 10, 14, 11, 9, 6, 3)


@pytest.fixture
def X():
    return TreePair.parse(X_PLUS, X_MINUS)


def all_pairs(max_leaves, arity=3):
    for leaves in range(1, max_leaves + 1, arity - 1):
        ts = list(enumerate_trees(leaves, arity))
        for a in ts:
            for b in ts:
                yield TreePair(a, b, arity)


def random_element(rng, max_leaves=21, arity=3):
    counts = range(1, max_leaves + 1, arity - 1)
    leaves = rng.choice(counts)
    return TreePair(random_tree(leaves, rng, arity), random_tree(leaves, rng, arity), arity)


@st.composite
def trees_st(draw, max_carets=6, arity=3):
    n = draw(st.integers(0, max_carets))
    r = draw(st.integers(0, tree_count(n, arity) - 1))
    return unrank_tree(n, r, arity)


@st.composite
def pairs_st(draw, max_carets=6, arity=3):
    n = draw(st.integers(0, max_carets))
    k = tree_count(n, arity) - 1
    a = unrank_tree(n, draw(st.integers(0, k)), arity)
    b = unrank_tree(n, draw(st.integers(0, k)), arity)
    return TreePair(a, b, arity)


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
