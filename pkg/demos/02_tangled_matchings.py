"""
Tangled matchings and the Thompson permutation
==============================================

Every ternary tree with 2n+1 leaves defines a perfect matching of the
points 0..2n+1. Two matchings, one per tree, generate the permutation
whose cycles count the components of the link.
"""

from thompsonlinks import (TangledMatching, TreePair, crossing_count, matching_to_tree,
                           parse_tree, tangled_matching, thompson_permutation, validate_tangled)

plus, minus = parse_tree("(.(...).)"), parse_tree("(..(...))")
mp, mm = tangled_matching(plus), tangled_matching(minus)
print("upper tree matching:", mp)
print("lower tree matching:", mm)
print("crossings:", crossing_count(mp), crossing_count(mm))

# the map is invertible: the tree can be rebuilt from its matching
assert matching_to_tree(mp) == plus

data = thompson_permutation(TreePair(plus, minus))
print("composition          :", data.composition)
print("alternating traversal:", data.traversal_cycles)
print("components           :", data.component_count)

# the composition has twice as many cycles as the traversal: each traversal
# splits into the points reached by its even and by its odd steps
print("composition cycles:", len(data.composition.cycles()))

# validate_tangled checks the five structural properties and names the failing one
bad = TangledMatching.from_pairs([(0, 1), (2, 3)])
for v in validate_tangled(bad):
    print(f"  property {v.clause}: {v.message}")

# from six chords on, the properties no longer pin down tree matchings
odd_one = TangledMatching.from_pairs([(0, 2), (1, 3), (4, 9), (5, 8), (6, 11), (7, 10)])
print("passes every property:", not validate_tangled(odd_one))
try:
    matching_to_tree(odd_one)
except ValueError as exc:
    print("but has no tree:", exc)
