"""
Tree pairs and the Thompson groups
==================================

Elements of F3 are pairs of ternary trees with the same number of leaves.
Trees are written with "." for a leaf and parentheses around each node.
"""

from thompsonlinks import TreePair, inflate, inverse, iota, multiply, pl_map, reduce

x = TreePair.parse("(.(...).)", "(..(...))")
print("x       =", x)
print("x^-1    =", inverse(x))

# grafting the same caret under a leaf of both trees gives another
# representative of the same element; reduce() undoes it
bigger = inflate(x, 2)
print("inflated:", bigger)
print("reduced :", reduce(bigger))

# products are always returned reduced
print("x * x^-1 =", multiply(x, inverse(x)))
print("x * x    =", multiply(x, x))

# each element acts on [0,1] by a piecewise-linear map with triadic breakpoints
f = pl_map(x)
for a, b in f.breakpoints:
    print(f"  {a} -> {b}")
print("slopes:", [str(s) for s in f.slopes()])

# binary elements embed into F3 by adding a middle leaf under every node
x0 = TreePair.parse("((..).)", "(.(..))", arity=2)
print("iota(x0) =", iota(x0))
