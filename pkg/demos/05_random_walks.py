"""
Random walks
============

Multiply random generators of F (pushed into F3) and look at the number of
components of the resulting links. Each sample has its own seeded stream,
so the histograms do not depend on the number of worker processes.
"""

from thompsonlinks import component_count
from thompsonlinks.census import default_generators, random_walk

gens = default_generators()
print("generator component counts:", [component_count(g) for g in gens])

for steps in (0, 1, 5, 10, 20):
    hist = random_walk(steps=steps, samples=300, seed=1)
    mean = sum(k * v for k, v in hist.items()) / 300
    print(f"{steps:3d} steps: mean {mean:.2f} components, histogram {hist}")
