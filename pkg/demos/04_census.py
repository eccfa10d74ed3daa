"""
Census of small tree pairs
==========================

All pairs of trees with 2n+1 leaves, counted by the number of link
components, plus a brute-force look at which involutions are tree matchings.
"""

from thompsonlinks.census import census, records_to_csv, verify_characterization

records = [census(n) for n in range(5)]
print(records_to_csv(records))

for r in records:
    top = r.histogram.get(r.n + 1, 0)
    # the maximum n+1 occurs exactly when both trees have the same matching
    print(f"n={r.n}: {top} of {r.pair_count} pairs reach {r.n + 1} components, "
          f"{r.distinct_compositions} distinct compositions")

for n in range(1, 6):
    print(verify_characterization(n).summary())
