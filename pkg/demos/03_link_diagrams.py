"""
Link diagrams
=============

The two trees are drawn above and below the x-axis, every internal node
becomes a crossing and the roots are joined through the origin. Tracing
the strands gives the components directly, without any permutation.
"""

import sys
from pathlib import Path

from thompsonlinks import TreePair, build_diagram, component_count, render, trace_components
from thompsonlinks.linkdiag import format_gauss, format_pd, gauss_code, is_alternating, pd_code

x = TreePair.parse("(.(...).)", "(..(...))")
d = build_diagram(x)
print(f"{len(d.crossings)} crossings, {len(d.segments)} segments")
print("traced components:", trace_components(d).count, "permutation:", component_count(x))

print("PD code:")
print(format_pd(pd_code(d)))
print("Gauss code:")
print(format_gauss(gauss_code(d)))

# the alternative convention flips some crossings; connectivity is unchanged
pos = build_diagram(x, "positive")
print("alternating:", is_alternating(d), "(standard)", is_alternating(pos), "(positive)")

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
(out / "x.svg").write_text(render(d, "svg"))
(out / "x.tex").write_text(render(d, "tikz"))
print("wrote", out / "x.svg", "and", out / "x.tex")
