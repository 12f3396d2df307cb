"""
Charts of the minimal resolution
================================

Setting a spanning tree of arrows to 1 in a representation of the
reconstruction algebra leaves three free arrows.  The relations then cut out
a smooth surface in affine 3-space.  The charts together cover the minimal
resolution.
"""

import recond
from recond.moduli import smoothness_check

gd = recond.group(56, 15)

for chart in recond.charts(gd):
    print(f"{chart.id:>3}: {chart.shape_str()} = 0")
    print("     coordinates as ratios:", ", ".join(str(r) for r in chart.ratios))

# Each equation should vanish once the coordinates are replaced by their
# ratios of polynomials in x and y.
chart = recond.charts(gd)[0]
print("U0 holds on its ratios:", recond.verify_chart_on_ratios(gd, chart))

# Smoothness is decided from the shape of the equation.
print(smoothness_check(chart))

# Neighbouring charts are glued by monomial changes of coordinates.
for glue in recond.glue_maps(gd):
    print(f"{glue.source} -> {glue.target}: {glue.transform_str()}")

# verify_glues checks that each gluing is invertible and that it carries one
# chart's equation and ratios onto the other's.
print(all(report.passed for report in recond.verify_glues(gd)))
