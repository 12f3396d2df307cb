"""
Continued fractions and the group D_{n,q}
=========================================

Everything in ``recond`` starts from a coprime pair 1 < q < n.  This script
walks through the combinatorial data derived from one such pair.
"""

# The group is built once; every later function takes the resulting object.
from fractions import Fraction

import recond

gd = recond.group(56, 15)
print(f"D_{{{gd.n},{gd.q}}} has order {gd.order}")

# Two Hirzebruch-Jung expansions drive the whole construction.  The first,
# of n/q, gives the self-intersections along the chain of the resolution
# graph.  The second, of n/(n-q), feeds the invariant ring.
print("n/q       =", list(gd.alpha))
print("n/(n-q)   =", list(gd.a))
print("check     :", recond.evaluate(list(gd.alpha)) == Fraction(gd.n, gd.q))

# The series are indexed like the expansions.  ``as_dict`` shows the index.
for name in ("i", "r", "c", "d"):
    print(f"{name:>2}:", getattr(gd, name).as_dict())

# The dual graph has two (-2) horns hanging off the first chain vertex.
graph = recond.dual_graph(gd)
print("self-intersections:", graph.self_intersection)

# The fundamental cycle is computed by Laufer's algorithm.  When every
# coefficient is 1 the cycle is reduced and nu = 0.  Only that case gets a
# reconstruction algebra and charts further on.
print("fundamental cycle:", graph.fundamental_cycle, " nu =", gd.nu)

# For contrast, 7/4 starts its expansion with a 2, which makes the cycle non-reduced.
other = recond.group(7, 4)
print("7/4 =", list(other.alpha), " nu =", other.nu)

# The library can audit its own identities.  An empty list means every
# relation between the series held for this pair.
print("series identities that failed:", recond.series_failures(gd))
print("duality identities that failed:", recond.duality_failures(56, 15))
