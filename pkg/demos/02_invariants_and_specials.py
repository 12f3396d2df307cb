"""
Invariant generators and special modules
========================================

The invariant ring is generated by a power of xy together with products of
xy and two degree-4q polynomials.  This script certifies the generators
degree by degree.  It then turns to the rank one special modules.
"""

import recond
from recond.invgen import subalgebra_hilbert
from recond.polyexact import relative_invariant_dim

gd = recond.group(18, 5)

# Generators come with their exponent triple over ((xy), g2, g3).
gens = recond.invariant_generators(gd, basis="w")
for item in gens.items:
    print(f"{str(item.tag):>8}  exponents {item.exponents}  degree {item.degree}")

# Generation is certified by comparing two Hilbert functions: the span of all
# products of generators against the full space of invariants, one degree at a time.
trivial = recond.character_of(gd, "trivial")
span = subalgebra_hilbert(gens, 40)
full = [relative_invariant_dim(gd, trivial, d) for d in range(41)]
print("degrees with invariants:", [d for d in range(41) if full[d]])
print("subalgebra matches up to degree 40:", [span[d] for d in range(41)] == full)

# verify_generation runs the same comparison up to min(order, 200).
report = recond.verify_generation(gd, "v")
print(report.summary())

# Each non-free rank one special is generated by two relative invariants.
table = recond.special_generators(gd)
for entry in table.entries:
    print(entry.name, "generator degrees", [p.degree() for p in entry.generators])

# With nu = 0 every special sits at a vertex of the dual graph.
print(recond.assign_vertices(gd))

# Two-generation check for one module, at the default degree bound.
print(recond.verify_two_generation(gd, "W_+").summary())

# Every invariant generator should close up as a cycle of maps between the specials.
print(recond.verify_cycle_realization(gd).summary())
