"""
The reconstruction algebra as a quiver with relations
=====================================================

For nu = 0 the endomorphism ring of the sum of the specials is a path
algebra with explicit relations.  Arrows carry polynomial labels, and
every relation must hold once labels are multiplied out.
"""

import recond
from recond.reconalg import evaluate, relation_counts

gd = recond.group(52, 11)
quiver = recond.build_quiver(gd)
print(f"{len(quiver.vertices)} vertices, {len(quiver.arrows)} arrows")
print("extra arrows to the star:", [a.id for a in quiver.genuine_k()])

# Relations in the moduli presentation.  Paths read left to right.
rels = recond.relations(gd, "moduli")
for rel in rels[:6]:
    print(f"[{rel.name}] {rel}")
print("...", len(rels), "relations in total")

# The number of relations between each pair of vertices is fixed in advance.
print(relation_counts(gd, rels) == recond.ext2_expected(gd))

# Substituting labels turns a path into a polynomial.  Take one relation by hand.
labeled = recond.label_arrows(gd, "moduli")
rel = rels[5]
lhs, rhs = evaluate(labeled.labels, rel.lhs), evaluate(labeled.labels, rel.rhs)
print("both sides agree:", lhs == rhs, " degree", lhs.degree())

# verify_relations does this for every relation and also checks label characters.
for presentation in ("moduli", "symmetric"):
    print(recond.verify_relations(gd, presentation).summary())

# The scalar 4 in the first relation is a normalisation.  Any nonzero value
# works once the arrow labels are rescaled.
_, report = recond.lambda_variant(gd, "symmetric", -4)
print(report.summary())
