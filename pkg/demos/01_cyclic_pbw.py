"""
A PBW deformation over F_p
==========================

Z/p acts on F_p^2 by the unipotent matrix [[1, 1], [0, 1]].  With
lambda(g, w) = 1 and kappa(v, w) = g the algebra H_{lambda,kappa} still has
the PBW basis v^a w^b g^i.  Two independent checks agree on that.
"""

from pbwdeform import ReductionSystem, check_pbw, corpus_get, graded_dimension, resolve_ambiguities

inst = corpus_get("cyclic-p3")
rep = inst.rep
print(f"field F_{rep.field.char}, |G| = {rep.group.order}, V = span{rep.basis_names}")

# lambda(g^i, w) was produced from lambda(g, w) = 1 by the product rule
for g in range(rep.group.order):
    print(f"  lambda({rep.group.names[g]}, w) = {inst.lam.value(g, 1).render()}")

# first check: the five conditions on group elements and basis vectors
report = check_pbw(inst.lam, inst.kappa)
print(report)

# second check: the rewriting system and its overlap ambiguities
sys = ReductionSystem(rep, inst.lam, inst.kappa)
print("w * v ->", sys.normal_form((1, 0)).render())
print("g * w ->", sys.normal_form((3, 1)).render())
amb = resolve_ambiguities(sys)
print(f"{amb.checked} ambiguities checked, confluent: {amb.confluent}")

# the associated graded algebra has (n + 1) * p monomials in degree n
print("graded dimensions:", [graded_dimension(sys, n) for n in range(5)])
