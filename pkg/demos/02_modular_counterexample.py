"""
No H_{0,kappa} in characteristic 2
==================================

Over F_2 the algebra with lambda(g, w) = 1 and kappa = 0 is PBW, yet no
algebra H_{0,kappa'} with kappa' in kG is isomorphic to it.  Allowing kappa'
to take values in V (x) kG repairs this.
"""

from pbwdeform import ReductionSystem, check_pbw, corpus_get, search_kappa_family
from pbwdeform.maps import letter_images, verify_map

inst = corpus_get("modular-counterexample")
target = ReductionSystem(inst.rep, inst.lam, inst.kappa)
print("PBW:", check_pbw(inst.lam, inst.kappa).passed)

# every kappa' in kG, every filtered assignment of the generators
for kap, found in search_kappa_family(target):
    print(f"  kappa'(v, w) = {kap.value(0, 1).render():6}  isomorphisms: {len(found)}")

# the repair: kappa'(v, w) = g - v g^-1 and f(v) = v - g^-1
fix = corpus_get("general-kappa-fix")
print("kappa'(v, w) =", fix.kappa.value(0, 1).render())
src_inst = corpus_get("cyclic-p2")
source = ReductionSystem(src_inst.rep, src_inst.lam, src_inst.kappa)
repaired = ReductionSystem(fix.rep, fix.lam, fix.kappa)
check = verify_map(source, repaired, letter_images(source, fix.map_images))
for line in check.lines(source, repaired):
    print(" ", line)
