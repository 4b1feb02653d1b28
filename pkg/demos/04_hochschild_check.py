"""
The homological PBW test
========================

lambda and kappa extend to cochains on a twisted Koszul resolution of
S(V)#G.  The PBW property is equivalent to three cochain identities:
d*(lambda) = 0, [lambda, lambda] = 2 d*(kappa) and [lambda, kappa] = 0.
"""

from pbwdeform import check_homological, check_pbw, corpus_get
from pbwdeform.hochschild import check_infrastructure, lift_to_deformation, verify_mu_extraction

# the resolution itself: d o d = 0 and the chain maps to the bar resolution
for r in check_infrastructure(corpus_get("cyclic-p3").rep):
    print(f"{r.name}: {'pass' if r.passed else 'FAIL'} on {r.checked} basis elements")

for name in ("cyclic-p3", "s3-coxeter-q", "lambda-identity-defect"):
    inst = corpus_get(name)
    print(f"\n{name} (conditions say PBW: {check_pbw(inst.lam, inst.kappa).passed})")
    print(check_homological(inst.lam, inst.kappa))

# a PBW pair lifts to a graded deformation whose mu_1, mu_2 give back lambda, kappa
inst = corpus_get("cyclic-p2")
defo = lift_to_deformation(inst.lam, inst.kappa)
for r in verify_mu_extraction(defo, inst.lam, inst.kappa):
    print(f"{r.name}: {'pass' if r.passed else 'FAIL'}")
