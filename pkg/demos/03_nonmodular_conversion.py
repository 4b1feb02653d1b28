"""
Trading lambda for kappa over Q
===============================

When the characteristic does not divide |G| every PBW algebra H_{lambda,0}
is isomorphic to some H_{0,kappa}.  The averaging map gamma gives kappa and
the isomorphism v -> v + gamma(v).  Here G = S3 acts on its reflection
representation with the graded affine Hecke lambda.
"""

from pbwdeform import KappaParam, LambdaParam, check_pbw, corpus_get
from pbwdeform.conversion import build_conversion_iso, gamma, kappa_from_gamma

inst = corpus_get("s3-coxeter-q")
lam, rep = inst.lam, inst.rep
print("H_{lambda,0} PBW:", check_pbw(lam, KappaParam.zero(rep)).passed)

gam = gamma(lam)
for i, name in enumerate(rep.basis_names):
    print(f"gamma({name}) = {gam(i).render()}")

kap = kappa_from_gamma(lam, gam)
print("kappa(v, w) =", kap.value(0, 1).render())
print("H_{0,kappa} PBW:", check_pbw(LambdaParam.zero(rep), kap).passed)

# both directions are checked relation by relation in the rewriting system
for line in build_conversion_iso(lam).lines()[rep.dim + 1:]:
    print(line)
