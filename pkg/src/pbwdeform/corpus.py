"""Built-in gallery of instances, each with its expected verdicts.

Expected verdicts live in ``Instance.expect`` and are keyed by subcommand:
``check``, ``oracle``, ``homology``, ``convert``, ``mu-extract``
take ``pass`` / ``fail`` / ``error``; ``iso-search`` takes the number of
isomorphisms found.
"""
from __future__ import annotations

import re

from .field import GF, Q
from .groups import close_generators
from .matrix import Matrix
from .params import (GeneralKappa, KappaParam, LambdaParam, build_lambda_coxeter,
                     extend_lambda_by_recursion)
from .skew import SkewElem
from .textio import Instance, render_instance

CYCLIC_PRIMES = (2, 3, 5, 7)


def _unipotent(p):
    f = GF(p)
    return close_generators([Matrix(f, [[1, 1], [0, 1]])])[1]


def _cyclic_lambda(rep):
    # lambda(g, v) = 0, lambda(g, w) = 1; the recursion gives lambda(g^i, w) = i g^(i-1)
    g = rep.generators[0][1]
    return extend_lambda_by_recursion(rep, {g: [{}, {rep.group.identity: 1}]})


def cyclic(p: int) -> Instance:
    rep = _unipotent(p)
    g = rep.generators[0][1]
    kap = KappaParam(rep, {(0, 1): {g: 1}})
    return Instance(rep, _cyclic_lambda(rep), kap, name=f"cyclic-p{p}",
                    description=f"Z/{p} acting unipotently on F_{p}^2 with kappa(v, w) = g",
                    expect={"check": "pass", "oracle": "pass", "homology": "pass",
                            "mu-extract": "pass", "convert": "error"})


def modular_counterexample() -> Instance:
    rep = _unipotent(2)
    return Instance(rep, _cyclic_lambda(rep), KappaParam.zero(rep), name="modular-counterexample",
                    description="Z/2 over F_2 with lambda(g, w) = 1 and kappa = 0; no H_{0,kappa'} is isomorphic to it",
                    expect={"check": "pass", "oracle": "pass", "homology": "pass",
                            "iso-search": "0", "convert": "error"})


def general_kappa_fix() -> Instance:
    rep = _unipotent(2)
    G = rep.group
    g = rep.generators[0][1]
    ginv = G.inv(g)
    # kappa'(v, w) = g - v g^-1
    kap = GeneralKappa(rep, {(0, 1): SkewElem.group_element(rep, g)
                             - SkewElem.basis_vector(rep, 0, ginv)})
    images = {
        G.names[g]: SkewElem.group_element(rep, g),
        "v": SkewElem.basis_vector(rep, 0) - SkewElem.group_element(rep, ginv),
        "w": SkewElem.basis_vector(rep, 1),
    }
    return Instance(rep, LambdaParam.zero(rep), kap, name="general-kappa-fix",
                    description="H_{0,kappa'} with kappa'(v, w) = g - v g^-1, receiving cyclic-p2",
                    expect={"check": "pass", "oracle": "pass", "iso-search": "0"},
                    map_source="corpus:cyclic-p2", map_images=images)


def s3_coxeter_q() -> Instance:
    rep = close_generators([Matrix(Q, [[-1, 1], [0, 1]]), Matrix(Q, [[1, 0], [1, -1]])])[1]
    s1, s2 = (idx for _, idx in rep.generators)
    lam = build_lambda_coxeter(rep, [s1, s2], [(1, 0), (0, 1)], 1)
    return Instance(rep, lam, KappaParam.zero(rep), name="s3-coxeter-q",
                    description="S3 on its reflection representation over Q, Coxeter lambda with c = 1",
                    expect={"check": "pass", "oracle": "pass", "homology": "pass", "convert": "pass"})


def skew_trivial() -> Instance:
    rep = _unipotent(2)
    return Instance(rep, LambdaParam.zero(rep), KappaParam.zero(rep), name="skew-trivial",
                    description="lambda = kappa = 0: the skew group algebra S(V)#G",
                    expect={"check": "pass", "oracle": "pass", "homology": "pass",
                            "mu-extract": "pass", "convert": "error"})


def lambda_identity_defect() -> Instance:
    rep = _unipotent(2)
    lam = LambdaParam.from_entries(rep, {(rep.group.identity, 0): {rep.group.identity: 1}})
    return Instance(rep, lam, KappaParam.zero(rep), name="lambda-identity-defect",
                    description="lambda(e, v) = 1 breaks the cocycle condition at g = h = e",
                    expect={"check": "fail", "oracle": "fail", "homology": "fail"})


_BUILDERS = {
    "modular-counterexample": modular_counterexample,
    "general-kappa-fix": general_kappa_fix,
    "s3-coxeter-q": s3_coxeter_q,
    "skew-trivial": skew_trivial,
    "lambda-identity-defect": lambda_identity_defect,
}


def corpus_names():
    return [f"cyclic-p{p}" for p in CYCLIC_PRIMES] + list(_BUILDERS)


def _is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def corpus_get(name: str) -> Instance:
    """Gallery instance by name; ``cyclic-pN`` works for any prime N."""
    mt = re.fullmatch(r"cyclic-p(\d+)", name)
    if mt and _is_prime(int(mt.group(1))):
        return cyclic(int(mt.group(1)))
    if name in _BUILDERS:
        return _BUILDERS[name]()
    raise KeyError(f"unknown corpus entry {name!r}; available: {', '.join(corpus_names())}")


def corpus_text(name: str) -> str:
    return render_instance(corpus_get(name))
