from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pbwdeform import (CharacteristicError, GroupAlgebraElem, KappaParam, LambdaParam, PreconditionError,
                       Q, build_lambda_coxeter, check_pbw, corpus_get, diagonal_lambda)
from pbwdeform.conversion import (build_conversion_iso, gamma, gamma_identity_residual,
                                  kappa_from_gamma)
from pbwdeform.groups import close_generators
from pbwdeform.matrix import Matrix

from conftest import cyclic_rotation, dihedral_d4, s3_permutation, s3_reflection


def _gamma_oracle(lam, i):
    """Literal double loop over (a, b) in G x G."""
    rep = lam.rep
    G, f = rep.group, rep.field
    v = rep.basis_vector(i)
    total = GroupAlgebraElem.zero(G, f)
    for a in range(G.order):
        for b in range(G.order):
            bv = rep.act(G.inv(b), v)
            coeff = lam(b, bv).coeff(G.mul(a, b))
            total = total + GroupAlgebraElem.basis(G, f, a, coeff)
    return total.scale(f.inv(f(G.order)))


def _kappa_oracle(lam, gam, i, j):
    gi, gj = gam(i), gam(j)
    return gi * gj - gj * gi + lam(gi, j) - lam(gj, i)


def _s3():
    inst = corpus_get("s3-coxeter-q")
    return inst.rep, inst.lam


def test_zero_lambda_gives_zero():
    rep = s3_reflection()
    lam = LambdaParam.zero(rep)
    assert gamma(lam).is_zero()
    assert kappa_from_gamma(lam).is_zero()


def test_s3_gamma_matches_double_loop():
    rep, lam = _s3()
    gam = gamma(lam)
    for i in range(rep.dim):
        assert gam(i) == _gamma_oracle(lam, i)
    assert gam(0).render() == "-s1 + 1/2*s2 - 1/2*s1.s2.s1"
    assert gam(1).render() == "1/2*s1 - s2 - 1/2*s1.s2.s1"


def test_s3_kappa_matches_formula():
    rep, lam = _s3()
    gam = gamma(lam)
    kap = kappa_from_gamma(lam, gam)
    assert kap.value(0, 1) == _kappa_oracle(lam, gam, 0, 1)
    assert kap.value(0, 1).render() == "3/4*s1.s2 - 3/4*s2.s1"
    assert check_pbw(LambdaParam.zero(rep), kap).passed


def test_modular_gamma_refused():
    with pytest.raises(CharacteristicError):
        gamma(corpus_get("cyclic-p2").lam)
    with pytest.raises(CharacteristicError):
        build_conversion_iso(corpus_get("cyclic-p3").lam)


def test_conversion_needs_pbw():
    rep = s3_reflection()
    s1 = rep.generators[0][1]
    lam = LambdaParam.from_entries(rep, {(s1, 0): {rep.group.identity: 1}})
    with pytest.raises(PreconditionError):
        build_conversion_iso(lam)


def test_s3_conversion_round_trip():
    _, lam = _s3()
    res = build_conversion_iso(lam)
    assert res.forward_check.passed and res.backward_check.passed
    assert res.composite_forward_ok and res.composite_backward_ok
    assert res.passed


def test_zero_lambda_conversion_is_identity():
    rep = s3_reflection()
    res = build_conversion_iso(LambdaParam.zero(rep))
    assert res.passed
    for x, img in res.forward.items():
        assert img == res.target.normal_form((x,))


def _lambdas():
    s3 = s3_reflection()
    s1, s2 = (idx for _, idx in s3.generators)
    d4 = dihedral_d4()
    t1, t2 = (idx for _, idx in d4.generators)
    neg = close_generators([Matrix(Q, [[-1, 0], [0, -1]])])[1]
    perm = s3_permutation()
    return [
        ("Z/2 by -I", diagonal_lambda(neg, [1, 2])),
        ("Z/3 rotation", diagonal_lambda(cyclic_rotation(3), [1, 0])),
        ("Z/4 rotation", diagonal_lambda(cyclic_rotation(4), [2, -1])),
        ("S3 Coxeter c=1", build_lambda_coxeter(s3, [s1, s2], [(1, 0), (0, 1)], 1)),
        ("S3 Coxeter c=5/2", build_lambda_coxeter(s3, [s1, s2], [(1, 0), (0, 1)], Fraction(5, 2))),
        ("S3 diagonal", diagonal_lambda(s3, [1, 3])),
        ("S3 permutation diagonal", diagonal_lambda(perm, [1, 0, -1])),
        ("D4 Coxeter", build_lambda_coxeter(d4, [t1, t2], [(1, -1), (0, 1)], {t1: 1, t2: 3})),
        ("D4 diagonal", diagonal_lambda(d4, [2, 1])),
    ]


@pytest.mark.parametrize("label,lam", _lambdas(), ids=[x for x, _ in _lambdas()])
def test_conversion_end_to_end(label, lam):
    rep = lam.rep
    assert check_pbw(lam, KappaParam.zero(rep)).passed
    kap = kappa_from_gamma(lam)
    assert check_pbw(LambdaParam.zero(rep), kap).passed
    assert build_conversion_iso(lam).passed


@pytest.mark.parametrize("label,lam", _lambdas(), ids=[x for x, _ in _lambdas()])
def test_gamma_identity(label, lam):
    gam = gamma(lam)
    rep = lam.rep
    for a in range(rep.group.order):
        for i in range(rep.dim):
            for j in range(rep.dim):
                assert not any(gamma_identity_residual(gam, a, i, j))


@pytest.mark.parametrize("label,lam", _lambdas(), ids=[x for x, _ in _lambdas()])
def test_kappa_antisymmetric(label, lam):
    kap = kappa_from_gamma(lam)
    rep = lam.rep
    for i in range(rep.dim):
        assert kap.value(i, i).is_zero()
        for j in range(rep.dim):
            assert kap.value(i, j) == -kap.value(j, i)


@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=4, max_size=4))
def test_gamma_linear(cs):
    rep, lam = _s3()
    gam = gamma(lam)
    a, b, c, d = cs
    u, v = (a, b), (c, d)
    combo = tuple(Fraction(2) * x + Fraction(-3) * y for x, y in zip(u, v))
    assert gam(combo) == gam(u).scale(Q(2)) + gam(v).scale(Q(-3))
    assert gam(u) == gam(0).scale(Q(a)) + gam(1).scale(Q(b))


def test_conversion_in_coprime_characteristic():
    # characteristic 5 is coprime to |G| = 2 for -I over F_5
    from pbwdeform import GF
    rep = close_generators([Matrix(GF(5), [[-1, 0], [0, -1]])])[1]
    lam = diagonal_lambda(rep, [1, 1])
    assert build_conversion_iso(lam).passed
