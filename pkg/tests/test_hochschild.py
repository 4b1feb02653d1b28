import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pbwdeform import (KappaParam, LambdaParam, PreconditionError, SkewElem, check_pbw, corpus_get,
                       corpus_names, diagonal_lambda, enumerate_instances, free_family)
from pbwdeform.errors import SliceError
from pbwdeform.hochschild import (BarChain, BarSliceCochain, XChain, augmentation, bar_differential,
                                  check_homological, check_infrastructure, coboundary, differential,
                                  extend_cochain, gerstenhaber_bracket, lift_to_deformation,
                                  middle_basis, middle_basis_total, phi, psi2, verify_mu_extraction)
from pbwdeform.skew import skew_multiply

from conftest import s3_permutation, s3_reflection, unipotent


def _key(rep, mono=None, g=None):
    mono = tuple(mono) if mono else (0,) * rep.dim
    return (mono, rep.group.identity if g is None else g)


def _vkey(rep, i):
    return _key(rep, [1 if k == i else 0 for k in range(rep.dim)])


def _act_keys(rep, g, i):
    return {_vkey(rep, k): c for k, c in enumerate(rep.matrices[g].column(i)) if c != 0}


def _x(rep, gs, wedge, left=None, right=None, c=1):
    return XChain.basis(rep, gs, wedge, left, right, c)


def _mul(*xs):
    out = xs[0]
    for x in xs[1:]:
        out = skew_multiply(out, x)
    return out


def test_koszul_edge():
    rep = unipotent(3)
    one = _key(rep)
    d = differential(_x(rep, (), (0,)))
    expect = _x(rep, (), (), _vkey(rep, 0), one) - _x(rep, (), (), one, _vkey(rep, 0))
    assert d == expect
    assert not augmentation(d)


def test_mixed_degree_one_one():
    rep = unipotent(3)
    g = rep.generators[0][1]
    one, gk = _key(rep), _key(rep, g=g)
    d = differential(_x(rep, (g,), (0,)))
    # horizontal: g|v|1 - 1|^g v|g
    horiz = _x(rep, (), (0,), gk, one)
    for k, c in enumerate(rep.matrices[g].column(0)):
        if c:
            horiz = horiz - _x(rep, (), (k,), one, gk, c)
    # vertical, sign (-1)^1 (-1)^1: -(^g v|g|1 - 1|g|v)
    vert = XChain(rep)
    for k, c in enumerate(rep.matrices[g].column(0)):
        if c:
            vert = vert - _x(rep, (g,), (), _vkey(rep, k), one, c)
    vert = vert + _x(rep, (g,), (), one, _vkey(rep, 0))
    assert d == horiz + vert


def test_wedge_sign_on_construction():
    rep = unipotent(3)
    assert _x(rep, (), (1, 0)) == _x(rep, (), (0, 1)).scale(-1)
    assert not _x(rep, (), (1, 1))


def _corpus_reps():
    seen, out = set(), []
    for name in corpus_names():
        inst = corpus_get(name)
        key = (inst.field.char, inst.group.order, inst.rep.matrices)
        if key not in seen:
            seen.add(key)
            out.append((name, inst.rep))
    return out


@pytest.mark.parametrize("name,rep", _corpus_reps(), ids=[n for n, _ in _corpus_reps()])
def test_infrastructure_on_corpus_groups(name, rep):
    results = check_infrastructure(rep)
    for r in results:
        assert r.checked > 0
        assert r.passed, (r.name, r.failures[:3])


def test_d_squared_direct():
    rep = s3_reflection()
    for n in (2, 3):
        for mid in middle_basis_total(rep, n):
            assert not differential(differential(_x(rep, *mid)))


def test_phi2_on_wedge():
    rep = unipotent(2)
    vk, wk = {_vkey(rep, 0): 1}, {_vkey(rep, 1): 1}
    expect = BarChain.from_factors(rep, [vk, wk]) - BarChain.from_factors(rep, [wk, vk])
    assert phi(_x(rep, (), (0, 1))) == expect


def test_psi2_values():
    rep = unipotent(2)
    g = rep.generators[0][1]
    vk, wk, gk = {_vkey(rep, 0): 1}, {_vkey(rep, 1): 1}, {_key(rep, g=g): 1}
    assert psi2(BarChain.from_factors(rep, [vk, wk])) == _x(rep, (), (0, 1))
    assert not psi2(BarChain.from_factors(rep, [wk, vk]))
    assert psi2(BarChain.from_factors(rep, [gk, vk])) == _x(rep, (g,), (0,))
    assert not psi2(BarChain.from_factors(rep, [vk, gk]))
    vv = {_key(rep, (2, 0)): 1}
    with pytest.raises(SliceError):
        psi2(BarChain.from_factors(rep, [vv, wk]))


def test_psi2_phi2_identity_on_s3():
    rep = s3_reflection()
    for mid in middle_basis_total(rep, 2):
        x = _x(rep, *mid)
        assert psi2(phi(x)) == x


def test_phi_commutes_in_degree_three():
    rep = unipotent(3)
    for mid in middle_basis_total(rep, 3):
        x = _x(rep, *mid)
        assert bar_differential(phi(x)) == phi(differential(x))


def test_extended_cochains():
    inst = corpus_get("cyclic-p3")
    rep, lam, kap = inst.rep, inst.lam, inst.kappa
    g = rep.generators[0][1]
    cl, ck = extend_cochain(lam), extend_cochain(kap)
    assert cl.degree == -1 and ck.degree == -2
    assert not cl.evaluate(_x(rep, (), (0, 1)))
    assert not ck.evaluate(_x(rep, (g,), (1,)))
    assert not ck.evaluate(_x(rep, (g, g), ()))
    u, w = _vkey(rep, 0), _key(rep, (0, 1), g)
    val = cl.evaluate(_x(rep, (g,), (1,), u, w))
    U = SkewElem.basis_vector(rep, 0)
    W = SkewElem.monomial(rep, (0, 1), g)
    assert val == _mul(U, lam.skew_value(g, 1), W)
    assert val


def _lam_kappa_cases():
    out = [(n, corpus_get(n)) for n in ("cyclic-p2", "cyclic-p3", "s3-coxeter-q", "lambda-identity-defect")]
    return [(n, i.lam, i.kappa) for n, i in out]


@pytest.mark.parametrize("name,lam,kap", _lam_kappa_cases(), ids=[c[0] for c in _lam_kappa_cases()])
def test_coboundary_pointwise(name, lam, kap):
    rep = lam.rep
    G = rep.group
    dl = coboundary(extend_cochain(lam))
    dk = coboundary(extend_cochain(kap))
    for g, h in itertools.product(range(G.order), repeat=2):
        ge, he = SkewElem.group_element(rep, g), SkewElem.group_element(rep, h)
        for i in range(rep.dim):
            hv = rep.matrices[h].column(i)
            expect = (_mul(ge, lam.skew_value(h, i)) - SkewElem.from_ga(rep, lam(G.mul(g, h), i))
                      + _mul(SkewElem.from_ga(rep, lam(g, hv)), he))
            assert dl.value(((g, h), (i,))) == expect
    for g in range(G.order):
        ge = SkewElem.group_element(rep, g)
        for i, j in itertools.combinations(range(rep.dim), 2):
            gv, gw = rep.matrices[g].column(i), rep.matrices[g].column(j)
            expect = _mul(ge, kap.skew_value(i, j)) - _mul(SkewElem.from_ga(rep, kap(gv, gw)), ge)
            assert dk.value(((g,), (i, j))) == expect


@pytest.mark.parametrize("name,lam,kap", _lam_kappa_cases(), ids=[c[0] for c in _lam_kappa_cases()])
def test_x12_identities(name, lam, kap):
    rep = lam.rep
    cl, ck = extend_cochain(lam), extend_cochain(kap)
    dl = coboundary(cl)
    ll = gerstenhaber_bracket(cl, cl)
    dk = coboundary(ck)
    S = lambda x: SkewElem.from_ga(rep, x)
    for g in range(rep.group.order):
        ge = SkewElem.group_element(rep, g)
        for i, j in itertools.combinations(range(rep.dim), 2):
            v, w = SkewElem.basis_vector(rep, i), SkewElem.basis_vector(rep, j)
            gv = SkewElem.vector(rep, rep.matrices[g].column(i))
            gw = SkewElem.vector(rep, rep.matrices[g].column(j))
            lgv, lgw = lam.skew_value(g, i), lam.skew_value(g, j)
            expect = -_mul(gv, lgw) + _mul(lgw, v) + _mul(gw, lgv) - _mul(lgv, w)
            assert dl.value(((g,), (i, j))) == expect
            inner = (S(lam(lam(g, i), j)) - S(lam(lam(g, j), i)) - _mul(ge, kap.skew_value(i, j))
                     + _mul(S(kap(rep.matrices[g].column(i), rep.matrices[g].column(j))), ge))
            mid = ((g,), (i, j))
            assert (ll - dk.scale(2)).value(mid) == inner.scale(2)


def test_bracket_on_top_wedge():
    rep = s3_permutation()
    kap = KappaParam(rep, {(0, 1): {1: 1}, (0, 2): {2: 2}, (1, 2): {0: 3}})
    lam = diagonal_lambda(rep, [1, 0, 0])
    cl, ck = extend_cochain(lam), extend_cochain(kap)
    lk = gerstenhaber_bracket(cl, ck)
    top = ((), (0, 1, 2))
    expect = SkewElem.zero(rep)
    for perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        a, b, c = perm
        expect = expect + SkewElem.from_ga(rep, lam(kap(rep.basis_vector(a), rep.basis_vector(b)), c))
    assert lk.value(top) == expect
    assert gerstenhaber_bracket(cl, cl).value(top) == SkewElem.zero(rep)
    zero = extend_cochain(LambdaParam.zero(rep))
    assert gerstenhaber_bracket(zero, ck).is_zero()


def test_coboundary_of_zero():
    rep = unipotent(2)
    assert coboundary(extend_cochain(LambdaParam.zero(rep))).is_zero()
    assert coboundary(extend_cochain(KappaParam.zero(rep))).is_zero()


def test_homological_examples():
    inst = corpus_get("cyclic-p3")
    assert check_homological(inst.lam, inst.kappa).passed
    rep = unipotent(2)
    assert check_homological(LambdaParam.zero(rep), KappaParam.zero(rep)).passed
    bad = corpus_get("lambda-identity-defect")
    report = check_homological(bad.lam, bad.kappa)
    assert not report["d*(lambda) = 0"].passed
    cond = check_pbw(bad.lam, bad.kappa)
    assert not cond.passed


def test_master_equivalence_on_family():
    rep = unipotent(2)
    for lam, kap in enumerate_instances(free_family(rep)):
        assert check_homological(lam, kap).passed == check_pbw(lam, kap).passed


@pytest.mark.parametrize("name", [n for n in corpus_names() if n != "general-kappa-fix"])
def test_master_equivalence_on_corpus(name):
    inst = corpus_get(name)
    assert check_homological(inst.lam, inst.kappa).passed == check_pbw(inst.lam, inst.kappa).passed


@settings(max_examples=25)
@given(seed=st.integers(0, 10 ** 6))
def test_master_equivalence_random_f3(seed):
    import random
    from pbwdeform import random_kappa, random_lambda
    rep = unipotent(3)
    rng = random.Random(seed)
    lam, kap = random_lambda(rep, rng), random_kappa(rep, rng)
    assert check_homological(lam, kap).passed == check_pbw(lam, kap).passed


def test_slice_cochain_refuses_outside_slice():
    inst = corpus_get("cyclic-p2")
    mu = BarSliceCochain(extend_cochain(inst.lam))
    rep = inst.rep
    vv = SkewElem.monomial(rep, (2, 0), rep.group.identity)
    with pytest.raises(SliceError):
        mu(vv, SkewElem.basis_vector(rep, 0))


def test_lift_kappa_only():
    rep = unipotent(2)
    kap = KappaParam(rep, {(0, 1): {rep.group.identity: 1}})
    defo = lift_to_deformation(LambdaParam.zero(rep), kap, "graded")
    assert defo.system.confluent
    assert defo.recovered_kappa() == kap
    col = lift_to_deformation(LambdaParam.zero(rep), kap, "collapsed")
    assert col.recovered_kappa() == kap


def test_lift_cyclic_reproduces_parameters():
    inst = corpus_get("cyclic-p2")
    defo = lift_to_deformation(inst.lam, inst.kappa)
    assert defo.recovered_lambda() == inst.lam
    assert defo.recovered_kappa() == inst.kappa
    for r in verify_mu_extraction(defo, inst.lam, inst.kappa):
        assert r.passed, r.name


def test_lift_errors():
    inst = corpus_get("cyclic-p2")
    with pytest.raises(PreconditionError):
        lift_to_deformation(inst.lam, inst.kappa, "collapsed")
    bad = corpus_get("lambda-identity-defect")
    with pytest.raises(PreconditionError):
        lift_to_deformation(bad.lam, bad.kappa)


def test_middle_basis_counts():
    rep = s3_reflection()
    assert len(list(middle_basis(rep, 2, 1))) == 36 * 2
    assert len(list(middle_basis(rep, 0, 3))) == 0
