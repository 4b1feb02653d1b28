import itertools
import random

import pytest
from hypothesis import given, strategies as st

from pbwdeform import (Q, GroupMismatchError, KappaParam, LambdaParam, Matrix, PreconditionError,
                       Representation, check_pbw, corpus_get, diagonal_lambda, enumerate_instances,
                       free_family, random_kappa)
from pbwdeform.conditions import InstanceSpace, evaluate_condition

from conftest import s3_permutation, unipotent


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_cyclic_example_passes(p):
    inst = corpus_get(f"cyclic-p{p}")
    assert check_pbw(inst.lam, inst.kappa).passed
    G = inst.rep.group
    g = inst.rep.generators[0][1]
    # lambda(g^i, w) = i g^(i-1), lambda(g^i, v) = 0
    for i in range(p):
        gi = G.power(g, i)
        assert inst.lam(gi, 0).is_zero()
        want = {G.power(g, i - 1): i % p} if i % p else {}
        assert inst.lam(gi, 1).coeffs == want


def test_skew_group_algebra_passes():
    rep = unipotent(3)
    assert check_pbw(LambdaParam.zero(rep), KappaParam.zero(rep)).passed


def test_identity_defect_witness():
    rep = unipotent(2)
    e = rep.group.identity
    lam = LambdaParam.from_entries(rep, {(e, 0): {e: 1}})
    report = check_pbw(lam, KappaParam.zero(rep))
    assert report.failed_conditions() == [1]
    assert report.witness_names(1) == ("e", "e", "v")
    # lambda(e, v) - lambda(e, v) e - e lambda(e, v) = -lambda(e, v)
    assert report.residual_text(1) == "1"


def test_mismatched_representations_rejected():
    with pytest.raises(GroupMismatchError):
        check_pbw(LambdaParam.zero(unipotent(2)), KappaParam.zero(unipotent(3)))


def test_exhaustive_family_has_64_members():
    rep = unipotent(2)
    assert sum(1 for _ in enumerate_instances(free_family(rep))) == 64


def test_random_stream_is_seeded():
    space = free_family(unipotent(3))
    a = [(l.table, k.table) for l, k in enumerate_instances(space, exhaustive=False, seed=11, count=15)]
    b = [(l.table, k.table) for l, k in enumerate_instances(space, exhaustive=False, seed=11, count=15)]
    assert a == b


def test_exhaustive_over_rationals_rejected():
    space = free_family(s3_permutation())
    with pytest.raises(PreconditionError):
        next(enumerate_instances(space))


def _failing_instances():
    yield from enumerate_instances(free_family(unipotent(2)))
    yield from enumerate_instances(free_family(unipotent(3)), exhaustive=False, seed=2, count=40)


def test_fail_witnesses_reevaluate_nonzero():
    fails = 0
    for lam, kap in _failing_instances():
        report = check_pbw(lam, kap)
        for c in report.failed_conditions():
            fails += 1
            res = evaluate_condition(lam, kap, c, report[c].witness)
            assert (not res.is_zero()) if hasattr(res, "is_zero") else any(res)
    assert fails > 0


def _change_basis(rep, P, lam, kap):
    Pinv = P.inverse()
    mats = [Pinv @ M @ P for M in rep.matrices]
    new = Representation(rep.group, mats, basis_names=rep.basis_names)
    cols = [P.column(i) for i in range(rep.dim)]
    lam2 = LambdaParam(new, [[lam.on_vector_raw(g, cols[i]) for i in range(rep.dim)]
                             for g in range(rep.group.order)])
    kap2 = KappaParam(new, {(i, j): kap.on_vectors_raw(cols[i], cols[j])
                            for i, j in itertools.combinations(range(rep.dim), 2)})
    return lam2, kap2


def _random_invertible(field, m, rng):
    while True:
        if field.char:
            rows = [[rng.randrange(field.char) for _ in range(m)] for _ in range(m)]
        else:
            rows = [[rng.randint(-2, 2) for _ in range(m)] for _ in range(m)]
        P = Matrix(field, rows)
        if P.is_invertible():
            return P


def test_verdict_invariant_under_basis_change_f2_family():
    rep = unipotent(2)
    rng = random.Random(0)
    for lam, kap in enumerate_instances(free_family(rep)):
        P = _random_invertible(rep.field, 2, rng)
        lam2, kap2 = _change_basis(rep, P, lam, kap)
        assert check_pbw(lam, kap).passed == check_pbw(lam2, kap2).passed


@given(seed=st.integers(0, 10_000))
def test_verdict_invariant_under_basis_change_random(seed):
    rng = random.Random(seed)
    rep = s3_permutation()
    lam = diagonal_lambda(rep, [rng.randint(-2, 2) for _ in range(3)])
    kap = random_kappa(rep, rng, density=0.2) if rng.random() < 0.5 else KappaParam.zero(rep)
    P = _random_invertible(Q, 3, rng)
    lam2, kap2 = _change_basis(rep, P, lam, kap)
    assert check_pbw(lam, kap).passed == check_pbw(lam2, kap2).passed


def test_instance_space_custom_values():
    rep = unipotent(3)
    space = InstanceSpace(rep, [(1, 1)], [(0, 1)], values=[{}, {0: 1}])
    assert space.size() == 4
    assert len(list(enumerate_instances(space))) == 4
