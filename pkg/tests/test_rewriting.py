import random

import pytest
from hypothesis import given, strategies as st

from pbwdeform import (KappaParam, LambdaParam, NotConfluentError, PreconditionError, ReductionSystem,
                       SkewElem, check_pbw, corpus_get, corpus_names, enumerate_instances,
                       extract_mu, free_family, graded_dimension, iso_search, kappa_from_mu,
                       lambda_from_mu, reduce_literal, reduction_bound, resolve_ambiguities,
                       verify_homomorphism)
from pbwdeform.maps import letter_images
from pbwdeform.rewriting import FreeElem, search_kappa_family

from conftest import s3_reflection, unipotent


def _sys(name, mode="untwisted"):
    inst = corpus_get(name)
    return ReductionSystem(inst.rep, inst.lam, inst.kappa, mode)


def _defect():
    rep = unipotent(2)
    e = rep.group.identity
    return ReductionSystem(rep, LambdaParam.from_entries(rep, {(e, 0): {e: 1}}), None)


def test_normal_forms_cyclic_p2():
    sys = _sys("cyclic-p2")
    g, v, w = 2 + 1, 0, 1
    assert sys.normal_form((g, w)).render() == "v*g + w*g + 1"
    assert sys.normal_form((w, v)).render() == "v*w + g"
    assert sys.normal_form((g, g)).render() == "1"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cyclic_ambiguities_resolve(p):
    assert resolve_ambiguities(_sys(f"cyclic-p{p}")).confluent


def test_identity_defect_overlap_fails():
    sys = _defect()
    report = resolve_ambiguities(sys)
    first = report.first_failure()
    assert first.kind == "ghv"
    assert sys.word_str(first.word) == "e*e*v"
    assert first.difference.render() == "1"


def test_trivial_parameters_resolve():
    assert resolve_ambiguities(ReductionSystem(unipotent(3))).confluent


@pytest.mark.parametrize("p", [2, 3, 5])
def test_graded_dimension_counts(p):
    sys = _sys(f"cyclic-p{p}")
    for n in range(4):
        assert graded_dimension(sys, n) == (n + 1) * p
    assert graded_dimension(sys, 0) == p


def test_graded_dimension_drops_without_pbw():
    sys = _defect()
    dims = [graded_dimension(sys, n) for n in range(4)]
    assert any(d < (n + 1) * 2 for n, d in enumerate(dims))


def test_rewriting_oracle_matches_conditions_on_family():
    rep = unipotent(2)
    verdicts = set()
    for lam, kap in enumerate_instances(free_family(rep)):
        a = check_pbw(lam, kap).passed
        b = resolve_ambiguities(ReductionSystem(rep, lam, kap)).confluent
        assert a == b
        verdicts.add(a)
    assert verdicts == {True, False}


@pytest.mark.parametrize("name", [n for n in corpus_names() if n != "general-kappa-fix"])
def test_rewriting_oracle_matches_conditions_on_corpus(name):
    inst = corpus_get(name)
    assert check_pbw(inst.lam, inst.kappa).passed == \
        resolve_ambiguities(ReductionSystem(inst.rep, inst.lam, inst.kappa)).confluent


def test_mu_examples_cyclic_p2():
    sys = _sys("cyclic-p2", "graded")
    rep = sys.rep
    G = rep.group
    g = rep.generators[0][1]
    assert lambda_from_mu(sys, g, 1) == SkewElem.one(rep)
    assert kappa_from_mu(sys, 0, 1) == SkewElem.group_element(rep, g)
    v, w = SkewElem.basis_vector(rep, 0), SkewElem.basis_vector(rep, 1)
    assert not extract_mu(sys, 1, v, w)
    gw = SkewElem.vector(rep, rep.matrices[g].column(1))
    ge = SkewElem.group_element(rep, g)
    assert extract_mu(sys, 1, ge, w) - extract_mu(sys, 1, gw, ge) == SkewElem.one(rep)
    assert G.order == 2


def test_mu_needs_confluence_and_grading():
    rep = unipotent(2)
    e = rep.group.identity
    bad = ReductionSystem(rep, LambdaParam.from_entries(rep, {(e, 0): {e: 1}}), None, "graded")
    one = SkewElem.one(rep)
    with pytest.raises(NotConfluentError):
        extract_mu(bad, 1, one, one)
    with pytest.raises(PreconditionError):
        extract_mu(_sys("cyclic-p2"), 1, one, one)


@pytest.mark.parametrize("name", ["cyclic-p2", "cyclic-p3", "cyclic-p5", "s3-coxeter-q"])
def test_mu_round_trip(name):
    inst = corpus_get(name)
    sys = ReductionSystem(inst.rep, inst.lam, inst.kappa, "graded")
    rep = inst.rep
    for g in range(rep.group.order):
        for i in range(rep.dim):
            assert lambda_from_mu(sys, g, i).to_ga() == inst.lam.value(g, i)
    for i in range(rep.dim):
        for j in range(i + 1, rep.dim):
            assert kappa_from_mu(sys, i, j).to_ga() == inst.kappa.value(i, j)


def test_mu_round_trip_collapsed():
    rep = unipotent(3)
    kap = KappaParam(rep, {(0, 1): {1: 1, 0: 2}})
    sys = ReductionSystem(rep, None, kap, "collapsed")
    assert kappa_from_mu(sys, 0, 1).to_ga() == kap.value(0, 1)
    with pytest.raises(PreconditionError):
        ReductionSystem(rep, corpus_get("cyclic-p3").lam, kap, "collapsed")


def _random_monomial(data, rep, max_deg):
    mono = [0] * rep.dim
    for _ in range(data.draw(st.integers(0, max_deg))):
        mono[data.draw(st.integers(0, rep.dim - 1))] += 1
    return SkewElem.monomial(rep, mono, data.draw(st.integers(0, rep.group.order - 1)))


@given(data=st.data())
def test_mu_homogeneity(data):
    name = data.draw(st.sampled_from(["cyclic-p2", "cyclic-p3", "s3-coxeter-q"]))
    sys = _sys(name, "graded")
    a = _random_monomial(data, sys.rep, 2)
    b = _random_monomial(data, sys.rep, 2)
    da, db = a.degree(), b.degree()
    for j in range(1, 5):
        mu = extract_mu(sys, j, a, b)
        assert not mu or mu.degrees() == {da + db - j}


@given(data=st.data())
def test_induced_product_well_defined(data):
    name = data.draw(st.sampled_from(["cyclic-p2", "cyclic-p3", "cyclic-p5", "s3-coxeter-q"]))
    sys = _sys(name)
    letters = sys.letters()
    x = tuple(data.draw(st.lists(st.sampled_from(letters), min_size=1, max_size=4)))
    y = tuple(data.draw(st.lists(st.sampled_from(letters), min_size=1, max_size=4)))
    assert sys.multiply(sys.normal_form(x), sys.normal_form(y)) == sys.normal_form(x + y)


@given(data=st.data())
def test_reduction_chains_respect_bound(data):
    name = data.draw(st.sampled_from(["cyclic-p2", "cyclic-p3", "s3-coxeter-q", "skew-trivial"]))
    sys = _sys(name)
    letters = sys.letters()
    word = tuple(data.draw(st.lists(st.sampled_from(letters), min_size=1, max_size=5)))
    seed = data.draw(st.integers(0, 1000))
    nf, longest = reduce_literal(sys, word, random.Random(seed))
    d = sum(1 for x in word if x < sys.m)
    k = len(word) - d + (0 if word[-1] >= sys.m else 1)
    assert longest <= reduction_bound(d, k)
    assert nf == sys.normal_form(word)


def test_general_kappa_map_is_homomorphism():
    src = _sys("cyclic-p2")
    inst = corpus_get("general-kappa-fix")
    tgt = ReductionSystem(inst.rep, inst.lam, inst.kappa)
    images = letter_images(src, inst.map_images)
    assert verify_homomorphism(images, src, tgt).passed


def test_identity_map_on_skew_group_algebra():
    sys = ReductionSystem(unipotent(2))
    images = {x: sys.normal_form((x,)) for x in sys.letters()}
    assert verify_homomorphism(images, sys, sys).passed


def test_identity_assignment_into_cyclic_fails():
    src = ReductionSystem(unipotent(2))
    tgt = _sys("cyclic-p2")
    images = {x: tgt.normal_form((x,)) for x in src.letters()}
    check = verify_homomorphism(images, src, tgt)
    assert not check.passed
    kinds = {(r.kind, r.data): res.render() for r, res in check.failures}
    assert kinds == {("skew", (1, 1)): "1", ("comm", (1, 0)): "g"}
    # the element gw - wg itself maps to vg + 1
    g = SkewElem.group_element(tgt.rep, 1)
    w = SkewElem.basis_vector(tgt.rep, 1)
    assert (tgt.multiply(g, w) - tgt.multiply(w, g)).render() == "v*g + 1"


def test_iso_search_skew_group_algebra_contains_identity():
    sys = ReductionSystem(unipotent(2))
    found = iso_search(sys, sys)
    ident = {x: sys.normal_form((x,)) for x in sys.letters()}
    assert any(all(c.images[x] == ident[x] for x in ident) for c in found)


def test_iso_search_general_kappa_pair():
    src = _sys("cyclic-p2")
    inst = corpus_get("general-kappa-fix")
    tgt = ReductionSystem(inst.rep, inst.lam, inst.kappa)
    found = [c.render(src) for c in iso_search(src, tgt)]
    assert "f(v) = v + g, f(w) = w, f(g) = g" in found


def test_iso_search_modular_example_is_empty():
    target = _sys("cyclic-p2")
    results = search_kappa_family(target)
    assert len(results) == 4
    assert all(not found for _, found in results)


def test_iso_search_needs_finite_field():
    sys = ReductionSystem(s3_reflection())
    with pytest.raises(PreconditionError):
        iso_search(sys, sys)


def test_free_elem_arithmetic():
    f = unipotent(2).field
    a = FreeElem.word(f, (0, 1))
    b = FreeElem.word(f, (2,))
    assert (a * b).terms == {((0, 1, 2), 0): 1}
    assert not (a - a).terms
