import pytest
from hypothesis import given, strategies as st

from pbwdeform import (FiniteGroup, GF, GeneralKappa, GroupAlgebraElem, KappaParam, LambdaParam, Matrix, ParseError,
                       Representation, SkewElem, check_pbw, corpus_get, corpus_names,
                       parse_instance, parse_params, render_instance, render_params)
from pbwdeform.corpus import corpus_text
from pbwdeform.textio import Instance, parse_expr

from conftest import s3_reflection, unipotent

HEADER = """[field]
char 2

[group]
generator g
1 1
0 1

[basis]
v w

"""


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_round_trip_byte_identical(name):
    text = corpus_text(name)
    assert render_instance(parse_instance(text)) == text


def test_modular_example_tables_round_trip():
    inst = corpus_get("modular-counterexample")
    lam, kap = parse_params(render_params(inst.lam, inst.kappa), inst.rep)
    assert lam == inst.lam and kap == inst.kappa


def _error_line(text):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    return exc.value


def test_kappa_declared_both_ways_rejected():
    err = _error_line(HEADER + "[lambda]\n\n[kappa]\nkappa v w = g\nkappa w v = g\n")
    assert err.line == 16
    assert "alternating" in str(err)
    assert str(err).startswith("line 16:")


def test_zero_denominator_rejected():
    err = _error_line(HEADER + "[lambda]\nlambda g w = 7/0\n\n[kappa]\n")
    assert err.line == 13


@pytest.mark.parametrize("extra,line", [
    ("[lambda]\nlambda h w = 1\n", 13),
    ("[lambda]\nlambda g u = 1\n", 13),
    ("[lambda]\nlambda g w = x\n", 13),
    ("[lambda]\nlambda g w = v\n", 13),
    ("[lambda]\n[kappa]\nkappa v v = 1\n", 14),
    ("[lambda]\n[kappa]\nkappa v w = v*w\n", 14),
    ("[lambda]\n[colour]\n", 13),
    ("[lambda]\n[kappa]\n[meta]\nflavour = sweet\n", 15),
])
def test_parse_errors_carry_line_numbers(extra, line):
    assert _error_line(HEADER + extra).line == line


def test_missing_section_and_bad_field():
    with pytest.raises(ParseError):
        parse_instance("[field]\nchar 2\n")
    with pytest.raises(ParseError):
        parse_instance(HEADER.replace("char 2", "char 4") + "[lambda]\n[kappa]\n")


def test_comments_are_full_lines():
    text = HEADER + "# a comment\n[lambda]\nlambda g w = 1\n[kappa]\nkappa v w = g\n"
    inst = parse_instance(text)
    assert check_pbw(inst.lam, inst.kappa).passed
    assert inst.lam == corpus_get("cyclic-p2").lam


def test_general_kappa_detected():
    inst = parse_instance(HEADER + "[lambda]\n[kappa]\nkappa v w = g + v*g\n")
    assert isinstance(inst.kappa, GeneralKappa)
    assert inst.general


def test_table_group_round_trip():
    f = GF(3)
    G = FiniteGroup([[0, 1], [1, 0]], ["e", "s"])
    rep = Representation(G, [Matrix.identity(f, 2), Matrix(f, [[0, 1], [1, 0]])], basis_names=("x", "y"))
    lam = LambdaParam.from_entries(rep, {(1, 0): {1: 1}, (1, 1): {1: 2}})
    inst = Instance(rep, lam, KappaParam(rep, {(0, 1): {0: 1}}), name="swap")
    text = render_instance(inst)
    assert "elements e s" in text and "table" in text
    back = parse_instance(text)
    assert render_instance(back) == text
    assert back.lam == lam


def test_corpus_entries():
    c2 = corpus_get("cyclic-p2")
    rep = c2.rep
    assert rep.field.char == 2 and rep.group.order == 2
    g = rep.generators[0][1]
    assert c2.lam.value(g, 0).is_zero()
    assert c2.lam.value(g, 1).render() == "1"
    assert c2.kappa.value(0, 1).render() == "g"
    trivial = corpus_get("skew-trivial")
    assert trivial.lam.is_zero() and trivial.kappa.is_zero()
    fix = corpus_get("general-kappa-fix")
    assert fix.kappa.value(0, 1).render() == "v*g + g"
    assert fix.map_source == "corpus:cyclic-p2"
    assert fix.map_images["v"].render() == "v + g"
    assert corpus_get("cyclic-p11").group.order == 11


def test_unknown_corpus_name_lists_entries():
    with pytest.raises(KeyError) as exc:
        corpus_get("cyclic-p4")
    for name in corpus_names():
        assert name in str(exc.value)


def _ga_strategy(rep):
    f = rep.field
    coeff = st.integers(0, f.char - 1) if f.char else st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(st.integers(0, rep.group.order - 1), coeff, max_size=4)


@given(data=st.data())
def test_group_algebra_render_parse_round_trip(data):
    rep = data.draw(st.sampled_from([unipotent(3), s3_reflection(), unipotent(5)]))
    f = rep.field
    raw = data.draw(_ga_strategy(rep))
    x = SkewElem.from_ga(rep, GroupAlgebraElem(rep.group, f, {g: f(c) for g, c in raw.items()}))
    assert parse_expr(x.render(), rep, allow_vectors=False) == x


@given(data=st.data())
def test_skew_degree_one_render_parse_round_trip(data):
    rep = unipotent(3)
    f = rep.field
    x = SkewElem.zero(rep)
    for _ in range(data.draw(st.integers(0, 4))):
        c = f(data.draw(st.integers(1, 2)))
        i = data.draw(st.integers(0, 1))
        g = data.draw(st.integers(0, 2))
        x = x + SkewElem.basis_vector(rep, i, g).scale(c)
    assert parse_expr(x.render(), rep) == x
