import pytest
from hypothesis import given, settings, strategies as st

from intrec.exposure import check_exposure_axioms
from intrec.fixtures import lindenbaum_corpus
from intrec.lindenbaum import (A, TWO, IllSorted, LindenbaumExposure, ParseError, Theory, add,
                               check_corpus, check_fixpoint_pair, check_injectivity, check_sub_law,
                               conj, decode, eq, godel_number, is_ground, lindenbaum_category, mul,
                               neg, num, parse, parse_corpus, pop, probe_set, sort_of, succ,
                               to_sexpr, toy_theory, var)
from intrec.pcat import Verdict


@pytest.fixture(scope="module")
def cat():
    return lindenbaum_category()


def test_numbering_examples():
    # n = 10 * payload + tag
    assert godel_number(var(0)) == 0
    assert godel_number(num(0)) == 1
    assert godel_number(num(3)) == 31
    assert decode(31) == num(3)


@given(st.integers(min_value=0, max_value=10**9))
def test_every_number_names_one_tree(n):
    assert godel_number(decode(n)) == n


def _trees():
    leaf = st.one_of(st.integers(0, 2).map(var), st.integers(0, 9).map(num))
    return st.recursive(leaf, lambda k: st.one_of(k.map(succ), st.tuples(k, k).map(lambda p: add(*p)),
                                                  st.tuples(k, k).map(lambda p: mul(*p))), max_leaves=6)


@given(_trees())
def test_trees_round_trip(x):
    assert decode(godel_number(x)) == x
    assert parse(to_sexpr(x)) == x


@settings(max_examples=60, deadline=None)
@given(_trees(), _trees())
def test_sub_law_on_random_trees(phi, t):
    th = toy_theory()
    j = th.provable_eq(th.sub_term(phi, t), num(godel_number(pop(phi, t))), ())
    assert j == (j.__class__(Verdict.HOLDS, "evaluation"))


def test_sub_law_instance():
    th = toy_theory()
    x_plus_0 = parse("(+ x0 0)")
    one = parse("(S 0)")
    want = num(godel_number(parse("(+ (S 0) 0)")))
    assert th.provable_eq(th.sub_term(x_plus_0, one), want, ()).verdict is Verdict.HOLDS


def test_iff_is_reflexive():
    phi = parse("(= (+ 1 1) 2)")
    assert toy_theory().provable_iff(phi, phi).verdict is Verdict.HOLDS


def test_open_equation_holds_on_probes():
    th = Theory(a_probes=tuple(range(21)))
    j = th.provable_eq(parse("(+ x0 0)"), parse("x0"))
    assert j.verdict is Verdict.HOLDS and j.basis == "probes"


def test_open_equation_fails_with_counterexample():
    assert toy_theory().provable_eq(parse("(* x0 x0)"), parse("x0")).verdict is Verdict.FAILS


def test_substitution_is_composition(cat):
    s = cat.of("(S x0)")
    zero = cat.of("0")
    assert cat.hom_eq(cat.compose(s, zero), cat.of("(S 0)")) is Verdict.HOLDS


def test_equal_but_not_identical(cat):
    f, g = cat.of("(+ 1 1)"), cat.of("2")
    assert f != g
    assert cat.hom_eq(f, g) is Verdict.HOLDS


def test_composition_is_associative(cat):
    f = cat.of("(+ x0 1)")
    g = cat.of("(* x0 2)")
    h = cat.of("(S x0)")
    left = cat.compose(h, cat.compose(g, f))
    right = cat.compose(cat.compose(h, g), f)
    assert cat.hom_eq(left, right) is Verdict.HOLDS


def test_sorts():
    assert sort_of(parse("(= x0 1)"), (A,)) == TWO
    with pytest.raises(IllSorted):
        sort_of(parse("(+ (= 0 0) 1)"), ())


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("(+ 1")
    with pytest.raises(ParseError):
        parse("(frob 1 2)")


def test_quote_of_a_sentence_is_its_numeral(cat):
    q = LindenbaumExposure(cat)
    phi = parse("(= 1 1)")
    (c,) = q.on_arrow(cat.of(phi)).comps
    assert c == num(godel_number(phi)) and is_ground(c)


def test_quote_of_identity(cat):
    q = LindenbaumExposure(cat)
    for a in [(A,), (TWO,), (A, TWO)]:
        assert cat.hom_eq(q.on_arrow(cat.identity(a)), cat.identity(q.on_object(a))) is Verdict.HOLDS


def test_composition_axiom_on_predicate_then_connective(cat):
    q = LindenbaumExposure(cat)
    f = cat.of("(= x0 0)")
    g = cat.of("(not x0)", dom=(TWO,))
    lhs = q.on_arrow(cat.compose(g, f))
    rhs = cat.compose(q.on_arrow(g), q.on_arrow(f))
    assert cat.hom_eq(lhs, rhs) is Verdict.HOLDS


def test_distinct_sentences_have_distinct_quotes(cat):
    q = LindenbaumExposure(cat)
    phis = [parse(s) for s in ("(= 0 0)", "(= 1 1)", "(not (= 0 1))", "(and (= 0 0) (= 1 1))")]
    quotes = [q.on_arrow(cat.of(p)) for p in phis]
    for i in range(len(quotes)):
        for j in range(i + 1, len(quotes)):
            assert cat.hom_eq(quotes[i], quotes[j]) is Verdict.FAILS


def test_shipped_corpus(cat):
    corpus = lindenbaum_corpus()
    assert len(corpus) >= 30
    assert check_corpus(corpus).verdict is Verdict.HOLDS


def test_exposure_axioms_on_corpus_probes(cat):
    corpus = lindenbaum_corpus()
    rep = check_exposure_axioms(LindenbaumExposure(cat), probe_set(cat, corpus))
    assert rep.verdict is Verdict.HOLDS
    assert rep["composition"].checked > 0


def test_injectivity_and_sub_law_counts():
    corpus = parse_corpus("0\n(S 0)\n; comment\n(+ x0 1)\n(= x0 0)\n")
    assert len(corpus) == 4
    assert check_injectivity(corpus).verdict is Verdict.HOLDS
    assert check_sub_law(toy_theory(), corpus).checked == 4 * 3


def test_fixpoint_pair_check():
    # psi = (0 = 0) and phi(x0) = (x0 = x0): psi <-> phi(#psi) holds
    psi = eq(num(0), num(0))
    phi = eq(var(0), var(0))
    assert check_fixpoint_pair(toy_theory(), psi, phi).verdict is Verdict.HOLDS
    assert check_fixpoint_pair(toy_theory(), psi, neg(phi)).verdict is Verdict.FAILS
    assert conj(psi, psi).tag == 8
