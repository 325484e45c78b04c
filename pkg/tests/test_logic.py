import pytest

from intrec import kernel
from intrec.asm import ASM, BOTTOM, NAT_BOT_NAT, TWO, code_of, program_map
from intrec.exposure import BOX, IdentityExposure, evaluator, identity_nt
from intrec.fixpoint import FixedPointWitness, search_fixed_points
from intrec.logic import (Classification, HypothesisFailure, NEG_PROGRAM, POS_PROGRAM,
                          TRUNCATED_HALTING, asm_efp_engine, asm_ifp_engine, asm_truth,
                          check_fix_consistency, check_simple_consistency, decider_arrow,
                          finite_ifp_engine, finite_truth, godel_construct, rice_refute,
                          rice_refute_srt, tarski_construct)
from intrec.pcat import LawReport, Verdict


def _finite_efp_engine(T):
    def engine(t):
        found = search_fixed_points(T.cat, t, T.cat.points(T.two))
        return FixedPointWitness(found[0], "EFP", LawReport("search"), t) if found else None
    return engine


def test_truth_objects_satisfy_their_laws():
    assert asm_truth().check().verdict is Verdict.HOLDS
    assert finite_truth().check().verdict is Verdict.HOLDS


def test_asm_truth_is_simply_consistent():
    assert check_simple_consistency(asm_truth()) is Verdict.HOLDS


def test_collapsed_truth_is_simply_inconsistent():
    assert check_simple_consistency(finite_truth(degenerate=True)) is Verdict.FAILS


def test_asm_negation_has_a_fixed_point():
    fc = check_fix_consistency(asm_truth(), asm_efp_engine(TWO))
    assert fc.verdict is Verdict.FAILS
    assert fc.witness.point.fn("*") is BOTTOM


def test_boolean_negation_has_none():
    T = finite_truth()
    assert check_fix_consistency(T, _finite_efp_engine(T)).verdict is Verdict.HOLDS


def test_tarski_refuses_without_intensional_fixed_points():
    T = finite_truth()
    q = IdentityExposure(T.cat)
    with pytest.raises(HypothesisFailure):
        tarski_construct(T, q, identity_nt(q), finite_ifp_engine(T, q))


def test_godel_collapse_branch():
    T = finite_truth(degenerate=True)
    q = IdentityExposure(T.cat)
    out = godel_construct(T, q, T.cat.identity(T.two), finite_ifp_engine(T, q))
    assert out.classification is Classification.SIMPLE_INCONSISTENCY


def test_godel_rejects_a_bad_provability_predicate():
    T = asm_truth()
    bad = ASM.compose(ASM.negation(), evaluator()(TWO))
    with pytest.raises(HypothesisFailure) as info:
        godel_construct(T, BOX, bad, asm_ifp_engine(TWO))
    assert info.value.law.witnesses


def test_godel_sentence_is_an_extra_point():
    T = asm_truth()
    with kernel.fuel(200000):
        out = godel_construct(T, BOX, evaluator()(TWO), asm_ifp_engine(TWO))
    assert out.classification is Classification.EXTRA_POINT
    assert out.transcript.verdict is Verdict.HOLDS


def test_tarski_point_matches_godel_point():
    T = asm_truth()
    wit = tarski_construct(T, BOX, evaluator(), asm_ifp_engine(TWO))
    g = godel_construct(T, BOX, evaluator()(TWO), asm_ifp_engine(TWO))
    assert wit.point.tracker == g.point.tracker
    assert ASM.hom_eq(ASM.compose(T.neg, wit.point), wit.point) is Verdict.HOLDS


def _witnesses():
    a = ASM.point(NAT_BOT_NAT, program_map(code_of(POS_PROGRAM)), name="pos")
    b = ASM.point(NAT_BOT_NAT, program_map(code_of(NEG_PROGRAM)), name="neg")
    return a, b


def test_rice_on_truncated_halting():
    a, b = _witnesses()
    r = rice_refute(asm_truth(), decider_arrow(TRUNCATED_HALTING), a, b, asm_efp_engine(NAT_BOT_NAT))
    assert r.status == "Refuted"
    assert r.decider_verdict == "false" and r.behaves_like == "pos"
    assert [v for _, v in r.evidence] == [0] * 6


def test_rice_refuses_a_constant_decider():
    a, b = _witnesses()
    with pytest.raises(HypothesisFailure):
        rice_refute(asm_truth(), decider_arrow("fun u -> 0"), a, b, asm_efp_engine(NAT_BOT_NAT))


def test_rice_on_codes():
    r = rice_refute_srt(TRUNCATED_HALTING, POS_PROGRAM, NEG_PROGRAM)
    assert r.status == "Refuted"
    assert kernel.apply(code_of(TRUNCATED_HALTING), r.code).code == kernel.numeral(1)
    assert [v for _, v in r.evidence] == [0] * 6
