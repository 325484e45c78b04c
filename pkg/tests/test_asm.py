import pytest

from intrec import kernel
from intrec.asm import (ASM, BOTTOM, Exponential, Lifted, NAT, NAT_BOT_NAT, ONE, Product,
                        TrackingError, TWO, TRUE, FALSE, code_of, program_map, tracked_by)
from intrec.fixtures import F1, F2, F3, finite_probes
from intrec.kernel import Lam, OMEGA, numeral
from intrec.pcat import Verdict, check_cartesian_laws, check_category_laws


def _succ(n):
    return n + 1


def test_successor_is_tracked():
    law = tracked_by(NAT, NAT, _succ, code_of("fun n -> succ n"))
    assert law.verdict is Verdict.HOLDS


def test_identity_code_does_not_track_successor():
    law = tracked_by(NAT, NAT, _succ, kernel.I)
    assert law.verdict is Verdict.FAILS
    x, a, _ = law.witnesses[0]
    assert (x, a) == (0, "Code(0)")


def test_diverging_tracker_is_unknown_at_small_fuel():
    law = tracked_by(NAT, NAT, _succ, code_of("fun n -> omega"), fuel=500)
    assert law.verdict is Verdict.UNKNOWN


def test_arrow_constructor_rejects_untracked_maps():
    with pytest.raises(TrackingError):
        ASM.arrow(NAT, NAT, _succ, kernel.I, name="bad")


def test_identity_is_neutral():
    f = ASM.arrow(NAT, NAT, _succ, code_of("fun n -> succ n"))
    assert ASM.hom_eq(ASM.compose(ASM.identity(NAT), f), f) is Verdict.HOLDS


def test_composite_is_tracked():
    f = ASM.arrow(NAT, NAT, _succ, code_of("fun n -> succ n"))
    gf = ASM.compose(f, f)
    assert tracked_by(gf.dom, gf.cod, gf.fn, gf.tracker).verdict is Verdict.HOLDS


def test_dropping_the_tracker_composite_breaks_tracking():
    f = ASM.arrow(NAT, NAT, _succ, code_of("fun n -> succ n"))
    gf = ASM.compose(f, f)
    # a compose that forgets to chain trackers keeps only f's
    assert tracked_by(gf.dom, gf.cod, gf.fn, f.tracker).verdict is Verdict.FAILS


def test_pair_realizer_is_the_church_pair():
    p = Product(NAT, NAT)
    r = kernel.apply2(kernel.PAIR, numeral(2), numeral(3)).code
    assert p.realizes(r, (2, 3)) is Verdict.HOLDS
    assert r in p.realizers((2, 3))


def test_projection_after_pairing():
    f = ASM.arrow(NAT, NAT, _succ, code_of("fun n -> succ n"))
    g = ASM.identity(NAT)
    fg = ASM.pairing(f, g)
    assert ASM.hom_eq(ASM.compose(ASM.pi1(NAT, NAT), fg), f) is Verdict.HOLDS
    assert ASM.hom_eq(ASM.compose(ASM.pi2(NAT, NAT), fg), g) is Verdict.HOLDS


def test_bang_is_unique_on_probes():
    other = ASM.arrow(NAT, ONE, lambda n: "*", code_of("fun n -> pred 0"))
    assert ASM.hom_eq(other, ASM.bang(NAT)) is Verdict.HOLDS


def test_eval_after_curry():
    add = ASM.arrow(Product(NAT, NAT), NAT, lambda xy: xy[0] + xy[1],
                    code_of("fun p -> add (fst p) (snd p)"))
    cur = ASM.curry(add)
    exp = cur.cod
    lhs = ASM.compose(ASM.eval_arrow(exp),
                      ASM.pairing(ASM.compose(cur, ASM.pi1(NAT, NAT)), ASM.pi2(NAT, NAT)))
    assert ASM.hom_eq(lhs, add) is Verdict.HOLDS


def test_factorial_element():
    fac = code_of("let rec f n = ifz n then 1 else mul n (f (pred n)) in f")
    assert NAT_BOT_NAT.at(program_map(fac), 5) == 120


def test_two_factorials_are_equal_elements():
    a = program_map(code_of("let rec f n = ifz n then 1 else mul n (f (pred n)) in f"))
    b = program_map(code_of("let rec g n a = ifz n then a else g (pred n) (mul n a) in fun n -> g n 1"))
    assert a.code != b.code
    assert NAT_BOT_NAT.eq(a, b) is Verdict.HOLDS


def test_diverging_thunk_realizes_bottom():
    r = kernel.Code(Lam(kernel.App(OMEGA.term, kernel.Var(0))))
    with kernel.fuel(5000):
        assert Lifted(NAT).read(r) is BOTTOM


def test_negation_swaps_truth_values():
    neg = ASM.negation()
    assert neg.fn(TRUE) == FALSE and neg.fn(FALSE) == TRUE
    assert neg.fn(BOTTOM) is BOTTOM
    assert tracked_by(TWO, TWO, neg.fn, neg.tracker, probes=[TRUE, FALSE]).verdict is Verdict.HOLDS


@pytest.mark.parametrize("src", [F1, F2, F3])
def test_finite_realizers_read_back(src):
    for x in src.elements():
        for a in src.realizers(x):
            assert src.read(a) == x


def test_category_and_cartesian_laws_on_small_fixtures():
    probes = finite_probes(3, kernel.fuel_ceiling())
    assert check_category_laws(ASM, probes).verdict is Verdict.HOLDS
    assert check_cartesian_laws(ASM, probes).verdict is Verdict.HOLDS


def test_exponential_equality_separates_different_maps():
    exp = Exponential(NAT, Lifted(NAT))
    assert exp.eq(program_map(kernel.I), program_map(code_of("fun m -> succ m"))) is Verdict.FAILS
