from intrec import kernel
from intrec.asm import ASM, AsmArrow, NAT, TWO, TRUE, code_of
from intrec.exposure import (BOX, BoxExposure, BoxOf, ExposureNT, IdentityExposure, check_comonadic,
                             check_exposure_axioms, check_naturality, check_quoting, evaluator,
                             intensional_eq, quoter)
from intrec.exposure import _Boxed
from intrec.fixtures import F3, finite_probes, separation_pair
from intrec.kernel import numeral
from intrec.pcat import ProbeSet, Verdict

SUCC = ASM.arrow(NAT, NAT, lambda n: n + 1, code_of("fun n -> succ n"), name="succ")


def test_separation_pair():
    f, g = separation_pair()
    assert ASM.hom_eq(f, g) is Verdict.HOLDS
    assert intensional_eq(BOX, f, g).verdict is Verdict.FAILS


def test_box_preserves_identity_and_composites():
    assert ASM.hom_eq(BOX.on_arrow(ASM.identity(NAT)), ASM.identity(BoxOf(NAT))) is Verdict.HOLDS
    gf = ASM.compose(SUCC, SUCC)
    assert ASM.hom_eq(BOX.on_arrow(gf), ASM.compose(BOX.on_arrow(SUCC), BOX.on_arrow(SUCC))) is Verdict.HOLDS


def test_box_axioms_on_small_fixtures():
    assert check_exposure_axioms(BOX, finite_probes(3)).verdict is Verdict.HOLDS


def test_identity_exposure_passes():
    assert check_exposure_axioms(IdentityExposure(ASM), finite_probes(2)).verdict is Verdict.HOLDS


def _inner_tracker(c):
    # the composite tracker is \x. q (p x); keep only p
    t = c.term
    if isinstance(t, kernel.Lam) and isinstance(t.body, kernel.App) and isinstance(t.body.arg, kernel.App):
        return kernel.Code(kernel.Lam(t.body.arg))
    return c


class _ForgetfulBox(BoxExposure):
    """Boxes a composite with the tracker of its first factor only."""

    def on_arrow(self, f):
        r = _inner_tracker(f.tracker)
        return AsmArrow(BoxOf(f.dom), BoxOf(f.cod), _Boxed(f.fn, r), r, "Q'(%s)" % f.name)


def test_forgetful_box_breaks_composition():
    probes = ProbeSet([NAT], [SUCC, ASM.compose(SUCC, SUCC)])
    rep = check_exposure_axioms(_ForgetfulBox(), probes)
    assert rep["identity"].verdict is Verdict.HOLDS
    assert rep["composition"].verdict is Verdict.FAILS
    assert rep["composition"].witnesses


def test_evaluator_component():
    eps = evaluator()(NAT)
    assert eps.fn((3, numeral(3))) == 3


def test_quoter_component():
    delta = quoter()(NAT)
    assert delta.fn((3, numeral(3))) == ((3, numeral(3)), numeral(3))


def test_naturality_on_successor():
    probes = ProbeSet([NAT], [SUCC])
    assert check_naturality(evaluator(), probes).verdict is Verdict.HOLDS
    assert check_naturality(quoter(), probes).verdict is Verdict.HOLDS


def test_evaluating_a_quoted_point():
    eps = evaluator()
    y = ASM.point(TWO, TRUE)
    lhs = ASM.compose_all(eps(TWO), BOX.on_arrow(y), BOX.m0())
    assert ASM.hom_eq(lhs, y) is Verdict.HOLDS


def test_reasonable_quoting_on_every_point_of_a_three_element_fixture():
    rep = check_quoting(BOX, quoter(), ProbeSet([F3], []))
    assert rep.verdict is Verdict.HOLDS
    assert rep["reasonable_quoting"].checked == len(BoxOf(F3).elements())


def test_comonad_laws_on_small_fixtures():
    assert check_comonadic(BOX, evaluator(), quoter(), finite_probes(3)).verdict is Verdict.HOLDS


def test_counit_triangle_at_nat():
    probes = ProbeSet([NAT], [SUCC])
    rep = check_comonadic(BOX, evaluator(), quoter(), probes)
    assert rep["counit_left"].verdict is Verdict.HOLDS
    assert rep["counit_right"].verdict is Verdict.HOLDS


class _SkewQuote:
    def __call__(self, xa):
        return xa, kernel.apply(kernel.combinator("succ"), xa[1]).code


def test_misquoting_breaks_coassociativity():
    bad = ExposureNT("delta'", BOX, quoter().target,
                     lambda a: AsmArrow(BoxOf(a), BoxOf(BoxOf(a)), _SkewQuote(), kernel.I, "delta'"))
    rep = check_comonadic(BOX, evaluator(), bad, ProbeSet([F3], []))
    assert rep["coassociativity"].verdict is Verdict.FAILS
