import random

import pytest

from intrec import kernel
from intrec.asm import ASM, BOTTOM, NAT_BOT_NAT, code_of, program_map
from intrec.exposure import BOX, evaluator, quoter
from intrec.fixpoint import (box_nat_iso, build_box_wps, build_rE, frt, induced_arrow,
                             intensional_fp, ifp_to_efp, lawvere_efp, srt, transformer_arrow,
                             universal_map, verify_frt, verify_srt)
from intrec.fixtures import transformer_source
from intrec.kernel import Code, Converged, OutOfFuel, apply, numeral
from intrec.pcat import Verdict

FACTORIAL = code_of("let rec f n = ifz n then 1 else mul n (f (pred n)) in f")
SHIFT = induced_arrow(NAT_BOT_NAT, NAT_BOT_NAT, code_of("fun c m -> c (succ m)"), "shift")


def _values(fn, upto):
    return [NAT_BOT_NAT.at(fn, m) for m in range(upto)]


def test_efp_of_identity():
    assert lawvere_efp(ASM, build_rE(), ASM.identity(NAT_BOT_NAT)).verdict is Verdict.HOLDS


def test_efp_of_shift_agrees_on_nine_probes():
    wit = lawvere_efp(ASM, build_rE(), SHIFT)
    assert wit.verdict is Verdict.HOLDS
    y = wit.point.fn("*")
    ty = ASM.compose(SHIFT, wit.point).fn("*")
    assert _values(y, 9) == _values(ty, 9)


def test_efp_of_a_constant_is_the_constant():
    c = ASM.point(NAT_BOT_NAT, program_map(FACTORIAL), name="fac")
    const = ASM.compose(c, ASM.bang(NAT_BOT_NAT))
    wit = lawvere_efp(ASM, build_rE(), const)
    assert ASM.hom_eq(wit.point, c) is Verdict.HOLDS


def test_represented_constant_at_factorial():
    w = build_rE()
    c = ASM.point(NAT_BOT_NAT, program_map(FACTORIAL), name="fac")
    const = ASM.compose(c, ASM.bang(w.r.dom.left))
    xf = w.represent(const)
    e = xf.fn("*")
    assert NAT_BOT_NAT.at(universal_map(e, numeral(3)), 5) == 120


def test_weak_point_surjection_on_random_probes():
    rng = random.Random(7)
    w = build_rE()
    progs = w.r.dom.left
    maps = [ASM.compose(ASM.point(NAT_BOT_NAT, f), ASM.bang(progs)) for f in NAT_BOT_NAT.elements()]
    maps.append(induced_arrow(progs, NAT_BOT_NAT, code_of("fun d m z -> add m 1"), "plus_one"))
    points = ASM.points(progs)
    law = None
    for _ in range(20):
        f = rng.choice(maps)
        law = w.check(ASM, f, [rng.choice(points)], law)
    assert law.verdict is Verdict.HOLDS and law.checked == 20


def test_junk_program_gives_the_undefined_map():
    f = universal_map(Code.from_int(12345), kernel.I)
    with kernel.fuel(5000):
        assert _values(f, 3) == [BOTTOM] * 3


def test_box_nat_round_trip():
    to, back = box_nat_iso()
    assert [to.fn(back.fn(n)) for n in range(11)] == list(range(11))


def test_ifp_route_agrees_with_direct_efp():
    engine = lambda t: intensional_fp(ASM, BOX, quoter(), build_box_wps(NAT_BOT_NAT), t)
    via = ifp_to_efp(ASM, BOX, evaluator(), engine, SHIFT)
    direct = lawvere_efp(ASM, build_rE(), SHIFT)
    assert via.verdict is Verdict.HOLDS
    assert ASM.hom_eq(via.point, direct.point) is Verdict.HOLDS


@pytest.mark.parametrize("name", ["factorial.lam", "double.lam"])
def test_ifp_transcript_holds_step_by_step(name):
    t = transformer_arrow(transformer_source(name))
    wit = intensional_fp(ASM, BOX, quoter(), build_box_wps(NAT_BOT_NAT), t)
    for law in wit.transcript.laws:
        assert law.verdict is Verdict.HOLDS, law.name


# -- recursion theorems on codes ------------------------------------------------

def test_frt_factorial():
    f = code_of("fun g x -> ifz x then 1 else mul x (g (pred x))")
    e = frt(f)
    assert [apply(e, numeral(n)).code for n in range(7)] == [numeral(v) for v in (1, 1, 2, 6, 24, 120, 720)]
    assert verify_frt(e, f, range(7)).verdict is Verdict.HOLDS


def test_frt_of_identity_operation_is_nowhere_defined():
    e = frt(code_of("fun g x -> g x"))
    for n in range(3):
        assert isinstance(apply(e, numeral(n), fuel=20000), OutOfFuel)


def test_frt_of_constant_operation():
    e = frt(code_of("fun g x -> 42"))
    assert all(apply(e, numeral(n)).code == numeral(42) for n in range(5))


def test_srt_builds_without_running():
    before = kernel.machine_steps()
    srt(code_of("fun e y -> e"))
    assert kernel.machine_steps() == before


@pytest.mark.parametrize("y", [0, 1, 2, 5, 10])
def test_quine(y):
    e = srt(code_of("fun e y -> e"))
    res = apply(e, numeral(y))
    assert isinstance(res, Converged) and res.code == e


def test_pairing_quine():
    e = srt(code_of("fun e y -> pair e y"))
    assert apply(e, numeral(4)).code == kernel.pair_value(e, numeral(4))


def test_srt_of_second_projection_is_identity():
    f = code_of("fun e y -> y")
    e = srt(f)
    assert [apply(e, numeral(n)).code for n in range(5)] == [numeral(n) for n in range(5)]
    assert verify_srt(e, f, range(5)).verdict is Verdict.HOLDS
