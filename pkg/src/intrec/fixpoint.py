"""Weak-point surjections and fixed-point engines.

The generic engines (:func:`lawvere_efp`, :func:`intensional_fp`,
:func:`ifp_to_efp`) work in any P-category with the cartesian pack; they
return a point together with a transcript that checks every step of the
diagonal calculation on probes.

The concrete side lives in assemblies.  ``P`` is the assembly of closed
programs in weak normal form, each realized by itself, and

    r(e, d) = the map  m |-> e d m

is a weak-point surjection ``P x P -> N_bot ^ N`` (and, with a normalizing
wrapper, ``P x P -> 2``).  Because ``Box P`` is isomorphic to ``P`` the same
map is a weak-point surjection out of ``Box P x Box P``; feeding it to the
intensional engine reproduces the second recursion theorem.

:func:`frt` and :func:`srt` are the recursion theorems on bare codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import kernel
from .asm import (ASM, AsmArrow, Assembly, Fn, NAT, NAT_BOT_NAT, NotRealized, ProgAsm, Product,
                  TWO, code_of, tracked_by, _Fn)
from .exposure import BoxOf, Exposure, ExposureNT
from .kernel import (App, Code, Converged, KleeneVerdict, Lam, OutOfFuelError, Var,
                     apply, apply2, as_code, decode, kleene_eq, numeral, smn)
from .pcat import LawReport, LawResult, PCategory, Verdict

__all__ = [
    "WeakPointSurjection", "FixedPointWitness", "lawvere_efp", "intensional_fp", "ifp_to_efp",
    "search_fixed_points", "induced_arrow", "prog_asm", "build_rE", "build_box_wps",
    "box_nat_iso", "universal_map", "transformer_arrow", "transformer_tracker",
    "frt", "srt", "verify_srt", "verify_frt", "DEFAULT_PROGRAMS",
]


@dataclass
class WeakPointSurjection:
    """``r : X x A -> Y`` with a chooser for representing points."""

    r: Any
    represent: Callable[[Any], Any]
    name: str = "r"

    def check(self, cat: PCategory, f, points: Sequence, law: LawResult | None = None) -> LawResult:
        """``r . <x_f, a> ~ f . a`` for every probe point ``a``."""
        law = law or LawResult("weak_point_surjection", "r . <x_f, a> ~ f . a")
        xf = self.represent(f)
        for a in points:
            law.record(cat.hom_eq(cat.compose(self.r, cat.pairing(xf, a)), cat.compose(f, a)), (f, a))
        return law


@dataclass
class FixedPointWitness:
    point: Any
    kind: str  # "EFP" or "IFP"
    transcript: LawReport
    target: Any = None
    notes: list = field(default_factory=list)

    @property
    def verdict(self) -> Verdict:
        return self.transcript.verdict

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "point": repr(self.point), "verdict": self.verdict.value,
               "transcript": self.transcript.to_dict()}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# -- generic engines ----------------------------------------------------------

def lawvere_efp(cat: PCategory, w: WeakPointSurjection, t) -> FixedPointWitness:
    """Diagonalize ``r : A x A -> Y`` against ``t : Y -> Y``."""
    a_obj = w.r.dom.left if hasattr(w.r.dom, "left") else cat.split_product(w.r.dom)[0]
    ident = cat.identity(a_obj)
    f = cat.compose_all(t, w.r, cat.pairing(ident, ident))
    xf = w.represent(f)
    diag = cat.pairing(xf, xf)
    y = cat.compose(w.r, diag)
    report = LawReport("efp")
    chain = [
        ("step_1", "r . <x_f, x_f> ~ t . r . <id, id> . x_f", y, cat.compose(f, xf)),
        ("step_2", "t . r . <id, id> . x_f ~ t . r . <x_f, x_f>", cat.compose(f, xf),
         cat.compose(t, y)),
        ("fixed_point", "t . y ~ y", cat.compose(t, y), y),
    ]
    for name, statement, lhs, rhs in chain:
        report.law(name, statement).record(cat.hom_eq(lhs, rhs), (lhs, rhs))
    return FixedPointWitness(y, "EFP", report, t)


def intensional_fp(cat: PCategory, q: Exposure, delta: ExposureNT, w: WeakPointSurjection,
                   t, check_quoting: bool = True) -> FixedPointWitness:
    """An intensional fixed point of ``t : QY -> Y`` from ``r : QA x QA -> Y``.

    Every link of the diagonal calculation is checked separately, so a broken
    law shows up as the first failing step.
    """
    qa, _ = cat.split_product(w.r.dom)
    a_obj = _unbox(qa)
    d = delta(a_obj)
    m = q.m(qa, qa)
    f = cat.compose_all(t, q.on_arrow(w.r), m, cat.pairing(d, d))
    xf = w.represent(f)
    m0 = q.m0()
    y = cat.compose(w.r, cat.pairing(xf, xf))
    tQr_m = cat.compose_all(t, q.on_arrow(w.r), m)
    quoted = cat.compose(q.on_arrow(xf), m0)
    exprs = [
        y,
        cat.compose_all(f, xf),
        cat.compose(tQr_m, cat.pairing(cat.compose(d, xf), cat.compose(d, xf))),
        cat.compose(tQr_m, cat.pairing(quoted, quoted)),
        cat.compose_all(tQr_m, cat.pairing(q.on_arrow(xf), q.on_arrow(xf)), m0),
        cat.compose_all(t, q.on_arrow(w.r), q.on_arrow(cat.pairing(xf, xf)), m0),
        cat.compose_all(t, q.on_arrow(y), m0),
    ]
    statements = [
        "r . <x_f, x_f> ~ t . Qr . m . <delta, delta> . x_f",
        "... ~ t . Qr . m . <delta . x_f, delta . x_f>",
        "... ~ t . Qr . m . <Q(x_f) . m0, Q(x_f) . m0>",
        "... ~ t . Qr . m . <Q(x_f), Q(x_f)> . m0",
        "... ~ t . Qr . Q<x_f, x_f> . m0",
        "... ~ t . Q(r . <x_f, x_f>) . m0",
    ]
    report = LawReport("ifp")
    if check_quoting:
        square = report.law("quoting_at_x_f", "delta . x_f ~ Q(x_f) . m0")
        square.record(cat.hom_eq(cat.compose(d, xf), quoted), xf)
    for i, statement in enumerate(statements):
        report.law("step_%d" % (i + 1), statement).record(
            cat.hom_eq(exprs[i], exprs[i + 1]), i + 1)
    report.law("fixed_point", "y ~ t . Q(y) . m0").record(cat.hom_eq(exprs[0], exprs[-1]), y)
    return FixedPointWitness(y, "IFP", report, t)


def _unbox(obj):
    return obj.inner if isinstance(obj, BoxOf) else obj


def ifp_to_efp(cat: PCategory, q: Exposure, eps: ExposureNT,
               ifp_engine: Callable[[Any], FixedPointWitness], t) -> FixedPointWitness:
    """An extensional fixed point of ``t : A -> A`` as an intensional fixed
    point of ``t . eps_A``."""
    a = t.cod
    ifp = ifp_engine(cat.compose(t, eps(a)))
    y = ifp.point
    report = LawReport("ifp_to_efp")
    report.extend(ifp.transcript)
    evaluated = cat.compose_all(eps(a), q.on_arrow(y), q.m0())
    report.law("evaluate_quote", "eps . Q(y) . m0 ~ y").record(cat.hom_eq(evaluated, y), y)
    report.law("fixed_point_efp", "t . y ~ y").record(cat.hom_eq(cat.compose(t, y), y), y)
    return FixedPointWitness(y, "EFP", report, t)


def search_fixed_points(cat: PCategory, t, points: Sequence, quote: Callable | None = None) -> list:
    """All probe points ``y`` with ``t . y ~ y`` (or ``t . quote(y) ~ y``)."""
    out = []
    for y in points:
        lhs = cat.compose(t, quote(y) if quote else y)
        if cat.hom_eq(lhs, y) is Verdict.HOLDS:
            out.append(y)
    return out


# -- assemblies: code-induced arrows and the universal map --------------------

class _Induced(_Fn):
    def __init__(self, dom, cod, tracker):
        self.dom, self.cod, self.tracker = dom, cod, tracker

    def __call__(self, x):
        res = apply(self.tracker, self.dom.realizer(x))
        if isinstance(res, Converged):
            return self.cod.read(res.code)
        if res.reason == "fuel":
            raise OutOfFuelError("induced arrow did not finish", res.steps)
        raise NotRealized("tracker undefined at %r" % (x,))


def induced_arrow(dom: Assembly, cod: Assembly, tracker: Code, name: str = "f") -> AsmArrow:
    """The arrow whose function reads off what the tracker computes."""
    return AsmArrow(dom, cod, _Induced(dom, cod, as_code(tracker)), as_code(tracker), name)


def _plain(src: str, **env) -> Code:
    return code_of(src, **env)


# probe elements of P, read as two-argument programs e d m
DEFAULT_PROGRAMS = (
    "fun d m -> 0",
    "fun d m -> m",
    "fun d m -> succ m",
    "fun d m -> add m m",
    "0",
    "3",
)


def prog_asm(extra: Sequence[Code] = ()) -> ProgAsm:
    return ProgAsm(tuple(_plain(src) for src in DEFAULT_PROGRAMS) + tuple(extra))


# r(e, d)'s realizer, read off a pair: for maps, m |-> e d m forced to a
# numeral; for truth values, e d normalized to a tagged pair.
_R_MAP = _plain("fun p -> p (fun e d m z -> pred (succ (e d m)))")
_R_TWO = _plain("fun p -> p (fun e d z -> (fun v -> pair (ifz fst v then 0 else 1) 0) (e d))")


def _r_tracker(cod) -> Code:
    if cod == NAT_BOT_NAT:
        return _R_MAP
    if cod == TWO:
        return _R_TWO
    raise ValueError("the universal map targets N_bot^N or 2, not %r" % (cod,))


def _representer(cod, x_obj, f) -> Any:
    if cod == NAT_BOT_NAT:
        c = _plain("fun d m -> s d m 0", s=f.tracker)
    else:
        c = _plain("fun d -> s d 0", s=f.tracker)
    return ASM.point(x_obj, _element(x_obj, c), c, "x_f")


def _element(x_obj, c: Code):
    return (c, c) if isinstance(x_obj, BoxOf) else c


def universal_map(e: Code, d: Code) -> Fn:
    """The element ``m |-> e d m`` of ``N_bot ^ N``; junk ``e`` gives the
    everywhere-undefined map."""
    e, d = as_code(e), as_code(d)
    if e.is_junk or d.is_junk:
        return Fn(code_of("fun m z -> omega"))
    res = apply(_R_MAP, kernel.pair_value(e, d))
    return Fn(res.code)


def build_rE(cod: Assembly = NAT_BOT_NAT, programs: ProgAsm | None = None) -> WeakPointSurjection:
    p = programs or prog_asm()
    r = induced_arrow(Product(p, p), cod, _r_tracker(cod), "r")

    def represent(f):
        _check_tracked(f)
        return _representer(cod, p, f)

    return WeakPointSurjection(r, represent, "r_E")


def build_box_wps(cod: Assembly = NAT_BOT_NAT, programs: ProgAsm | None = None) -> WeakPointSurjection:
    """``Box P x Box P -> cod``: the element ``(e, e)`` of ``Box P`` is realized
    by ``e`` alone, so the universal map's tracker serves unchanged."""
    bp = BoxOf(programs or prog_asm())
    r = induced_arrow(Product(bp, bp), cod, _r_tracker(cod), "r_box")

    def represent(f):
        _check_tracked(f)
        return _representer(cod, bp, f)

    return WeakPointSurjection(r, represent, "r_box")


def _check_tracked(f):
    law = tracked_by(f.dom, f.cod, f.fn, f.tracker)
    if law.verdict is Verdict.FAILS:
        from .asm import TrackingError
        raise TrackingError("cannot represent an untracked arrow", law.witnesses[0])


def box_nat_iso(nat: Assembly = NAT) -> tuple[AsmArrow, AsmArrow]:
    """``Box N -> N`` and ``N -> Box N``, both tracked by ``I``."""
    to = AsmArrow(BoxOf(nat), nat, _First(), kernel.I, "unbox")
    back = AsmArrow(nat, BoxOf(nat), _Dup(), kernel.I, "box")
    return to, back


class _First(_Fn):
    def __call__(self, xa):
        return xa[0]


class _Dup(_Fn):
    def __call__(self, n):
        return n, numeral(n)


def transformer_tracker(src: Code | str) -> Code:
    """Lift ``T = fun self m -> ...`` to codes of maps: ``\\c m z. T (\\k. c k 0) m``."""
    body = code_of(src) if isinstance(src, str) else src
    return _plain("fun c m z -> T (fun k -> c k 0) m", T=body)


def transformer_arrow(src: Code | str, name: str = "t") -> AsmArrow:
    """``t : Box(N_bot^N) -> N_bot^N`` built from a program transformer."""
    return induced_arrow(BoxOf(NAT_BOT_NAT), NAT_BOT_NAT, transformer_tracker(src), name)


# -- recursion theorems on codes ----------------------------------------------

def srt(f: Code) -> Code:
    """``e`` with ``e y = f e y``; built syntactically, nothing is run.

    ``W = \\w y. f (w w) y`` and ``e = \\y. f (W W) y``; under call-by-value
    ``W W`` reduces to ``e`` itself.
    """
    ft = decode(f)
    w = Lam(Lam(App(App(ft, App(Var(1), Var(1))), Var(0))))
    return Code(Lam(App(App(ft, App(w, w)), Var(0))))


def frt(f: Code) -> Code:
    """``e = smn(d, d)`` with ``d = \\y x. f (\\x'. y y x') x``.

    The self-application is eta-expanded so that call-by-value does not run
    it before it is needed.
    """
    d = _plain("fun y x -> f (fun u -> y y u) x", f=as_code(f))
    return smn(d, d)


def verify_srt(e: Code, f: Code, inputs: Sequence[int], fuel: int | None = None,
               name: str = "srt") -> LawReport:
    report = LawReport(name, fuel)
    law = report.law("recursion_equation", "e . y = f . e . y")
    for y in inputs:
        lhs, rhs = apply(e, numeral(y), fuel), apply2(f, e, numeral(y), fuel)
        v = kleene_eq(lhs, rhs)
        law.record(_kv(v), (y, _show(lhs), _show(rhs)))
    return report


def verify_frt(e: Code, f: Code, inputs: Sequence[int], fuel: int | None = None) -> LawReport:
    """``phi_e(x) = f(e, x)`` on probes: the fixed-point equation of the operation."""
    return verify_srt(e, f, inputs, fuel, name="frt")


def _kv(v: KleeneVerdict) -> Verdict:
    return {KleeneVerdict.EQUAL: Verdict.HOLDS, KleeneVerdict.DIFFERENT: Verdict.FAILS}.get(v, Verdict.UNKNOWN)


def _show(res) -> str:
    if isinstance(res, Converged):
        return kernel.pretty(res.code.term)
    return "no value (%s after %d steps)" % (res.reason, res.steps)
