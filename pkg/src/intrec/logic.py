"""Truth objects and the diagonal arguments built on fixed points.

All constructions take a P-category, an exposure and a fixed-point engine,
so they run both on assemblies (where they produce diverging programs and
misclassified programs) and on small finite categories (where the
hypotheses fail and the engines say so).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from . import kernel
from .asm import (ASM, AsmArrow, BOTTOM, FALSE, NAT_BOT_NAT, TRUE, TWO, Fn, code_of,
                  program_map)
from .exposure import BOX, Exposure, ExposureNT, evaluator, quoter
from .fixpoint import (FixedPointWitness, build_box_wps, ifp_to_efp, induced_arrow,
                       intensional_fp, search_fixed_points, srt)
from .kernel import Code, Converged, apply, as_code, numeral
from .pcat import (FinSet, FinitePCategory, LawReport, LawResult, PCategory, Verdict, describe)

__all__ = [
    "HypothesisFailure", "TruthObject", "asm_truth", "finite_truth", "Classification",
    "DiagonalVerdict", "check_simple_consistency", "check_fix_consistency", "check_provability",
    "godel_construct", "tarski_construct", "CounterexampleReport", "rice_refute",
    "rice_refute_srt", "decider_arrow", "asm_ifp_engine", "asm_efp_engine", "finite_ifp_engine",
    "TRUNCATED_HALTING", "POS_PROGRAM", "NEG_PROGRAM",
]


class HypothesisFailure(ValueError):
    """A theorem's hypothesis failed on probes; nothing was constructed."""

    def __init__(self, message: str, law: LawResult | None = None):
        super().__init__(message)
        self.law = law


@dataclass
class TruthObject:
    cat: PCategory
    two: Any
    top: Any
    bot: Any
    neg: Any
    name: str = "2"

    def check(self) -> LawReport:
        report = LawReport("truth:" + self.name)
        c = self.cat
        report.law("not_top", "not . top ~ bot").record(c.hom_eq(c.compose(self.neg, self.top), self.bot))
        report.law("not_bot", "not . bot ~ top").record(c.hom_eq(c.compose(self.neg, self.bot), self.top))
        return report


def asm_truth() -> TruthObject:
    """``(1 + 1)_bot`` with its three points; the third is the lifted bottom."""
    return TruthObject(ASM, TWO, ASM.point(TWO, TRUE, name="top"), ASM.point(TWO, FALSE, name="bot"),
                       ASM.negation())


def finite_truth(degenerate: bool = False) -> TruthObject:
    """Booleans in finite sets; ``degenerate`` collapses them to one point."""
    cat = FinitePCategory()
    if degenerate:
        two = FinSet("2", ("*",))
        return TruthObject(cat, two, cat.point(two, "*", "top"), cat.point(two, "*", "bot"),
                           cat.identity(two), "2_collapsed")
    two = FinSet("2", (True, False))
    neg = cat.arrow(two, two, lambda b: not b, "not")
    return TruthObject(cat, two, cat.point(two, True, "top"), cat.point(two, False, "bot"), neg, "2_bool")


class Classification(enum.Enum):
    EXTRA_POINT = "ExtraPoint"
    SIMPLE_INCONSISTENCY = "SimpleInconsistency"
    UNKNOWN = "Unknown"


@dataclass
class DiagonalVerdict:
    point: Any
    classification: Classification
    transcript: LawReport
    fuel: int

    def to_dict(self) -> dict:
        return {"classification": self.classification.value, "point": describe(self.point),
                "fuel": self.fuel, "transcript": self.transcript.to_dict()}


def check_simple_consistency(T: TruthObject) -> Verdict:
    """HOLDS when ``top`` and ``bot`` are unrelated."""
    v = T.cat.hom_eq(T.top, T.bot)
    return {Verdict.HOLDS: Verdict.FAILS, Verdict.FAILS: Verdict.HOLDS}.get(v, Verdict.UNKNOWN)


@dataclass
class FixConsistency:
    verdict: Verdict  # HOLDS: no fixed point of negation found
    witness: FixedPointWitness | None = None

    def to_dict(self) -> dict:
        out = {"fix_consistent": self.verdict.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def check_fix_consistency(T: TruthObject, efp_engine: Callable[[Any], FixedPointWitness | None]) -> FixConsistency:
    """Run the engine on negation; a verified fixed point refutes fix-consistency."""
    wit = efp_engine(T.neg)
    if wit is None:
        return FixConsistency(Verdict.HOLDS)
    v = T.cat.hom_eq(T.cat.compose(T.neg, wit.point), wit.point)
    if v is Verdict.HOLDS:
        return FixConsistency(Verdict.FAILS, wit)
    return FixConsistency(Verdict.UNKNOWN if v is Verdict.UNKNOWN else Verdict.HOLDS, wit)


def check_provability(T: TruthObject, q: Exposure, p, points: Sequence) -> LawResult:
    """``y ~ top`` iff ``p . Q(y) . m0 ~ top`` on probe points."""
    c = T.cat
    law = LawResult("provability", "y ~ top iff p . Q(y) . m0 ~ top")
    for y in points:
        lhs = c.hom_eq(y, T.top)
        rhs = c.hom_eq(c.compose(p, q.quote(y)), T.top)
        if Verdict.UNKNOWN in (lhs, rhs):
            law.record(Verdict.UNKNOWN)
        else:
            law.record(Verdict.of(lhs == rhs), (y, lhs, rhs))
    return law


def godel_construct(T: TruthObject, q: Exposure, p, ifp_engine: Callable[[Any], FixedPointWitness | None],
                    points: Sequence | None = None) -> DiagonalVerdict:
    """Take ``y`` with ``y ~ not . p . Q(y) . m0`` and classify it."""
    c = T.cat
    fuel = kernel.fuel_ceiling()
    prov = check_provability(T, q, p, points if points is not None else [T.top, T.bot])
    if prov.verdict is Verdict.FAILS:
        raise HypothesisFailure("p does not reflect provability on probes", prov)
    report = LawReport("godel", fuel)
    report.laws.append(prov)
    consistent = check_simple_consistency(T)
    report.law("simple_consistency", "top !~ bot").record(consistent, "top ~ bot")
    if consistent is Verdict.FAILS:
        return DiagonalVerdict(None, Classification.SIMPLE_INCONSISTENCY, report, fuel)
    wit = ifp_engine(c.compose(T.neg, p))
    if wit is None:
        raise HypothesisFailure("no intensional fixed point of not . p is available")
    y = wit.point
    report.extend(wit.transcript)
    is_top, is_bot = c.hom_eq(y, T.top), c.hom_eq(y, T.bot)
    report.law("y_not_top", "y !~ top").record(_negate(is_top), y)
    report.law("y_not_bot", "y !~ bot").record(_negate(is_bot), y)
    if is_top is Verdict.FAILS and is_bot is Verdict.FAILS and consistent is Verdict.HOLDS:
        cls = Classification.EXTRA_POINT
    elif Verdict.HOLDS in (is_top, is_bot):
        # the case analysis then forces top ~ bot, which was just refuted
        cls = Classification.SIMPLE_INCONSISTENCY
    else:
        cls = Classification.UNKNOWN
    return DiagonalVerdict(y, cls, report, fuel)


def _negate(v: Verdict) -> Verdict:
    return {Verdict.HOLDS: Verdict.FAILS, Verdict.FAILS: Verdict.HOLDS}.get(v, Verdict.UNKNOWN)


def tarski_construct(T: TruthObject, q: Exposure, eps: ExposureNT,
                     ifp_engine: Callable[[Any], FixedPointWitness | None]) -> FixedPointWitness:
    """An extensional fixed point of negation from intensional fixed points
    and an evaluator."""
    def engine(t):
        wit = ifp_engine(t)
        if wit is None:
            raise HypothesisFailure("2 has no intensional fixed point for not . eps")
        return wit

    return ifp_to_efp(T.cat, q, eps, engine, T.neg)


# -- engines ------------------------------------------------------------------

def asm_ifp_engine(cod=TWO, delta: ExposureNT | None = None) -> Callable[[Any], FixedPointWitness]:
    w = build_box_wps(cod)
    d = delta or quoter()
    return lambda t: intensional_fp(ASM, BOX, d, w, t)


def asm_efp_engine(cod=NAT_BOT_NAT) -> Callable[[Any], FixedPointWitness]:
    eps = evaluator()
    ifp = asm_ifp_engine(cod)
    return lambda t: ifp_to_efp(ASM, BOX, eps, ifp, t)


def finite_ifp_engine(T: TruthObject, q: Exposure) -> Callable[[Any], FixedPointWitness | None]:
    """Exhaustive search for intensional fixed points among the points of 2."""
    c = T.cat
    points = c.points(T.two)

    def engine(t):
        found = search_fixed_points(c, t, points, quote=q.quote)
        if not found:
            return None
        report = LawReport("ifp_search")
        report.law("fixed_point", "y ~ t . Q(y) . m0").record(Verdict.HOLDS, found[0])
        return FixedPointWitness(found[0], "IFP", report, t)

    return engine


# -- Rice ---------------------------------------------------------------------

TRUNCATED_HALTING = "fun u -> clock 500 u 0"
POS_PROGRAM = "fun x -> 0"
NEG_PROGRAM = "fun x -> omega"


def decider_arrow(decider: Code | str, name: str = "decide") -> AsmArrow:
    """``N_bot^N -> 2`` from a decider on plain programs (0 means yes).

    The map's code ``F`` is handed to the decider as the plain program
    ``\\m. F m 0``.
    """
    d = code_of(decider) if isinstance(decider, str) else as_code(decider)
    tracker = code_of("fun F z -> pair (d (fun m -> F m 0)) 0", d=d)
    return induced_arrow(NAT_BOT_NAT, TWO, tracker, name)


@dataclass
class CounterexampleReport:
    path: str
    status: str  # "Refuted", "NonTotalDecider" or "Unknown"
    code: Code | None
    decider_verdict: str
    behaves_like: str | None
    evidence: list
    transcript: LawReport
    fuel: int

    def to_dict(self) -> dict:
        from .report import code_summary
        return {
            "path": self.path, "status": self.status,
            "code": code_summary(self.code) if self.code is not None else None,
            "decider_verdict": self.decider_verdict, "behaves_like": self.behaves_like,
            "evidence": self.evidence, "fuel": self.fuel,
            "transcript": self.transcript.to_dict(),
        }


def _truth_name(x) -> str:
    if x is BOTTOM:
        return "bottom"
    return "true" if x == TRUE else "false"


def _behaviour(fn: Fn, inputs: Sequence[int]) -> list:
    out = []
    for n in inputs:
        v = NAT_BOT_NAT.at(fn, n)
        out.append([n, "undefined" if v is BOTTOM else v])
    return out


def rice_refute(T: TruthObject, f: AsmArrow, a: AsmArrow, b: AsmArrow,
                efp_engine: Callable[[Any], FixedPointWitness],
                inputs: Sequence[int] = range(6)) -> CounterexampleReport:
    """Diagonalize a decider ``f : A -> 2`` against two witnesses.

    ``a`` should be decided true and ``b`` false.  The fixed point ``y`` of
    ``[b, a] . f`` behaves like ``b`` when decided true and like ``a`` when
    decided false.
    """
    c = T.cat
    fuel = kernel.fuel_ceiling()
    report = LawReport("rice", fuel)
    pre_a = report.law("decides_pos", "f . a ~ top")
    pre_a.record(c.hom_eq(c.compose(f, a), T.top), a)
    pre_b = report.law("decides_neg", "f . b ~ bot")
    pre_b.record(c.hom_eq(c.compose(f, b), T.bot), b)
    if pre_a.verdict is not Verdict.HOLDS or pre_b.verdict is not Verdict.HOLDS:
        raise HypothesisFailure("the decider does not separate the two witnesses",
                                pre_a if pre_a.verdict is not Verdict.HOLDS else pre_b)
    g = c.compose(c.case_two(b, a), f)
    wit = efp_engine(g)
    y = wit.point
    report.extend(wit.transcript)
    verdict = f.fn(y.fn("*"))
    res = apply(y.tracker, kernel.ZERO)
    code = res.code if isinstance(res, Converged) else None
    yf = y.fn("*")
    if verdict is BOTTOM:
        return CounterexampleReport("efp", "NonTotalDecider", code, "bottom", None,
                                    _behaviour(yf, inputs), report, fuel)
    opposite, label = (b, "neg") if verdict == TRUE else (a, "pos")
    like = report.law("behaves_opposite", "y ~ the witness of the other class")
    like.record(c.hom_eq(y, opposite), (y, opposite))
    status = "Refuted" if like.verdict is Verdict.HOLDS else "Unknown"
    return CounterexampleReport("efp", status, code, _truth_name(verdict), label,
                                _behaviour(yf, inputs), report, fuel)


def rice_refute_srt(decider: Code | str, pos: Code | str, neg: Code | str,
                    inputs: Sequence[int] = range(6)) -> CounterexampleReport:
    """The classical argument on codes: ``e x = (if d e then neg else pos) x``."""
    d = code_of(decider) if isinstance(decider, str) else as_code(decider)
    pos_c = code_of(pos) if isinstance(pos, str) else as_code(pos)
    neg_c = code_of(neg) if isinstance(neg, str) else as_code(neg)
    fuel = kernel.fuel_ceiling()
    report = LawReport("rice_srt", fuel)
    for name, prog, want in (("decides_pos", pos_c, 0), ("decides_neg", neg_c, 1)):
        res = apply(d, prog)
        law = report.law(name, "d . %s = %d" % (name[8:], want))
        law.record(Verdict.of(isinstance(res, Converged) and res.code == numeral(want))
                   if isinstance(res, Converged) else Verdict.UNKNOWN, name)
        if law.verdict is not Verdict.HOLDS:
            raise HypothesisFailure("the decider does not separate the two witnesses", law)
    f = code_of("fun e x -> (ifz d e then N else P) x", d=d, N=neg_c, P=pos_c)
    e = srt(f)
    res = apply(d, e)
    if not isinstance(res, Converged):
        return CounterexampleReport("srt", "NonTotalDecider", e, "bottom", None, [], report, fuel)
    verdict = TRUE if res.code == numeral(0) else FALSE
    opposite, label = (neg_c, "neg") if verdict == TRUE else (pos_c, "pos")
    like = report.law("behaves_opposite", "e ~ the witness of the other class")
    ye = program_map(e)
    like.record(NAT_BOT_NAT.eq(ye, program_map(opposite)), label)
    status = "Refuted" if like.verdict is Verdict.HOLDS else "Unknown"
    return CounterexampleReport("srt", status, e, _truth_name(verdict), label,
                                _behaviour(ye, inputs), report, fuel)
