"""Named runs behind the command line: each returns law reports and data.

Every function here is deterministic given its arguments; random probes come
from ``random.Random(seed)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from . import kernel
from .asm import ASM, BOTTOM, NAT_BOT_NAT, TWO, code_of, program_map
from .exposure import (BOX, check_cartesian_exposure, check_comonadic, check_exposure_axioms,
                       evaluator, intensional_eq, quoter)
from .fixpoint import (build_box_wps, frt, intensional_fp, srt, transformer_arrow, verify_frt,
                       verify_srt)
from .fixtures import finite_probes, lindenbaum_corpus, separation_pair, smn_corpus
from .kernel import Code, Converged, KleeneVerdict, apply, apply2, kleene_eq, numeral, pretty
from .lindenbaum import check_corpus, numbering_diagnostic, toy_theory
from .logic import (asm_efp_engine, asm_ifp_engine, asm_truth, check_fix_consistency,
                    decider_arrow, godel_construct, rice_refute, rice_refute_srt, tarski_construct)
from .pcat import LawReport, LawResult, Verdict, check_cartesian_laws, check_category_laws
from .report import code_summary

__all__ = [
    "Outcome", "SUITES", "pca_laws", "smn_law", "run_suite", "separation", "quine", "srt_run",
    "frt_run", "ifp_vs_srt", "godel", "tarski", "rice", "lindenbaum_check", "encode_text",
    "encode_number",
]


@dataclass
class Outcome:
    reports: list = field(default_factory=list)  # LawReport or LawResult
    data: dict = field(default_factory=dict)

    @property
    def verdict(self) -> Verdict:
        v = Verdict.HOLDS
        for r in self.reports:
            v = v & r.verdict
        return v


def _kv(v: KleeneVerdict) -> Verdict:
    return {KleeneVerdict.EQUAL: Verdict.HOLDS, KleeneVerdict.DIFFERENT: Verdict.FAILS}.get(v, Verdict.UNKNOWN)


# -- the PCA ------------------------------------------------------------------

_POOL_SRC = (
    "0", "1", "2", "5", "fun x -> x", "fun x -> succ x", "fun x -> pred x",
    "fun x y -> x", "fun x y -> y", "fun x -> pair x x", "fun f -> f 0",
    "fun x -> add x 2", "fun x -> ifz x then 1 else 0", "fun x y -> pair y x",
)


def _pool() -> list[Code]:
    base = [code_of(s) for s in _POOL_SRC]
    return base + [kernel.I, kernel.K, kernel.S, kernel.B, kernel.PAIR, kernel.FST, kernel.SND]


def pca_laws(seed: int = 0, count: int = 200) -> LawReport:
    """The combinator equations on ``count`` converging random triples from a
    pool of values.

    Draws where a side has no value are drawn again; how many there were is
    kept in the law's notes.
    """
    rng = random.Random(seed)
    pool = _pool()
    report = LawReport("pca", kernel.fuel_ceiling())
    laws = [
        ("K", "K x y = x", lambda x, y, z: (kernel.App(kernel.App(kernel.K.term, x.term), y.term), x.term)),
        ("S", "S x y z = x z (y z)",
         lambda x, y, z: (kernel.apps(kernel.S.term, x.term, y.term, z.term),
                          kernel.App(kernel.App(x.term, z.term), kernel.App(y.term, z.term)))),
        ("I", "I x = x", lambda x, y, z: (kernel.App(kernel.I.term, x.term), x.term)),
        ("B", "B f g x = f (g x)",
         lambda x, y, z: (kernel.apps(kernel.B.term, x.term, y.term, z.term),
                          kernel.App(x.term, kernel.App(y.term, z.term)))),
    ]
    for name, statement, build in laws:
        law = report.law(name, statement)
        rejected = 0
        while law.holds + law.fails < count:
            x, y, z = (rng.choice(pool) for _ in range(3))
            lhs, rhs = build(x, y, z)
            v = kleene_eq(Code(lhs), Code(rhs))
            if v is KleeneVerdict.UNKNOWN:
                # not a converging probe; drawn again, and counted
                rejected += 1
                if rejected > 50 * count:
                    law.record(Verdict.UNKNOWN, "too few converging probes")
                    break
                continue
            law.record(_kv(v), (pretty(x.term), pretty(y.term), pretty(z.term)))
        law.notes.append("non-converging draws: %d of %d" % (rejected, rejected + law.holds + law.fails))
    return report


def smn_law(inputs: Sequence[int] = (0, 1, 2, 3, 5), report: LawReport | None = None) -> LawReport:
    """``smn(d, n) . x = d . n . x`` over the shipped corpus, and a count of
    the steps ``smn`` itself takes."""
    report = report or LawReport("smn", kernel.fuel_ceiling())
    law = report.law("smn", "smn(d, n) . x = d . n . x")
    cost = report.law("smn_runs_nothing", "building smn(d, n) takes 0 steps")
    corpus = smn_corpus()
    for src, d in corpus:
        for n in inputs:
            before = kernel.machine_steps()
            spec = kernel.smn(d, numeral(n))
            cost.record(Verdict.of(kernel.machine_steps() == before), (src, n))
            for x in inputs:
                v = kleene_eq(apply(spec, numeral(x)), apply2(d, numeral(n), numeral(x)))
                law.record(_kv(v), (src, n, x))
    report.law("corpus_size", "at least 50 programs").record(Verdict.of(len(corpus) >= 50), len(corpus))
    return report


# -- law suites -----------------------------------------------------------------

def separation() -> LawReport:
    """Two trackers of one function: equal, but not intensionally."""
    f, g = separation_pair()
    report = LawReport("separation", kernel.fuel_ceiling())
    report.law("extensional", "f ~ g").record(ASM.hom_eq(f, g), (f, g))
    ieq = intensional_eq(BOX, f, g)
    report.law("not_intensional", "not (f ~~ g)").record(
        {Verdict.HOLDS: Verdict.FAILS, Verdict.FAILS: Verdict.HOLDS}.get(ieq.verdict, Verdict.UNKNOWN), (f, g))
    return report


def run_suite(name: str, size: int = 4, seed: int = 0, count: int = 200) -> Outcome:
    probes = finite_probes(size, kernel.fuel_ceiling())
    if name == "pca":
        return Outcome([pca_laws(seed, count), smn_law()])
    if name == "pcategory":
        return Outcome([check_category_laws(ASM, probes)])
    if name == "cartesian":
        return Outcome([check_cartesian_laws(ASM, probes)])
    if name == "exposure":
        return Outcome([check_exposure_axioms(BOX, probes), check_cartesian_exposure(BOX, probes),
                        separation()])
    if name == "comonadic":
        return Outcome([check_comonadic(BOX, evaluator(), quoter(), probes)])
    if name == "lindenbaum":
        return lindenbaum_check(lindenbaum_corpus())
    raise ValueError("unknown suite %r" % name)


SUITES = ("pca", "pcategory", "cartesian", "exposure", "comonadic", "lindenbaum")


# -- recursion theorems ---------------------------------------------------------

def _table(e: Code, inputs: Sequence[int]) -> list:
    out = []
    for y in inputs:
        res = apply(e, numeral(y))
        out.append([y, pretty(res.code.term) if isinstance(res, Converged) else None])
    return out


def quine(inputs: Sequence[int] = (0, 1, 2, 5, 10)) -> Outcome:
    """``e`` with ``e y = e``, and the pairing variant ``e y = (e, y)``."""
    f = code_of("fun e y -> e")
    e = srt(f)
    rep = verify_srt(e, f, inputs, name="quine")
    law = rep.law("returns_itself", "e . y = e")
    for y in inputs:
        law.record(_kv(kleene_eq(apply(e, numeral(y)), Converged(e, 0))), y)
    fp = code_of("fun e y -> pair e y")
    ep = srt(fp)
    rep2 = verify_srt(ep, fp, inputs, name="quine_pair")
    law2 = rep2.law("returns_pair", "e . y = (e, y)")
    for y in inputs:
        law2.record(_kv(kleene_eq(apply(ep, numeral(y)), Converged(kernel.pair_value(ep, numeral(y)), 0))), y)
    return Outcome([rep, rep2], {"code": code_summary(e), "pair_code": code_summary(ep),
                                 "table": _table(e, inputs)})


def srt_run(program: str, inputs: Sequence[int] = tuple(range(6))) -> Outcome:
    f = code_of(program)
    e = srt(f)
    return Outcome([verify_srt(e, f, inputs)], {"program": program, "code": code_summary(e),
                                                "table": _table(e, inputs)})


def frt_run(functional: str, inputs: Sequence[int] = tuple(range(7))) -> Outcome:
    f = code_of(functional)
    e = frt(f)
    rep = verify_frt(e, f, inputs)
    return Outcome([rep], {"functional": functional, "code": code_summary(e),
                           "values": _table(e, inputs)})


def ifp_vs_srt(transformer: str, inputs: Sequence[int] = tuple(range(6))) -> Outcome:
    """The intensional fixed point of a transformer against ``srt`` of it."""
    t = transformer_arrow(transformer)
    w = build_box_wps(NAT_BOT_NAT)
    wit = intensional_fp(ASM, BOX, quoter(), w, t)
    e = srt(code_of(transformer))
    direct = ASM.point(NAT_BOT_NAT, program_map(e), name="srt")
    report = LawReport("ifp_vs_srt", kernel.fuel_ceiling())
    report.extend(wit.transcript)
    report.law("agrees_with_srt", "y ~ srt(T)").record(ASM.hom_eq(wit.point, direct), transformer)
    y = wit.point.fn("*")
    values = [[n, NAT_BOT_NAT.at(y, n)] for n in inputs]
    values = [[n, "undefined" if v is BOTTOM else v] for n, v in values]
    return Outcome([report], {"transformer": transformer, "values": values})


# -- diagonal arguments ---------------------------------------------------------

def godel() -> Outcome:
    T = asm_truth()
    result = godel_construct(T, BOX, evaluator()(TWO), asm_ifp_engine(TWO))
    res = apply(result.point.tracker, kernel.ZERO)
    forced = apply(res.code, kernel.ZERO) if isinstance(res, Converged) else res
    halted = isinstance(forced, Converged)
    report = result.transcript
    report.law("diverges", "the point's realizer has no value at the ceiling").record(
        Verdict.of(not halted), "fuel %d" % result.fuel)
    data = {"classification": result.classification.value, "fuel": result.fuel,
            "steps_used": forced.steps, "halted": halted}
    if isinstance(res, Converged):
        data["realizer"] = code_summary(res.code)
    data["chain"] = _chain(result.classification.value)
    return Outcome([report], data)


def _chain(cls: str) -> list[str]:
    return [
        "y ~ not . p . Q(y) . m0, checked on the terminal probe",
        "p . Q(y) . m0 ~ top would give y ~ bot and then top ~ bot",
        "p . Q(y) . m0 ~ bot would give y ~ top and then top ~ bot",
        "top !~ bot, so y is neither: %s" % cls,
    ]


def tarski() -> Outcome:
    T = asm_truth()
    wit = tarski_construct(T, BOX, evaluator(), asm_ifp_engine(TWO))
    g = godel_construct(T, BOX, evaluator()(TWO), asm_ifp_engine(TWO))
    report = LawReport("tarski", kernel.fuel_ceiling())
    report.extend(wit.transcript)
    same = wit.point.tracker == g.point.tracker
    report.law("same_as_godel", "the EFP of not is the Godel point").record(Verdict.of(same), repr(wit.point))
    fixed = check_fix_consistency(T, asm_efp_engine(TWO))
    report.law("not_fix_consistent", "not has an EFP").record(
        Verdict.of(fixed.verdict is Verdict.FAILS), "fix-consistency %s" % fixed.verdict.value)
    value = wit.point.fn("*")
    return Outcome([report], {"point": "bottom" if value is BOTTOM else repr(value),
                              "fuel": kernel.fuel_ceiling()})


def rice(decider: str, pos: str, neg: str, inputs: Sequence[int] = tuple(range(6))) -> Outcome:
    """Both refutations of a decider: the categorical one and the one on codes."""
    T = asm_truth()
    f = decider_arrow(decider)
    a = ASM.point(NAT_BOT_NAT, program_map(code_of(pos)), name="pos")
    b = ASM.point(NAT_BOT_NAT, program_map(code_of(neg)), name="neg")
    r1 = rice_refute(T, f, a, b, asm_efp_engine(NAT_BOT_NAT), inputs)
    r2 = rice_refute_srt(decider, pos, neg, inputs)
    reports = []
    for r in (r1, r2):
        rep = r.transcript
        rep.law("refuted", "a counterexample the decider misjudges").record(
            Verdict.of(r.status == "Refuted"), r.status)
        reports.append(rep)
    agree = LawResult("paths_agree", "both paths reach the same status")
    agree.record(Verdict.of(r1.status == r2.status), (r1.status, r2.status))
    reports.append(agree)
    data = {"efp": _rice_data(r1), "srt": _rice_data(r2)}
    return Outcome(reports, data)


def _rice_data(r) -> dict:
    d = r.to_dict()
    d.pop("transcript")
    return d


# -- Lindenbaum -----------------------------------------------------------------

def lindenbaum_check(corpus) -> Outcome:
    theory = toy_theory()
    report = check_corpus(corpus, theory)
    size = report.law("corpus_size", "at least 30 items")
    size.record(Verdict.of(len(corpus) >= 30), len(corpus))
    return Outcome([report], {"items": len(corpus),
                              "not_predicate_numbers": numbering_diagnostic(theory, corpus)})


# -- encoding -------------------------------------------------------------------

def encode_text(src: str) -> dict:
    c = code_of(src)
    back = kernel.decode(kernel.encode(c.term))
    return {"source": src, "code": code_summary(c), "round_trip": pretty(back),
            "round_trip_equal": back == c.term}


def encode_number(n: int) -> dict:
    c = kernel.as_code(n)
    if c.is_junk:
        return {"number": str(n), "junk": True, "term": None, "round_trip_equal": None}
    term = c.term
    again = kernel.encode(term).value
    return {"number": str(n), "term": pretty(term), "round_trip_equal": again == n}
