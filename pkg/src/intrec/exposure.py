"""Exposures, their transformations, and the box exposure on assemblies.

An exposure sends objects to objects and arrows to arrows, preserving
identities and composites up to the hom PERs and reflecting them.  Arrows
with related images are intensionally equal.

``BOX`` sends an assembly ``X`` to the assembly of pairs ``(x, a)`` with
``a`` a realizer of ``x``, realized only by ``a``; an arrow ``(f, r)`` goes to
``(x, a) |-> (f(x), r . a)``, tracked by ``r`` again.  So two trackers of one
function give different boxed arrows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from . import kernel
from .asm import (ASM, AsmArrow, Assembly, NotRealized, ONE, Product, _Fn)
from .kernel import Converged, OutOfFuelError, ZERO, apply, pair_value
from .pcat import LawReport, LawResult, PCategory, ProbeSet, Verdict

__all__ = [
    "Exposure", "IdentityExposure", "BoxOf", "BoxExposure", "BOX", "ExposureNT",
    "evaluator", "identity_nt", "quoter", "IntensionalEq", "intensional_eq",
    "check_exposure_axioms", "check_naturality", "check_cartesian_exposure",
    "check_quoting", "check_comonadic",
]


class Exposure:
    """An endoexposure with a product-preservation pack ``(m, m0)``."""

    name = "Q"
    category: PCategory

    def on_object(self, a):
        raise NotImplementedError

    def on_arrow(self, f):
        raise NotImplementedError

    def __call__(self, x):
        return self.on_arrow(x) if hasattr(x, "dom") else self.on_object(x)

    def m(self, a, b):
        """``QA x QB -> Q(A x B)``"""
        raise NotImplementedError

    def m0(self):
        """``1 -> Q1``"""
        raise NotImplementedError

    def m_inverse(self, a, b):
        cat = self.category
        return cat.pairing(self.on_arrow(cat.pi1(a, b)), self.on_arrow(cat.pi2(a, b)))

    def m0_inverse(self):
        return self.category.bang(self.on_object(self.category.terminal()))

    def quote(self, point):
        """``Q(a) . m0 : 1 -> QA`` for a point ``a : 1 -> A``."""
        return self.category.compose(self.on_arrow(point), self.m0())


class IdentityExposure(Exposure):
    name = "Id"

    def __init__(self, category: PCategory):
        self.category = category

    def on_object(self, a):
        return a

    def on_arrow(self, f):
        return f

    def m(self, a, b):
        return self.category.identity(self.category.product(a, b))

    def m0(self):
        return self.category.identity(self.category.terminal())


@dataclass(frozen=True, repr=False)
class BoxOf(Assembly):
    inner: Assembly

    @property
    def name(self):
        return "Box%r" % (self.inner,)

    def elements(self):
        return [(x, a) for x in self.inner.elements() for a in self.inner.realizers(x)]

    def realizers(self, xa):
        return [xa[1]]

    def read(self, r):
        return self.inner.read(r), r

    def eq(self, x, y):
        if x[1] != y[1]:
            return Verdict.FAILS
        return self.inner.eq(x[0], y[0])


class _Boxed(_Fn):
    def __init__(self, fn, tracker):
        self.fn, self.tracker = fn, tracker

    def __call__(self, xa):
        x, a = xa
        res = apply(self.tracker, a)
        if isinstance(res, Converged):
            return self.fn(x), res.code
        if res.reason == "fuel":
            raise OutOfFuelError("boxed arrow did not finish", res.steps)
        raise NotRealized("tracker undefined at %r" % (a,))


class _Proj(_Fn):
    def __init__(self, *path):
        self.path = path

    def __call__(self, x):
        for i in self.path:
            x = x[i]
        return x


class _Quote(_Fn):
    def __call__(self, xa):
        return xa, xa[1]


class _Merge(_Fn):
    def __call__(self, pair):
        (x, a), (y, b) = pair
        return (x, y), pair_value(a, b)


class _Unit(_Fn):
    def __call__(self, x):
        return "*", ZERO


class BoxExposure(Exposure):
    name = "Box"

    def __init__(self, category: PCategory = ASM):
        self.category = category

    def on_object(self, a):
        return BoxOf(a)

    def on_arrow(self, f):
        return AsmArrow(BoxOf(f.dom), BoxOf(f.cod), _Boxed(f.fn, f.tracker), f.tracker,
                        "Box(%s)" % f.name)

    def m(self, a, b):
        return AsmArrow(Product(BoxOf(a), BoxOf(b)), BoxOf(Product(a, b)), _Merge(), kernel.I, "m")

    def m0(self):
        return AsmArrow(ONE, BoxOf(ONE), _Unit(), kernel.I, "m0")


BOX = BoxExposure()


@dataclass
class ExposureNT:
    """A transformation of exposures ``source -> target``, given by components."""

    name: str
    source: Exposure
    target: Exposure
    component: Callable

    def __call__(self, a):
        return self.component(a)


def evaluator(q: BoxExposure = BOX) -> ExposureNT:
    """``eps_X : Box X -> X``, ``(x, a) |-> x``, tracked by ``I``."""
    ident = IdentityExposure(q.category)
    return ExposureNT("eps", q, ident,
                      lambda a: AsmArrow(BoxOf(a), a, _Proj(0), kernel.I, "eps"))


def identity_nt(q: Exposure) -> ExposureNT:
    """The identity transformation of an exposure; for ``Id`` it is an evaluator."""
    return ExposureNT("id", q, q, lambda a: q.category.identity(q.on_object(a)))


class _Twice(Exposure):
    def __init__(self, q: Exposure):
        self.q, self.category, self.name = q, q.category, q.name + "^2"

    def on_object(self, a):
        return self.q.on_object(self.q.on_object(a))

    def on_arrow(self, f):
        return self.q.on_arrow(self.q.on_arrow(f))


def quoter(q: BoxExposure = BOX) -> ExposureNT:
    """``delta_X : Box X -> Box Box X``, ``(x, a) |-> ((x, a), a)``, tracked by ``I``."""
    return ExposureNT("delta", q, _Twice(q),
                      lambda a: AsmArrow(BoxOf(a), BoxOf(BoxOf(a)), _Quote(), kernel.I, "delta"))


@dataclass
class IntensionalEq:
    verdict: Verdict
    extensional: Verdict

    @property
    def reflects(self) -> bool:
        """Intensional equality must imply extensional equality."""
        return self.verdict is not Verdict.HOLDS or self.extensional is Verdict.HOLDS


def intensional_eq(q: Exposure, f, g) -> IntensionalEq:
    cat = q.category
    out = IntensionalEq(cat.hom_eq(q.on_arrow(f), q.on_arrow(g)), cat.hom_eq(f, g))
    if not out.reflects:
        raise AssertionError("exposure fails to reflect: %r vs %r" % (f, g))
    return out


# -- law suites ---------------------------------------------------------------

def _pairs(cat, arrows):
    return [(g, f) for f in arrows for g in arrows if cat.composable(g, f)]


def check_exposure_axioms(q: Exposure, probes: ProbeSet) -> LawReport:
    cat = q.category
    report = LawReport("exposure:" + q.name, probes.fuel)
    ident = report.law("identity", "Q(id) ~ id")
    comp = report.law("composition", "Q(g . f) ~ Qg . Qf")
    wd = report.law("image_well_defined", "Qf ~ Qf")
    refl = report.law("reflection", "Qf ~ Qg implies f ~ g")
    for a in probes.objects:
        ident.record(cat.hom_eq(q.on_arrow(cat.identity(a)), cat.identity(q.on_object(a))), a)
    images = {}
    for f in probes.arrows:
        images[id(f)] = q.on_arrow(f)
        wd.record(cat.hom_eq(images[id(f)], images[id(f)]), f)
    for g, f in _pairs(cat, probes.arrows):
        lhs = q.on_arrow(cat.compose(g, f))
        comp.record(cat.hom_eq(lhs, cat.compose(images[id(g)], images[id(f)])), (g, f))
    for f, g in itertools.combinations(probes.arrows, 2):
        if (f.dom, f.cod) != (g.dom, g.cod):
            continue
        if cat.hom_eq(images[id(f)], images[id(g)]) is Verdict.HOLDS:
            refl.record(cat.hom_eq(f, g), (f, g))
    if not refl.checked:
        # every arrow is intensionally equal to itself
        for f in probes.arrows:
            refl.record(cat.hom_eq(f, f), f)
    return report


def check_naturality(t: ExposureNT, probes: ProbeSet, law: LawResult | None = None) -> LawResult:
    cat = t.source.category
    law = law or LawResult("naturality:" + t.name, "t_B . Ff ~ Gf . t_A")
    for f in probes.arrows:
        lhs = cat.compose(t(f.cod), t.source.on_arrow(f))
        rhs = cat.compose(t.target.on_arrow(f), t(f.dom))
        law.record(cat.hom_eq(lhs, rhs), f)
    return law


def check_cartesian_exposure(q: Exposure, probes: ProbeSet) -> LawReport:
    """Cartesian laws up to intensional equality, product preservation, and
    the interaction of ``m`` with pairing."""
    cat = q.category
    report = LawReport("cartesian-exposure:" + q.name, probes.fuel)
    b1 = report.law("projection_1", "pi1 . <f,g> ~~ f")
    b2 = report.law("projection_2", "pi2 . <f,g> ~~ g")
    eta = report.law("pairing_eta", "<pi1 . h, pi2 . h> ~~ h")
    nat = report.law("pairing_precompose", "<f,g> . h ~~ <f . h, g . h>")
    prop = report.law("m_pairing", "m . <Qf,Qg> ~ Q<f,g>")
    iso_m = report.law("m_iso", "m . <Qpi1,Qpi2> ~ id and <Qpi1,Qpi2> . m ~ id")
    iso_0 = report.law("m0_iso", "m0 . ! ~ id and ! . m0 ~ id")

    def approx(f, g):
        return cat.hom_eq(q.on_arrow(f), q.on_arrow(g))

    objects_seen = set()
    for f in probes.arrows:
        for g in probes.arrows:
            if f.dom != g.dom:
                continue
            a, b = f.cod, g.cod
            fg = cat.pairing(f, g)
            b1.record(approx(cat.compose(cat.pi1(a, b), fg), f), (f, g))
            b2.record(approx(cat.compose(cat.pi2(a, b), fg), g), (f, g))
            eta.record(approx(cat.pairing(cat.compose(cat.pi1(a, b), fg),
                                          cat.compose(cat.pi2(a, b), fg)), fg), fg)
            prop.record(cat.hom_eq(cat.compose(q.m(a, b), cat.pairing(q.on_arrow(f), q.on_arrow(g))),
                                   q.on_arrow(fg)), (f, g))
            for h in probes.arrows:
                if h.cod == f.dom:
                    nat.record(approx(cat.compose(fg, h),
                                      cat.pairing(cat.compose(f, h), cat.compose(g, h))), (f, g, h))
            objects_seen.add((a, b))
    for a, b in sorted(objects_seen, key=repr):
        m, inv = q.m(a, b), q.m_inverse(a, b)
        iso_m.record(cat.hom_eq(cat.compose(m, inv), cat.identity(q.on_object(cat.product(a, b)))), (a, b))
        iso_m.record(cat.hom_eq(cat.compose(inv, m), cat.identity(cat.product(q.on_object(a), q.on_object(b)))), (a, b))
    one = cat.terminal()
    iso_0.record(cat.hom_eq(cat.compose(q.m0(), q.m0_inverse()), cat.identity(q.on_object(one))), "Q1")
    iso_0.record(cat.hom_eq(cat.compose(q.m0_inverse(), q.m0()), cat.identity(one)), "1")
    return report


def check_quoting(q: Exposure, delta: ExposureNT, probes: ProbeSet) -> LawReport:
    """The reasonable-quoting square on every point of ``QA``, and its
    special case at the terminal object."""
    cat = q.category
    report = LawReport("quoting:" + q.name, probes.fuel)
    square = report.law("reasonable_quoting", "delta_A . a ~ Qa . m0")
    unit = report.law("quoting_unit", "delta_1 . m0 ~ Q(m0) . m0")
    for a in probes.objects:
        for point in cat.points(q.on_object(a)):
            lhs = cat.compose(delta(a), point)
            square.record(cat.hom_eq(lhs, q.quote(point)), (a, point))
    one = cat.terminal()
    unit.record(cat.hom_eq(cat.compose(delta(one), q.m0()), q.quote(q.m0())), "1")
    return report


def check_comonadic(q: Exposure, eps: ExposureNT, delta: ExposureNT, probes: ProbeSet) -> LawReport:
    cat = q.category
    report = LawReport("comonadic:" + q.name, probes.fuel)
    coassoc = report.law("coassociativity", "delta_QA . delta_A ~ Q(delta_A) . delta_A")
    left = report.law("counit_left", "eps_QA . delta_A ~ id_QA")
    right = report.law("counit_right", "Q(eps_A) . delta_A ~ id_QA")
    for a in probes.objects:
        qa = q.on_object(a)
        d = delta(a)
        coassoc.record(cat.hom_eq(cat.compose(delta(qa), d), cat.compose(q.on_arrow(d), d)), a)
        left.record(cat.hom_eq(cat.compose(eps(qa), d), cat.identity(qa)), a)
        right.record(cat.hom_eq(cat.compose(q.on_arrow(eps(a)), d), cat.identity(qa)), a)
    check_naturality(eps, probes, report.law("naturality_eps", "eps_B . Qf ~ f . eps_A"))
    check_naturality(delta, probes, report.law("naturality_delta", "delta_B . Qf ~ QQf . delta_A"))
    report.extend(check_quoting(q, delta, probes))
    return report
