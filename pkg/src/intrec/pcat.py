"""P-sets, P-categories and a probe-based law harness.

Every equation is checked up to the hom PERs, on a finite set of probes, with
three-valued verdicts.  ``UNKNOWN`` is never counted as a pass.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

__all__ = [
    "Verdict", "conjunction", "LawResult", "LawReport", "PSet", "check_per",
    "PCategory", "ProbeSet", "check_category_laws", "check_cartesian_laws",
    "FinSet", "FinArrow", "FinitePCategory", "describe",
]

MAX_WITNESSES = 5


class Verdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"

    def __and__(self, other: "Verdict") -> "Verdict":
        if Verdict.FAILS in (self, other):
            return Verdict.FAILS
        if Verdict.UNKNOWN in (self, other):
            return Verdict.UNKNOWN
        return Verdict.HOLDS

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.HOLDS if flag else cls.FAILS


def conjunction(verdicts: Iterable[Verdict]) -> Verdict:
    out = Verdict.HOLDS
    for v in verdicts:
        if v is Verdict.FAILS:
            return v
        out = out & v
    return out


def describe(obj: Any) -> Any:
    """A JSON-safe, deterministic rendering of a witness."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): describe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [describe(x) for x in obj]
    return repr(obj)


@dataclass
class LawResult:
    """Tally of one law over its probe instances."""

    name: str
    statement: str = ""
    holds: int = 0
    fails: int = 0
    unknown: int = 0
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def checked(self) -> int:
        return self.holds + self.fails + self.unknown

    def record(self, verdict: Verdict, witness: Any = None) -> Verdict:
        if verdict is Verdict.HOLDS:
            self.holds += 1
        elif verdict is Verdict.FAILS:
            self.fails += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(describe(witness))
        else:
            self.unknown += 1
        return verdict

    @property
    def verdict(self) -> Verdict:
        if self.fails:
            return Verdict.FAILS
        if self.unknown or not self.checked:
            return Verdict.UNKNOWN
        return Verdict.HOLDS

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "statement": self.statement,
            "verdict": self.verdict.value,
            "checked": self.checked,
            "holds": self.holds,
            "fails": self.fails,
            "unknown": self.unknown,
            "witnesses": self.witnesses,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass
class LawReport:
    suite: str
    fuel: int | None = None
    laws: list[LawResult] = field(default_factory=list)

    def law(self, name: str, statement: str = "") -> LawResult:
        for law in self.laws:
            if law.name == name:
                return law
        law = LawResult(name, statement)
        self.laws.append(law)
        return law

    def __getitem__(self, name: str) -> LawResult:
        for law in self.laws:
            if law.name == name:
                return law
        raise KeyError(name)

    @property
    def verdict(self) -> Verdict:
        return conjunction(l.verdict for l in self.laws) if self.laws else Verdict.UNKNOWN

    def extend(self, other: "LawReport") -> "LawReport":
        for law in other.laws:
            self.laws.append(law)
        return self

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "fuel": self.fuel,
            "verdict": self.verdict.value,
            "laws": [l.to_dict() for l in sorted(self.laws, key=lambda l: l.name)],
        }


# -- P-sets -------------------------------------------------------------------

@dataclass
class PSet:
    """A carrier (given by finitely many probe elements) with a PER tester."""

    carrier: Sequence[Any]
    per: Callable[[Any, Any], Verdict]
    name: str = "P-set"


def check_per(ps: PSet, probes: Sequence[Any] | None = None) -> LawReport:
    """Symmetry and transitivity of ``ps.per`` on the probes.

    Reflexivity is deliberately not checked: elements unrelated to themselves
    are the ill-defined ones.
    """
    elems = list(ps.carrier if probes is None else probes)
    report = LawReport("per:" + ps.name)
    sym = report.law("symmetry", "a ~ b => b ~ a")
    trans = report.law("transitivity", "a ~ b and b ~ c => a ~ c")
    table = {}
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            table[i, j] = ps.per(a, b)
    n = len(elems)
    for i in range(n):
        for j in range(n):
            ab, ba = table[i, j], table[j, i]
            if ab is Verdict.HOLDS:
                if ba is Verdict.HOLDS:
                    sym.record(Verdict.HOLDS)
                else:
                    sym.record(ba if ba is Verdict.UNKNOWN else Verdict.FAILS, (elems[i], elems[j]))
            elif ab is Verdict.UNKNOWN:
                sym.record(Verdict.UNKNOWN)
    for i, j, k in itertools.product(range(n), repeat=3):
        ab, bc = table[i, j], table[j, k]
        if ab is Verdict.FAILS or bc is Verdict.FAILS:
            continue
        if ab is Verdict.UNKNOWN or bc is Verdict.UNKNOWN:
            trans.record(Verdict.UNKNOWN)
            continue
        ac = table[i, k]
        trans.record(ac, (elems[i], elems[j], elems[k]))
    return report


# -- P-categories -------------------------------------------------------------

class PCategory:
    """Interface of a P-category, optionally with cartesian structure.

    Arrows must expose ``dom`` and ``cod``.
    """

    name = "P-category"

    def identity(self, a):
        raise NotImplementedError

    def compose(self, g, f):
        """``g . f``"""
        raise NotImplementedError

    def hom_eq(self, f, g) -> Verdict:
        raise NotImplementedError

    def well_defined(self, f) -> Verdict:
        return self.hom_eq(f, f)

    def composable(self, g, f) -> bool:
        return f.cod == g.dom

    # cartesian pack
    def terminal(self):
        raise NotImplementedError

    def product(self, a, b):
        raise NotImplementedError

    def pi1(self, a, b):
        raise NotImplementedError

    def pi2(self, a, b):
        raise NotImplementedError

    def pairing(self, f, g):
        raise NotImplementedError

    def bang(self, a):
        raise NotImplementedError

    def split_product(self, obj) -> tuple | None:
        """The factors of ``obj`` if it was built by :meth:`product`."""
        return None

    def points(self, a) -> list:
        """Probe points ``1 -> a``."""
        raise NotImplementedError

    def compose_all(self, *arrows):
        """``compose_all(h, g, f) = h . g . f``"""
        out = arrows[-1]
        for g in reversed(arrows[:-1]):
            out = self.compose(g, out)
        return out


@dataclass
class ProbeSet:
    """Explicit probe configuration for a law suite."""

    objects: list
    arrows: list
    fuel: int | None = None
    max_triples: int | None = None

    def __post_init__(self):
        if not self.objects:
            raise ValueError("a probe set needs at least one object")


def _composable_pairs(cat: PCategory, arrows: list) -> list:
    return [(g, f) for f in arrows for g in arrows if cat.composable(g, f)]


def check_category_laws(cat: PCategory, probes: ProbeSet) -> LawReport:
    report = LawReport("category:" + cat.name, probes.fuel)
    left = report.law("left_identity", "id . f ~ f")
    right = report.law("right_identity", "f . id ~ f")
    assoc = report.law("associativity", "h . (g . f) ~ (h . g) . f")
    wd = report.law("composite_well_defined", "g . f ~ g . f")
    for f in probes.arrows:
        left.record(cat.hom_eq(cat.compose(cat.identity(f.cod), f), f), f)
        right.record(cat.hom_eq(cat.compose(f, cat.identity(f.dom)), f), f)
    pairs = _composable_pairs(cat, probes.arrows)
    for g, f in pairs:
        wd.record(cat.well_defined(cat.compose(g, f)), (g, f))
    count = 0
    for g, f in pairs:
        for h in probes.arrows:
            if not cat.composable(h, g):
                continue
            if probes.max_triples is not None and count >= probes.max_triples:
                break
            count += 1
            lhs = cat.compose(h, cat.compose(g, f))
            rhs = cat.compose(cat.compose(h, g), f)
            assoc.record(cat.hom_eq(lhs, rhs), (h, g, f))
    return report


def check_cartesian_laws(cat: PCategory, probes: ProbeSet) -> LawReport:
    report = LawReport("cartesian:" + cat.name, probes.fuel)
    beta1 = report.law("projection_1", "pi1 . <f,g> ~ f")
    beta2 = report.law("projection_2", "pi2 . <f,g> ~ g")
    eta = report.law("pairing_eta", "<pi1 . h, pi2 . h> ~ h")
    bang = report.law("terminal_unique", "f : A -> 1 implies f ~ !A")
    one = cat.terminal()
    for f in probes.arrows:
        for g in probes.arrows:
            if f.dom != g.dom:
                continue
            fg = cat.pairing(f, g)
            beta1.record(cat.hom_eq(cat.compose(cat.pi1(f.cod, g.cod), fg), f), (f, g))
            beta2.record(cat.hom_eq(cat.compose(cat.pi2(f.cod, g.cod), fg), g), (f, g))
            eta_h(cat, fg, eta)
    for h in probes.arrows:
        if cat.split_product(h.cod) is not None:
            eta_h(cat, h, eta)
    for a in probes.objects:
        bang.record(cat.hom_eq(cat.bang(a), cat.bang(a)), a)
        for f in probes.arrows:
            if f.dom == a and f.cod == one:
                bang.record(cat.hom_eq(f, cat.bang(a)), f)
    return report


def eta_h(cat: PCategory, h, law: LawResult) -> None:
    a, b = cat.split_product(h.cod)
    lhs = cat.pairing(cat.compose(cat.pi1(a, b), h), cat.compose(cat.pi2(a, b), h))
    law.record(cat.hom_eq(lhs, h), h)


# -- a finite instance --------------------------------------------------------

@dataclass(frozen=True)
class FinSet:
    name: str
    elements: tuple

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class FinArrow:
    """A function between finite sets, stored as a table.

    ``syntax`` is the arrow's representative, which records how it was built;
    two arrows can differ as representatives and still be related.
    """

    dom: FinSet
    cod: FinSet
    table: tuple
    syntax: str = "f"

    def __call__(self, x: Hashable):
        return self.table[self.dom.elements.index(x)]

    def __repr__(self):
        return "%s:%s->%s" % (self.syntax, self.dom, self.cod)


class FinitePCategory(PCategory):
    """Finite sets and functions; the hom PER is equality of tables."""

    name = "finite"

    def __init__(self):
        self._one = FinSet("1", ("*",))

    def arrow(self, dom: FinSet, cod: FinSet, fn: Callable | dict, syntax: str = "f") -> FinArrow:
        look = fn.__getitem__ if isinstance(fn, dict) else fn
        return FinArrow(dom, cod, tuple(look(x) for x in dom.elements), syntax)

    def all_arrows(self, dom: FinSet, cod: FinSet) -> list[FinArrow]:
        out = []
        for i, table in enumerate(itertools.product(cod.elements, repeat=len(dom.elements))):
            out.append(FinArrow(dom, cod, table, "t%d" % i))
        return out

    def identity(self, a):
        return FinArrow(a, a, a.elements, "id")

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ValueError("cannot compose %r after %r" % (g, f))
        return FinArrow(f.dom, g.cod, tuple(g(f(x)) for x in f.dom.elements),
                        "(%s.%s)" % (g.syntax, f.syntax))

    def hom_eq(self, f, g):
        if (f.dom, f.cod) != (g.dom, g.cod):
            return Verdict.FAILS
        return Verdict.of(f.table == g.table)

    def terminal(self):
        return self._one

    def product(self, a, b):
        return FinSet("(%s x %s)" % (a.name, b.name), tuple(itertools.product(a.elements, b.elements)))

    def split_product(self, obj):
        return getattr(self, "_factors", {}).get(obj)

    def _remember(self, a, b):
        p = self.product(a, b)
        if not hasattr(self, "_factors"):
            self._factors = {}
        self._factors[p] = (a, b)
        return p

    def pi1(self, a, b):
        return self.arrow(self._remember(a, b), a, lambda xy: xy[0], "pi1")

    def pi2(self, a, b):
        return self.arrow(self._remember(a, b), b, lambda xy: xy[1], "pi2")

    def pairing(self, f, g):
        if f.dom != g.dom:
            raise ValueError("pairing needs a common domain")
        p = self._remember(f.cod, g.cod)
        return FinArrow(f.dom, p, tuple((f(x), g(x)) for x in f.dom.elements),
                        "<%s,%s>" % (f.syntax, g.syntax))

    def bang(self, a):
        return FinArrow(a, self._one, ("*",) * len(a.elements), "!")

    def point(self, a, x, syntax: str | None = None):
        return FinArrow(self._one, a, (x,), syntax or repr(x))

    def points(self, a):
        return [self.point(a, x) for x in a.elements]
