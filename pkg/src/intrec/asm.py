"""Assemblies over the kernel PCA and the P-category they form.

An assembly is a set whose elements carry nonempty sets of realizer codes.
Here an assembly is described by

* ``elements()``: the probe elements (all of them when the set is finite),
* ``realizers(x)``: the probe realizers of ``x``,
* ``read(r)``: the element a code realizes, raising :class:`NotRealized`
  if it realizes none,
* ``eq(x, y)``: a three-valued test for equality of elements.

Arrows are pairs (function, tracker).  Two arrows are related when their
functions agree on every probe element; trackers are ignored.

Realizer conventions: ``n`` in ``NAT`` is realized only by the numeral ``n``;
the point of ``ONE`` only by ``0``; a pair by the value ``\\s. s a b``; an
element ``x`` of a lift by any ``r`` with ``r 0`` converging to a realizer of
``x``.  A lifted realizer that does not halt within the ambient fuel ceiling
reads as ``BOTTOM``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from . import kernel
from .kernel import (App, Code, Converged, Lam, Lit, OutOfFuelError, PAIR, Var, ZERO,
                     apply, as_code, decode, numeral, pair_value, split_pair)
from .pcat import LawResult, PCategory, Verdict, conjunction
from .surface import compile as compile_src

__all__ = [
    "NotRealized", "TrackingError", "Assembly", "Finite", "NatAsm", "Terminal", "Product",
    "Coproduct", "Lifted", "Exponential", "ProgAsm", "Fn", "BOTTOM", "NAT", "ONE", "TWO",
    "TRUE", "FALSE", "NAT_BOT_NAT", "AsmArrow", "AsmCategory", "ASM", "tracked_by",
    "program_map", "table_tracker", "code_of",
]


class NotRealized(ValueError):
    """The code realizes no element of the assembly."""


class TrackingError(ValueError):
    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class _Bottom:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = object.__new__(cls)
        return cls._inst

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()


@functools.lru_cache(maxsize=4096)
def _compiled(src: str, env: tuple) -> Code:
    return compile_src(src, dict(env))


def code_of(src: str, **env: Code) -> Code:
    """Compile a small surface program, memoized on source and environment."""
    return _compiled(src, tuple(sorted(env.items())))


def _force(r: Code):
    """Run ``r 0``; returns the value code, ``None`` on undefinedness, raises on fuel."""
    res = apply(r, ZERO)
    if isinstance(res, Converged):
        return res.code
    if res.reason == "fuel":
        raise OutOfFuelError("forcing did not finish", res.steps)
    return None


class Assembly:
    def elements(self) -> list:
        raise NotImplementedError

    def realizers(self, x) -> list[Code]:
        raise NotImplementedError

    def read(self, r: Code):
        raise NotImplementedError

    def eq(self, x, y) -> Verdict:
        return Verdict.of(x == y)

    def realizes(self, r: Code, x) -> Verdict:
        try:
            y = self.read(as_code(r))
        except NotRealized:
            return Verdict.FAILS
        except OutOfFuelError:
            return Verdict.UNKNOWN
        return self.eq(x, y)

    def realizer(self, x) -> Code:
        return self.realizers(x)[0]

    def __repr__(self):
        return getattr(self, "name", type(self).__name__)


@dataclass(frozen=True, repr=False)
class Finite(Assembly):
    """A finite assembly with explicit realizer sets.

    Realizer sets must be pairwise disjoint so that ``read`` is a function.
    """

    name: str
    table: tuple  # ((label, (code, ...)), ...)

    def __post_init__(self):
        seen = {}
        for label, codes in self.table:
            if not codes:
                raise ValueError("element %r has no realizers" % (label,))
            for c in codes:
                if c in seen:
                    raise ValueError("realizer %r used by %r and %r" % (c, seen[c], label))
                seen[c] = label

    @classmethod
    def of(cls, name: str, realizers: dict) -> "Finite":
        table = []
        for label, codes in realizers.items():
            if isinstance(codes, (int, Code)):
                codes = [codes]
            table.append((label, tuple(numeral(c) if isinstance(c, int) else c for c in codes)))
        return cls(name, tuple(table))

    @functools.cached_property
    def _lookup(self):
        return {c: label for label, codes in self.table for c in codes}

    def elements(self):
        return [label for label, _ in self.table]

    def realizers(self, x):
        for label, codes in self.table:
            if label == x:
                return list(codes)
        raise KeyError(x)

    def read(self, r):
        try:
            return self._lookup[r]
        except KeyError:
            raise NotRealized("%r realizes nothing in %s" % (r, self.name)) from None

    def __len__(self):
        return len(self.table)


@dataclass(frozen=True, repr=False)
class NatAsm(Assembly):
    probes: tuple = field(default=tuple(range(6)), compare=False)
    name = "N"

    def elements(self):
        return list(self.probes)

    def realizers(self, n):
        return [numeral(n)]

    def read(self, r):
        try:
            return kernel.numeral_inv(r)
        except kernel.NotNumeral:
            raise NotRealized("%r is not a numeral" % (r,)) from None


@dataclass(frozen=True, repr=False)
class Terminal(Assembly):
    name = "1"

    def elements(self):
        return ["*"]

    def realizers(self, x):
        return [ZERO]

    def read(self, r):
        if r == ZERO:
            return "*"
        raise NotRealized("the terminal point is realized by 0 only")


@dataclass(frozen=True, repr=False)
class Product(Assembly):
    left: Assembly
    right: Assembly

    @property
    def name(self):
        return "(%r x %r)" % (self.left, self.right)

    def elements(self):
        return list(itertools.product(self.left.elements(), self.right.elements()))

    def realizers(self, xy):
        x, y = xy
        return [pair_value(a, b) for a in self.left.realizers(x) for b in self.right.realizers(y)]

    def read(self, r):
        parts = split_pair(r)
        if parts is None:
            raise NotRealized("%r is not a pair value" % (r,))
        return self.left.read(parts[0]), self.right.read(parts[1])

    def eq(self, x, y):
        return self.left.eq(x[0], y[0]) & self.right.eq(x[1], y[1])


@dataclass(frozen=True, repr=False)
class Coproduct(Assembly):
    """Weak binary coproduct; ``(i, x)`` is realized by ``pair i a``."""

    left: Assembly
    right: Assembly

    @property
    def name(self):
        return "(%r + %r)" % (self.left, self.right)

    def _side(self, i):
        return self.left if i == 0 else self.right

    def elements(self):
        return [(0, x) for x in self.left.elements()] + [(1, y) for y in self.right.elements()]

    def realizers(self, ix):
        i, x = ix
        return [pair_value(numeral(i), a) for a in self._side(i).realizers(x)]

    def read(self, r):
        parts = split_pair(r)
        if parts is None or parts[0] not in (numeral(0), numeral(1)):
            raise NotRealized("%r is not a tagged pair" % (r,))
        i = kernel.numeral_inv(parts[0])
        return i, self._side(i).read(parts[1])

    def eq(self, x, y):
        if x[0] != y[0]:
            return Verdict.FAILS
        return self._side(x[0]).eq(x[1], y[1])


_DIVERGE = Code(Lam(kernel.OMEGA.term))


@dataclass(frozen=True, repr=False)
class Lifted(Assembly):
    inner: Assembly

    @property
    def name(self):
        return "%r_bot" % (self.inner,)

    def elements(self):
        return self.inner.elements() + [BOTTOM]

    def realizers(self, x):
        if x is BOTTOM:
            return [_DIVERGE]
        return [kernel.thunk(a) for a in self.inner.realizers(x)]

    def read(self, r):
        if not kernel.is_value(r):
            raise NotRealized("%r is not a value" % (r,))
        try:
            v = _force(r)
        except OutOfFuelError:
            return BOTTOM
        if v is None:
            return BOTTOM
        return self.inner.read(v)

    def realizes(self, r, x):
        r = as_code(r)
        if x is not BOTTOM and kernel.is_value(r):
            try:
                v = _force(r)
            except OutOfFuelError:
                return Verdict.UNKNOWN
            if v is None:
                return Verdict.FAILS
            return self.inner.realizes(v, x)
        return super().realizes(r, x)

    def eq(self, x, y):
        if x is BOTTOM or y is BOTTOM:
            return Verdict.of(x is y)
        return self.inner.eq(x, y)


@dataclass(frozen=True)
class Fn:
    """An element of an exponential, presented by a tracker code."""

    code: Code

    def __repr__(self):
        return "Fn(%s)" % kernel.pretty(self.code.term)


@dataclass(frozen=True, repr=False)
class Exponential(Assembly):
    """``cod ^ dom``; elements are code presentations compared on probes."""

    dom: Assembly
    cod: Assembly
    probes: tuple = field(default=(), compare=False)

    @property
    def name(self):
        return "%r^%r" % (self.cod, self.dom)

    def elements(self):
        return list(self.probes)

    def realizers(self, f):
        return [f.code]

    def read(self, r):
        if not kernel.is_value(r):
            raise NotRealized("%r is not a value" % (r,))
        return Fn(r)

    def at_realizer(self, f: Fn, a: Code):
        res = apply(f.code, a)
        if isinstance(res, Converged):
            return self.cod.read(res.code)
        if res.reason == "fuel":
            raise OutOfFuelError("application of %r did not finish" % (f,), res.steps)
        raise NotRealized("%r is undefined at %r" % (f, a))

    def at(self, f: Fn, x):
        """The element ``f(x)``."""
        return self.at_realizer(f, self.dom.realizer(x))

    def eq(self, f, g):
        verdicts = []
        for x in self.dom.elements():
            for a in self.dom.realizers(x):
                try:
                    fx, gx = self.at_realizer(f, a), self.at_realizer(g, a)
                except NotRealized:
                    return Verdict.FAILS
                except OutOfFuelError:
                    verdicts.append(Verdict.UNKNOWN)
                    continue
                v = self.cod.eq(fx, gx)
                if v is Verdict.FAILS:
                    return v
                verdicts.append(v)
        return conjunction(verdicts)


@dataclass(frozen=True, repr=False)
class ProgAsm(Assembly):
    """Closed programs in weak normal form, each realized by itself."""

    probes: tuple = field(default=(), compare=False)
    name = "P"

    def elements(self):
        return list(self.probes)

    def realizers(self, e):
        return [e]

    def read(self, r):
        if not kernel.is_value(r):
            raise NotRealized("%r is not a closed value" % (r,))
        return r


NAT = NatAsm()
ONE = Terminal()
TWO = Lifted(Coproduct(ONE, ONE))
TRUE = (0, "*")
FALSE = (1, "*")


def program_map(c: Code) -> Fn:
    """The element of ``N_bot ^ N`` computed by a numeric program ``c``."""
    return Fn(code_of("fun m z -> c m", c=as_code(c)))


def _default_maps():
    return (
        program_map(code_of("fun m -> 0")),
        program_map(kernel.I),
        program_map(code_of("fun m -> succ m")),
        program_map(code_of("fun m -> omega")),
    )


NAT_BOT_NAT = Exponential(NAT, Lifted(NAT), probes=_default_maps())


def table_tracker(outputs: dict[int, Code], default: Code | None = None) -> Code:
    """``\\a. ifz a then o0 else ifz a-1 then o1 ...`` on numeral inputs."""
    keys = sorted(outputs)
    body = decode(default if default is not None else outputs[keys[-1]])
    for k in reversed(range(keys[-1] + 1)):
        out = outputs.get(k)
        if out is None:
            continue
        test = Var(0)
        for _ in range(k):
            test = App(kernel.PRED, test)
        body = kernel.apps(kernel.IFZ, test, decode(out), body)
    return Code(Lam(body))


# -- arrows -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AsmArrow:
    dom: Assembly
    cod: Assembly
    fn: Callable[[Any], Any]
    tracker: Code
    name: str = "f"

    def __call__(self, x):
        return self.fn(x)

    def __repr__(self):
        return "%s:%r->%r" % (self.name, self.dom, self.cod)


def tracked_by(dom: Assembly, cod: Assembly, fn: Callable, r: Code,
               probes: Iterable | None = None, fuel: int | None = None) -> LawResult:
    """Probe check that ``r`` tracks ``fn``; witnesses are ``(x, a, observed)``."""
    law = LawResult("tracked_by", "r . a defined and in ||f(x)|| for a in ||x||")
    for x in (dom.elements() if probes is None else probes):
        for a in dom.realizers(x):
            res = apply(r, a, fuel)
            if not isinstance(res, Converged):
                if res.reason == "fuel":
                    law.record(Verdict.UNKNOWN)
                else:
                    law.record(Verdict.FAILS, (x, a, "undefined"))
                continue
            try:
                y = fn(x)
            except OutOfFuelError:
                law.record(Verdict.UNKNOWN)
                continue
            except NotRealized as exc:
                law.record(Verdict.FAILS, (x, a, str(exc)))
                continue
            law.record(cod.realizes(res.code, y), (x, a, res.code))
    return law


def _b(q: Code, p: Code) -> Code:
    # the value of B . q . p
    return Code(Lam(App(q.term, App(p.term, Var(0)))))


class AsmCategory(PCategory):
    """Assemblies and tracked functions; hom PERs compare functions on probes."""

    name = "Asm"

    def arrow(self, dom, cod, fn, tracker, name="f", check=True) -> AsmArrow:
        f = AsmArrow(dom, cod, fn, as_code(tracker), name)
        if check:
            law = tracked_by(dom, cod, fn, f.tracker)
            if law.verdict is Verdict.FAILS:
                raise TrackingError("%s is not tracked by its code" % name, law.witnesses[0])
        return f

    def identity(self, a):
        return AsmArrow(a, a, _ident, kernel.I, "id")

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ValueError("cannot compose %r after %r" % (g, f))
        return AsmArrow(f.dom, g.cod, _Composite(g.fn, f.fn), _b(g.tracker, f.tracker),
                        "(%s.%s)" % (g.name, f.name))

    def hom_eq(self, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            return Verdict.FAILS
        out = Verdict.HOLDS
        for x in f.dom.elements():
            try:
                fx, gx = f.fn(x), g.fn(x)
            except OutOfFuelError:
                out = out & Verdict.UNKNOWN
                continue
            except NotRealized:
                return Verdict.FAILS
            v = f.cod.eq(fx, gx)
            if v is Verdict.FAILS:
                return v
            out = out & v
        return out

    def well_defined(self, f):
        return self.hom_eq(f, f) & tracked_by(f.dom, f.cod, f.fn, f.tracker).verdict

    # cartesian structure
    def terminal(self):
        return ONE

    def product(self, a, b):
        return Product(a, b)

    def split_product(self, obj):
        return (obj.left, obj.right) if isinstance(obj, Product) else None

    def pi1(self, a, b):
        return AsmArrow(Product(a, b), a, _first, kernel.FST, "pi1")

    def pi2(self, a, b):
        return AsmArrow(Product(a, b), b, _second, kernel.SND, "pi2")

    def pairing(self, f, g):
        if f.dom != g.dom:
            raise ValueError("pairing needs a common domain")
        # fun a -> pair (p a) (q a)
        x = Var(0)
        tracker = Code(Lam(App(App(PAIR.term, App(f.tracker.term, x)), App(g.tracker.term, x))))
        return AsmArrow(f.dom, Product(f.cod, g.cod), _Paired(f.fn, g.fn), tracker,
                        "<%s,%s>" % (f.name, g.name))

    def bang(self, a):
        return AsmArrow(a, ONE, _star, Code(Lam(Lit(0))), "!")

    def point(self, a: Assembly, x, realizer: Code | None = None, name: str | None = None) -> AsmArrow:
        r = realizer if realizer is not None else a.realizer(x)
        return AsmArrow(ONE, a, _Const(x), Code(Lam(r.term)), name or repr(x))

    def points(self, a):
        return [self.point(a, x) for x in a.elements()]

    def element_of_point(self, p: AsmArrow):
        return p.fn("*")

    # exponentials
    def eval_arrow(self, exp: Exponential) -> AsmArrow:
        tracker = code_of("fun p -> fst p (snd p)")
        return AsmArrow(Product(exp, exp.dom), exp.cod, _Eval(exp), tracker, "eval")

    def curry(self, f: AsmArrow, exp_probes: tuple = ()) -> AsmArrow:
        """``Z -> Y^X`` from ``f : Z x X -> Y``."""
        if not isinstance(f.dom, Product):
            raise ValueError("curry needs an arrow out of a product")
        law = tracked_by(f.dom, f.cod, f.fn, f.tracker)
        if law.verdict is Verdict.FAILS:
            raise TrackingError("cannot curry an untracked map", law.witnesses[0])
        z, x = f.dom.left, f.dom.right
        exp = Exponential(x, f.cod, exp_probes)
        tracker = code_of("fun z a -> s (pair z a)", s=f.tracker)
        return AsmArrow(z, exp, _Curried(z, tracker), tracker, "curry(%s)" % f.name)

    # lifting and the truth object
    def negation(self) -> AsmArrow:
        tracker = code_of("fun r z -> pair (ifz fst (r 0) then 1 else 0) (snd (r 0))")
        return AsmArrow(TWO, TWO, _negate, tracker, "not")

    def inj(self, co: Coproduct, i: int) -> AsmArrow:
        tracker = code_of("fun a -> pair %d a" % i)
        side = co.left if i == 0 else co.right
        return AsmArrow(side, co, _Tag(i), tracker, "in%d" % (i + 1))

    def copair(self, u: AsmArrow, v: AsmArrow) -> AsmArrow:
        if u.cod != v.cod:
            raise ValueError("copairing needs a common codomain")
        co = Coproduct(u.dom, v.dom)
        tracker = code_of("fun w -> ifz fst w then p (snd w) else q (snd w)", p=u.tracker, q=v.tracker)
        return AsmArrow(co, u.cod, _Case(u.fn, v.fn), tracker, "[%s,%s]" % (u.name, v.name))

    def case_two(self, b: AsmArrow, a: AsmArrow) -> AsmArrow:
        """``[b, a] : 2 -> Y`` for points of an exponential with lifted codomain.

        TRUE goes to ``b``, FALSE to ``a``, and the bottom truth value to the
        everywhere-undefined map.
        """
        exp = b.cod
        if not (isinstance(exp, Exponential) and isinstance(exp.cod, Lifted)) or a.cod != exp:
            raise ValueError("case_two targets an exponential with lifted codomain")
        fb, fa = b.fn("*"), a.fn("*")
        tracker = code_of("fun w m z -> (ifz fst (w 0) then B else A) m z",
                          B=fb.code, A=fa.code)
        nowhere = Fn(code_of("fun m z -> omega"))
        table = {TRUE: fb, FALSE: fa}
        return AsmArrow(TWO, exp, _Table(table, nowhere), tracker, "[%s,%s]" % (b.name, a.name))

    def finite_arrow(self, dom: Finite, cod: Assembly, table: dict, name: str = "f") -> AsmArrow:
        """The function given by ``table``, tracked by a lookup on numeral realizers."""
        outs = {}
        for x in dom.elements():
            for a in dom.realizers(x):
                outs[kernel.numeral_inv(a)] = cod.realizer(table[x])
        return AsmArrow(dom, cod, _Table(dict(table)), table_tracker(outs), name)

    def all_finite_arrows(self, dom: Finite, cod: Finite) -> list[AsmArrow]:
        out = []
        xs = dom.elements()
        for i, ys in enumerate(itertools.product(cod.elements(), repeat=len(xs))):
            out.append(self.finite_arrow(dom, cod, dict(zip(xs, ys)),
                                         "%s>%s#%d" % (dom.name, cod.name, i)))
        return out


# Underlying functions are small callable classes, not closures, so that
# arrows built the same way have equal, readable reprs.

class _Fn:
    def __repr__(self):
        return self.__class__.__name__.lstrip("_").lower()


class _Ident(_Fn):
    def __call__(self, x):
        return x


_ident = _Ident()


class _Composite(_Fn):
    def __init__(self, g, f):
        self.g, self.f = g, f

    def __call__(self, x):
        return self.g(self.f(x))


class _Paired(_Fn):
    def __init__(self, f, g):
        self.f, self.g = f, g

    def __call__(self, x):
        return self.f(x), self.g(x)


class _Const(_Fn):
    def __init__(self, value):
        self.value = value

    def __call__(self, x):
        return self.value


class _Table(_Fn):
    def __init__(self, table, default=None):
        self.table, self.default = table, default

    def __call__(self, x):
        if x in self.table:
            return self.table[x]
        if x is BOTTOM and self.default is not None:
            return self.default
        raise NotRealized("%r is outside the table" % (x,))


class _Tag(_Fn):
    def __init__(self, i):
        self.i = i

    def __call__(self, x):
        return self.i, x


class _Case(_Fn):
    def __init__(self, u, v):
        self.u, self.v = u, v

    def __call__(self, ix):
        return self.u(ix[1]) if ix[0] == 0 else self.v(ix[1])


class _Eval(_Fn):
    def __init__(self, exp):
        self.exp = exp

    def __call__(self, fx):
        return self.exp.at(*fx)


class _Curried(_Fn):
    def __init__(self, z, tracker):
        self.z, self.tracker = z, tracker

    def __call__(self, x):
        res = apply(self.tracker, self.z.realizer(x))
        if not isinstance(res, Converged):
            raise OutOfFuelError("curried tracker did not finish", res.steps)
        return Fn(res.code)


def _first(xy):
    return xy[0]


def _second(xy):
    return xy[1]


def _star(x):
    return "*"


def _negate(x):
    if x is BOTTOM:
        return BOTTOM
    return FALSE if x == TRUE else TRUE


ASM = AsmCategory()
