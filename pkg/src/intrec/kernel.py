"""The concrete partial combinatory algebra.

Programs are closed, de Bruijn indexed lambda terms with numeric literals and
four primitives (``Succ``, ``Pred``, ``IfZ``, ``Clock``).  A program is
identified with its code, a natural number obtained by tagged Cantor pairing::

    node              code
    ----------------  -----------------------------
    Var(i)            <0, i>
    Lam(b)            <1, code(b)>
    App(f, a)         <2, <code(f), code(a)>>
    Lit(n)            <3, n>
    Succ              <4, 0>
    Pred              <5, 0>
    IfZ               <6, 0>
    Clock             <7, 0>

    <a, b> = (a + b)(a + b + 1) / 2 + b

Naturals outside this image are junk; applying them never converges.

Application ``r . a`` is weak call-by-value reduction of ``App(r, a)`` with a
fuel budget; every beta step and every primitive step costs one unit.
Codes grow doubly exponentially with term depth, so :class:`Code` keeps the
term and computes the integer lazily.
"""

from __future__ import annotations

import contextlib
import contextvars
import enum
import functools
import math
import weakref
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Term", "Var", "Lam", "App", "Lit", "Prim", "SUCC", "PRED", "IFZ", "CLOCK",
    "Code", "JunkError", "NotNumeral", "OutOfFuelError",
    "pair", "unpair", "encode", "decode", "pretty",
    "Converged", "OutOfFuel", "PartialValue", "KleeneVerdict",
    "evaluate", "apply", "apply2", "kleene_eq", "smn",
    "numeral", "numeral_inv", "ZERO", "combinator",
    "I", "K", "S", "B", "Y", "Z", "PAIR", "FST", "SND", "OMEGA",
    "DEFAULT_FUEL", "fuel", "fuel_ceiling", "machine_steps",
]

DEFAULT_FUEL = 100_000


class JunkError(ValueError):
    """A natural number that is not the code of any term."""


class NotNumeral(ValueError):
    pass


class OutOfFuelError(RuntimeError):
    """Raised by higher layers when a computation they need did not finish."""

    def __init__(self, message: str, fuel: int | None = None):
        super().__init__(message)
        self.fuel = fuel


# -- terms --------------------------------------------------------------------

# Nodes are hash-consed: structurally equal terms are the same object, so
# equality is identity and sharing survives substitution.
_table: "weakref.WeakValueDictionary[tuple, Term]" = weakref.WeakValueDictionary()


class Term:
    __slots__ = ("_hash", "free", "__weakref__")
    tag: int

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return pretty(self, names=False)

    @classmethod
    def _intern(cls, key: tuple, free: int, **fields) -> "Term":
        node = _table.get(key)
        if node is None:
            node = object.__new__(cls)
            for name, value in fields.items():
                object.__setattr__(node, name, value)
            node.free = free
            node._hash = hash(key)
            _table[key] = node
        return node


class Var(Term):
    __slots__ = ("index",)
    tag = 0

    def __new__(cls, index: int):
        if index < 0:
            raise ValueError("negative de Bruijn index")
        return cls._intern((0, index), index + 1, index=index)


class Lam(Term):
    __slots__ = ("body",)
    tag = 1

    def __new__(cls, body: Term):
        return cls._intern((1, body), max(body.free - 1, 0), body=body)


class App(Term):
    __slots__ = ("fn", "arg")
    tag = 2

    def __new__(cls, fn: Term, arg: Term):
        return cls._intern((2, fn, arg), max(fn.free, arg.free), fn=fn, arg=arg)


class Lit(Term):
    __slots__ = ("n",)
    tag = 3

    def __new__(cls, n: int):
        if n < 0:
            raise ValueError("literals are natural numbers")
        return cls._intern((3, n), 0, n=n)


class Prim(Term):
    """A primitive operator; there are exactly four instances."""

    __slots__ = ("name", "arity", "_tag")

    def __new__(cls, name: str, tag: int, arity: int):
        return cls._intern((tag, "prim"), 0, name=name, _tag=tag, arity=arity)

    @property
    def tag(self):
        return self._tag


SUCC = Prim("Succ", 4, 1)
PRED = Prim("Pred", 5, 1)
IFZ = Prim("IfZ", 6, 3)
CLOCK = Prim("Clock", 7, 3)
_PRIMS = {p.tag: p for p in (SUCC, PRED, IFZ, CLOCK)}


def apps(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def lams(n: int, body: Term) -> Term:
    for _ in range(n):
        body = Lam(body)
    return body


def pretty(t: Term, names: bool = True) -> str:
    """Render a term; with ``names`` binders get letters instead of indices."""
    letters = "xyzwuvabcdefghijklmnopqrst"

    def name(depth: int) -> str:
        q, r = divmod(depth, len(letters))
        return letters[r] + (str(q) if q else "")

    def go(t: Term, depth: int, ctx: str) -> str:
        if isinstance(t, Var):
            if names and t.index < depth:
                return name(depth - 1 - t.index)
            return "#%d" % t.index
        if isinstance(t, Lit):
            return str(t.n)
        if isinstance(t, Prim):
            return t.name
        if isinstance(t, Lam):
            head = "\\" + name(depth) + ". " if names else "\\. "
            s = head + go(t.body, depth + 1, "top")
            return "(" + s + ")" if ctx != "top" else s
        s = go(t.fn, depth, "fn") + " " + go(t.arg, depth, "arg")
        return "(" + s + ")" if ctx == "arg" else s

    return go(t, 0, "top")


# -- coding -------------------------------------------------------------------

def pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(z: int) -> tuple[int, int]:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def _encode_int(t: Term) -> int:
    memo: dict[Term, int] = {}
    stack = [t]
    while stack:
        node = stack[-1]
        if node in memo:
            stack.pop()
            continue
        if isinstance(node, Lam):
            if node.body not in memo:
                stack.append(node.body)
                continue
            memo[node] = pair(1, memo[node.body])
        elif isinstance(node, App):
            pending = [c for c in (node.fn, node.arg) if c not in memo]
            if pending:
                stack.extend(pending)
                continue
            memo[node] = pair(2, pair(memo[node.fn], memo[node.arg]))
        elif isinstance(node, Var):
            memo[node] = pair(0, node.index)
        elif isinstance(node, Lit):
            memo[node] = pair(3, node.n)
        else:
            memo[node] = pair(node.tag, 0)
        stack.pop()
    return memo[t]


def _decode_int(n: int) -> Term:
    if n < 0:
        raise JunkError("negative code %d" % n)
    tag, payload = unpair(n)
    if tag == 0:
        return Var(payload)
    if tag == 1:
        return Lam(_decode_int(payload))
    if tag == 2:
        f, a = unpair(payload)
        return App(_decode_int(f), _decode_int(a))
    if tag == 3:
        return Lit(payload)
    if tag in _PRIMS and payload == 0:
        return _PRIMS[tag]
    raise JunkError("%d is not the code of a term" % n)


class Code:
    """A natural number that names a program.

    Valid codes carry their term; the integer is computed on first use.
    Junk codes carry only the integer.
    """

    __slots__ = ("term", "_value")

    def __init__(self, term: Term | None = None, value: int | None = None):
        if term is None and value is None:
            raise ValueError("a code needs a term or a value")
        self.term = term
        self._value = value

    @classmethod
    def from_int(cls, n: int) -> "Code":
        try:
            return cls(_decode_int(n), n)
        except JunkError:
            return cls(None, n)

    @property
    def value(self) -> int:
        if self._value is None:
            self._value = _encode_int(self.term)
        return self._value

    @property
    def is_junk(self) -> bool:
        return self.term is None

    @property
    def is_closed(self) -> bool:
        return self.term is not None and self.term.free == 0

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if not isinstance(other, Code):
            return NotImplemented
        if self.term is not None and other.term is not None:
            return self.term is other.term
        if self.term is None and other.term is None:
            return self._value == other._value
        return False

    def __hash__(self):
        return hash(self.term) if self.term is not None else hash(self._value)

    def __repr__(self):
        if self.term is None:
            return "Code(junk %d)" % self._value
        return "Code(%s)" % pretty(self.term)


CodeLike = Union[Code, Term, int]


def as_code(c: CodeLike) -> Code:
    if isinstance(c, Code):
        return c
    if isinstance(c, Term):
        return Code(c)
    if isinstance(c, int):
        return Code.from_int(c)
    raise TypeError("expected a code, term or natural, got %r" % (c,))


def encode(t: Term) -> Code:
    return Code(t)


def decode(c: CodeLike) -> Term:
    c = as_code(c)
    if c.term is None:
        raise JunkError("%d is not the code of a term" % c.value)
    return c.term


# -- fuel ---------------------------------------------------------------------

_fuel: contextvars.ContextVar[int] = contextvars.ContextVar("intrec_fuel", default=DEFAULT_FUEL)


def fuel_ceiling() -> int:
    """Fuel used by layers that do not take an explicit budget."""
    return _fuel.get()


@contextlib.contextmanager
def fuel(steps: int) -> Iterator[int]:
    if steps < 0:
        raise ValueError("fuel must be non-negative")
    token = _fuel.set(steps)
    try:
        yield steps
    finally:
        _fuel.reset(token)


# -- machine ------------------------------------------------------------------

class _Clo:
    __slots__ = ("lam", "env")

    def __init__(self, lam, env):
        self.lam = lam
        self.env = env


class _PApp:
    __slots__ = ("prim", "args")

    def __init__(self, prim, args):
        self.prim = prim
        self.args = args


_STUCK = object()
_MACHINE_STEPS = [0]


def machine_steps() -> int:
    """Reduction steps taken by every run so far, for instrumentation."""
    return _MACHINE_STEPS[0]


def _machine(fuel: int, t=None, env=None, fv=None, av=None):
    v, steps = _machine_loop(fuel, t, env, fv, av)
    _MACHINE_STEPS[0] += steps
    return v, steps


def _machine_loop(fuel: int, t, env, fv, av):
    """Run to a weak value.

    Returns ``(value, steps)``; value is ``None`` when fuel ran out and
    ``_STUCK`` when reduction cannot proceed (which is undefinedness).
    Starts either by evaluating ``t`` in ``env`` or by applying value ``fv``
    to value ``av``.
    """
    steps = 0
    stack: list = []
    if t is None:
        stack.append((fv,))
        v = av
        t_pending = False
    else:
        t_pending = True
    while True:
        if t_pending:
            while True:
                cls = t.__class__
                if cls is App:
                    stack.append((t.arg, env))
                    t = t.fn
                elif cls is Var:
                    e = env
                    for _ in range(t.index):
                        e = e[1]
                    v = e[0]
                    break
                elif cls is Lam:
                    v = _Clo(t, env)
                    break
                elif cls is Lit:
                    v = t
                    break
                else:
                    v = _PApp(t, ())
                    break
        t_pending = False
        while stack:
            frame = stack.pop()
            if len(frame) == 2:
                stack.append((v,))
                t, env = frame
                t_pending = True
                break
            f = frame[0]
            fcls = f.__class__
            if fcls is _Clo:
                if steps >= fuel:
                    return None, steps
                steps += 1
                t = f.lam.body
                env = (v, f.env)
                t_pending = True
                break
            if fcls is not _PApp:
                return _STUCK, steps
            prim = f.prim
            args = f.args + (v,)
            if len(args) < prim.arity:
                v = _PApp(prim, args)
                continue
            if args[0].__class__ is not Lit:
                return _STUCK, steps
            if prim is CLOCK:
                budget, remaining = args[0].n, fuel - steps - 1
                if remaining < 0:
                    return None, steps
                inner, used = _machine_loop(min(budget, remaining), None, None, args[1], args[2])
                if inner is None and budget > remaining:
                    return None, fuel
                steps += used + 1
                v = Lit(1) if inner is None or inner is _STUCK else Lit(0)
                continue
            if steps >= fuel:
                return None, steps
            steps += 1
            if prim is SUCC:
                v = Lit(args[0].n + 1)
            elif prim is PRED:
                v = Lit(max(args[0].n - 1, 0))
            else:
                v = args[1] if args[0].n == 0 else args[2]
        else:
            if not t_pending:
                return v, steps


def _readback(v) -> Term:
    memo: dict = {}

    def value(v):
        key = id(v)
        hit = memo.get(key)
        if hit is not None:
            return hit[0]
        cls = v.__class__
        if cls is _Clo:
            out = subst(v.lam, v.env, 0)
        elif cls is _PApp:
            out = apps(v.prim, *[value(a) for a in v.args])
        else:
            out = v
        memo[key] = (out, v)
        return out

    def subst(t, env, depth):
        if t.free <= depth:
            return t
        key = (t, id(env), depth)
        hit = memo.get(key)
        if hit is not None:
            return hit
        cls = t.__class__
        if cls is Var:
            e = env
            for _ in range(t.index - depth):
                e = e[1]
            out = value(e[0])
        elif cls is Lam:
            out = Lam(subst(t.body, env, depth + 1))
        else:
            out = App(subst(t.fn, env, depth), subst(t.arg, env, depth))
        memo[key] = out
        return out

    return value(v)


@dataclass(frozen=True)
class Converged:
    code: Code
    steps: int
    defined = True


@dataclass(frozen=True)
class OutOfFuel:
    """No value within the budget.

    ``reason`` is ``"fuel"``, ``"stuck"`` (reduction cannot continue) or
    ``"junk"`` (an operand is not a code); all three mean no value was seen.
    """

    steps: int
    reason: str = "fuel"
    defined = False


PartialValue = Union[Converged, OutOfFuel]


@functools.lru_cache(maxsize=65536)
def _run(t: Term, fuel: int) -> PartialValue:
    if t.free:
        return OutOfFuel(0, "stuck")
    split = _spine(t) if _SPINE_DEPTH[0] < _MAX_SPINE_DEPTH else None
    if split is not None and fuel > 0:
        _SPINE_DEPTH[0] += 1
        try:
            return _run_spine(*split, fuel)
        finally:
            _SPINE_DEPTH[0] -= 1
    v, steps = _machine(fuel, t=t, env=None)
    if v is None:
        return OutOfFuel(steps, "fuel")
    if v is _STUCK:
        return OutOfFuel(steps, "stuck")
    return Converged(Code(_readback(v)), steps)


# nesting of split runs; deeper ones go to the machine
_SPINE_DEPTH = [0]
_MAX_SPINE_DEPTH = 24


def _spine(t: Term):
    # (\x. body) a, with a a closed value and body built from applications,
    # x itself and closed values
    if t.__class__ is not App or t.fn.__class__ is not Lam or t.arg.free:
        return None
    if t.arg.__class__ not in (Lam, Lit):
        return None
    body = t.fn.body
    if body.__class__ is not App or not _spine_ok(body):
        return None
    return body, t.arg


def _spine_ok(t: Term) -> bool:
    if t.__class__ is App:
        return _spine_ok(t.fn) and _spine_ok(t.arg)
    if t.__class__ is Var:
        return t.index == 0
    return not t.free and t.__class__ is not App


def _run_spine(body: Term, a: Term, fuel: int) -> PartialValue:
    """The machine's run of ``(fun x -> body) a``, one application at a time.

    After the beta step the body is evaluated function first, then argument,
    exactly as the machine does, and each closed application goes through the
    cache.  Values read back to value terms, which evaluate in zero steps, so
    step counts are the machine's.
    """
    steps = 1
    _MACHINE_STEPS[0] += 1

    def ev(t):
        nonlocal steps
        if t.__class__ is Var:
            return a
        if t.__class__ is not App:
            return t
        f = ev(t.fn)
        if f is None:
            return None
        x = ev(t.arg)
        if x is None:
            return None
        r = _run(App(f, x), fuel - steps)
        steps += r.steps
        if not isinstance(r, Converged):
            ev.failure = r.reason
            return None
        return r.code.term

    ev.failure = None
    v = ev(body)
    if v is None:
        return OutOfFuel(steps, ev.failure)
    return Converged(Code(v), steps)


def evaluate(c: CodeLike, fuel: int | None = None) -> PartialValue:
    """Run a program to a weak value."""
    c = as_code(c)
    if c.is_junk:
        return OutOfFuel(0, "junk")
    return _run(c.term, fuel_ceiling() if fuel is None else fuel)


def apply(r: CodeLike, a: CodeLike, fuel: int | None = None) -> PartialValue:
    """Kleene application ``r . a``."""
    r, a = as_code(r), as_code(a)
    if r.is_junk or a.is_junk:
        return OutOfFuel(0, "junk")
    return _run(App(r.term, a.term), fuel_ceiling() if fuel is None else fuel)


def apply2(r: CodeLike, a: CodeLike, b: CodeLike, fuel: int | None = None) -> PartialValue:
    r, a, b = as_code(r), as_code(a), as_code(b)
    if r.is_junk or a.is_junk or b.is_junk:
        return OutOfFuel(0, "junk")
    return _run(App(App(r.term, a.term), b.term), fuel_ceiling() if fuel is None else fuel)


class KleeneVerdict(enum.Enum):
    EQUAL = "equal"
    DIFFERENT = "different"
    UNKNOWN = "unknown"


def kleene_eq(a: CodeLike | PartialValue, b: CodeLike | PartialValue,
              fuel: int | None = None) -> KleeneVerdict:
    """Bounded Kleene equality of two programs (or of two finished runs).

    Definitive only when both sides converge; divergence is never confirmed.
    """
    ra = a if isinstance(a, (Converged, OutOfFuel)) else evaluate(a, fuel)
    rb = b if isinstance(b, (Converged, OutOfFuel)) else evaluate(b, fuel)
    if isinstance(ra, Converged) and isinstance(rb, Converged):
        return KleeneVerdict.EQUAL if ra.code == rb.code else KleeneVerdict.DIFFERENT
    return KleeneVerdict.UNKNOWN


def smn(d: CodeLike, y: CodeLike) -> Code:
    """Specialize the first argument of ``d`` to ``y`` without running anything."""
    return Code(App(decode(d), decode(y)))


# -- numerals and combinators -------------------------------------------------

def numeral(n: int) -> Code:
    return Code(Lit(n))


def numeral_inv(c: CodeLike) -> int:
    c = as_code(c)
    if isinstance(c.term, Lit):
        return c.term.n
    raise NotNumeral("%r is not a numeral" % (c,))


ZERO = numeral(0)

_v = Var
I = Code(Lam(_v(0)))
K = Code(lams(2, _v(1)))
S = Code(lams(3, App(App(_v(2), _v(0)), App(_v(1), _v(0)))))
B = Code(lams(3, App(_v(2), App(_v(1), _v(0)))))
# Curry's Y loops under call-by-value; Z is its eta-expanded form.
_zhalf = Lam(App(_v(1), Lam(App(App(_v(1), _v(1)), _v(0)))))
Z = Code(Lam(App(_zhalf, _zhalf)))
Y = Z
PAIR = Code(lams(3, App(App(_v(0), _v(2)), _v(1))))
FST = Code(Lam(App(_v(0), lams(2, _v(1)))))
SND = Code(Lam(App(_v(0), lams(2, _v(0)))))
_selfapp = Lam(App(_v(0), _v(0)))
OMEGA = Code(App(_selfapp, _selfapp))
del _v

_COMBINATORS = {
    "I": I, "K": K, "S": S, "B": B, "Y": Y, "Z": Z,
    "church_pair": PAIR, "church_fst": FST, "church_snd": SND,
    "omega": OMEGA, "succ": Code(SUCC), "pred": Code(PRED),
    "ifz": Code(IFZ), "clock": Code(CLOCK),
}


def combinator(name: str) -> Code:
    try:
        return _COMBINATORS[name]
    except KeyError:
        raise KeyError("unknown combinator %r" % name) from None


def pair_value(a: CodeLike, b: CodeLike) -> Code:
    """The value of ``church_pair . a . b`` for value codes ``a``, ``b``."""
    return Code(Lam(App(App(Var(0), decode(a)), decode(b))))


def split_pair(c: CodeLike) -> tuple[Code, Code] | None:
    t = as_code(c).term
    if (isinstance(t, Lam) and isinstance(t.body, App) and isinstance(t.body.fn, App)
            and t.body.fn.fn is Var(0) and t.body.fn.arg.free == 0 and t.body.arg.free == 0):
        return Code(t.body.fn.arg), Code(t.body.arg)
    return None


def thunk(c: CodeLike) -> Code:
    """``\\z. c``: a computation that returns the value ``c`` when forced."""
    return Code(Lam(decode(c)))


def is_value(c: CodeLike) -> bool:
    t = as_code(c).term
    if t is None or t.free:
        return False
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    if not args:
        return isinstance(t, (Lam, Lit, Prim))
    return (isinstance(t, Prim) and len(args) < t.arity
            and all(is_value(Code(a)) for a in args))
