"""A Lindenbaum P-category for quantifier-free arithmetic, and its exposure.

Syntax trees are shared by terms and formulas::

    tag  node          tag  node
    0    Var i         5    Sub(a, b)
    1    Num n         6    Eq(s, t)
    2    S t           7    Not p
    3    Add(s, t)     8    And(p, q)
    4    Mul(s, t)     9    Or(p, q)

and numbered by ``n = 10 * payload + tag``, where the payload of a binary
node is the Cantor pair of its children's numbers.  This is a bijection
between trees and naturals, so every number decodes to a tree, though not
always to a well-sorted one.

``sub(a, b)`` replaces variable 0 of the tree numbered ``a`` by the tree
numbered ``b`` and lowers every other variable by one.  It is a function
symbol of the theory whose meaning is computed on numbers, so
``sub(#phi, #t) = #phi(t)`` holds by evaluation.

Objects are words over ``A`` and ``2``; the empty word is the terminal
object.  An arrow ``G -> D`` is a tuple of trees, one per letter of ``D``,
whose variable ``i`` has sort ``G[i]``.  Composition is simultaneous
substitution.  Equality of arrows is equality in the standard model, decided
by evaluation for closed trees and by instantiation on probes for open
ones.

The exposure sends both ``A`` and ``2`` to ``A`` and a component ``c`` over
``n`` variables to ``sub(...sub(#c, x0)..., x(n-1))``, or to the numeral
``#c`` when ``n = 0``.  Open A-variables are instantiated at numbers whose
tree is closed: at other numbers nested ``sub`` may capture variables of
the inserted tree.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .exposure import Exposure, check_exposure_axioms
from .kernel import pair, unpair
from .pcat import LawReport, LawResult, PCategory, ProbeSet, Verdict

__all__ = [
    "Node", "var", "num", "succ", "add", "mul", "sub", "eq", "neg", "conj", "disj",
    "IllSorted", "ParseError", "godel_number", "decode", "parse", "parse_corpus", "to_sexpr",
    "free_vars", "substitute", "pop", "sort_of", "context_of", "is_ground",
    "Theory", "toy_theory", "Judgement", "LindArrow", "LindenbaumCategory",
    "LindenbaumExposure", "lindenbaum_category", "lindenbaum_exposure",
    "A", "TWO", "corpus_arrows", "probe_set", "check_sub_law", "check_injectivity",
    "numbering_diagnostic", "check_fixpoint_pair", "check_corpus",
]

A, TWO = "A", "2"
VAR, NUM, S, ADD, MUL, SUB, EQ, NOT, AND, OR = range(10)
_ARITY = {VAR: 0, NUM: 0, S: 1, ADD: 2, MUL: 2, SUB: 2, EQ: 2, NOT: 1, AND: 2, OR: 2}
_TERM_TAGS = {VAR, NUM, S, ADD, MUL, SUB}


class IllSorted(ValueError):
    """A tree used at a sort it does not have."""


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    tag: int
    args: tuple = ()
    value: int = 0  # variable index or numeral

    def __repr__(self):
        return to_sexpr(self)


def var(i: int) -> Node:
    return Node(VAR, (), i)


def num(n: int) -> Node:
    return Node(NUM, (), n)


def succ(t):
    return Node(S, (t,))


def add(s, t):
    return Node(ADD, (s, t))


def mul(s, t):
    return Node(MUL, (s, t))


def sub(s, t):
    return Node(SUB, (s, t))


def eq(s, t):
    return Node(EQ, (s, t))


def neg(p):
    return Node(NOT, (p,))


def conj(p, q):
    return Node(AND, (p, q))


def disj(p, q):
    return Node(OR, (p, q))


# -- numbering ----------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def godel_number(x: Node) -> int:
    if x.tag in (VAR, NUM):
        payload = x.value
    elif len(x.args) == 1:
        payload = godel_number(x.args[0])
    else:
        payload = pair(godel_number(x.args[0]), godel_number(x.args[1]))
    return 10 * payload + x.tag


@lru_cache(maxsize=1 << 16)
def decode(n: int) -> Node:
    if n < 0:
        raise ValueError("codes are natural numbers")
    payload, tag = divmod(n, 10)
    if tag in (VAR, NUM):
        return Node(tag, (), payload)
    if _ARITY[tag] == 1:
        return Node(tag, (decode(payload),))
    a, b = unpair(payload)
    return Node(tag, (decode(a), decode(b)))


# -- s-expressions --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_HEADS = {"S": S, "succ": S, "+": ADD, "*": MUL, "sub": SUB, "=": EQ,
          "not": NOT, "and": AND, "or": OR}
_NAMES = {S: "S", ADD: "+", MUL: "*", SUB: "sub", EQ: "=", NOT: "not", AND: "and", OR: "or"}


def _tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("cannot read %r" % text[pos:])
        out.append(m.group(0).strip())
        pos = m.end()
    return [t for t in out if t]


def parse(text: str) -> Node:
    """Read one tree.

    Atoms are numerals, variables ``x0, x1, ...``, ``true`` and ``false``;
    lists are ``(S t) (+ s t) (* s t) (sub s t) (= s t) (not p) (and p q)
    (or p q)`` and ``(code x)``, the numeral of ``x``'s number.
    """
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty input")
    node, rest = _read(toks, 0)
    if rest != len(toks):
        raise ParseError("trailing input after %s" % to_sexpr(node))
    return node


def _read(toks: list[str], i: int) -> tuple[Node, int]:
    if i >= len(toks):
        raise ParseError("unexpected end of input")
    tok = toks[i]
    if tok == ")":
        raise ParseError("unexpected ')'")
    if tok != "(":
        return _atom(tok), i + 1
    if i + 1 >= len(toks):
        raise ParseError("unexpected end of input")
    head = toks[i + 1]
    args, j = [], i + 2
    while j < len(toks) and toks[j] != ")":
        a, j = _read(toks, j)
        args.append(a)
    if j >= len(toks):
        raise ParseError("missing ')'")
    if head == "code":
        if len(args) != 1:
            raise ParseError("code takes one argument")
        return num(godel_number(args[0])), j + 1
    if head not in _HEADS:
        raise ParseError("unknown operator %r" % head)
    tag = _HEADS[head]
    if len(args) != _ARITY[tag]:
        raise ParseError("%s takes %d arguments, got %d" % (head, _ARITY[tag], len(args)))
    return Node(tag, tuple(args)), j + 1


def _atom(tok: str) -> Node:
    if tok.isdigit():
        return num(int(tok))
    if re.fullmatch(r"x\d+", tok):
        return var(int(tok[1:]))
    if tok == "true":
        return eq(num(0), num(0))
    if tok == "false":
        return eq(num(0), num(1))
    raise ParseError("unknown atom %r" % tok)


def to_sexpr(x: Node) -> str:
    if x.tag == VAR:
        return "x%d" % x.value
    if x.tag == NUM:
        return str(x.value)
    return "(%s %s)" % (_NAMES[x.tag], " ".join(to_sexpr(a) for a in x.args))


def parse_corpus(text: str) -> list[Node]:
    """One tree per line; ``;`` starts a comment."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split(";", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse(line))
        except ParseError as e:
            raise ParseError("line %d: %s" % (lineno, e)) from None
    return out


# -- syntax operations ----------------------------------------------------------

def free_vars(x: Node) -> set[int]:
    if x.tag == VAR:
        return {x.value}
    out: set[int] = set()
    for a in x.args:
        out |= free_vars(a)
    return out


def is_ground(x: Node) -> bool:
    return not free_vars(x)


def substitute(x: Node, values: Sequence[Node]) -> Node:
    """Replace variable ``i`` by ``values[i]`` simultaneously."""
    if x.tag == VAR:
        return values[x.value] if x.value < len(values) else x
    if not x.args:
        return x
    return Node(x.tag, tuple(substitute(a, values) for a in x.args))


def pop(x: Node, u: Node) -> Node:
    """``x[u/x0]`` with every other variable lowered by one."""
    if x.tag == VAR:
        return u if x.value == 0 else var(x.value - 1)
    if not x.args:
        return x
    return Node(x.tag, tuple(pop(a, u) for a in x.args))


def sub_value(a: int, b: int) -> int:
    return godel_number(pop(decode(a), decode(b)))


def sort_of(x: Node, ctx: Sequence[str]) -> str:
    """``A`` or ``2``; raises IllSorted."""
    if x.tag == VAR:
        if x.value >= len(ctx):
            raise IllSorted("x%d is outside a context of length %d" % (x.value, len(ctx)))
        return ctx[x.value]
    if x.tag == NUM:
        return A
    want = A if x.tag in _TERM_TAGS or x.tag == EQ else TWO
    for a in x.args:
        if sort_of(a, ctx) != want:
            raise IllSorted("%s expects %s arguments" % (_NAMES[x.tag], want))
    return A if x.tag in _TERM_TAGS else TWO


def context_of(x: Node) -> tuple[str, ...]:
    """The shortest context in which ``x`` is well sorted."""
    sorts: dict[int, str] = {}

    def walk(y: Node, want: str):
        if y.tag == VAR:
            if sorts.setdefault(y.value, want) != want:
                raise IllSorted("x%d is used at both sorts" % y.value)
            return
        if y.tag == NUM:
            if want != A:
                raise IllSorted("numeral used as a formula")
            return
        have = A if y.tag in _TERM_TAGS else TWO
        if have != want:
            raise IllSorted("%s used where %s is expected" % (to_sexpr(y), want))
        inner = A if y.tag in _TERM_TAGS or y.tag == EQ else TWO
        for a in y.args:
            walk(a, inner)

    top = A if x.tag in _TERM_TAGS else TWO
    if x.tag == VAR:
        top = A
    walk(x, top)
    n = max(sorts) + 1 if sorts else 0
    # unused positions default to A
    return tuple(sorts.get(i, A) for i in range(n))


# -- the theory -----------------------------------------------------------------

def _ground_codes(count: int) -> tuple[int, ...]:
    out, n = [], 0
    while len(out) < count:
        if is_ground(decode(n)):
            out.append(n)
        n += 1
    return tuple(out)


@dataclass(frozen=True)
class Judgement:
    verdict: Verdict
    basis: str  # "evaluation" or "probes"


@dataclass
class Theory:
    """Quantifier-free arithmetic, decided in the standard model.

    Closed equations and equivalences are settled by evaluation.  Open ones
    are instantiated on probes: A-variables at ``a_probes`` (ground codes,
    see the module notes), 2-variables at both truth values.  A failing
    instance is a counterexample in the standard model and so a definite
    Fail; agreement on every probe is reported as Holds on basis "probes".
    """

    a_probes: tuple[int, ...] = field(default_factory=lambda: _ground_codes(21))
    max_instances: int = 64
    name: str = "toy-arithmetic"

    def godel_number(self, x: Node) -> int:
        return godel_number(x)

    def evaluate(self, x: Node, env: Sequence = ()):
        t = x.tag
        if t == VAR:
            if x.value >= len(env):
                raise IllSorted("x%d is unbound" % x.value)
            return env[x.value]
        if t == NUM:
            return x.value
        if t == S:
            return self._nat(x.args[0], env) + 1
        if t == ADD:
            return self._nat(x.args[0], env) + self._nat(x.args[1], env)
        if t == MUL:
            return self._nat(x.args[0], env) * self._nat(x.args[1], env)
        if t == SUB:
            return sub_value(self._nat(x.args[0], env), self._nat(x.args[1], env))
        if t == EQ:
            return self._nat(x.args[0], env) == self._nat(x.args[1], env)
        if t == NOT:
            return not self._bool(x.args[0], env)
        if t == AND:
            return self._bool(x.args[0], env) and self._bool(x.args[1], env)
        return self._bool(x.args[0], env) or self._bool(x.args[1], env)

    def _nat(self, x, env) -> int:
        v = self.evaluate(x, env)
        if isinstance(v, bool):
            raise IllSorted("%s is a formula, not a term" % to_sexpr(x))
        return v

    def _bool(self, x, env) -> bool:
        v = self.evaluate(x, env)
        if not isinstance(v, bool):
            raise IllSorted("%s is a term, not a formula" % to_sexpr(x))
        return v

    def instances(self, ctx: Sequence[str]) -> list[tuple]:
        """Probe environments for a context, capped deterministically."""
        n_a = sum(1 for s in ctx if s == A)
        per_axis = len(self.a_probes)
        while n_a and per_axis > 1 and per_axis ** n_a > self.max_instances:
            per_axis -= 1
        axes = [self.a_probes[:per_axis] if s == A else (True, False) for s in ctx]
        return list(itertools.product(*axes))

    def _compare(self, s: Node, t: Node, ctx: Sequence[str]) -> Judgement:
        if not ctx or (is_ground(s) and is_ground(t)):
            return Judgement(Verdict.of(self.evaluate(s) == self.evaluate(t)), "evaluation")
        for env in self.instances(ctx):
            if self.evaluate(s, env) != self.evaluate(t, env):
                return Judgement(Verdict.FAILS, "probes")
        return Judgement(Verdict.HOLDS, "probes")

    def provable_eq(self, s: Node, t: Node, ctx: Sequence[str] | None = None) -> Judgement:
        ctx = ctx if ctx is not None else _join(context_of(s), context_of(t))
        if sort_of(s, ctx) != A or sort_of(t, ctx) != A:
            raise IllSorted("provable_eq compares terms")
        return self._compare(s, t, ctx)

    def provable_iff(self, p: Node, q: Node, ctx: Sequence[str] | None = None) -> Judgement:
        ctx = ctx if ctx is not None else _join(context_of(p), context_of(q))
        if sort_of(p, ctx) != TWO or sort_of(q, ctx) != TWO:
            raise IllSorted("provable_iff compares formulas")
        return self._compare(p, q, ctx)

    def sub_term(self, phi: Node, t: Node) -> Node:
        """The theory's term ``sub(#phi, #t)``."""
        return sub(num(godel_number(phi)), num(godel_number(t)))


def _join(c1: tuple, c2: tuple) -> tuple:
    long, short = (c1, c2) if len(c1) >= len(c2) else (c2, c1)
    if long[:len(short)] != short:
        raise IllSorted("contexts %s and %s disagree" % ("".join(c1), "".join(c2)))
    return long


def toy_theory(**kw) -> Theory:
    return Theory(**kw)


# -- the P-category -------------------------------------------------------------

@dataclass(frozen=True)
class LindArrow:
    dom: tuple
    cod: tuple
    comps: tuple
    name: str | None = None

    def __repr__(self):
        body = ", ".join(to_sexpr(c) for c in self.comps)
        return "%s:%s->%s" % (self.name or "<%s>" % body, _word(self.dom), _word(self.cod))


def _word(w: tuple) -> str:
    return "x".join(w) if w else "1"


class LindenbaumCategory(PCategory):
    name = "Lindenbaum"

    def __init__(self, theory: Theory):
        self.theory = theory

    def arrow(self, dom: Iterable[str], cod: Iterable[str], comps: Iterable[Node], name=None) -> LindArrow:
        dom, cod, comps = tuple(dom), tuple(cod), tuple(comps)
        if len(comps) != len(cod):
            raise IllSorted("%d components for a codomain of length %d" % (len(comps), len(cod)))
        for c, s in zip(comps, cod):
            if sort_of(c, dom) != s:
                raise IllSorted("%s does not have sort %s" % (to_sexpr(c), s))
        return LindArrow(dom, cod, comps, name)

    def of(self, x: Node | str, dom: Iterable[str] | None = None, name=None) -> LindArrow:
        """A single tree as an arrow out of its own context."""
        x = parse(x) if isinstance(x, str) else x
        ctx = tuple(dom) if dom is not None else context_of(x)
        return self.arrow(ctx, (sort_of(x, ctx),), (x,), name)

    def identity(self, a):
        a = tuple(a)
        return LindArrow(a, a, tuple(var(i) for i in range(len(a))), "id")

    def compose(self, g: LindArrow, f: LindArrow) -> LindArrow:
        if g.dom != f.cod:
            raise IllSorted("cannot compose %r after %r" % (g, f))
        return LindArrow(f.dom, g.cod, tuple(substitute(c, f.comps) for c in g.comps))

    def composable(self, g, f) -> bool:
        return g.dom == f.cod

    def hom_eq(self, f: LindArrow, g: LindArrow) -> Verdict:
        if (f.dom, f.cod) != (g.dom, g.cod):
            return Verdict.FAILS
        v = Verdict.HOLDS
        for s, t, srt in zip(f.comps, g.comps, f.cod):
            judge = self.theory.provable_eq if srt == A else self.theory.provable_iff
            v = v & judge(s, t, f.dom).verdict
            if v is Verdict.FAILS:
                break
        return v

    def well_defined(self, f: LindArrow) -> Verdict:
        try:
            self.arrow(f.dom, f.cod, f.comps)
        except IllSorted:
            return Verdict.FAILS
        return Verdict.HOLDS

    def terminal(self):
        return ()

    def product(self, a, b):
        return tuple(a) + tuple(b)

    def pi1(self, a, b):
        return LindArrow(tuple(a) + tuple(b), tuple(a), tuple(var(i) for i in range(len(a))), "pi1")

    def pi2(self, a, b):
        n = len(a)
        return LindArrow(tuple(a) + tuple(b), tuple(b), tuple(var(n + i) for i in range(len(b))), "pi2")

    def pairing(self, f: LindArrow, g: LindArrow) -> LindArrow:
        if f.dom != g.dom:
            raise IllSorted("pairing needs a common domain")
        return LindArrow(f.dom, f.cod + g.cod, f.comps + g.comps)

    def bang(self, a):
        return LindArrow(tuple(a), (), (), "!")

    def split_product(self, p):
        raise NotImplementedError("words have no unique split")

    def points(self, a, limit: int = 4):
        """A few closed arrows ``1 -> a``."""
        choices = {A: [num(k) for k in range(limit)], TWO: [eq(num(0), num(0)), eq(num(0), num(1))]}
        return [LindArrow((), tuple(a), cs) for cs in itertools.product(*(choices[s] for s in a))]


class LindenbaumExposure(Exposure):
    """Numbering as an exposure: a component becomes a term computing the
    number of its instances."""

    name = "Q_godel"

    def __init__(self, category: LindenbaumCategory):
        self.category = category

    def on_object(self, a):
        return tuple(A for _ in a)

    @staticmethod
    def quote_component(c: Node, n: int) -> Node:
        t = num(godel_number(c))
        for i in range(n):
            t = sub(t, var(i))
        return t

    def on_arrow(self, f: LindArrow) -> LindArrow:
        n = len(f.dom)
        return LindArrow(self.on_object(f.dom), self.on_object(f.cod),
                         tuple(self.quote_component(c, n) for c in f.comps))

    def m(self, a, b):
        return self.category.identity(self.on_object(tuple(a) + tuple(b)))

    def m0(self):
        return self.category.identity(())



def lindenbaum_category(theory: Theory | None = None) -> LindenbaumCategory:
    return LindenbaumCategory(theory or toy_theory())


def lindenbaum_exposure(theory_or_cat=None) -> LindenbaumExposure:
    cat = theory_or_cat if isinstance(theory_or_cat, LindenbaumCategory) else lindenbaum_category(theory_or_cat)
    return LindenbaumExposure(cat)


# -- corpus checks --------------------------------------------------------------

def corpus_arrows(cat: LindenbaumCategory, corpus: Sequence[Node], max_pairs: int = 24) -> list[LindArrow]:
    """Each tree as an arrow, plus pairings of trees with a common domain so
    that arrows out of products get composed."""
    arrows = [cat.of(x, name=to_sexpr(x)) for x in corpus]
    by_dom: dict[tuple, list[LindArrow]] = {}
    for f in arrows:
        by_dom.setdefault(f.dom, []).append(f)
    wanted = {g.dom for g in arrows if len(g.dom) >= 2}
    extra = []
    for fs in by_dom.values():
        for f, g in itertools.product(fs, repeat=2):
            if f.cod + g.cod in wanted and len(extra) < max_pairs:
                extra.append(cat.pairing(f, g))
    return arrows + extra


def probe_set(cat: LindenbaumCategory, corpus: Sequence[Node]) -> ProbeSet:
    arrows = corpus_arrows(cat, corpus)
    objects = sorted({f.dom for f in arrows} | {f.cod for f in arrows}, key=lambda w: (len(w), w))
    return ProbeSet(objects, arrows)


def check_sub_law(theory: Theory, corpus: Sequence[Node]) -> LawResult:
    """``sub(#phi, #t) = #phi(t)`` for every ``phi`` and every term ``t``."""
    law = LawResult("sub_law", "sub(#phi, #t) = #phi(t)")
    terms = [t for t in corpus if _is_term(t)]
    for phi in corpus:
        for t in terms:
            rhs = num(godel_number(pop(phi, t)))
            law.record(theory.provable_eq(theory.sub_term(phi, t), rhs, ()).verdict,
                       (to_sexpr(phi), to_sexpr(t)))
    return law


def _is_term(x: Node) -> bool:
    try:
        return sort_of(x, context_of(x)) == A
    except IllSorted:
        return False


def check_injectivity(corpus: Sequence[Node]) -> LawResult:
    law = LawResult("injectivity", "#x = #y implies x = y")
    seen: dict[int, Node] = {}
    for x in corpus:
        n = godel_number(x)
        law.record(Verdict.of(decode(n) == x), to_sexpr(x))
        if n in seen:
            law.record(Verdict.of(seen[n] == x), (to_sexpr(seen[n]), to_sexpr(x)))
        seen[n] = x
    return law


def numbering_diagnostic(theory: Theory, corpus: Sequence[Node]) -> list[dict]:
    """Closed corpus terms whose value is not the number of a well-sorted
    predicate: points of ``Q(2) = A`` that name no formula."""
    out = []
    for x in corpus:
        if not (_is_term(x) and is_ground(x)):
            continue
        n = theory.evaluate(x)
        tree = decode(n)
        try:
            ok = sort_of(tree, context_of(tree)) == TWO
            why = None if ok else "decodes to a term"
        except IllSorted as e:
            ok, why = False, "ill-sorted: %s" % e
        if not ok:
            shown = to_sexpr(tree)
            out.append({"point": to_sexpr(x), "value": str(n), "decodes_to": shown[:200], "reason": why})
    return out


def check_fixpoint_pair(theory: Theory, psi: Node, phi: Node) -> Judgement:
    """Is ``psi <-> phi(#psi)`` provable?  ``phi`` has its argument at x0."""
    return theory.provable_iff(psi, pop(phi, num(godel_number(psi))), ())


def check_corpus(corpus: Sequence[Node], theory: Theory | None = None) -> LawReport:
    """Exposure axioms, the sub law and injectivity on a corpus."""
    theory = theory or toy_theory()
    cat = lindenbaum_category(theory)
    q = LindenbaumExposure(cat)
    report = LawReport("lindenbaum")
    report.extend(check_exposure_axioms(q, probe_set(cat, corpus)))
    report.laws.append(check_sub_law(theory, corpus))
    report.laws.append(check_injectivity(corpus))
    return report
