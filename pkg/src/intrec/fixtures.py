"""Shipped probe material: finite assemblies, arrow families, program corpora.

Data files live in the package's ``data`` directory and are read with
``importlib.resources``; ``data_path`` gives their names on disk for the
command line.
"""

from __future__ import annotations

import functools
from importlib import resources

from .asm import ASM, AsmArrow, Finite, Lifted, NAT, _ident, code_of
from .kernel import Code, I
from .pcat import ProbeSet

__all__ = [
    "F1", "F2", "F3", "F4", "FIXTURES", "fixtures_up_to", "f4_family", "finite_arrows",
    "finite_probes", "parse_probe_spec", "separation_pair", "read_data", "data_path",
    "smn_corpus", "lindenbaum_corpus", "TRANSFORMERS", "transformer_source",
]

F1 = Finite.of("F1", {"a": 0})
F2 = Finite.of("F2", {"p": 0, "q": [1, 2]})
F3 = Finite.of("F3", {"x": 0, "y": 1, "z": [2, 3]})
F4 = Finite.of("F4", {"a": 0, "b": 1, "c": 2, "d": 3})
FIXTURES = (F1, F2, F3, F4)


def fixtures_up_to(n: int) -> list[Finite]:
    return [f for f in FIXTURES if len(f.elements()) <= n]


@functools.lru_cache(maxsize=None)
def f4_family() -> tuple[AsmArrow, ...]:
    """A fixed family of arrows touching F4.

    All 4^4 endomaps of F4 would swamp the triple-quantified laws, so F4 gets
    its identity, constants, a 4-cycle, a transposition, a retraction onto
    {a, b}, and one map to and from each smaller fixture.
    """
    a, b, c, d = F4.elements()
    fa = ASM.finite_arrow
    out = [fa(F4, F4, {x: x for x in (a, b, c, d)}, "F4:id")]
    out += [fa(F4, F4, {x: k for x in (a, b, c, d)}, "F4:const_" + k) for k in (a, b, c, d)]
    out.append(fa(F4, F4, {a: b, b: c, c: d, d: a}, "F4:cycle"))
    out.append(fa(F4, F4, {a: b, b: a, c: c, d: d}, "F4:swap"))
    out.append(fa(F4, F4, {a: a, b: b, c: a, d: b}, "F4:retract"))
    out.append(fa(F4, F1, {x: "a" for x in (a, b, c, d)}, "F4>F1"))
    out.append(fa(F4, F2, {a: "p", b: "q", c: "p", d: "q"}, "F4>F2"))
    out.append(fa(F4, F3, {a: "x", b: "y", c: "z", d: "z"}, "F4>F3"))
    out.append(fa(F1, F4, {"a": c}, "F1>F4"))
    out.append(fa(F2, F4, {"p": a, "q": d}, "F2>F4"))
    out.append(fa(F3, F4, {"x": a, "y": b, "z": c}, "F3>F4"))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def finite_arrows(n: int) -> tuple[AsmArrow, ...]:
    """Every arrow among fixtures of size at most ``min(n, 3)``, plus the F4
    family when ``n >= 4``."""
    small = [f for f in fixtures_up_to(min(n, 3))]
    out = [g for x in small for y in small for g in ASM.all_finite_arrows(x, y)]
    if n >= 4:
        out += f4_family()
    return tuple(out)


def finite_probes(n: int = 4, fuel: int | None = None) -> ProbeSet:
    return ProbeSet(fixtures_up_to(n), list(finite_arrows(n)), fuel=fuel)


def parse_probe_spec(spec: str) -> int:
    """``finite:N`` with ``1 <= N <= 4``."""
    kind, _, size = spec.partition(":")
    if kind != "finite" or not size.isdigit() or not 1 <= int(size) <= 4:
        raise ValueError("probe spec must be finite:1 .. finite:4, got %r" % spec)
    return int(size)


def separation_pair() -> tuple[AsmArrow, AsmArrow]:
    """Two trackers of the identity on lifted naturals.

    One passes the thunk through; the other wraps it in a predecessor of a
    successor, which computes the same number but is a different program.
    """
    nat_bot = Lifted(NAT)
    f = ASM.arrow(nat_bot, nat_bot, _ident, I, name="id_I")
    g = ASM.arrow(nat_bot, nat_bot, _ident, code_of("fun r z -> pred (succ (r z))"), name="id_predsucc")
    return f, g


# -- data files -----------------------------------------------------------------

def read_data(name: str) -> str:
    return resources.files("intrec").joinpath("data", name).read_text()


def data_path(name: str) -> str:
    return str(resources.files("intrec").joinpath("data", name))


def _lines(text: str, comment: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split(comment, 1)[0].strip()
        if line:
            out.append(line)
    return out


def smn_corpus() -> list[tuple[str, Code]]:
    """Two-argument programs ``(source, code)``."""
    return [(src, code_of(src)) for src in _lines(read_data("smn_corpus.lam"), "--")]


def lindenbaum_corpus():
    from .lindenbaum import parse_corpus
    return parse_corpus(read_data("lindenbaum_corpus.sexp"))


TRANSFORMERS = ("factorial.lam", "double.lam")


def transformer_source(name: str) -> str:
    return "\n".join(_lines(read_data(name), "--"))
