"""Arithmetic syntax as a category, with numbering as its exposure."""

# %% Numbers and trees are in bijection.
from intrec.lindenbaum import (LindenbaumExposure, decode, godel_number, lindenbaum_category, parse,
                               pop, to_sexpr, toy_theory)
from intrec.fixtures import lindenbaum_corpus
from intrec import suites

for s in ("0", "(S 0)", "(+ x0 1)", "(= x0 x0)"):
    n = godel_number(parse(s))
    print("%-10s #%-8d %s" % (s, n, to_sexpr(decode(n))))

# %% sub(#phi, #t) computes the number of phi(t).
th = toy_theory()
phi, t = parse("(= (+ x0 0) x0)"), parse("(S 0)")
print(to_sexpr(pop(phi, t)), th.provable_eq(th.sub_term(phi, t), parse(str(godel_number(pop(phi, t)))), ()))

# %% Equal arrows need not be the same tree.
cat = lindenbaum_category(th)
print(cat.hom_eq(cat.of("(+ 1 1)"), cat.of("2")).value)
q = LindenbaumExposure(cat)
print(q.on_arrow(cat.of("(S x0)")))

# %% The laws on the shipped corpus.
out = suites.lindenbaum_check(lindenbaum_corpus())
for law in out.reports[0].laws:
    print("%-20s %-6s %d" % (law.name, law.verdict.value, law.checked))
print(len(out.data["not_predicate_numbers"]), "corpus points of A name no predicate")
