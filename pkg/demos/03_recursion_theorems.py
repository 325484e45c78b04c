"""Fixed points of programs: the two recursion theorems and the diagonal engine."""

# %% A quine: a program that ignores its input and returns its own code.
from intrec import kernel
from intrec.asm import NAT_BOT_NAT, ASM
from intrec.exposure import BOX, quoter
from intrec.fixpoint import build_box_wps, frt, intensional_fp, srt, transformer_arrow
from intrec.fixtures import transformer_source
from intrec.kernel import numeral
from intrec.report import code_summary
from intrec.surface import compile as compile_src

e = srt(compile_src("fun e y -> e"))
print("quine:", code_summary(e)["log2_value"], "bits,", code_summary(e)["nodes"], "nodes")
print(all(kernel.apply(e, numeral(y)).code == e for y in (0, 1, 2, 5, 10)))

# %% The first recursion theorem finds factorial from its defining functional.
functional = transformer_source("factorial.lam")
fac = frt(compile_src(functional))
print(functional)
print([kernel.numeral_inv(kernel.apply(fac, numeral(n)).code) for n in range(7)])

# %% The same functional as a map on boxed programs, fed to the diagonal engine.
t = transformer_arrow(functional)
wit = intensional_fp(ASM, BOX, quoter(), build_box_wps(NAT_BOT_NAT), t)
for law in wit.transcript.laws:
    print("%-16s %-6s %s" % (law.name, law.verdict.value, law.statement))
y = wit.point.fn("*")
print([NAT_BOT_NAT.at(y, n) for n in range(6)])
