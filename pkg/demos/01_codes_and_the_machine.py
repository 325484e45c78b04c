"""Programs as numbers, and running them.

Run with ``python demos/01_codes_and_the_machine.py``.
"""

# %% Every term has a number, and every number decodes to at most one term.
from intrec import kernel
from intrec.kernel import Lam, Lit, Var, decode, encode, numeral
from intrec.surface import compile as compile_src

print("code of fun x -> x:", encode(Lam(Var(0))).value)
print("code of the literal 0:", encode(Lit(0)).value)
for n in (1, 6, 12345):
    try:
        print(n, "decodes to", kernel.pretty(decode(n)))
    except kernel.JunkError as e:
        print(n, "->", e)

# %% Application is partial. Omega never returns; we only ever see the fuel run out.
print(kernel.apply(kernel.K, numeral(1)))
print(kernel.apply(kernel.OMEGA, numeral(0), fuel=10_000))

# %% Surface syntax compiles to codes. Recursion goes through Z.
fac = compile_src("let rec f n = ifz n then 1 else mul n (f (pred n)) in f")
print([kernel.numeral_inv(kernel.apply(fac, numeral(n)).code) for n in range(8)])

# %% s-m-n builds a specialized program without running anything.
d = compile_src("fun y x -> add y x")
before = kernel.machine_steps()
plus5 = kernel.smn(d, numeral(5))
print("steps spent building:", kernel.machine_steps() - before)
print("plus5 . 10 =", kernel.numeral_inv(kernel.apply(plus5, numeral(10)).code))

# %% Bounded equality answers equal, different, or unknown.
print(kernel.kleene_eq(numeral(1), numeral(2)))
print(kernel.kleene_eq(kernel.Code(kernel.App(kernel.OMEGA.term, Lit(0))), numeral(1), fuel=10_000))
