"""Assemblies, tracked maps, and the box exposure that remembers the tracker."""

# %% Two arrows on lifted naturals with the same function and different code.
from intrec.asm import ASM
from intrec.exposure import BOX, evaluator, intensional_eq, quoter
from intrec.fixtures import finite_probes, separation_pair
from intrec.exposure import check_cartesian_exposure, check_comonadic, check_exposure_axioms

f, g = separation_pair()
print(f, "vs", g)
print("extensionally equal:", ASM.hom_eq(f, g).value)
print("intensionally equal:", intensional_eq(BOX, f, g).verdict.value)

# %% Box a few arrows by hand: a boxed arrow carries the tracker's output along.
probes = finite_probes(2)
h = probes.arrows[3]
for xa in BOX.on_object(h.dom).elements():
    print(xa, "->", BOX.on_arrow(h).fn(xa))

# %% The laws, exhaustively on fixtures of size at most 3.
probes = finite_probes(3)
for rep in (check_exposure_axioms(BOX, probes), check_cartesian_exposure(BOX, probes),
            check_comonadic(BOX, evaluator(), quoter(), probes)):
    print(rep.suite, rep.verdict.value, sum(law.checked for law in rep.laws), "instances")
