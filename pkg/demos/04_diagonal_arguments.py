"""Goedel, Tarski and Rice, run on assemblies."""

# %% The Goedel sentence is neither true nor false: its realizer never answers.
from intrec import kernel, suites

with kernel.fuel(10**6):
    g = suites.godel()
print(g.data["classification"], "| halted:", g.data["halted"], "| steps:", g.data["steps_used"])
for line in g.data["chain"]:
    print("  ", line)

# %% Negation has a fixed point, and it is the same diverging point.
t = suites.tarski()
print("fixed point of not:", t.data["point"])

# %% A time-truncated halting test is refuted twice, once per route.
from intrec.logic import NEG_PROGRAM, POS_PROGRAM, TRUNCATED_HALTING

r = suites.rice(TRUNCATED_HALTING, POS_PROGRAM, NEG_PROGRAM)
for path in ("efp", "srt"):
    d = r.data[path]
    print(path, d["status"], "- decider says", d["decider_verdict"], "but outputs are", d["evidence"])
