# Graded Betti numbers three ways: closed forms, the addition-deletion
# recursion, and Koszul homology as an independent check.

from foldideals.betti import betti_k2, betti_k3, betti_m_power, hilbert_consistency
from foldideals.exactalg import QQ
from foldideals.forms import Arrangement, FormCollection, format_form
from foldideals.ideals import FoldIdeal, m_power
from foldideals.oracle import is_linear, koszul_betti, regularity

# Two variables: everything is determined by how often each direction repeats.
for text, a in [("z, z, x+z, x, x-z", 3), ("x, x, x, y, y", 4)]:
    sigma = FormCollection.parse(QQ, text, variables="xz" if "z" in text else "xy")
    print(f"({text}) at a={a}: {betti_k2(sigma, a).values}")

# Powers of the maximal ideal in K[x, y, z].
for a in range(1, 5):
    table = koszul_betti(m_power(QQ, 3, a))
    print(f"m^{a}: formula {betti_m_power(a).values}  Koszul {table.linear_strand(a)}")

# Line arrangements: delete a line, restrict to it, and combine.
arr = Arrangement.of(FormCollection.parse(QQ, "x, x-z, x+z, z, y, y-z"))
triple, trace = betti_k3(arr, 3)
print("\nI_3 of the arrangement:", triple.values)
for step in trace.steps:
    extra = ""
    if step.rule == "deletion":
        extra = f" deleted {format_form(step.deleted)}, restriction classes {step.restricted}," \
                f" {step.sub_deleted.values} + {step.sub_restricted.values}"
    print(f"   {step.rule:15s} a={step.a} n={step.n} -> {step.result.values}{extra}")
print("trace replays to", trace.replay().values)

# The oracle never looks at the recursion.
for a in range(1, arr.n + 1):
    ideal = FoldIdeal(arr, a)
    table = koszul_betti(ideal)
    rec = betti_k3(arr, a)[0]
    print(f"a={a}: recursion {rec.values}  Koszul {table.linear_strand(a)}  linear={is_linear(table, a)}"
          f"  reg={regularity(table)}  HF ok={hilbert_consistency(rec, ideal, a + 3)}")

# Every deletion order gives the same answer.
print("\npolicies:", {p: betti_k3(arr, 4, policy=p)[0].values for p in ("first", "last", "maxpoint", "random:7")})
