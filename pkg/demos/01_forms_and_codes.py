# Linear forms as columns of a code.
#
# A collection of linear forms in k variables is the same thing as a k x n
# matrix whose columns are the coefficient vectors.  That matrix generates a
# linear code, and its weight hierarchy says how many forms can vanish together.

from pathlib import Path

from foldideals.arrangement import max_multiplicity, singular_locus
from foldideals.cli import read_input
from foldideals.codes import generating_matrix, hamming_hierarchy, min_weight_points
from foldideals.exactalg import GF
from foldideals.forms import FormCollection, format_form, restrict

DATA = Path(__file__).parent / "data" / "arrangement.json"

arr, labels = read_input(str(DATA))
print("forms:", arr)
print("generating matrix:")
for row in generating_matrix(arr).tolist():
    print("   ", [str(x) for x in row])

# d_r = n - (most columns spanning a space of dimension k - r)
profile = hamming_hierarchy(arr)
print("\nn =", profile.n, " dim =", profile.k_dim, " d =", profile.d[1:])

# Minimum-weight codewords are points where n - d_1 forms vanish at once.
for q in min_weight_points(arr):
    print("min-weight point", q, "kills", profile.n - profile.min_distance, "forms")

# For a line arrangement that number is the largest number of concurrent lines.
print("\nsingular points:")
for q, mult in singular_locus(arr).points:
    print(f"   {q}  on {mult} lines")
print("m =", max_multiplicity(arr), "= n - d_1 =", profile.n - profile.min_distance)

# Restricting to one line gives a multiset of forms in the two remaining
# variables.  Proportional images are kept as repeats.
for name, rest in [("y", "xz"), ("z", "xy")]:
    bar = restrict(arr, arr.index_of(tuple(int(v == name) for v in "xyz")))
    shown = ", ".join(format_form(f.coeffs, rest) for f in bar)
    print(f"\nmodulo {name}: ({shown})  class sizes {sorted(bar.classes().values())}", end="")
print()

# The same code over a small prime field.  Here d_1 can also be read off
# by listing every codeword.
small = FormCollection.parse(GF(3), "x, y, z, x+y, x+y+z")
print("\nover GF(3):", small, " d =", hamming_hierarchy(small).d[1:])
