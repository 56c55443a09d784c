# Products of a forms and the ideals they generate.
#
# I_a is generated by all products of a members of the collection, picked by
# position.  Everything is computed degree by degree as exact linear algebra
# on the monomial basis.

from foldideals.codes import hamming_hierarchy, min_weight_points
from foldideals.exactalg import QQ
from foldideals.forms import Arrangement, FormCollection, delete
from foldideals.ideals import (
    FoldIdeal,
    colon_piece,
    hilbert_function,
    point_power_piece,
    points_ideal_piece,
    sat_structure,
    saturation_piece,
)
from foldideals.polys import dim_piece

arr = Arrangement.of(FormCollection.parse(QQ, "x, x-z, x+z, z, y, y-z"))
n = arr.n
d1 = hamming_hierarchy(arr).min_distance

for a in range(1, n + 1):
    ideal = FoldIdeal(arr, a)
    hf = [hilbert_function(ideal, j) for j in range(a + 3)]
    print(f"a={a}: {len(ideal.generators):3d} generators, Hilbert function {hf}")

# Up to a = d_1 the ideal is a power of the maximal ideal: nothing is missing.
print("\nI_2 fills R_2?", FoldIdeal(arr, 2).piece_dim(2) == dim_piece(3, 2))

# Colon by one of the forms removes that form and lowers a by one.
a = d1 + 1
big = FoldIdeal(arr, a)
for i, ell in enumerate(arr):
    small = FoldIdeal(delete(arr, i), a - 1)
    lhs = [colon_piece(big, ell, j) for j in range(a + 3)]
    rhs = [small.piece_dim(j) for j in range(a + 3)]
    print(f"(I_{a} : {ell}) vs I_{a - 1} of the rest: {lhs} {'==' if lhs == rhs else '!='} {rhs}")

# Saturation: what the ideal looks like once the irrelevant part is dropped.
# For a = d_1 + 1 it is the ideal of the minimum-weight points.
pts = min_weight_points(arr)
print("\nsaturation of I_3:", [saturation_piece(big, j) for j in range(6)])
print("ideal of", [str(q) for q in pts], ":", [points_ideal_piece(pts, j, QQ) for j in range(6)])

# More generally I_{n-b} saturates to an intersection of powers of the ideals
# of the singular points, with exponent (lines through the point) - b.
for b in (1, 2, 3):
    desc = sat_structure(arr, b)
    ideal = FoldIdeal(arr, n - b)
    sat = [saturation_piece(ideal, j) for j in range(n - b + 2)]
    pp = [point_power_piece(desc, j, QQ) for j in range(n - b + 2)]
    print(f"b={b}: exponents {[d.exponent for d in desc]}  sat {sat}  points {pp}")
