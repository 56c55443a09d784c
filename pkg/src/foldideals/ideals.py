"""Graded pieces of homogeneous ideals, fold-product ideals, colons and saturations.

Everything is degreewise linear algebra in monomial coordinates: the piece
I_j is a row-reduced basis inside R_j, and quotients R_j / I_j are handled
through the normal-form map onto the non-pivot monomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .arrangement import singular_locus, max_multiplicity
from .codes import ProjectivePoint
from .errors import DegreeRangeError, InputError, StabilizationError, TooLargeError
from .exactalg import FieldSpec
from .forms import Arrangement, FormCollection, LinForm
from .polys import Polynomial, dim_piece, monomials, multiply_by_variables, shift_index, substitution_matrix

MAX_PRODUCTS = 200_000


def _complement_map(field: FieldSpec, basis: np.ndarray, pivots: Sequence[int], dim: int):
    """Normal-form matrix (dim x q) of R_j onto R_j / span(basis), and the quotient monomials.

    ``basis`` must be in reduced row echelon form with the given pivots.
    """
    pivot_set = set(pivots)
    free = [c for c in range(dim) if c not in pivot_set]
    nf = field.zeros((dim, len(free)))
    for t, c in enumerate(free):
        nf[c, t] = field.one
    if free and len(pivots):
        nf[list(pivots)] = field.reduce(-basis[:, free])
    return nf, free


class HomogeneousIdeal:
    """An ideal of K[x_1..x_k] given by homogeneous generators.

    Graded pieces and derived data are computed lazily and cached; the
    generators never change after construction.
    """

    def __init__(self, field: FieldSpec, k: int, generators: Iterable[Polynomial]):
        self.field = field
        self.k = k
        gens: list[Polynomial] = []
        seen = set()
        for g in generators:
            if g.k != k:
                raise InputError("generator lives in the wrong polynomial ring")
            if not g.is_homogeneous():
                raise InputError(f"generator {g} is not homogeneous")
            if g.is_zero():
                continue
            m = g.monic()
            if m not in seen:
                seen.add(m)
                gens.append(m)
        self.generators = tuple(gens)
        by_degree: dict[int, list] = {}
        for g in gens:
            by_degree.setdefault(g.degree, []).append(g.to_vector())
        self._gens_by_degree = {d: np.array(v, dtype=field.dtype) for d, v in by_degree.items()}
        self._pieces: dict[int, tuple[np.ndarray, list[int]]] = {}
        self._nf: dict[int, tuple[np.ndarray, list[int]]] = {}
        self._colon_m: dict[tuple[int, int], np.ndarray] = {}

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return 0 in self._gens_by_degree

    @property
    def min_degree(self) -> int | None:
        return min(self._gens_by_degree) if self._gens_by_degree else None

    @property
    def max_degree(self) -> int | None:
        return max(self._gens_by_degree) if self._gens_by_degree else None

    def _piece(self, j: int) -> tuple[np.ndarray, list[int]]:
        if j in self._pieces:
            return self._pieces[j]
        field, k = self.field, self.k
        # fill the cache upwards from the last known degree
        lo = max((d for d in self._pieces if d < j), default=-1)
        prev = self._pieces[lo][0] if lo >= 0 else field.zeros((0, dim_piece(k, 0)))
        for deg in range(max(lo + 1, 0), j + 1):
            parts = []
            if deg > 0 and prev.shape[0]:
                parts.append(multiply_by_variables(field, prev, k, deg - 1))
            if deg in self._gens_by_degree:
                parts.append(self._gens_by_degree[deg])
            if parts:
                basis, piv = field.rref(np.vstack(parts))
            else:
                basis, piv = field.zeros((0, dim_piece(k, deg))), []
            self._pieces[deg] = (basis, piv)
            prev = basis
        return self._pieces[j]

    def piece(self, j: int) -> np.ndarray:
        """Row-reduced basis of I_j inside R_j."""
        if j < 0:
            return self.field.zeros((0, 0))
        return self._piece(j)[0]

    def piece_dim(self, j: int) -> int:
        if j < 0:
            return 0
        return len(self._piece(j)[1])

    def normal_form(self, j: int) -> tuple[np.ndarray, list[int]]:
        """(NF, quotient monomial indices) for R_j -> (R/I)_j."""
        if j not in self._nf:
            basis, piv = self._piece(j)
            self._nf[j] = _complement_map(self.field, basis, piv, dim_piece(self.k, j))
        return self._nf[j]

    def colon_constraints(self, power: int, j: int) -> np.ndarray:
        """Matrix C with independent columns such that (I : m^power)_j = {f : f @ C = 0}.

        x_i f lies in the degree-(j+1) subspace cut out by C' exactly when
        f @ C'[shift rows] = 0, so each extra power of m stacks k shifted
        copies of the previous constraints.
        """
        key = (power, j)
        if key in self._colon_m:
            return self._colon_m[key]
        field = self.field
        if power == 0:
            cons = self.normal_form(j)[0]
        else:
            above = self.colon_constraints(power - 1, j + 1)
            if above.shape[1] == 0:
                cons = field.zeros((dim_piece(self.k, j), 0))
            else:
                stacked = np.hstack([above[shift_index(self.k, j, v)] for v in range(self.k)])
                cons = field.rref(stacked.T)[0].T
        self._colon_m[key] = cons
        return cons

    def colon_m_power_dim(self, power: int, j: int) -> int:
        """dim (I : m^power)_j."""
        return dim_piece(self.k, j) - self.colon_constraints(power, j).shape[1]

    def __repr__(self):
        return f"HomogeneousIdeal({self.field}, k={self.k}, {len(self.generators)} generators)"


class FoldIdeal(HomogeneousIdeal):
    """I_a(sigma): the ideal generated by the products of a distinct members of sigma.

    I_0 is the unit ideal and I_a is zero for a > n.
    """

    def __init__(self, source: FormCollection, a: int):
        if a < 0:
            raise DegreeRangeError("the fold degree must be nonnegative")
        self.source = source
        self.a = a
        super().__init__(source.field, source.k, _fold_products(source, a))

    def __repr__(self):
        return f"FoldIdeal(a={self.a}, n={self.source.n}, {len(self.generators)} generators)"


def _fold_products(sigma: FormCollection, a: int) -> list[Polynomial]:
    field, k, n = sigma.field, sigma.k, sigma.n
    if a == 0:
        return [Polynomial.constant(field, k)]
    if a > n:
        return []
    if comb(n, a) > MAX_PRODUCTS:
        raise TooLargeError(f"C({n},{a}) products exceed the cap of {MAX_PRODUCTS}")
    canon = sigma.canonical_forms()
    classes = sorted(set(canon))
    cls_index = [classes.index(c) for c in canon]
    linear = [Polynomial.linear(field, c) for c in classes]
    # up to scalar a product only depends on the multiset of classes used
    seen = set()
    out = []
    for idx in itertools.combinations(range(n), a):
        key = tuple(sorted(cls_index[i] for i in idx))
        if key in seen:
            continue
        seen.add(key)
        p = Polynomial.constant(field, k)
        for c in key:
            p = p * linear[c]
        out.append(p)
    return out


def fold_generators(sigma: FormCollection, a: int) -> FoldIdeal:
    """The ideal I_a(sigma) with generators deduplicated up to scalar."""
    return FoldIdeal(sigma, a)


def ideal(field: FieldSpec, k: int, generators: Iterable[Polynomial]) -> HomogeneousIdeal:
    return HomogeneousIdeal(field, k, generators)


def m_power(field: FieldSpec, k: int, a: int) -> HomogeneousIdeal:
    """The a-th power of the irrelevant ideal <x_1, ..., x_k>."""
    return HomogeneousIdeal(field, k, [Polynomial(field, k, {m: 1}) for m in monomials(k, a)])


def piece_dim(i: HomogeneousIdeal, j: int) -> int:
    """Dimension of the degree-j piece of ``i``."""
    return i.piece_dim(j)


def hilbert_function(i: HomogeneousIdeal, j: int) -> int:
    """dim (R/I)_j."""
    return dim_piece(i.k, j) - i.piece_dim(j)


def _coeffs(form) -> tuple:
    return form.coeffs if isinstance(form, LinForm) else tuple(form)


def colon_piece(i: HomogeneousIdeal, form: LinForm | Sequence, j: int) -> int:
    """dim (I : l)_j = dim {f in R_j : l*f in I_{j+1}}."""
    if j < 0:
        return 0
    field = i.field
    coeffs = tuple(field(c) for c in _coeffs(form))
    nf, free = i.normal_form(j + 1)
    d = dim_piece(i.k, j)
    if not free:
        return d
    image = field.zeros((d, len(free)))
    for v, c in enumerate(coeffs):
        if c != 0:
            image = image + nf[shift_index(i.k, j, v)] * c
    return d - field.rank(field.reduce(image))


def saturation_piece(i: HomogeneousIdeal, j: int) -> int:
    """dim (I^sat)_j, the stable value of dim (I : m^N)_j.

    Stops once N >= a + 3 (a the largest generator degree) and two consecutive
    powers agree; more than j + a + 5 steps is reported as an error.
    """
    if j < 0:
        return 0
    if i.is_zero:
        return 0
    a = i.max_degree
    prev = i.piece_dim(j)
    limit = j + a + 5
    n = 1
    while True:
        cur = i.colon_m_power_dim(n, j)
        if n >= a + 3 and cur == prev:
            return cur
        if n > limit:
            raise StabilizationError(f"(I : m^N)_{j} did not stabilize by N={limit}")
        prev = cur
        n += 1


@dataclass(frozen=True)
class PointIdealPower:
    """The power p^exponent of the ideal of a point of P^{k-1}."""

    point: ProjectivePoint
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise DegreeRangeError("unit factors are dropped; exponent must be >= 1")


def sat_structure(arr: Arrangement, b: int) -> list[PointIdealPower]:
    """Points P_i with n_i - b >= 1 and exponents n_i - b.

    This describes the saturation of I_{n-b} for 1 <= b <= m - 1.
    """
    m = max_multiplicity(arr)
    if not 1 <= b <= m - 1:
        raise DegreeRangeError(f"b={b} outside 1..{m - 1}")
    return [PointIdealPower(p, mult - b) for p, mult in singular_locus(arr).points if mult - b >= 1]


def _adapted_change(field: FieldSpec, point: ProjectivePoint) -> list[list]:
    """Invertible T with T e_k = point: columns e_i (i != lead) then the point."""
    k = point.k
    lead = next(i for i, c in enumerate(point.coords) if c != 0)
    cols = [[field.one if r == i else field.zero for r in range(k)] for i in range(k) if i != lead]
    cols.append([field(c) for c in point.coords])
    return [[cols[c][r] for c in range(k)] for r in range(k)]


@lru_cache(maxsize=4096)
def _point_conditions(field: FieldSpec, point: ProjectivePoint, exponent: int, j: int) -> np.ndarray:
    """Columns of linear conditions for f in R_j to lie in p^exponent."""
    k = point.k
    sub = substitution_matrix(field, k, j, _adapted_change(field, point))
    # in adapted coordinates the point is e_k, so p = <u_1..u_{k-1}>
    banned = [c for c, mon in enumerate(monomials(k, j)) if mon[-1] > j - exponent]
    out = sub[:, banned]
    out.setflags(write=False)
    return out


def point_power_piece(desc: Sequence[PointIdealPower], j: int, field: FieldSpec, k: int | None = None) -> int:
    """dim of the degree-j piece of the intersection of the given point-ideal powers."""
    if j < 0:
        return 0
    if k is None:
        if not desc:
            raise InputError("k is required for an empty intersection")
        k = desc[0].point.k
    d = dim_piece(k, j)
    conds = [_point_conditions(field, pp.point, pp.exponent, j) for pp in desc]
    conds = [c for c in conds if c.shape[1]]
    if not conds:
        return d
    return d - field.rank(np.hstack(conds))


def points_ideal_piece(points: Sequence[ProjectivePoint], j: int, field: FieldSpec, k: int | None = None) -> int:
    """dim of the degree-j piece of the intersection of the (reduced) point ideals."""
    return point_power_piece([PointIdealPower(p, 1) for p in points], j, field, k)
