"""The linear code dual to a collection of linear forms.

Column j of the generating matrix G is the coefficient vector of l_j, so a
codeword (alpha . G) is the vector of values (l_1(alpha), ..., l_n(alpha)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NeedsFiniteFieldError, RankError, TooLargeError
from .exactalg import ExactMatrix, FieldSpec, canonical_vector
from .forms import FormCollection, delete, rank_of

MAX_SUBSET_LENGTH = 24


@dataclass(frozen=True)
class CodeProfile:
    """Length, dimension and weight hierarchy ``d[0] = 0 < d[1] <= ... <= d[k_dim]``."""

    n: int
    k_dim: int
    d: tuple[int, ...]

    @property
    def min_distance(self) -> int:
        return self.d[1]

    def height(self, a: int) -> int:
        """Height of the a-fold product ideal: k_dim + 1 - r for d_{r-1} < a <= d_r."""
        if a < 1 or a > self.n:
            raise ValueError(f"a={a} outside 1..{self.n}")
        for r in range(1, self.k_dim + 1):
            if self.d[r - 1] < a <= self.d[r]:
                return self.k_dim + 1 - r
        raise AssertionError("hierarchy does not reach n")


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """A point of P^{k-1}, stored with first nonzero coordinate equal to 1."""

    coords: tuple

    @classmethod
    def of(cls, field: FieldSpec, coords: Sequence) -> ProjectivePoint:
        return cls(canonical_vector(field, tuple(field(c) for c in coords)))

    @property
    def k(self) -> int:
        return len(self.coords)

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def to_json(self, field: FieldSpec) -> list:
        return [field.to_json_scalar(c) for c in self.coords]


@dataclass(frozen=True)
class DeletionProfile:
    d: int
    d_prime: int
    rank_dropped: bool

    @property
    def kind(self) -> str:
        if self.rank_dropped:
            return "rank-drop"
        return "same" if self.d_prime == self.d else "minus-one"


def generating_matrix(sigma: FormCollection) -> ExactMatrix:
    """The k x n matrix whose columns are the coefficient vectors of the forms."""
    return ExactMatrix(sigma.field, sigma.matrix().T)


def forms_of(g: ExactMatrix) -> FormCollection:
    """Inverse of :func:`generating_matrix`."""
    return FormCollection.from_vectors(g.field, [g.column(j) for j in range(g.cols)], k=g.rows)


def weight(v: Sequence) -> int:
    """Number of nonzero entries."""
    return sum(1 for x in v if x != 0)


def _check_length(n: int):
    if n > MAX_SUBSET_LENGTH:
        raise TooLargeError(f"subset search is capped at n={MAX_SUBSET_LENGTH}, got {n}")


def _max_columns_of_rank(field: FieldSpec, classes: list[tuple], counts: list[int], target: int) -> int:
    """Largest number of columns (with multiplicity) spanning a space of dim <= target.

    Every such set lies in a flat spanned by ``target`` independent classes,
    so it is enough to enumerate independent tuples of classes and count the
    columns in their span.
    """
    if target <= 0:
        return 0
    if target >= field.rank(field.array(classes)):
        return sum(counts)
    all_cols = field.array(classes)
    best = 0
    seen: set[tuple[int, ...]] = set()
    for combo in itertools.combinations(range(len(classes)), target):
        sub = all_cols[list(combo)]
        basis, piv = field.rref(sub)
        if len(piv) < target:
            continue
        key = tuple(map(tuple, basis))
        if key in seen:
            continue
        seen.add(key)
        # a class lies in the span iff appending it keeps the rank
        total = 0
        for idx, c in enumerate(counts):
            if field.rank(np.vstack([basis, all_cols[idx:idx + 1]])) == target:
                total += c
        best = max(best, total)
    return best


def hamming_hierarchy(sigma: FormCollection) -> CodeProfile:
    """Generalized Hamming weights of the code dual to ``sigma``.

    n - d_r is the largest number of columns spanning a (k_dim - r)-dimensional
    space, with k_dim the rank of the collection.
    """
    _check_length(sigma.n)
    field = sigma.field
    k_dim = rank_of(sigma)
    if k_dim < 1:
        raise RankError("the hierarchy needs rank >= 1")
    cls = sigma.classes()
    classes = list(cls)
    counts = [cls[c] for c in classes]
    d = [0]
    for r in range(1, k_dim + 1):
        d.append(sigma.n - _max_columns_of_rank(field, classes, counts, k_dim - r))
    return CodeProfile(sigma.n, k_dim, tuple(d))


def codewords(sigma: FormCollection):
    """Every codeword of a code over a finite field (p^k of them)."""
    field = sigma.field
    for alpha in itertools.product(field.elements(), repeat=sigma.k):
        yield tuple(f(alpha) for f in sigma.forms)


def min_distance_by_enumeration(sigma: FormCollection) -> int:
    """d_1 as the minimum weight of a nonzero codeword; finite fields only."""
    if not sigma.field.is_prime:
        raise NeedsFiniteFieldError("codeword enumeration needs a finite field")
    best = None
    for v in codewords(sigma):
        w = weight(v)
        if w and (best is None or w < best):
            best = w
    if best is None:
        raise RankError("the code is zero")
    return best


def projective_points(field: FieldSpec, k: int):
    """All points of P^{k-1} over a finite field, canonical representatives."""
    for lead in range(k):
        for tail in itertools.product(field.elements(), repeat=k - lead - 1):
            yield ProjectivePoint((0,) * lead + (1,) + tuple(tail))


def vanishing_count(sigma: FormCollection, point: ProjectivePoint) -> int:
    return sum(1 for f in sigma.forms if f(point.coords) == 0)


def _intersection_points(sigma: FormCollection) -> set[ProjectivePoint]:
    """Common zeros of (k-1)-subsets of distinct classes with rank k-1."""
    field = sigma.field
    k = sigma.k
    classes = list(sigma.classes())
    out = set()
    for combo in itertools.combinations(classes, k - 1):
        ker = field.kernel(field.array(combo))
        if ker.shape[0] == 1:
            out.add(ProjectivePoint.of(field, tuple(ker[0])))
    return out


def min_weight_points(sigma: FormCollection) -> list[ProjectivePoint]:
    """Points of P^{k-1} where the maximal number n - d_1 of forms vanish.

    They are the projective codewords of minimum weight.  Over a prime field
    all of P^{k-1} is scanned; over the rationals only the intersection points
    of the forms are candidates.
    """
    if rank_of(sigma) != sigma.k:
        raise RankError("minimum-weight points need a collection of full rank")
    field = sigma.field
    k = sigma.k
    d1 = hamming_hierarchy(sigma).min_distance
    target = sigma.n - d1
    if k == 1:
        return [ProjectivePoint((field.one,))]
    if field.is_prime:
        candidates = projective_points(field, k)
    else:
        candidates = _intersection_points(sigma)
    found = sorted(q for q in candidates if vanishing_count(sigma, q) == target)
    if not found:
        raise NeedsFiniteFieldError("no intersection point attains n - d_1 vanishing forms")
    return found


def deletion_profile(sigma: FormCollection, index: int) -> DeletionProfile:
    """Minimum distance before and after deleting the form at ``index``."""
    d = hamming_hierarchy(sigma).min_distance
    rest = delete(sigma, index)
    dropped = rank_of(rest) < rank_of(sigma)
    return DeletionProfile(d, hamming_hierarchy(rest).min_distance, dropped)


def zero_locus_dimension(sigma: FormCollection, a: int) -> int:
    """Projective dimension of V(I_a) for a rank-3 collection in three variables.

    V(I_a) is the set of points where at least n - a + 1 forms vanish; this
    checks whole lines (one class repeated often enough) and then the
    pairwise intersection points.  Returns -1 for the empty set.
    """
    if sigma.k != 3:
        raise RankError("zero-locus enumeration is implemented for three variables")
    need = sigma.n - a + 1
    if need <= 0:
        return 2
    cls = sigma.classes()
    if max(cls.values()) >= need:
        return 1
    if any(vanishing_count(sigma, q) >= need for q in _intersection_points(sigma)):
        return 0
    return -1
