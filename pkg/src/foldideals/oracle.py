"""Graded Betti numbers of R/I from Koszul homology.

beta_{i,j}(R/I) = dim H_i(K(x_1..x_k) (x) R/I)_j.  In degree j the i-th term is
a direct sum of C(k, i) copies of (R/I)_{j-i}, one per i-subset S of the
variables, and d(e_S) = sum_t (-1)^pos(t) x_t e_{S - t}.  Homology ranks come
from two matrix ranks over quotient coordinates; no resolution is built.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DegreeRangeError, InputError
from .ideals import HomogeneousIdeal
from .polys import monomials, shift_index

MAX_VARIABLES = 4


@dataclass(frozen=True)
class GradedBettiTable:
    """Nonzero beta_{i,j} keyed by (homological index i, internal degree j)."""

    k: int
    j_max: int
    entries: dict = dc_field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def nonzero(self) -> dict:
        return {key: v for key, v in self.entries.items() if v}

    def row(self, i: int) -> dict[int, int]:
        return {j: v for (ii, j), v in self.entries.items() if ii == i and v}

    def linear_strand(self, a: int) -> tuple[int, ...]:
        """(beta_{1,a}, beta_{2,a+1}, ..., beta_{k,a+k-1})."""
        return tuple(self[i, a + i - 1] for i in range(1, self.k + 1))

    def to_json(self) -> dict:
        return {f"{i},{j}": v for (i, j), v in sorted(self.nonzero().items())}


def quotient_piece_basis(ideal: HomogeneousIdeal, j: int) -> list[tuple[int, ...]]:
    """Monomials of R_j whose classes form a basis of (R/I)_j."""
    if j < 0:
        return []
    _, free = ideal.normal_form(j)
    mons = monomials(ideal.k, j)
    return [mons[c] for c in free]


def _multiplication(ideal: HomogeneousIdeal, deg: int, var: int) -> np.ndarray:
    """Matrix of x_var: (R/I)_deg -> (R/I)_{deg+1} in quotient coordinates."""
    _, free_lo = ideal.normal_form(deg)
    nf_hi, free_hi = ideal.normal_form(deg + 1)
    rows = shift_index(ideal.k, deg, var)[free_lo]
    return nf_hi[rows] if free_hi else ideal.field.zeros((len(free_lo), 0))


def _differential(ideal: HomogeneousIdeal, i: int, j: int) -> np.ndarray:
    """d_i in degree j as a (rows: C_i(j)) x (cols: C_{i-1}(j)) block matrix."""
    field, k = ideal.field, ideal.k
    src = list(itertools.combinations(range(k), i))
    dst = list(itertools.combinations(range(k), i - 1))
    dst_pos = {s: t for t, s in enumerate(dst)}
    q_src = len(ideal.normal_form(j - i)[1]) if j - i >= 0 else 0
    q_dst = len(ideal.normal_form(j - i + 1)[1]) if j - i + 1 >= 0 else 0
    out = field.zeros((len(src) * q_src, len(dst) * q_dst))
    if not q_src or not q_dst:
        return out
    for s_idx, s in enumerate(src):
        for pos, var in enumerate(s):
            target = dst_pos[s[:pos] + s[pos + 1:]]
            block = _multiplication(ideal, j - i, var)
            if pos % 2:
                block = field.reduce(-block)
            out[s_idx * q_src:(s_idx + 1) * q_src, target * q_dst:(target + 1) * q_dst] = block
    return out


def _term_dim(ideal: HomogeneousIdeal, i: int, j: int) -> int:
    if j - i < 0 or i < 0 or i > ideal.k:
        return 0
    return comb(ideal.k, i) * len(ideal.normal_form(j - i)[1])


def koszul_betti(ideal: HomogeneousIdeal, j_max: int | None = None) -> GradedBettiTable:
    """Graded Betti numbers of R/I in internal degrees 0..j_max.

    The default j_max is a + k + 1 with a the largest generator degree.
    """
    k = ideal.k
    if k > MAX_VARIABLES:
        raise InputError(f"the Koszul oracle supports at most {MAX_VARIABLES} variables")
    a = ideal.max_degree or 0
    if j_max is None:
        j_max = a + k + 1
    if not ideal.is_zero and j_max < a + k:
        raise DegreeRangeError(f"j_max={j_max} does not reach a + k = {a + k}")
    field = ideal.field
    entries = {}
    for j in range(j_max + 1):
        ranks = {}
        for i in range(1, k + 1):
            if i <= j:
                ranks[i] = field.rank(_differential(ideal, i, j))
        for i in range(0, k + 1):
            dim = _term_dim(ideal, i, j)
            if not dim:
                continue
            beta = dim - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if beta:
                entries[(i, j)] = beta
    return GradedBettiTable(k, j_max, entries)


def is_linear(table: GradedBettiTable, a: int) -> bool:
    """True iff every nonzero beta_{i,j} with i >= 1 sits at j = a + i - 1."""
    return all(j == a + i - 1 for (i, j), v in table.entries.items() if i >= 1 and v)


def regularity(table: GradedBettiTable) -> int:
    """Castelnuovo-Mumford regularity of R/I: max of j - i over nonzero entries."""
    vals = [j - i for (i, j), v in table.entries.items() if v]
    return max(vals) if vals else 0


def euler_characteristic(ideal: HomogeneousIdeal, table: GradedBettiTable, j: int) -> tuple[int, int]:
    """(alternating sum of Koszul term dimensions, alternating sum of beta_{i,j})."""
    terms = sum((-1) ** i * _term_dim(ideal, i, j) for i in range(ideal.k + 1))
    betas = sum((-1) ** i * table[i, j] for i in range(ideal.k + 1))
    return terms, betas
