"""Homogeneous polynomials in the monomial basis of each graded piece R_j.

A degree-j polynomial in k variables is stored as a coefficient row vector
indexed by ``monomials(k, j)``.  Multiplication by a variable is an index
shift, so multiplying whole bases by linear forms is cheap.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

import numpy as np

from .exactalg import FieldSpec
from .errors import InputError


def dim_piece(k: int, j: int) -> int:
    """Dimension of R_j for R = K[x_1..x_k]."""
    if j < 0:
        return 0
    return comb(j + k - 1, k - 1)


@lru_cache(maxsize=None)
def monomials(k: int, j: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree j, in descending lexicographic order."""
    if j < 0:
        return ()
    if k == 1:
        return ((j,),)
    out = []
    for first in range(j, -1, -1):
        for rest in monomials(k - 1, j - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(k: int, j: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomials(k, j))}


@lru_cache(maxsize=None)
def shift_index(k: int, j: int, var: int) -> np.ndarray:
    """Position in R_{j+1} of x_var times each monomial of R_j."""
    target = monomial_index(k, j + 1)
    out = np.empty(dim_piece(k, j), dtype=np.intp)
    for i, m in enumerate(monomials(k, j)):
        e = list(m)
        e[var] += 1
        out[i] = target[tuple(e)]
    out.setflags(write=False)
    return out


def multiply_by_variable(field: FieldSpec, rows: np.ndarray, k: int, j: int, var: int) -> np.ndarray:
    out = field.zeros((rows.shape[0], dim_piece(k, j + 1)))
    out[:, shift_index(k, j, var)] = rows
    return out


def multiply_by_form(field: FieldSpec, rows: np.ndarray, k: int, j: int, coeffs: Sequence) -> np.ndarray:
    """Rows of degree j times the linear form ``sum(coeffs[i] * x_i)``."""
    out = field.zeros((rows.shape[0], dim_piece(k, j + 1)))
    for var, c in enumerate(coeffs):
        if c == 0:
            continue
        idx = shift_index(k, j, var)
        out[:, idx] = out[:, idx] + rows * c
    return field.reduce(out)


def multiply_by_variables(field: FieldSpec, rows: np.ndarray, k: int, j: int) -> np.ndarray:
    """Stack of x_1*rows, ..., x_k*rows (all multiples by one variable)."""
    return np.vstack([multiply_by_variable(field, rows, k, j, v) for v in range(k)])


def substitution_matrix(field: FieldSpec, k: int, j: int, change) -> np.ndarray:
    """Matrix S with ``f(T u) = f @ S`` in degree j, where ``x_i = sum_l T[i][l] u_l``.

    Built degree by degree: a monomial x_i * nu maps to (row of T for x_i) * S(nu).
    """
    rows = field.identity(1)
    for deg in range(j):
        prev_index = monomial_index(k, deg)
        nxt = field.zeros((dim_piece(k, deg + 1), dim_piece(k, deg + 1)))
        for r, m in enumerate(monomials(k, deg + 1)):
            var = next(i for i, e in enumerate(m) if e)
            nu = list(m)
            nu[var] -= 1
            src = rows[prev_index[tuple(nu)]][None, :]
            nxt[r] = multiply_by_form(field, src, k, deg, change[var])[0]
        rows = nxt
    return rows


class Polynomial:
    """Sparse polynomial: a mapping from exponent tuples to nonzero scalars."""

    __slots__ = ("field", "k", "terms")

    def __init__(self, field: FieldSpec, k: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.field = field
        self.k = k
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != k:
                raise InputError(f"exponent {e} does not have {k} entries")
            c = field(c)
            if c != 0:
                clean[tuple(int(x) for x in e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, field: FieldSpec, k: int, value=1) -> Polynomial:
        return cls(field, k, {(0,) * k: value})

    @classmethod
    def linear(cls, field: FieldSpec, coeffs: Sequence) -> Polynomial:
        k = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * k
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, k, terms)

    @classmethod
    def from_vector(cls, field: FieldSpec, k: int, j: int, vec) -> Polynomial:
        return cls(field, k, {m: c for m, c in zip(monomials(k, j), vec) if c != 0})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __mul__(self, other: Polynomial) -> Polynomial:
        f = self.field
        out: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = f.add(out.get(e, f.zero), f.mul(c1, c2))
        return Polynomial(f, self.k, out)

    def __add__(self, other: Polynomial) -> Polynomial:
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add(out.get(e, f.zero), c)
        return Polynomial(f, self.k, out)

    def scale(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self.field, self.k, {e: self.field.mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def monic(self) -> Polynomial:
        """Scalar multiple whose leading term (lex-largest exponent) has coefficient 1."""
        if not self.terms:
            return self
        lead = max(self.terms)
        return self.scale(self.field.inv(self.terms[lead]))

    def evaluate(self, point: Sequence):
        f = self.field
        total = f.zero
        for e, c in self.terms.items():
            v = c
            for x, n in zip(point, e):
                for _ in range(n):
                    v = f.mul(v, x)
            total = f.add(total, v)
        return total

    def to_vector(self) -> np.ndarray:
        if not self.is_homogeneous():
            raise InputError("only homogeneous polynomials have a single graded vector")
        j = max(self.degree, 0)
        index = monomial_index(self.k, j)
        out = self.field.zeros(len(index))
        for e, c in self.terms.items():
            out[index[e]] = c
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        names = "xyzw" if self.k <= 4 else None
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mon = "*".join(
                (names[i] if names else f"x{i + 1}") + (f"^{n}" if n > 1 else "")
                for i, n in enumerate(e) if n
            )
            parts.append(f"{c}*{mon}" if mon else f"{c}")
        return " + ".join(parts)
