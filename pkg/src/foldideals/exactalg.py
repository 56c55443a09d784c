"""Exact scalars and linear algebra over the rationals and prime fields.

Matrices are numpy arrays.  Over a prime field with ``p < 2**31`` they use
``int64`` storage (every product of two residues fits in 63 bits); over the
rationals, and for larger primes, they hold Python objects (``Fraction`` or
``int``), so arithmetic stays exact at the price of speed.

Elimination picks the first nonzero entry of each column as pivot, which
makes every basis returned here deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldError

_INT64_PRIME_LIMIT = 2**31
_WORD_LIMIT = 2**64


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in small:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise FieldError(f"booleans are not field elements: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, (np.integer,)):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot read {value!r} as a rational number") from exc
    raise FieldError(f"cannot read {value!r} as an exact scalar")


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``kind="rational"``) or GF(p) (``kind="prime"``)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise FieldError("the rational field takes no characteristic")
        elif self.kind == "prime":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise FieldError(f"{self.p!r} is not a prime")
            if self.p >= _WORD_LIMIT:
                raise FieldError("prime fields are limited to machine-word characteristic")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("prime", int(p))

    @classmethod
    def parse(cls, text) -> FieldSpec:
        """Read ``"rational"``/``"QQ"``, ``"GF(7)"``, ``7`` or a ``{"kind", "p"}`` mapping."""
        if isinstance(text, FieldSpec):
            return text
        if isinstance(text, dict):
            kind = text.get("kind")
            if kind == "rational":
                return cls.rational()
            if kind == "prime":
                return cls.prime(text.get("p"))
            raise FieldError(f"unknown field description {text!r}")
        if isinstance(text, int) and not isinstance(text, bool):
            return cls.prime(text)
        if isinstance(text, str):
            t = text.strip()
            if t.lower() in ("rational", "qq", "q"):
                return cls.rational()
            if t.upper().startswith("GF(") and t.endswith(")"):
                return cls.prime(int(t[3:-1]))
        raise FieldError(f"unknown field description {text!r}")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def dtype(self):
        if self.is_prime and self.p < _INT64_PRIME_LIMIT:
            return np.int64
        return object

    def __str__(self):
        return "QQ" if self.kind == "rational" else f"GF({self.p})"

    def to_json(self) -> dict:
        return {"kind": "rational"} if self.kind == "rational" else {"kind": "prime", "p": self.p}

    # -- scalars -----------------------------------------------------------

    def __call__(self, value):
        """Coerce ``value`` (int, Fraction or ``"p/q"`` string) into the field."""
        q = _parse_rational(value)
        if self.kind == "rational":
            return q
        if q.denominator % self.p == 0:
            raise FieldError(f"{value!r} has a denominator divisible by {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rational" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rational" else 1

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.kind == "rational":
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def neg(self, x):
        return -x if self.kind == "rational" else (-int(x)) % self.p

    def mul(self, x, y):
        return x * y if self.kind == "rational" else int(x) * int(y) % self.p

    def add(self, x, y):
        return x + y if self.kind == "rational" else (int(x) + int(y)) % self.p

    def elements(self) -> Iterable:
        if self.kind == "rational":
            raise FieldError("the rationals cannot be enumerated")
        return range(self.p)

    def to_json_scalar(self, x):
        if self.kind == "prime":
            return int(x)
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    # -- arrays ------------------------------------------------------------

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.p if self.is_prime else a

    def array(self, rows, shape: tuple[int, int] | None = None) -> np.ndarray:
        """Build a 2-D array of field elements from nested sequences."""
        rows = [list(r) for r in rows]
        if not rows:
            return self.zeros(shape if shape is not None else (0, 0))
        out = np.empty((len(rows), len(rows[0])), dtype=self.dtype)
        for i, r in enumerate(rows):
            if len(r) != out.shape[1]:
                raise FieldError("ragged matrix rows")
            for j, v in enumerate(r):
                out[i, j] = self(v)
        return out

    def vector(self, values: Sequence) -> np.ndarray:
        out = np.empty(len(values), dtype=self.dtype)
        for i, v in enumerate(values):
            out[i] = self(v)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self.zero)
            return out
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        if self.dtype is np.int64:
            if (self.p - 1) ** 2 * a.shape[1] < 2**63:
                return (a @ b) % self.p
            return (a.astype(object) @ b.astype(object) % self.p).astype(np.int64)
        return self.reduce(a @ b)

    def rref(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form (zero rows dropped) and its pivot columns."""
        a = np.array(a, dtype=self.dtype, copy=True)
        if a.ndim != 2:
            raise FieldError("rref expects a 2-D array")
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        prime = self.is_prime
        p = self.p
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, c] != 0)
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            inv = self.inv(a[r, c])
            a[r] = a[r] * inv % p if prime else a[r] * inv
            col = a[:, c].copy()
            col[r] = 0
            others = np.flatnonzero(col != 0)
            if others.size:
                update = np.outer(col[others], a[r])
                a[others] = (a[others] - update) % p if prime else a[others] - update
            pivots.append(c)
            r += 1
        return a[:r], pivots

    def rank(self, a: np.ndarray) -> int:
        if a.shape[0] == 0 or a.shape[1] == 0:
            return 0
        # eliminate along the shorter side
        if a.shape[0] > a.shape[1]:
            a = a.T
        return len(self.rref(a)[1])

    def kernel(self, a: np.ndarray) -> np.ndarray:
        """Rows form a basis of ``{v : a @ v = 0}``."""
        cols = a.shape[1]
        if a.shape[0] == 0:
            return self.identity(cols)
        r, pivots = self.rref(a)
        pivot_set = set(pivots)
        free = [c for c in range(cols) if c not in pivot_set]
        out = self.zeros((len(free), cols))
        for t, f in enumerate(free):
            out[t, f] = self.one
            for i, pc in enumerate(pivots):
                out[t, pc] = self.neg(r[i, f])
        return out

    def left_kernel(self, a: np.ndarray) -> np.ndarray:
        """Rows form a basis of ``{v : v @ a = 0}``."""
        return self.kernel(a.T)

    def row_basis(self, a: np.ndarray) -> np.ndarray:
        return self.rref(a)[0]


QQ = FieldSpec.rational()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)


def canonical_vector(field: FieldSpec, coeffs: Sequence) -> tuple:
    """Scale so that the first nonzero entry is 1.  Zero vectors are rejected."""
    for c in coeffs:
        if c != 0:
            inv = field.inv(c)
            return tuple(field.mul(x, inv) for x in coeffs)
    raise FieldError("the zero vector has no canonical representative")


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """An immutable matrix over ``field``; ``entries`` is a 2-D numpy array."""

    field: FieldSpec
    entries: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        a = np.array(self.entries, dtype=self.field.dtype, copy=True)
        if a.ndim != 2:
            raise FieldError("ExactMatrix needs a 2-D array")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, cols: int | None = None) -> ExactMatrix:
        rows = list(rows)
        if not rows:
            return cls(field, field.zeros((0, cols or 0)))
        return cls(field, field.array(rows))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> ExactMatrix:
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> ExactMatrix:
        return cls(field, field.identity(n))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.all(self.entries == other.entries)))

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.field != other.field:
            raise FieldError("matrices over different fields")
        if self.cols != other.rows:
            raise FieldError(f"shape mismatch {self.shape} @ {other.shape}")
        return ExactMatrix(self.field, self.field.matmul(self.entries, other.entries))

    @property
    def T(self) -> ExactMatrix:
        return ExactMatrix(self.field, self.entries.T)

    def vstack(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix(self.field, np.vstack([self.entries, other.entries]))

    def column(self, j: int) -> tuple:
        return tuple(self.entries[:, j])

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]


def rank(m: ExactMatrix) -> int:
    """Rank of ``m`` over its field."""
    return m.field.rank(m.entries)


def kernel_basis(m: ExactMatrix) -> list[tuple]:
    """Basis of the right null space; empty exactly when the columns are independent."""
    return [tuple(v) for v in m.field.kernel(m.entries)]


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    r, piv = m.field.rref(m.entries)
    return ExactMatrix(m.field, r), piv
