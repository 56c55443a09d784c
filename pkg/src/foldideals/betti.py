"""Graded Betti numbers of fold-product ideals from closed forms and addition-deletion.

For three variables the minimal resolution of R/I_a is linear,

    0 -> R(-(a+2))^b3 -> R(-(a+1))^b2 -> R(-a)^b1 -> R,

so a triple (b1, b2, b3) describes it completely.  Deleting a line l from an
arrangement A gives A' = A \\ {l} and the restriction A-bar (a multiset of
forms in two variables), and

    b1(a, A) = b1(a-1, A') + b1(a, A-bar)
    b2(a, A) = b2(a-1, A') + b2(a, A-bar) + b1(a, A-bar)
    b3(a, A) = b3(a-1, A') + b2(a, A-bar)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Callable, Sequence

from .arrangement import lines_through, max_multiplicity, singular_locus
from .errors import DegreeRangeError, InputError, RankError
from .forms import Arrangement, FormCollection, delete, format_form, rank_of, restrict
from .ideals import HomogeneousIdeal, hilbert_function
from .polys import dim_piece


@dataclass(frozen=True)
class BettiTriple:
    """Ranks at shifts a, a+1, a+2 of the minimal resolution of R/I_a."""

    a: int
    b1: int
    b2: int
    b3: int

    def __post_init__(self):
        if min(self.b1, self.b2, self.b3) < 0:
            raise ValueError("Betti numbers are nonnegative")

    @property
    def values(self) -> tuple[int, int, int]:
        return (self.b1, self.b2, self.b3)

    def to_json(self) -> dict:
        return {"a": self.a, "b1": self.b1, "b2": self.b2, "b3": self.b3}

    def __str__(self):
        return f"a={self.a}: ({self.b1}, {self.b2}, {self.b3})"


def combine(sub_deleted: BettiTriple, sub_restricted: BettiTriple, a: int) -> BettiTriple:
    """One addition-deletion step: combine the deleted and restricted triples at degree a."""
    return BettiTriple(
        a,
        sub_deleted.b1 + sub_restricted.b1,
        sub_deleted.b2 + sub_restricted.b2 + sub_restricted.b1,
        sub_deleted.b3 + sub_restricted.b2,
    )


# -- two variables ----------------------------------------------------------

def betti_k2_from_multiplicities(mults: Sequence[int], a: int) -> BettiTriple:
    """Betti numbers of I_a for a two-variable multiset with class sizes ``mults``.

    I_a = l_1^{d_1} ... l_t^{d_t} * <x, y>^e with d_i = max(m_i + a - v, 0)
    and e = max(a - sum d_i, 0); the resolution is R(-(a+1))^e -> R(-a)^{e+1}.
    """
    v = sum(mults)
    if not 1 <= a <= v:
        raise DegreeRangeError(f"a={a} outside 1..{v}")
    d = [max(m + a - v, 0) for m in mults]
    e = max(a - sum(d), 0)
    return BettiTriple(a, e + 1, e, 0)


def betti_k2(sigma: FormCollection, a: int) -> BettiTriple:
    """Closed-form Betti numbers of I_a(sigma) for forms in two variables."""
    if sigma.k != 2:
        raise InputError("betti_k2 needs forms in two variables")
    return betti_k2_from_multiplicities(sorted(sigma.classes().values(), reverse=True), a)


# -- three variables --------------------------------------------------------

def betti_m_power(a: int) -> BettiTriple:
    """Betti numbers of R/m^a for R = K[x, y, z]: C(a+2, a+i-1) * C(a+i-2, a-1)."""
    if a < 1:
        raise DegreeRangeError("a must be >= 1")
    b = [comb(a + 2, a + i - 1) * comb(a + i - 2, a - 1) for i in (1, 2, 3)]
    return BettiTriple(a, *b)


@dataclass(frozen=True)
class TraceStep:
    """One level of the recursion.

    ``rule`` is one of ``principal`` (a = n), ``near-principal`` (a = n-1),
    ``m-power`` (a <= n-m), ``rank-two`` (deleted arrangement of rank 2) or
    ``deletion`` (an addition-deletion step).
    """

    rule: str
    a: int
    n: int
    result: BettiTriple
    deleted: tuple | None = None
    restricted: tuple[int, ...] | None = None
    sub_deleted: BettiTriple | None = None
    sub_restricted: BettiTriple | None = None

    def to_json(self, field=None) -> dict:
        out = {"rule": self.rule, "a": self.a, "n": self.n, "result": list(self.result.values)}
        if self.deleted is not None:
            out["deleted"] = format_form(self.deleted) if field is None or not field.is_prime else \
                [int(c) for c in self.deleted]
            out["restricted_multiplicities"] = list(self.restricted)
            out["sub_deleted"] = list(self.sub_deleted.values)
            out["sub_restricted"] = list(self.sub_restricted.values)
        return out


@dataclass(frozen=True)
class RecursionTrace:
    """Steps in evaluation order: the innermost base case first."""

    steps: tuple[TraceStep, ...] = dc_field(default_factory=tuple)

    @property
    def result(self) -> BettiTriple:
        return self.steps[-1].result

    def deleted_forms(self) -> list[tuple]:
        return [s.deleted for s in self.steps if s.deleted is not None]

    def replay(self) -> BettiTriple:
        """Recompute every step from the recorded data and return the final triple."""
        prev = None
        for s in self.steps:
            if s.rule == "principal":
                got = BettiTriple(s.a, 1, 0, 0)
            elif s.rule == "near-principal":
                got = BettiTriple(s.a, s.n, s.n - 1, 0)
            elif s.rule == "m-power":
                got = betti_m_power(s.a)
            elif s.rule == "rank-two":
                got = BettiTriple(s.a, s.a + 1, s.a, 0)
            elif s.rule == "deletion":
                if prev is None or prev != s.sub_deleted:
                    raise ValueError("trace is not contiguous")
                if betti_k2_from_multiplicities(s.restricted, s.a) != s.sub_restricted:
                    raise ValueError("restricted triple does not match its multiset")
                got = combine(s.sub_deleted, s.sub_restricted, s.a)
            else:
                raise ValueError(f"unknown rule {s.rule!r}")
            if got != s.result:
                raise ValueError(f"step {s.rule} at a={s.a} does not reproduce {s.result}")
            prev = got
        return prev

    def to_json(self, field=None) -> list[dict]:
        return [s.to_json(field) for s in self.steps]


Policy = Callable[[Arrangement], int]

POLICIES = ("first", "last", "maxpoint", "random")


def make_policy(policy: str | Policy = "maxpoint", seed: int | None = None) -> Policy:
    """Turn a policy name into a chooser of the line to delete.

    ``random`` draws from a generator seeded with ``seed``; ``"random:5"`` is
    shorthand for seed 5.
    """
    if callable(policy):
        return policy
    name, _, arg = policy.partition(":")
    if name == "first":
        return lambda arr: 0
    if name == "last":
        return lambda arr: arr.n - 1
    if name == "maxpoint":
        def chooser(arr):
            locus = singular_locus(arr)
            top = max(locus.multiplicities)
            point = next(p for p, mult in locus.points if mult == top)
            return lines_through(arr, point)[0]
        return chooser
    if name == "random":
        rng = random.Random(int(arg) if arg else (seed or 0))
        return lambda arr: rng.randrange(arr.n)
    raise InputError(f"unknown deletion policy {policy!r}")


def _validate_k3(arr: FormCollection) -> Arrangement:
    if arr.k != 3:
        raise RankError("betti_k3 needs an arrangement in three variables")
    arr = arr if isinstance(arr, Arrangement) else Arrangement.of(arr)
    if rank_of(arr) != 3:
        raise RankError("betti_k3 needs an arrangement of rank 3")
    return arr


def betti_k3(arr: FormCollection, a: int, policy: str | Policy = "maxpoint",
             memo: dict | None = None) -> tuple[BettiTriple, RecursionTrace]:
    """Betti numbers of R/I_a(A) for a rank-3 line arrangement, with the recursion trace.

    ``memo`` may be shared across calls; it maps (multiset key, a) to the
    triple and the sub-trace that produced it.
    """
    arr = _validate_k3(arr)
    if not 1 <= a <= arr.n:
        raise DegreeRangeError(f"a={a} outside 1..{arr.n}")
    chooser = make_policy(policy)
    steps: list[TraceStep] = []
    triple = _recurse(arr, a, chooser, steps, {} if memo is None else memo)
    return triple, RecursionTrace(tuple(steps))


def _recurse(arr: Arrangement, a: int, chooser: Policy, steps: list, memo: dict) -> BettiTriple:
    assert a >= 1, "recursion left the admissible range"
    key = (arr.multiset_key(), a)
    if key in memo:
        triple, sub = memo[key]
        steps.extend(sub)
        return triple
    start = len(steps)
    n = arr.n
    if a == n:
        triple = BettiTriple(a, 1, 0, 0)
        steps.append(TraceStep("principal", a, n, triple))
    elif a == n - 1:
        triple = BettiTriple(a, n, n - 1, 0)
        steps.append(TraceStep("near-principal", a, n, triple))
    elif a <= n - max_multiplicity(arr):
        triple = betti_m_power(a)
        steps.append(TraceStep("m-power", a, n, triple))
    else:
        idx = chooser(arr)
        rest = delete(arr, idx)
        bar = restrict(arr, idx)
        if rank_of(rest) == 2:
            # I_{a-1}(A') = <x, y>^{a-1} after a change of coordinates
            sub = BettiTriple(a - 1, a, a - 1, 0)
            steps.append(TraceStep("rank-two", a - 1, rest.n, sub))
        else:
            sub = _recurse(rest, a - 1, chooser, steps, memo)
        mults = tuple(sorted(bar.classes().values(), reverse=True))
        k2 = betti_k2_from_multiplicities(mults, a)
        triple = combine(sub, k2, a)
        steps.append(TraceStep("deletion", a, n, triple, arr[idx].coeffs, mults, sub, k2))
    memo[key] = (triple, tuple(steps[start:]))
    return triple


def hilbert_series_value(triple: BettiTriple, k: int, j: int) -> int:
    """dim (R/I)_j predicted by a linear resolution with the given ranks."""
    a = triple.a
    return (dim_piece(k, j) - triple.b1 * dim_piece(k, j - a)
            + triple.b2 * dim_piece(k, j - a - 1) - triple.b3 * dim_piece(k, j - a - 2))


def hilbert_consistency(triple: BettiTriple, i: HomogeneousIdeal, j_max: int) -> bool:
    """Check the alternating-sum identity against the Hilbert function for j <= j_max."""
    return all(hilbert_function(i, j) == hilbert_series_value(triple, i.k, j) for j in range(j_max + 1))
