"""Seeded random instances and the property checks run on them.

Each check compares a closed form or structural identity with an independent
computation (Koszul homology, iterated colons, point conditions) and yields
:class:`CheckOutcome` records; nothing here raises on a failed check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Iterable

import numpy as np

from .arrangement import is_generic, max_multiplicity, singular_locus
from .betti import betti_k3
from .codes import hamming_hierarchy, min_distance_by_enumeration, min_weight_points, zero_locus_dimension
from .errors import InputError
from .exactalg import FieldSpec, canonical_vector
from .forms import Arrangement, FormCollection, LinForm, delete, rank_of
from .ideals import (
    FoldIdeal,
    colon_piece,
    points_ideal_piece,
    point_power_piece,
    sat_structure,
    saturation_piece,
)
from .oracle import is_linear, koszul_betti

MAX_SWEEP_N = 8
POLICY_SET = ("first", "last", "maxpoint", "random:0", "random:1", "random:2")
_MAX_ATTEMPTS = 10_000


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class TrialResult:
    index: int
    forms: list
    outcomes: list[CheckOutcome] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def failures(self) -> list[CheckOutcome]:
        return [o for o in self.outcomes if not o.passed]


# -- sampling ---------------------------------------------------------------

def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator per trial, so any trial can be replayed alone."""
    return np.random.default_rng([seed, trial])


def _random_direction(field: FieldSpec, k: int, rng: np.random.Generator) -> tuple:
    while True:
        v = tuple(int(x) for x in rng.integers(0, field.p, size=k))
        if any(v):
            return canonical_vector(field, v)


def _random_scalar(field: FieldSpec, rng: np.random.Generator) -> int:
    return int(rng.integers(1, field.p))


def random_arrangement(field: FieldSpec, n: int, rng: np.random.Generator, k: int = 3) -> Arrangement:
    """n distinct lines of full rank, by rejection sampling over GF(p)."""
    if not field.is_prime:
        raise InputError("random sampling needs a prime field")
    points = sum(field.p ** i for i in range(k))
    if n > points or n < k:
        raise InputError(f"cannot choose {n} distinct directions of rank {k} over {field}")
    for _ in range(_MAX_ATTEMPTS):
        dirs: list[tuple] = []
        while len(dirs) < n:
            d = _random_direction(field, k, rng)
            if d not in dirs:
                dirs.append(d)
        arr = Arrangement(field, k, tuple(LinForm(field, d).scaled(_random_scalar(field, rng)) for d in dirs))
        if rank_of(arr) == k:
            return arr
    raise InputError("rank condition never met while sampling")


def random_multiset(field: FieldSpec, n: int, rng: np.random.Generator, k: int = 3) -> FormCollection:
    """n forms of full rank drawn from a small pool of directions, so repeats are common."""
    if not field.is_prime:
        raise InputError("random sampling needs a prime field")
    if n < k:
        raise InputError(f"a collection of rank {k} needs at least {k} forms")
    for _ in range(_MAX_ATTEMPTS):
        pool_size = int(rng.integers(k, n + 1))
        pool = [_random_direction(field, k, rng) for _ in range(pool_size)]
        picks = [pool[int(i)] for i in rng.integers(0, pool_size, size=n)]
        sigma = FormCollection(field, k, tuple(LinForm(field, d).scaled(_random_scalar(field, rng)) for d in picks))
        if rank_of(sigma) == k:
            return sigma
    raise InputError("rank condition never met while sampling")


# -- checks -----------------------------------------------------------------

class _IdealCache:
    """Fold ideals keyed by (multiset, a) so repeated deletions share work."""

    def __init__(self):
        self._store: dict = {}

    def get(self, sigma: FormCollection, a: int) -> FoldIdeal:
        key = (sigma.multiset_key(), a)
        if key not in self._store:
            self._store[key] = FoldIdeal(sigma, a)
        return self._store[key]


def check_colon(sigma: FormCollection, a: int, cache: _IdealCache, name: str, extra: int = 3) -> Iterable[CheckOutcome]:
    """(I_a(sigma) : l)_j == I_{a-1}(sigma - l)_j for every l and j <= a + extra."""
    big = cache.get(sigma, a)
    for idx in range(sigma.n):
        small = cache.get(delete(sigma, idx), a - 1)
        bad = [j for j in range(a + extra + 1)
               if colon_piece(big, sigma[idx], j) != small.piece_dim(j)]
        yield CheckOutcome(name, not bad, f"a={a} l={sigma[idx]} degrees={bad}" if bad else "")


def check_min_weight_saturation(sigma: FormCollection, d: int, cache: _IdealCache, extra: int = 4):
    """Saturation of I_{d+1} equals the intersection of the minimum-weight point ideals."""
    ideal = cache.get(sigma, d + 1)
    pts = min_weight_points(sigma)
    bad = [j for j in range(d + 1 + extra)
           if saturation_piece(ideal, j) != points_ideal_piece(pts, j, sigma.field, sigma.k)]
    return CheckOutcome("saturation-min-weight-points", not bad, f"degrees={bad}" if bad else "")


def check_saturated_above(ideal: FoldIdeal, a: int, extra: int = 3) -> CheckOutcome:
    """I_j == (I^sat)_j for a <= j <= a + extra."""
    bad = [j for j in range(a, a + extra + 1) if ideal.piece_dim(j) != saturation_piece(ideal, j)]
    return CheckOutcome("saturated-from-a", not bad, f"a={a} degrees={bad}" if bad else "")


def check_multiset(sigma: FormCollection, j_max: int | None = None) -> list[CheckOutcome]:
    """Checks for a = d + 1 on an arbitrary full-rank collection."""
    out = []
    cache = _IdealCache()
    profile = hamming_hierarchy(sigma)
    d = profile.min_distance
    a = d + 1
    if sigma.field.is_prime:
        enum = min_distance_by_enumeration(sigma)
        out.append(CheckOutcome("min-distance-two-routes", enum == d, f"subsets={d} codewords={enum}"))
    ideal = cache.get(sigma, a)
    table = koszul_betti(ideal, j_max)
    linear = is_linear(table, a)
    out.append(CheckOutcome("multiset-linear", linear, "" if linear else f"table={table.to_json()}"))
    out.extend(check_colon(sigma, a, cache, "colon-at-d-plus-one"))
    out.append(check_min_weight_saturation(sigma, d, cache))
    if linear:
        out.append(check_saturated_above(ideal, a))
    if sigma.k == 3:
        bad = [b for b in range(1, sigma.n + 1) if profile.height(b) != 2 - zero_locus_dimension(sigma, b)]
        out.append(CheckOutcome("height-two-routes", not bad, f"a={bad}" if bad else ""))
    return out


def check_arrangement(arr: Arrangement, policies: Iterable[str] = POLICY_SET,
                      j_max: int | None = None) -> list[CheckOutcome]:
    """Every check on a rank-3 line arrangement, for all 1 <= a <= n."""
    out = []
    cache = _IdealCache()
    n = arr.n
    locus = singular_locus(arr)
    m = max_multiplicity(arr)
    profile = hamming_hierarchy(arr)
    d = profile.min_distance
    out.append(CheckOutcome("duality-m-equals-n-minus-d", m == n - d, f"m={m} d={d}"))
    incidence = sum(k * (k - 1) // 2 for k in locus.multiplicities)
    out.append(CheckOutcome("incidence-count", incidence == n * (n - 1) // 2, f"sum={incidence}"))
    policies = tuple(policies)
    for a in range(1, n + 1):
        ideal = cache.get(arr, a)
        table = koszul_betti(ideal, j_max)
        linear = is_linear(table, a)
        triple, trace = betti_k3(arr, a)
        strand = table.linear_strand(a)
        out.append(CheckOutcome("arrangement-linear", linear, f"a={a} table={table.to_json()}" if not linear else ""))
        out.append(CheckOutcome("recursion-vs-oracle", strand == triple.values,
                                f"a={a} oracle={strand} recursion={triple.values}"))
        out.append(CheckOutcome("trace-replay", trace.replay() == triple, f"a={a}"))
        others = {p: betti_k3(arr, a, policy=p)[0].values for p in policies}
        same = all(v == triple.values for v in others.values())
        out.append(CheckOutcome("policy-invariance", same, f"a={a} {others}" if not same else ""))
        if linear:
            out.append(check_saturated_above(ideal, a))
        if not is_generic(arr) and n - m + 1 <= a <= n - 2:
            ok = triple.b3 >= 1 and table[3, a + 2] >= 1
            out.append(CheckOutcome("b3-positive-nongeneric", ok, f"a={a} b3={triple.b3}"))
        if n - m + 1 <= a <= n - 1:
            out.extend(check_colon(arr, a, cache, "colon-high-a"))
    out.extend(check_colon(arr, d + 1, cache, "colon-at-d-plus-one"))
    for b in range(1, m):
        ideal = cache.get(arr, n - b)
        desc = sat_structure(arr, b)
        bad = [j for j in range(n - b + 4)
               if saturation_piece(ideal, j) != point_power_piece(desc, j, arr.field, 3)]
        out.append(CheckOutcome("saturation-point-powers", not bad, f"b={b} degrees={bad}" if bad else ""))
    out.append(check_min_weight_saturation(arr, d, cache))
    return out


# -- sweeps -----------------------------------------------------------------

def run_trial(field: FieldSpec, k: int, n: int, amode: str, seed: int, trial: int,
              j_max: int | None = None) -> TrialResult:
    rng = trial_rng(seed, trial)
    if amode == "arrangement":
        if k != 3:
            raise InputError("arrangement sweeps need k = 3")
        sigma = random_arrangement(field, n, rng)
        outcomes = check_arrangement(sigma, j_max=j_max)
    elif amode == "multiset":
        sigma = random_multiset(field, n, rng, k)
        outcomes = check_multiset(sigma, j_max)
    else:
        raise InputError(f"unknown sampling mode {amode!r}")
    return TrialResult(trial, sigma.to_json(), outcomes)


def sweep(p: int, k: int, n: int, trials: int, seed: int, amode: str, only: int | None = None,
          j_max: int | None = None) -> dict:
    """Run ``trials`` seeded trials and tally every check; returns the report body."""
    if trials < 1:
        raise InputError("trials must be >= 1")
    if n > MAX_SWEEP_N:
        raise InputError(f"sweeps are limited to n <= {MAX_SWEEP_N}")
    if k != 3:
        raise InputError("sweeps run the three-variable property suites; use k = 3")
    field = FieldSpec.prime(p)
    tally: dict[str, dict[str, int]] = {}
    failures = []
    indices = [only] if only is not None else range(trials)
    t0 = time.perf_counter()
    for t in indices:
        result = run_trial(field, k, n, amode, seed, t, j_max)
        for o in result.outcomes:
            row = tally.setdefault(o.name, {"pass": 0, "fail": 0})
            row["pass" if o.passed else "fail"] += 1
        for o in result.failures():
            failures.append({
                "trial": t,
                "check": o.name,
                "detail": o.detail,
                "forms": result.forms,
                "reproduce": (f"foldideals sweep --p {p} --k {k} --n {n} --trials {trials} "
                              f"--seed {seed} --amode {amode} --only {t}"
                              + (f" --jmax {j_max}" if j_max is not None else "")),
            })
    return {
        "params": {"p": p, "k": k, "n": n, "trials": trials, "seed": seed, "amode": amode, "only": only,
                   "jmax": j_max},
        "tally": dict(sorted(tally.items())),
        "failures": failures,
        "passed": not failures,
        "timings": {"seconds": round(time.perf_counter() - t0, 3)},
    }
