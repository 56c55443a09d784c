"""Acceptance gate: the ten primary criteria, each printed as one PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v`` (the summary lines
appear at the end of the session) or ``python3 tests/test_acceptance.py``.
"""

import time
from contextlib import contextmanager

import pytest

from foldideals.betti import betti_k2, betti_k3, betti_m_power
from foldideals.cli import cmd_sweep
from foldideals.exactalg import GF, QQ
from foldideals.forms import Arrangement, FormCollection, delete
from foldideals.ideals import FoldIdeal, m_power
from foldideals.oracle import is_linear, koszul_betti
from foldideals.sweeps import check_arrangement, check_multiset, random_arrangement, random_multiset, trial_rng

SUITE_SEED = 2024
SUITE_SIZE = 25

RESULTS: dict[int, tuple[bool, str]] = {}


@contextmanager
def criterion(number, limit=None):
    """Record PASS/FAIL for one criterion; ``limit`` is a wall-clock bound in seconds."""
    info = {"detail": ""}
    t0 = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        RESULTS[number] = (False, f"{type(exc).__name__}: {exc}"[:200])
        raise
    elapsed = time.perf_counter() - t0
    if limit is not None and elapsed >= limit:
        RESULTS[number] = (False, f"took {elapsed:.2f}s, limit {limit}s")
        pytest.fail(f"criterion {number} exceeded {limit}s ({elapsed:.2f}s)")
    RESULTS[number] = (True, f"{info['detail']} [{elapsed:.2f}s]".strip())


def example():
    return Arrangement.of(FormCollection.parse(QQ, "x, x-z, x+z, z, y, y-z"))


# -- shared suites -------------------------------------------------------------

class Suite:
    def __init__(self, outcomes, seconds, instances):
        self.outcomes = outcomes
        self.seconds = seconds
        self.instances = instances

    def named(self, *names):
        return [o for o in self.outcomes if o.name in names]

    def failures(self, *names):
        return [o for o in self.named(*names) if not o.passed]


@pytest.fixture(scope="module")
def arrangement_suite():
    """25 seeded rank-3 arrangements over GF(7) with n cycling through 4..7."""
    t0 = time.perf_counter()
    outcomes, instances = [], []
    for t in range(SUITE_SIZE):
        arr = random_arrangement(GF(7), 4 + t % 4, trial_rng(SUITE_SEED, t))
        instances.append(arr)
        outcomes.extend(check_arrangement(arr))
    return Suite(outcomes, time.perf_counter() - t0, instances)


@pytest.fixture(scope="module")
def multiset_suite():
    """25 seeded full-rank multisets over GF(5) and GF(7), n cycling through 3..7."""
    t0 = time.perf_counter()
    outcomes, instances = [], []
    for t in range(SUITE_SIZE):
        field = GF(5) if t % 2 == 0 else GF(7)
        sigma = random_multiset(field, 3 + t % 5, trial_rng(SUITE_SEED + 1, t))
        instances.append(sigma)
        outcomes.extend(check_multiset(sigma))
    return Suite(outcomes, time.perf_counter() - t0, instances)


# -- criteria --------------------------------------------------------------------

def test_criterion_01_example_regression():
    with criterion(1, limit=1.0) as info:
        arr = example()
        assert betti_k3(arr, 3)[0].values == (9, 13, 5)
        assert betti_k3(arr, 4)[0].values == (11, 16, 6)
        without_y = delete(arr, arr.index_of((0, 1, 0)))
        assert betti_k3(without_y, 2)[0].values == (5, 6, 2)
        without_z = Arrangement.of(FormCollection.parse(QQ, "x-z, x+z, y-z, y, x"))
        assert betti_k3(without_z, 3)[0].values == (9, 13, 5)
        info["detail"] = "(9,13,5), (11,16,6), (5,6,2), (9,13,5)"


def test_criterion_02_m_powers_against_the_oracle():
    with criterion(2, limit=10.0) as info:
        got = {}
        for a in range(1, 5):
            table = koszul_betti(m_power(QQ, 3, a))
            assert is_linear(table, a)
            assert table.linear_strand(a) == betti_m_power(a).values
            got[a] = table.linear_strand(a)
        assert got[2] == (6, 8, 3)
        info["detail"] = f"a=1..4 {list(got.values())}"


def test_criterion_03_two_variable_regression():
    with criterion(3, limit=1.0) as info:
        cases = [("z, z, x+z, x, x-z", "xz", 3, (4, 3, 0)), ("x, x, x, y, y", "xy", 4, (2, 1, 0))]
        for text, variables, a, expect in cases:
            sigma = FormCollection.parse(QQ, text, variables=variables)
            assert betti_k2(sigma, a).values == expect
            table = koszul_betti(FoldIdeal(sigma, a))
            assert is_linear(table, a)
            assert table.linear_strand(a) + (0,) == expect
        info["detail"] = "(4,3,0), (2,1,0); oracle agrees"


def test_criterion_04_arrangement_suite(arrangement_suite):
    with criterion(4) as info:
        names = ("arrangement-linear", "recursion-vs-oracle")
        checked = arrangement_suite.named(*names)
        bad = arrangement_suite.failures(*names)
        degrees = sum(a.n for a in arrangement_suite.instances)
        assert len(checked) == 2 * degrees
        assert sorted({a.n for a in arrangement_suite.instances}) == [4, 5, 6, 7]
        assert not bad, bad[:3]
        assert arrangement_suite.seconds < 300
        info["detail"] = (f"{len(arrangement_suite.instances)} arrangements, {degrees} values of a, "
                          f"suite {arrangement_suite.seconds:.1f}s")


def test_criterion_05_multiset_suite(multiset_suite):
    with criterion(5) as info:
        checked = multiset_suite.named("multiset-linear")
        bad = multiset_suite.failures("multiset-linear")
        assert len(checked) == SUITE_SIZE
        assert {s.field.p for s in multiset_suite.instances} == {5, 7}
        assert any(len(s.classes()) < s.n for s in multiset_suite.instances), "no repeated forms sampled"
        assert not bad, bad[:3]
        assert multiset_suite.seconds < 300
        info["detail"] = f"{len(checked)} multisets, suite {multiset_suite.seconds:.1f}s"


def test_criterion_06_colon_identities(arrangement_suite, multiset_suite):
    with criterion(6) as info:
        low = arrangement_suite.named("colon-at-d-plus-one") + multiset_suite.named("colon-at-d-plus-one")
        high = arrangement_suite.named("colon-high-a")
        bad = [o for o in low + high if not o.passed]
        assert low and high
        assert not bad, bad[:3]
        info["detail"] = f"{len(low)} (a=d+1) and {len(high)} (n-m+1<=a<=n-1) form checks"


def test_criterion_07_saturation_structure(arrangement_suite, multiset_suite):
    with criterion(7) as info:
        powers = arrangement_suite.named("saturation-point-powers")
        points = arrangement_suite.named("saturation-min-weight-points") + \
            multiset_suite.named("saturation-min-weight-points")
        bad = [o for o in powers + points if not o.passed]
        assert powers and len(points) == 2 * SUITE_SIZE
        assert not bad, bad[:3]
        info["detail"] = f"{len(powers)} point-power and {len(points)} min-weight checks"


def test_criterion_08_saturated_and_b3(arrangement_suite, multiset_suite):
    with criterion(8) as info:
        sat = arrangement_suite.named("saturated-from-a") + multiset_suite.named("saturated-from-a")
        b3 = arrangement_suite.named("b3-positive-nongeneric")
        bad = [o for o in sat + b3 if not o.passed]
        assert sat and b3
        assert not bad, bad[:3]
        info["detail"] = f"{len(sat)} saturation and {len(b3)} b3 checks"


def test_criterion_09_policy_invariance(arrangement_suite):
    with criterion(9) as info:
        checked = arrangement_suite.named("policy-invariance")
        bad = arrangement_suite.failures("policy-invariance")
        assert len(checked) == sum(a.n for a in arrangement_suite.instances)
        assert not bad, bad[:3]
        info["detail"] = f"{len(checked)} (arrangement, a) pairs x 6 policies"


def strip_timings(report):
    report = dict(report)
    report.pop("timings", None)
    return report


def test_criterion_10_sweep_determinism():
    with criterion(10) as info:
        for args in [(7, 3, 6, 4, 17, "arrangement"), (5, 3, 5, 4, 17, "multiset")]:
            first, second = cmd_sweep(*args), cmd_sweep(*args)
            assert first["results"]["tally"] == second["results"]["tally"]
            assert strip_timings(first) == strip_timings(second)
        info["detail"] = "two sweep configurations, identical reports"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
