import pytest
from hypothesis import given, settings, strategies as st

from conftest import example_arrangement, forms
from foldideals.betti import (
    POLICIES,
    BettiTriple,
    RecursionTrace,
    TraceStep,
    betti_k2,
    betti_k2_from_multiplicities,
    betti_k3,
    betti_m_power,
    combine,
    hilbert_consistency,
    hilbert_series_value,
    make_policy,
)
from foldideals.errors import DegreeRangeError, InputError, RankError
from foldideals.exactalg import GF
from foldideals.forms import Arrangement, FormCollection, delete, rank_of
from foldideals.ideals import FoldIdeal, hilbert_function
from foldideals.oracle import is_linear, koszul_betti


def test_two_variable_examples():
    assert betti_k2(forms("z, z, x+z, x, x-z", variables="xz"), 3).values == (4, 3, 0)
    assert betti_k2(forms("x, x, x, y, y", variables="xy"), 4).values == (2, 1, 0)
    assert betti_k2(forms("x, y", variables="xy"), 2).values == (1, 0, 0)
    assert betti_k2_from_multiplicities([3, 2], 1).values == (2, 1, 0)
    with pytest.raises(InputError):
        betti_k2(example_arrangement(), 2)
    with pytest.raises(DegreeRangeError):
        betti_k2(forms("x, y", variables="xy"), 3)


def test_m_power_examples():
    assert betti_m_power(1).values == (3, 3, 1)
    assert betti_m_power(2).values == (6, 8, 3)
    assert betti_m_power(3).values == (10, 15, 6)
    with pytest.raises(DegreeRangeError):
        betti_m_power(0)


def test_example_arrangement(arr):
    assert betti_k3(arr, 3)[0].values == (9, 13, 5)
    assert betti_k3(arr, 4)[0].values == (11, 16, 6)
    assert betti_k3(arr, 6)[0].values == (1, 0, 0)
    assert betti_k3(arr, 5)[0].values == (6, 5, 0)


def test_example_intermediates(arr):
    without_y = delete(arr, arr.index_of((0, 1, 0)))
    assert betti_k3(without_y, 2)[0].values == (5, 6, 2)
    without_z = Arrangement.of(forms("x-z, x+z, y-z, y, x"))
    assert betti_k3(without_z, 3)[0].values == (9, 13, 5)


def test_trace_records_the_example_sums(arr):
    triple, trace = betti_k3(arr, 3, policy=lambda a: a.index_of((0, 1, 0)) if a.n == 6 else 0)
    last = trace.steps[-1]
    assert last.rule == "deletion"
    assert last.sub_deleted.values == (5, 6, 2)
    assert last.sub_restricted.values == (4, 3, 0)
    assert last.restricted == (2, 1, 1, 1)
    assert trace.replay() == triple
    assert trace.result == triple


def test_replay_rejects_a_tampered_trace(arr):
    _, trace = betti_k3(arr, 4)
    last = trace.steps[-1]
    bad = TraceStep(last.rule, last.a, last.n, BettiTriple(last.a, 11, 16, 5), last.deleted,
                    last.restricted, last.sub_deleted, last.sub_restricted)
    with pytest.raises(ValueError):
        RecursionTrace(trace.steps[:-1] + (bad,)).replay()


def test_rank_and_range_errors(arr):
    with pytest.raises(RankError):
        betti_k3(Arrangement.of(forms("x, y, x+y")), 2)
    with pytest.raises(RankError):
        betti_k3(forms("x, y", variables="xy"), 1)
    with pytest.raises(DegreeRangeError):
        betti_k3(arr, 0)
    with pytest.raises(DegreeRangeError):
        betti_k3(arr, 7)
    with pytest.raises(InputError):
        make_policy("widest")


def test_rank_two_branch():
    # deleting z leaves a pencil through [0:0:1]
    arr = Arrangement.of(forms("x, y, x+y, x-y, z"))
    triple, trace = betti_k3(arr, 3, policy="last")
    assert "rank-two" in [s.rule for s in trace.steps]
    assert triple.values == koszul_betti(FoldIdeal(arr, 3)).linear_strand(3)
    assert trace.replay() == triple


def test_generic_arrangements_need_no_deletions():
    arr = Arrangement.of(forms("x, y, z, x+y+z, x+2y+3z"))
    for a in range(1, arr.n + 1):
        _, trace = betti_k3(arr, a, policy="first")
        assert not trace.deleted_forms()


def test_hilbert_consistency(arr):
    i3 = FoldIdeal(arr, 3)
    assert hilbert_consistency(BettiTriple(3, 9, 13, 5), i3, 6)
    assert not hilbert_consistency(BettiTriple(3, 9, 13, 4), i3, 5)
    i6 = FoldIdeal(arr, 6)
    assert hilbert_consistency(BettiTriple(6, 1, 0, 0), i6, 12)
    assert hilbert_series_value(BettiTriple(3, 9, 13, 5), 3, 3) == hilbert_function(i3, 3)


def test_combine_is_rule_wise():
    assert combine(BettiTriple(2, 5, 6, 2), BettiTriple(3, 4, 3, 0), 3).values == (9, 13, 5)


def test_shared_memo_gives_the_same_answers(arr):
    memo = {}
    first = [betti_k3(arr, a, memo=memo)[0] for a in range(1, 7)]
    again = [betti_k3(arr, a, memo=memo) for a in range(1, 7)]
    assert [t for t, _ in again] == first
    assert all(trace.replay() == t for t, trace in again)


def gf7_arrangements(min_n=4, max_n=7):
    vec = st.lists(st.integers(0, 6), min_size=3, max_size=3).filter(any)
    return (st.lists(vec, min_size=min_n, max_size=max_n)
            .map(lambda vs: FormCollection.from_vectors(GF(7), vs))
            .filter(lambda s: len(set(s.canonical_forms())) == s.n and rank_of(s) == 3)
            .map(Arrangement.of))


@settings(max_examples=12, deadline=None)
@given(gf7_arrangements())
def test_recursion_matches_the_oracle(arr):
    for a in range(1, arr.n + 1):
        triple, trace = betti_k3(arr, a)
        table = koszul_betti(FoldIdeal(arr, a))
        assert is_linear(table, a)
        assert table.linear_strand(a) == triple.values
        assert trace.replay() == triple


@settings(max_examples=12, deadline=None)
@given(gf7_arrangements(), st.integers(0, 1000))
def test_deletion_policies_agree(arr, seed):
    for a in range(1, arr.n + 1):
        ref = betti_k3(arr, a)[0]
        for policy in ("first", "last", "maxpoint", f"random:{seed}"):
            assert betti_k3(arr, a, policy=policy)[0] == ref


def test_policy_names():
    assert set(POLICIES) == {"first", "last", "maxpoint", "random"}
