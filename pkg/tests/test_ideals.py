import itertools
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import example_arrangement, forms
from foldideals.codes import ProjectivePoint, hamming_hierarchy, min_weight_points, zero_locus_dimension
from foldideals.errors import DegreeRangeError, InputError
from foldideals.exactalg import GF, QQ
from foldideals.forms import FormCollection, delete, rank_of
from foldideals.ideals import (
    FoldIdeal,
    PointIdealPower,
    colon_piece,
    fold_generators,
    hilbert_function,
    ideal,
    m_power,
    piece_dim,
    point_power_piece,
    points_ideal_piece,
    sat_structure,
    saturation_piece,
)
from foldideals.polys import Polynomial, dim_piece, monomials, multiply_by_form


def monomial(field, exps):
    return Polynomial(field, len(exps), {tuple(exps): 1})


def span_of_products(i, j):
    """Row vectors of g * (monomial) for every generator g of degree <= j."""
    rows = []
    for g in i.generators:
        if g.degree <= j:
            for mon in monomials(i.k, j - g.degree):
                rows.append((g * monomial(i.field, mon)).to_vector())
    return rows


def brute_piece_dim(i, j):
    rows = span_of_products(i, j)
    return i.field.rank(i.field.array(rows, shape=(len(rows), dim_piece(i.k, j)))) if rows else 0


def as_mask(vec):
    return sum(1 << t for t, c in enumerate(vec) if int(c) % 2)


def gf2_span(rows):
    """Every vector in the GF(2) span of ``rows``, as bitmasks (no elimination)."""
    span = {0}
    for row in rows:
        m = as_mask(row)
        if m not in span:
            span |= {s ^ m for s in span}
    return span


def all_forms_of_degree(field, k, j):
    mons = monomials(k, j)
    for coeffs in itertools.product(range(field.p), repeat=len(mons)):
        yield Polynomial(field, k, dict(zip(mons, coeffs)))


def count_to_dim(count, p):
    d = 0
    while p ** d < count:
        d += 1
    assert p ** d == count
    return d


def brute_colon_by_m_power(i, power, j):
    """dim {f in R_j : f * m^power in I}, by listing every f over GF(2)."""
    field, k = i.field, i.k
    span = gf2_span(span_of_products(i, j + power))
    tests = [monomial(field, m) for m in monomials(k, power)]
    good = sum(1 for f in all_forms_of_degree(field, k, j)
               if all(as_mask((f * t).to_vector()) in span for t in tests))
    return count_to_dim(good, 2)


def derivative_conditions_dim(points_with_exponents, j, k=3):
    """dim of forms of degree j whose partials of order < e vanish at each point (char 0)."""
    mons = monomials(k, j)
    conds = []
    for point, e in points_with_exponents:
        for order in range(e):
            for beta in monomials(k, order):
                row = []
                for alpha in mons:
                    if any(b > a for a, b in zip(alpha, beta)):
                        row.append(0)
                        continue
                    coeff = 1
                    for a, b, x in zip(alpha, beta, point):
                        coeff *= QQ(factorial(a) // factorial(a - b)) * QQ(x) ** (a - b)
                    row.append(coeff)
                conds.append(row)
    if not conds:
        return len(mons)
    return len(mons) - QQ.rank(QQ.array(conds))


def gf_collections(p, k=3, max_n=6):
    vec = st.lists(st.integers(0, p - 1), min_size=k, max_size=k).filter(any)
    return st.lists(vec, min_size=k, max_size=max_n).map(
        lambda vs: FormCollection.from_vectors(GF(p), vs)).filter(lambda s: rank_of(s) == k)


# -- generators and pieces ----------------------------------------------------

def test_fold_generator_examples():
    xy = fold_generators(forms("x, y", variables="xy"), 2)
    assert xy.generators == (monomial(QQ, (1, 1)),)
    gens = set(fold_generators(forms("x, x, y", variables="xy"), 2).generators)
    assert gens == {monomial(QQ, (2, 0)), monomial(QQ, (1, 1))}
    three = fold_generators(forms("x, y, z"), 2)
    assert set(three.generators) == {monomial(QQ, e) for e in [(1, 1, 0), (1, 0, 1), (0, 1, 1)]}
    assert piece_dim(three, 2) == 3 < dim_piece(3, 2)


def test_fold_conventions(arr):
    assert FoldIdeal(arr, 0).is_unit
    assert FoldIdeal(arr, 7).is_zero
    assert piece_dim(FoldIdeal(arr, 7), 9) == 0
    with pytest.raises(DegreeRangeError):
        FoldIdeal(arr, -1)


def test_piece_dim_examples(arr):
    m = fold_generators(forms("x, y, z"), 1)
    assert piece_dim(m, 2) == 6
    assert piece_dim(fold_generators(forms("x, y, z"), 2), 2) == 3
    i3 = FoldIdeal(arr, 3)
    assert [piece_dim(i3, j) for j in range(3)] == [0, 0, 0]


def test_hilbert_function_examples(arr):
    assert hilbert_function(ideal(QQ, 3, []), 4) == 15
    assert hilbert_function(FoldIdeal(arr, 3), 3) == 1
    assert hilbert_function(FoldIdeal(arr, 4), 4) == 4


def test_non_homogeneous_generator_is_rejected():
    with pytest.raises(InputError):
        ideal(QQ, 2, [Polynomial(QQ, 2, {(1, 0): 1, (2, 0): 1})])


@pytest.mark.parametrize("a", range(1, 7))
def test_piece_dims_match_direct_products_on_the_example(arr, a):
    i = FoldIdeal(arr, a)
    assert [piece_dim(i, j) for j in range(a + 3)] == [brute_piece_dim(i, j) for j in range(a + 3)]


@settings(max_examples=25, deadline=None)
@given(gf_collections(5, max_n=5), st.integers(1, 4))
def test_piece_dims_match_direct_products(sigma, a):
    i = FoldIdeal(sigma, a)
    for j in range(a + 3):
        assert piece_dim(i, j) == brute_piece_dim(i, j)


@settings(max_examples=25, deadline=None)
@given(gf_collections(5, max_n=6), st.integers(1, 5), st.data())
def test_decomposition_identity(sigma, a, data):
    idx = data.draw(st.integers(0, sigma.n - 1))
    rest = delete(sigma, idx)
    field, k = sigma.field, sigma.k
    big = FoldIdeal(sigma, a)
    lower, same = FoldIdeal(rest, a - 1), FoldIdeal(rest, a)
    for j in range(a + 4):
        parts = [same.piece(j)]
        if j >= 1:
            parts.append(multiply_by_form(field, lower.piece(j - 1), k, j - 1, sigma[idx].coeffs))
        stacked = np.vstack([p for p in parts if p.shape[0]]) if any(p.shape[0] for p in parts) else None
        combined = 0 if stacked is None else field.rank(stacked)
        assert combined == piece_dim(big, j)
        if combined:
            assert field.rank(np.vstack([stacked, big.piece(j)])) == combined


@settings(max_examples=25, deadline=None)
@given(gf_collections(7, max_n=7))
def test_small_folds_are_powers_of_m(sigma):
    d1 = hamming_hierarchy(sigma).min_distance
    for a in range(1, d1 + 1):
        i, m = FoldIdeal(sigma, a), m_power(sigma.field, 3, a)
        assert all(piece_dim(i, j) == piece_dim(m, j) for j in range(a + 4))
    # and d_1 + 1 is the first degree where that fails
    assert piece_dim(FoldIdeal(sigma, d1 + 1), d1 + 1) < dim_piece(3, d1 + 1)


def test_heights_match_zero_loci(arr):
    prof = hamming_hierarchy(arr)
    for a in range(1, arr.n + 1):
        assert prof.height(a) == 2 - zero_locus_dimension(arr, a)


# -- colon and saturation -------------------------------------------------------

def test_colon_examples():
    x2 = ideal(QQ, 2, [monomial(QQ, (2, 0))])
    assert colon_piece(x2, (1, 0), 1) == 1
    m2 = m_power(QQ, 3, 2)
    for ell in [(1, 0, 0), (1, 2, 3), (0, 1, -1)]:
        assert colon_piece(m2, ell, 1) == 3
        assert colon_piece(m2, ell, 0) == 0


@settings(max_examples=15, deadline=None)
@given(gf_collections(2, max_n=5), st.integers(1, 4), st.data())
def test_colon_matches_enumeration_over_gf2(sigma, a, data):
    i = FoldIdeal(sigma, a)
    ell = data.draw(st.sampled_from(sigma.forms))
    lin = Polynomial.linear(sigma.field, ell.coeffs)
    for j in range(0, 3):
        span = gf2_span(span_of_products(i, j + 1))
        good = sum(1 for f in all_forms_of_degree(sigma.field, 3, j) if as_mask((f * lin).to_vector()) in span)
        assert colon_piece(i, ell, j) == count_to_dim(good, 2)


@settings(max_examples=10, deadline=None)
@given(gf_collections(2, max_n=5), st.integers(1, 3))
def test_colon_by_m_powers_matches_enumeration_over_gf2(sigma, a):
    i = FoldIdeal(sigma, a)
    # the enumeration lists the whole span of I_{j+power}, so keep j + power <= 4
    for power in (1, 2, 3):
        for j in range(0, 5 - power):
            assert i.colon_m_power_dim(power, j) == brute_colon_by_m_power(i, power, j)


def test_saturation_examples(arr):
    assert saturation_piece(m_power(QQ, 3, 2), 1) == 3
    assert saturation_piece(FoldIdeal(arr, 3), 2) == 5
    assert saturation_piece(ideal(QQ, 3, [monomial(QQ, (1, 1, 0))]), 1) == 0
    assert saturation_piece(ideal(QQ, 3, [monomial(QQ, (1, 1, 0))]), 2) == 1
    assert saturation_piece(ideal(QQ, 3, []), 3) == 0
    assert [saturation_piece(FoldIdeal(arr, 3), j) for j in range(7)] == [0, 2, 5, 9, 14, 20, 27]


# -- point ideals --------------------------------------------------------------

def test_point_power_examples(arr):
    q = ProjectivePoint.of(QQ, (1, 2, 3))
    assert point_power_piece([PointIdealPower(q, 1)], 1, QQ) == 2
    assert point_power_piece([PointIdealPower(q, 2)], 2, QQ) == 3
    desc = sat_structure(arr, 3)
    assert desc == [PointIdealPower(ProjectivePoint.of(QQ, (0, 1, 0)), 1)]
    assert point_power_piece(desc, 2, QQ) == 5 == saturation_piece(FoldIdeal(arr, 3), 2)
    assert point_power_piece([], 2, QQ, 3) == 6
    with pytest.raises(InputError):
        point_power_piece([], 2, QQ)


def test_sat_structure_examples(arr):
    desc = {(pp.point.to_json(QQ)[0], pp.point.to_json(QQ)[1], pp.point.to_json(QQ)[2]): pp.exponent
            for pp in sat_structure(arr, 1)}
    assert desc[(0, 1, 0)] == 3 and desc[(1, 0, 0)] == 2
    assert sorted(desc.values()) == [1] * 6 + [2, 3]
    generic = example_arrangement().__class__.of(forms("x, y, z, x+y+z"))
    assert all(pp.exponent == 1 for pp in sat_structure(generic, 1))
    assert len(sat_structure(generic, 1)) == 6
    for b in (0, 4):
        with pytest.raises(DegreeRangeError):
            sat_structure(arr, b)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)).filter(any),
                          st.integers(1, 3)), min_size=1, max_size=3),
       st.integers(0, 4))
def test_point_powers_match_derivative_conditions(pairs, j):
    desc, seen = [], set()
    for coords, e in pairs:
        q = ProjectivePoint.of(QQ, coords)
        if q not in seen:
            seen.add(q)
            desc.append(PointIdealPower(q, e))
    expect = derivative_conditions_dim([(pp.point.coords, pp.exponent) for pp in desc], j)
    assert point_power_piece(desc, j, QQ) == expect


def test_min_weight_saturation_on_the_example(arr):
    pts = min_weight_points(arr)
    i = FoldIdeal(arr, 3)
    assert all(saturation_piece(i, j) == points_ideal_piece(pts, j, QQ) for j in range(7))
