from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cptensor.core import (
    Shape,
    SubsetTensor,
    SymTensor,
    binary_power,
    canonicalize,
    contract_full,
    contract_once,
    nonempty_subsets,
    orbit_size,
    rank_one,
    to_dense,
    to_subset,
)
from cptensor.errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotStronglySymmetric,
    WrongArity,
)

from .conftest import brute_array, brute_full, brute_once, fractions, raw_entry, subset_tensors


class TestCanonicalize:
    def test_distinct_set(self):
        idx = canonicalize((1, 1, 4, 5), Shape(4, 5))
        assert idx == (1, 1, 4, 5)
        assert idx.distinct_set() == {1, 4, 5}

    def test_sorts(self):
        assert canonicalize((3, 1, 2), Shape(3, 3)) == (1, 2, 3)

    def test_already_sorted(self):
        idx = canonicalize((2, 6, 9), Shape(3, 10))
        assert idx == (2, 6, 9) and idx.support == (2, 6, 9)

    def test_errors(self):
        with pytest.raises(IndexOutOfRange):
            canonicalize((0, 1, 2), Shape(3, 3))
        with pytest.raises(IndexOutOfRange):
            canonicalize((1, 4, 2), Shape(3, 3))
        with pytest.raises(WrongArity):
            canonicalize((1, 2), Shape(3, 3))

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            Shape(1, 3)
        with pytest.raises(ValueError):
            Shape(2, 0)


def test_orbit_size():
    assert orbit_size((1, 1, 2)) == 3
    assert orbit_size((1, 2, 3)) == 6
    assert orbit_size((4, 4, 4, 4)) == 1
    assert orbit_size((1, 1, 2, 2)) == 6


class TestRankOne:
    def test_unit_vector(self):
        A = rank_one([1, 0, 0], 3)
        assert dict(A.entries) == {(1, 1, 1): 1}

    def test_all_ones(self):
        A = rank_one([1, 1], 3)
        assert dict(A.entries) == {(1, 1, 1): 1, (1, 1, 2): 1, (1, 2, 2): 1, (2, 2, 2): 1}
        assert all(A[t] == 1 for t in [(2, 1, 1), (2, 1, 2), (2, 2, 1)])

    def test_mixed(self):
        u = (2, 0, 1)
        A = rank_one(u, 2)
        oracle = {(i, j): u[i - 1] * u[j - 1]
                  for i in range(1, 4) for j in range(i, 4) if u[i - 1] * u[j - 1]}
        assert dict(A.entries) == oracle == {(1, 1): 4, (1, 3): 2, (3, 3): 1}
        assert A[3, 1] == 2 and A[2, 2] == 0


class TestContract:
    def test_example_full(self, ex1):
        e2 = [0] * 10
        e2[1] = 1
        assert contract_full(ex1, e2) == 5
        assert contract_full(to_dense(ex1), e2) == 5

    def test_zero_vector(self, ex1):
        assert contract_full(ex1, [0] * 10) == 0
        assert list(contract_once(ex1, [0] * 10)) == [0] * 10

    def test_rank_one_full(self):
        assert contract_full(rank_one([1, 1], 3), [1, 1]) == 8

    def test_rank_one_once(self):
        assert list(contract_once(rank_one([1, 1], 3), [1, 1])) == [4, 4]

    def test_example_once(self, ex1):
        e2 = [0] * 10
        e2[1] = 1
        oracle = brute_once(raw_entry("m3_1"), 3, 10, e2)
        assert oracle == [0, 5, 1, 0, 0, 1, 0, 1, 1, 1]
        assert list(contract_once(ex1, e2)) == oracle
        assert list(contract_once(to_dense(ex1), e2)) == oracle

    def test_dimension_mismatch(self, ex1):
        with pytest.raises(DimensionMismatch):
            contract_full(ex1, [1, 2])
        with pytest.raises(DimensionMismatch):
            contract_once(to_dense(ex1), [1] * 11)

    def test_float_vector(self, ex1):
        x = np.linspace(0.1, 1.0, 10)
        got = contract_full(ex1, x)
        assert isinstance(got, float)
        assert got == pytest.approx(brute_full(raw_entry("m3_1"), 3, 10, x), rel=1e-12)
        once = contract_once(ex1, x)
        assert once.dtype == float
        np.testing.assert_allclose(once, brute_once(raw_entry("m3_1"), 3, 10, x), rtol=1e-12)


class TestConversions:
    def test_to_subset(self):
        A = SymTensor(3, 2, {(1, 1, 2): 3, (1, 2, 2): 3})
        assert dict(to_subset(A).values) == {(1, 2): 3}

    def test_to_subset_rejects(self):
        A = SymTensor(3, 2, {(1, 1, 2): 1, (1, 2, 2): 2})
        with pytest.raises(NotStronglySymmetric) as info:
            to_subset(A)
        assert info.value.witness == ((1, 1, 2), (1, 2, 2))
        assert info.value.values == (1, 2)

    def test_to_subset_partial_class(self):
        # (1,2,2) missing means zero there
        with pytest.raises(NotStronglySymmetric):
            to_subset(SymTensor(3, 2, {(1, 1, 2): 1}))

    def test_zero(self):
        assert len(to_subset(SymTensor(3, 4))) == 0

    def test_to_dense(self):
        assert dict(to_dense(SubsetTensor(2, 1, {(1,): 2})).entries) == {(1, 1): 2}
        D = to_dense(SubsetTensor(3, 2, {(1, 2): 1}))
        assert D[1, 1, 2] == D[1, 2, 2] == 1
        assert D[1, 1, 1] == D[2, 2, 2] == 0

    def test_example_dense(self, ex1):
        D = to_dense(ex1)
        slots = list(combinations_with_replacement(range(1, 11), 3))
        assert len(slots) == 220
        entry = raw_entry("m3_1")
        populated = [t for t in slots if entry(t) != 0]
        assert len(populated) == 44
        assert dict(D.entries) == {t: entry(t) for t in populated}

    def test_to_numpy_matches_brute(self, ex1):
        np.testing.assert_array_equal(ex1.to_numpy(), brute_array(raw_entry("m3_1"), 3, 10))

    def test_subset_tensor_rejects_bad_keys(self):
        with pytest.raises(ValueError):
            SubsetTensor(3, 3, {(1, 1): 1})
        with pytest.raises(WrongArity):
            SubsetTensor(2, 3, {(1, 2, 3): 1})
        with pytest.raises(IndexOutOfRange):
            SubsetTensor(2, 3, {(4,): 1})

    def test_backend_inference(self):
        assert SubsetTensor(2, 2, {(1,): 1, (2,): Fraction(1, 3)}).exact
        B = SubsetTensor(2, 2, {(1,): 1, (2,): 0.5})
        assert not B.exact and B.eps == 1e-12
        assert isinstance(B[1, 1], float)

    def test_binary_power(self):
        B = binary_power((1, 3), 3, 3, Fraction(2))
        assert dict(B.values) == {(1,): 2, (3,): 2, (1, 3): 2}
        assert B == to_subset(rank_one([Fraction(2) ** 0, 0, 1], 3) * 2)


@settings(max_examples=60, deadline=None)
@given(A=subset_tensors())
def test_permutation_invariance(A):
    D = to_dense(A)
    rng = random.Random(len(A))
    for key in list(D.entries)[:10]:
        perm = list(key)
        rng.shuffle(perm)
        assert D[tuple(perm)] == D[key] == A[tuple(perm)]


@settings(max_examples=60, deadline=None)
@given(A=subset_tensors())
def test_round_trips(A):
    assert to_subset(to_dense(A)) == A
    D = to_dense(A)
    assert to_dense(to_subset(D)) == D


@settings(max_examples=50, deadline=None)
@given(
    data=st.data(),
    m=st.integers(2, 4),
    n=st.integers(1, 4),
)
def test_rank_one_identities(data, m, n):
    u = data.draw(st.lists(fractions, min_size=n, max_size=n))
    x = data.draw(st.lists(fractions, min_size=n, max_size=n))
    A = rank_one(u, m)
    ux = sum(a * b for a, b in zip(u, x))
    assert contract_full(A, x) == ux**m
    assert list(contract_once(A, x)) == [ux ** (m - 1) * ui for ui in u]


@settings(max_examples=40, deadline=None)
@given(data=st.data(), A=subset_tensors(max_n=3))
def test_subset_contraction_matches_brute_force(data, A):
    x = data.draw(st.lists(fractions, min_size=A.n, max_size=A.n))
    entry = lambda t: A[t]  # noqa: E731
    assert contract_full(A, x) == brute_full(entry, A.m, A.n, x)
    assert list(contract_once(A, x)) == brute_once(entry, A.m, A.n, x)
    assert contract_full(A, x) == contract_full(to_dense(A), x)


@settings(max_examples=40, deadline=None)
@given(data=st.data(), A=subset_tensors())
def test_linearity(data, A):
    sets = list(nonempty_subsets(range(1, A.n + 1), A.m))
    B = SubsetTensor(A.m, A.n, data.draw(st.dictionaries(st.sampled_from(sets), fractions)))
    x = data.draw(st.lists(fractions, min_size=A.n, max_size=A.n))
    assert contract_full(A + B, x) == contract_full(A, x) + contract_full(B, x)
    assert contract_full(to_dense(A) - to_dense(B), x) == contract_full(A, x) - contract_full(B, x)


def test_dense_permuted_input_conflict():
    with pytest.raises(ValueError):
        SymTensor(2, 2, {(1, 2): 1, (2, 1): 2})
    A = SymTensor(2, 2, {(2, 1): 1})
    assert all(A[p] == 1 for p in permutations((1, 2)))
