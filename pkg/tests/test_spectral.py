from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cptensor.core import SubsetTensor, SymTensor, rank_one
from cptensor.elimination import eliminate, to_cp_factors
from cptensor.errors import NoConvergence, NotUnitNorm, ZeroVector
from cptensor.worked_examples import example_tensor
from cptensor.spectral import (
    HEigenpair,
    IterationConfig,
    axm,
    axm1,
    check_cp_spectral_properties,
    dense_array,
    h_eigenpair_power,
    multistart_h,
    multistart_z,
    verify_h_eigenpair,
    verify_z_eigenpair,
    z_eigenpair_power,
)


class TestVerify:
    def test_h_residual(self):
        A = rank_one([1, 2], 3)
        v = verify_h_eigenpair(A, (4, (1, 1)))
        assert not v.ok and v.residual == 14

    def test_h_exact(self):
        A = SubsetTensor(3, 3, {(1,): 1, (2,): 3, (3,): 2})
        v = verify_h_eigenpair(A, (3, (0, 1, 0)))
        assert v.ok and v.residual == 0 and v.lam == 3

    def test_h_zero(self):
        with pytest.raises(ZeroVector):
            verify_h_eigenpair(rank_one([1, 2], 3), (1, (0, 0)))

    def test_z_rank_one(self):
        u = np.array([3.0, 4.0])
        v = verify_z_eigenpair(rank_one(u, 3), (125.0, u / 5))
        assert v.ok and v.lam == pytest.approx(125.0)

    def test_z_unit_norm(self):
        with pytest.raises(NotUnitNorm):
            verify_z_eigenpair(rank_one([1, 1], 3), (1, (1, 1)))

    def test_z_rayleigh_mismatch(self):
        assert not verify_z_eigenpair(rank_one([1, 0], 2), (2.0, (1.0, 0.0))).ok


def test_contractions_match_einsum():
    rng = np.random.default_rng(1)
    T = rng.standard_normal((3, 3, 3))
    T = sum(T.transpose(p) for p in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)])
    x = rng.standard_normal(3)
    np.testing.assert_allclose(axm1(T, x), np.einsum("ijk,j,k->i", T, x, x))
    assert axm(T, x) == pytest.approx(np.einsum("ijk,i,j,k->", T, x, x, x))


def test_dense_array_types(ex1):
    assert dense_array(ex1).shape == (10, 10, 10)
    with pytest.raises(TypeError):
        dense_array([[1]])


class TestHPower:
    def test_diagonal(self):
        A = SubsetTensor(3, 3, {(1,): 1, (2,): 3, (3,): 2})
        p = h_eigenpair_power(A)
        assert p.converged and p.lam == pytest.approx(3, abs=1e-8)
        assert np.argmax(p.x) == 1
        assert p.monotone_violations == 0

    def test_rank_one_spectral_radius(self):
        # x = u^(1/(m-1)) gives lam = (sum u^(m/(m-1)))^(m-1)
        u = np.array([1.0, 2.0, 0.5])
        p = h_eigenpair_power(rank_one(u, 4))
        assert p.lam == pytest.approx(np.sum(u ** (4 / 3)) ** 3, rel=1e-8)
        np.testing.assert_allclose(p.x / p.x[0], u ** (1 / 3), rtol=1e-6)
        assert verify_h_eigenpair(rank_one(u, 4), p).ok

    def test_examples(self, case):
        A = example_tensor(case)
        p = h_eigenpair_power(A)
        assert p.converged and p.lam > 0
        assert verify_h_eigenpair(A, p).ok

    def test_rejects(self):
        with pytest.raises(ValueError):
            h_eigenpair_power(SubsetTensor(2, 2, {(1, 2): -1}))
        with pytest.raises(ValueError):
            h_eigenpair_power(SubsetTensor(2, 2))
        with pytest.raises(ValueError):
            h_eigenpair_power(rank_one([1, 1], 3), x0=[1, 0])

    def test_no_convergence(self):
        A = SubsetTensor(3, 3, {(1,): 1, (2,): 1.01, (3,): 1})
        with pytest.raises(NoConvergence) as info:
            h_eigenpair_power(A, IterationConfig(max_iters=3))
        assert isinstance(info.value.best, HEigenpair)
        assert info.value.best.iterations == 3


class TestZPower:
    def test_matrix_matches_eigh(self):
        rng = np.random.default_rng(5)
        M = rng.standard_normal((4, 4))
        M = M + M.T
        A = SymTensor.from_numpy(M)
        p = z_eigenpair_power(A, x0=np.ones(4))
        assert p.lam == pytest.approx(np.linalg.eigvalsh(M)[-1], abs=1e-7)
        assert verify_z_eigenpair(A, p).ok

    def test_zero_step(self):
        p = z_eigenpair_power(rank_one([2.0], 3), x0=[-1.0])
        assert p.converged and p.lam == -8.0 and p.residual == 0

    def test_zero_start(self):
        with pytest.raises(ZeroVector):
            z_eigenpair_power(rank_one([1, 1], 3), x0=[0, 0])

    def test_multistart_deterministic(self, ex1):
        cfg = IterationConfig(starts=3, seed=4)
        a, _ = multistart_z(ex1, cfg)
        b, _ = multistart_z(ex1, cfg)
        assert [p.lam for p in a] == [p.lam for p in b]
        h, fails = multistart_h(ex1, cfg)
        assert len(h) + len(fails) == 3


@settings(max_examples=25, deadline=None)
@given(
    u=st.lists(st.floats(0.0, 2.0), min_size=1, max_size=4).filter(lambda v: sum(v) > 0.1),
    m=st.integers(2, 4),
)
def test_rank_one_z_oracle(u, m):
    u = np.array(u)
    p = z_eigenpair_power(rank_one(u, m), x0=np.full(len(u), 0.5))
    assert p.lam == pytest.approx(np.linalg.norm(u) ** m, abs=1e-6)


def test_cp_properties_on_example(ex1):
    d, _ = eliminate(ex1)
    report = check_cp_spectral_properties(ex1, to_cp_factors(d), IterationConfig(starts=3))
    assert report.passed
    assert len(report.details["h_pairs"]) + len(report.details["h_failures"]) == 3


def test_cp_properties_rejects_wrong_factors(ex1):
    d, _ = eliminate(example_tensor("m3_2"))
    with pytest.raises(ValueError):
        check_cp_spectral_properties(ex1, to_cp_factors(d))


def test_config_validation():
    with pytest.raises(ValueError):
        IterationConfig(max_iters=0)
    with pytest.raises(ValueError):
        IterationConfig(tol=0)
