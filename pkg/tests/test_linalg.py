"""Tests for the symmetric eigen solver and symmetric-function kernel."""

import math

import numpy as np
import pytest

from warpcurv.errors import ArgumentError, DegenerateMetricError, NumericalFailure
from warpcurv.linalg import (
    SymMatrix,
    cholesky_factor,
    elementary_symmetric,
    elementary_symmetric_all,
    kernel_selftest,
    mean_curvature_k,
    newton_tensors,
    shape_from_forms,
    sym_eigen,
)


def random_symmetric(n: int, seed: int) -> SymMatrix:
    raw = np.random.default_rng(seed).normal(size=(n, n))
    return SymMatrix(raw + raw.T)


class TestSymMatrix:
    def test_symmetrizes_input(self):
        S = SymMatrix(np.array([[1.0, 2.0], [4.0, 3.0]]))
        assert S.entries[0, 1] == S.entries[1, 0] == 3.0

    def test_entries_are_read_only(self):
        S = SymMatrix.identity(3)
        with pytest.raises(ValueError):
            S.entries[0, 0] = 2.0

    @pytest.mark.parametrize("n", [1, 9])
    def test_dimension_limits(self, n):
        with pytest.raises(ArgumentError):
            SymMatrix(np.eye(n))

    def test_non_finite_rejected(self):
        with pytest.raises(NumericalFailure):
            SymMatrix(np.array([[1.0, np.nan], [np.nan, 1.0]]))


class TestSymEigen:
    def test_diagonal_sorted_ascending(self):
        spectrum = sym_eigen(SymMatrix.diagonal([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(spectrum.values, [1.0, 2.0, 3.0])

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_reconstruction_and_orthonormality(self, n):
        S = random_symmetric(n, seed=n)
        spectrum = sym_eigen(S)
        np.testing.assert_allclose(spectrum.reconstruct(), S.entries, atol=1e-12)
        np.testing.assert_allclose(spectrum.basis.T @ spectrum.basis, np.eye(n), atol=1e-12)
        np.testing.assert_allclose(spectrum.values, np.linalg.eigvalsh(S.entries), atol=1e-12)

    def test_zero_matrix(self):
        spectrum = sym_eigen(SymMatrix(np.zeros((3, 3))))
        assert np.all(spectrum.values == 0.0)

    def test_deterministic(self):
        S = random_symmetric(4, seed=7)
        a, b = sym_eigen(S), sym_eigen(S)
        assert np.array_equal(a.values, b.values)
        assert np.array_equal(a.basis, b.basis)


class TestSymmetricFunctions:
    def test_elementary_symmetric_all(self):
        assert elementary_symmetric_all([1.0, 2.0, 3.0]) == [1.0, 6.0, 11.0, 6.0]

    def test_single_order(self):
        assert elementary_symmetric([1.0, 2.0, 3.0], 2) == 11.0

    def test_order_out_of_range(self):
        with pytest.raises(ArgumentError):
            elementary_symmetric([1.0, 2.0], 3)
        with pytest.raises(ArgumentError):
            mean_curvature_k([1.0, 2.0], -1)

    def test_mean_curvature_k(self):
        assert mean_curvature_k([1.0, 2.0, 3.0], 2) == pytest.approx(11.0 / 3.0)
        assert mean_curvature_k([1.0, 2.0, 3.0], 0) == 1.0


class TestNewtonTensors:
    @pytest.mark.parametrize("n", [2, 3, 4, 6])
    def test_trace_identities(self, n):
        A = random_symmetric(n, seed=10 + n)
        profile = newton_tensors(A)
        assert np.array_equal(profile.newton[0].entries, np.eye(n))
        for k in range(n):
            assert profile.newton[k].trace() == pytest.approx((n - k) * profile.sigma[k], abs=1e-9)
        for k in range(1, n + 1):
            product = np.trace(A.entries @ profile.newton[k - 1].entries)
            assert product == pytest.approx(k * profile.sigma[k], abs=1e-9)

    def test_cayley_hamilton_closure(self):
        A = random_symmetric(4, seed=3)
        profile = newton_tensors(A)
        closed = profile.sigma[4] * np.eye(4) - A.entries @ profile.newton[3].entries
        np.testing.assert_allclose(closed, np.zeros((4, 4)), atol=1e-9)

    def test_umbilic_profile(self):
        profile = newton_tensors(SymMatrix.identity(3))
        assert profile.hk == pytest.approx((1.0, 1.0, 1.0, 1.0))
        assert profile.umbilicity_defect == 0.0
        assert profile.mean_curvature == 1.0


class TestFundamentalForms:
    def test_shape_operator_spectrum(self):
        rng = np.random.default_rng(5)
        base = rng.normal(size=(3, 3))
        g = SymMatrix(base @ base.T + 3.0 * np.eye(3))
        h = random_symmetric(3, seed=6)
        expected = np.sort(np.linalg.eigvals(np.linalg.solve(g.entries, h.entries)).real)
        np.testing.assert_allclose(sym_eigen(shape_from_forms(g, h)).values, expected, atol=1e-10)

    def test_indefinite_metric(self):
        with pytest.raises(DegenerateMetricError):
            cholesky_factor(SymMatrix.diagonal([1.0, -1.0]))

    def test_dimension_mismatch(self):
        with pytest.raises(ArgumentError):
            shape_from_forms(SymMatrix.identity(2), SymMatrix.identity(3))


def test_kernel_selftest_passes():
    report = kernel_selftest(samples=40, seed=1)
    assert report.passed
    assert report.samples == 40
    assert math.isfinite(report.newton_closure)
