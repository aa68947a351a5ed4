"""Unit tests for the dense slice kernels."""

import numpy as np
import pytest
import scipy.linalg

from app.core.exceptions import DimensionMismatchError, InvalidRankError, SingularError
from app.linalg.kernels import (
    drazin_slice,
    lu_inverse,
    lu_solve,
    one_inverse,
    pinv,
    power_index,
    svd_rank,
)
from app.linalg.qr import qrcp, rand_qrcp


@pytest.fixture
def rng():
    return np.random.default_rng(11)


def rank_deficient(rng, m, n, r):
    return rng.standard_normal((m, r)) @ rng.standard_normal((r, n))


class TestPinv:
    """Tests for pinv and one_inverse."""

    def test_penrose_equations(self, rng):
        """Test all four Penrose equations on a rank-deficient matrix."""
        a = rank_deficient(rng, 6, 4, 2)
        x = pinv(a)
        assert x.shape == (4, 6)
        np.testing.assert_allclose(a @ x @ a, a, atol=1e-12)
        np.testing.assert_allclose(x @ a @ x, x, atol=1e-12)
        np.testing.assert_allclose(a @ x, (a @ x).T, atol=1e-12)
        np.testing.assert_allclose(x @ a, (x @ a).T, atol=1e-12)

    def test_matches_numpy(self, rng):
        """Test agreement with numpy's pseudoinverse."""
        a = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
        np.testing.assert_allclose(pinv(a), np.linalg.pinv(a), atol=1e-12)

    def test_zero_matrix(self):
        """Test the pseudoinverse of zero is zero."""
        assert not pinv(np.zeros((2, 3))).any()

    def test_cutoff_truncates(self):
        """Test an absolute cutoff drops small singular values."""
        x = pinv(np.diag([2.0, 1e-9]), cutoff=1e-6)
        np.testing.assert_allclose(x, np.diag([0.5, 0.0]))

    def test_one_inverse(self, rng):
        """Test A G A = A."""
        a = rank_deficient(rng, 4, 5, 3)
        np.testing.assert_allclose(a @ one_inverse(a) @ a, a, atol=1e-12)


class TestRankAndIndex:
    """Tests for svd_rank and power_index."""

    def test_svd_rank(self, rng):
        """Test numerical rank of a product."""
        assert svd_rank(rank_deficient(rng, 7, 7, 3)) == 3

    def test_index_of_jordan_block(self):
        """Test a nilpotent Jordan block of order 3 has index 3."""
        assert power_index(np.eye(3, k=1), 1.0, 1e-14) == 3

    def test_index_of_invertible_and_projector(self):
        """Test invertible matrices have index 0 and projectors index 1."""
        assert power_index(np.diag([2.0, 3.0]), 3.0, 1e-14) == 0
        assert power_index(np.diag([1.0, 0.0]), 1.0, 1e-14) == 1


class TestDrazinSlice:
    """Tests for the slice Drazin kernel."""

    def test_jordan_plus_invertible_part(self):
        """Test a nilpotent block of order 2 next to the eigenvalue 2."""
        a = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 2.0]])
        x, r = drazin_slice(a, 2, 2.0, 1e-14)
        assert r == 1
        np.testing.assert_allclose(x, np.diag([0.0, 0.0, 0.5]), atol=1e-14)

    def test_power_above_index(self, rng):
        """Test larger powers give the same inverse."""
        p = rng.standard_normal((4, 4)) + 4 * np.eye(4)
        a = p @ np.diag([0.0, 1.0, -3.0, 0.5]) @ np.linalg.inv(p)
        scale = float(np.linalg.norm(a, 2))
        x1, r1 = drazin_slice(a, 1, scale, 1e-13)
        x3, r3 = drazin_slice(a, 3, scale, 1e-13)
        assert r1 == r3 == 3
        np.testing.assert_allclose(x3, x1, atol=1e-9)
        np.testing.assert_allclose(a @ x1, x1 @ a, atol=1e-9)
        np.testing.assert_allclose(x1 @ a @ x1, x1, atol=1e-9)

    def test_power_zero_is_inverse(self, rng):
        """Test k = 0 on an invertible matrix."""
        a = rng.standard_normal((4, 4)) + 4 * np.eye(4)
        x, r = drazin_slice(a, 0, float(np.linalg.norm(a, 2)), 1e-14)
        assert r == 4
        np.testing.assert_allclose(x @ a, np.eye(4), atol=1e-12)

    def test_power_below_index(self):
        """Test a power below the index leaves a singular core."""
        a = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 2.0]])
        with pytest.raises(SingularError):
            drazin_slice(a, 1, 2.0, 1e-14)

    def test_zero_matrix(self):
        """Test the zero matrix has the zero Drazin inverse."""
        x, r = drazin_slice(np.zeros((3, 3)), 1, 0.0, 1e-14)
        assert r == 0
        assert not x.any()


class TestLu:
    """Tests for LU solves."""

    def test_solve(self, rng):
        """Test A X = B."""
        a = rng.standard_normal((4, 4)) + 4 * np.eye(4)
        b = rng.standard_normal((4, 2))
        np.testing.assert_allclose(a @ lu_solve(a, b), b, atol=1e-12)
        np.testing.assert_allclose(lu_inverse(a) @ a, np.eye(4), atol=1e-12)

    def test_singular(self):
        """Test singular matrices raise."""
        with pytest.raises(SingularError):
            lu_inverse(np.array([[1.0, 2.0], [2.0, 4.0]]))

    def test_not_square(self):
        """Test rectangular matrices are rejected."""
        with pytest.raises(DimensionMismatchError):
            lu_solve(np.ones((2, 3)), np.ones((2, 1)))


class TestQrcp:
    """Tests for deterministic and sketched QR with column pivoting."""

    def test_factorization_and_rank(self, rng):
        """Test A P = Q R and the revealed rank."""
        a = rank_deficient(rng, 6, 5, 2)
        f = qrcp(a, cutoff=1e-10 * np.linalg.norm(a))
        assert f.rank == 2
        assert f.reconstruction_residual(a) <= 1e-12 * np.linalg.norm(a)
        np.testing.assert_allclose(a @ f.permutation_matrix, a[:, f.perm])

    def test_partition_reproduces_matrix(self, rng):
        """Test Q̃ R̃ P^H = A for the rank-s partition."""
        a = rank_deficient(rng, 5, 6, 3)
        f = qrcp(a)
        np.testing.assert_allclose(f.q_tilde @ f.r_tilde_unpermuted(), a, atol=1e-12)

    def test_conj(self, rng):
        """Test the conjugated factors factor the conjugate matrix."""
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        f = qrcp(a).conj()
        assert f.reconstruction_residual(np.conj(a)) <= 1e-12

    def test_randomized_spans_range(self, rng):
        """Test the sketched factorization captures an exactly low-rank matrix."""
        a = rank_deficient(rng, 8, 7, 3)
        f = rand_qrcp(a, 3, oversample=5, rng=0)
        np.testing.assert_allclose(f.q_tilde @ f.r_tilde_unpermuted(), a, atol=1e-10)

    def test_randomized_matches_deterministic_span(self, rng):
        """Test sketched and deterministic Q̃ span the same subspace."""
        a = rank_deficient(rng, 9, 8, 4)
        exact = qrcp(a, cutoff=1e-10 * np.linalg.norm(a))
        sketched = rand_qrcp(a, 4, oversample=5, rng=3)
        assert exact.rank == sketched.q_tilde.shape[1] == 4
        angles = scipy.linalg.subspace_angles(exact.q_tilde, sketched.q_tilde)
        assert float(np.max(angles)) <= 1e-8

    def test_randomized_seed_is_deterministic(self, rng):
        """Test the same seed gives the same pivots."""
        a = rng.standard_normal((6, 6))
        assert np.array_equal(rand_qrcp(a, 4, rng=7).perm, rand_qrcp(a, 4, rng=7).perm)

    def test_randomized_rank_range(self, rng):
        """Test out-of-range target ranks are rejected."""
        with pytest.raises(InvalidRankError):
            rand_qrcp(rng.standard_normal((3, 4)), 4)
        with pytest.raises(InvalidRankError):
            rand_qrcp(rng.standard_normal((3, 4)), 0)
