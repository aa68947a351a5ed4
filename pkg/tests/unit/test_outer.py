"""Unit tests for outer inverses with prescribed range and null space."""

import numpy as np
import pytest

from app.core.exceptions import (
    DimensionMismatchError,
    ExistenceFailedError,
    IndexTooLargeError,
    InvalidParameterError,
)
from app.gallery.generators import GallerySpec, generate
from app.outer.direct import outer_full_rank, outer_null, outer_range, outer_range_null
from app.outer.engine import InverseEngine, InverseKind
from app.outer.existence import exists_null, exists_range, exists_range_null
from app.outer.flattened import (
    flat_drazin,
    flat_group,
    flat_moore_penrose,
    flat_outer_null,
    flat_outer_range,
    flat_outer_range_null,
)
from app.outer.representations import representation_null, representation_range
from app.outer.results import PrescriptionKind
from app.outer.special import drazin, group_inverse, moore_penrose, one_inverse_tensor
from app.outer.tqr import t_qrcp
from app.tensors.algebra import (
    fro_norm,
    t_index,
    t_inverse,
    t_power,
    t_rank,
    t_transpose,
    tprod,
    tprod_chain,
)
from app.tensors.structure import bcirc
from app.tensors.tensor import Tensor3, identity_tensor
from app.verification.metrics import residuals
from tests.conftest import TensorFactory, penrose_scales, relative_error


def _selector() -> Tensor3:
    """Every Fourier slice is diag(1, 0)."""
    data = np.zeros((2, 2, 3))
    data[0, 0, 0] = 1.0
    return Tensor3(data)


class TestWorkedExamples:
    """Tests reproducing small examples with known inverses."""

    def test_range_prescribed(self, known):
        """Test S^(2) with range R(T) on the 2x2x3 example."""
        result = outer_range(known.s_2x2x3(), known.range_t_2x3x3())
        assert dict(result.ranks_checked) == {"rank_t(S*T)": 5, "rank_t(T)": 5}
        assert result.prescription.kind is PrescriptionKind.RANGE_ONLY
        assert result.inverse.is_real
        np.testing.assert_allclose(result.inverse.data, known.range_x().data, atol=1e-10)

    def test_range_witness(self, known):
        """Test X = T * W for the returned witness."""
        t = known.range_t_2x3x3()
        result = outer_range(known.s_2x2x3(), t)
        assert relative_error(tprod(t, result.range_witness), result.inverse) <= 1e-12
        assert t_rank(result.inverse) == t_rank(t) == 5

    def test_null_prescribed(self, known):
        """Test S^(2) with null space N(T) on the 2x2x3 example."""
        result = outer_null(known.s_2x2x3(), known.null_t_3x2x3())
        assert dict(result.ranks_checked) == {"rank_t(T*S)": 5, "rank_t(T)": 5}
        np.testing.assert_allclose(result.inverse.data, known.null_x().data, atol=1e-10)
        t = known.null_t_3x2x3()
        assert relative_error(tprod(result.null_witness, t), result.inverse) <= 1e-12

    def test_range_null_example_fails_rank_condition(self, known):
        """Test the B, C pair violates rank_t(CTB) = rank_t(B) = rank_t(C).

        B has identical frontal slices, so only one Fourier slice is nonzero
        and the three ranks come out as 1, 2 and 4.
        """
        with pytest.raises(ExistenceFailedError) as info:
            outer_range_null(known.s_2x2x3(), known.b_2x3x3(), known.c_3x2x3())
        assert info.value.ranks == {"rank_t(C*T*B)": 1, "rank_t(B)": 2, "rank_t(C)": 4}
        assert info.value.exit_code == 3

    def test_moore_penrose_example(self, known):
        """Test S^† of the 3x4x2 example on the direct, flattened and QR routes."""
        s = known.mp_s_3x4x2()
        direct = moore_penrose(s).inverse
        report = residuals(s, direct)
        assert max(report.e1, report.e2, report.e3, report.e4) <= 1e-12
        assert relative_error(bcirc(direct).entries, flat_moore_penrose(bcirc(s).entries)) <= 1e-10

        via_qr = InverseEngine().compute(InverseKind.MOORE_PENROSE, s, method="qr")
        assert via_qr.extras["partition_rank"] == 2
        np.testing.assert_allclose(via_qr.inverse.data, direct.data, atol=1e-10)

    def test_moore_penrose_example_partition(self, known):
        """Test the t-QR of S^T has a 4x2x2 Q̃."""
        partition = t_qrcp(t_transpose(known.mp_s_3x4x2()))
        assert partition.q_tilde.shape == (4, 2, 2)
        assert partition.s == 2

    def test_group_example(self, known):
        """Test S^# of the 4x4x2 example: E1, E2, E5 below 1e-8."""
        s = known.group_s_4x4x2()
        result = group_inverse(s)
        assert result.extras["index"] == 1
        report = residuals(s, result.inverse)
        assert max(report.e1, report.e2, report.e5) <= 1e-8

        via_qr = InverseEngine().compute(InverseKind.GROUP, s, method="qr")
        np.testing.assert_allclose(via_qr.inverse.data, result.inverse.data, atol=1e-10)


class TestExistence:
    """Tests for the rank conditions."""

    def test_examples_satisfy_conditions(self, known):
        """Test the one-sided examples pass and the two-sided one fails."""
        s = known.s_2x2x3()
        assert exists_range(s, known.range_t_2x3x3())
        assert exists_null(s, known.null_t_3x2x3())
        assert not exists_range_null(s, known.b_2x3x3(), known.c_3x2x3())

    def test_range_violation_reports_ranks(self):
        """Test a rank-dropping S gives the rank tuple (3, 6)."""
        with pytest.raises(ExistenceFailedError) as info:
            outer_range(_selector(), identity_tensor(2, 3))
        assert info.value.ranks == {"rank_t(S*T)": 3, "rank_t(T)": 6}
        assert info.value.condition == "rank_t(S*T) = rank_t(T)"

    def test_null_violation_reports_ranks(self):
        """Test the null-space condition fails symmetrically."""
        with pytest.raises(ExistenceFailedError) as info:
            outer_null(_selector(), identity_tensor(2, 3))
        assert info.value.ranks == {"rank_t(T*S)": 3, "rank_t(T)": 6}

    def test_zero_range_always_exists(self, factory):
        """Test a zero T trivially satisfies the range condition."""
        assert exists_range(factory.dense(3, 4, 2), Tensor3.zeros(4, 2, 2))

    def test_zero_s_fails_for_nonzero_t(self, factory):
        """Test S = 0 cannot have an outer inverse with a nonzero range."""
        assert not exists_range(Tensor3.zeros(3, 4, 2), factory.dense(4, 2, 2))

    def test_shape_errors(self, factory):
        """Test non-conformable operands are rejected."""
        with pytest.raises(DimensionMismatchError):
            outer_range(factory.dense(2, 3, 2), factory.dense(2, 2, 2))
        with pytest.raises(DimensionMismatchError):
            outer_null(factory.dense(2, 3, 2), factory.dense(2, 3, 2))


class TestRepresentations:
    """Tests for the parametrized families."""

    def test_zero_parameter_gives_outer_range(self, known):
        """Test Z = 0 reproduces outer_range."""
        s, t = known.s_2x2x3(), known.range_t_2x3x3()
        x = representation_range(s, t, Tensor3.zeros(3, 2, 3))
        np.testing.assert_allclose(x.data, outer_range(s, t).inverse.data, atol=1e-12)

    def test_range_family_members_are_outer_inverses(self, known, factory):
        """Test X S X = X and R(X) inside R(T) for a random Z."""
        s, t = known.s_2x2x3(), known.range_t_2x3x3()
        x = representation_range(s, t, factory.dense(3, 2, 3))
        assert relative_error(tprod_chain(x, s, x), x) <= 1e-10
        projector = tprod(t, moore_penrose(t).inverse)
        assert relative_error(tprod(projector, x), x) <= 1e-10

    def test_null_family_members_are_outer_inverses(self, known, factory):
        """Test X S X = X and N(T) inside N(X) for a random Z."""
        s, t = known.s_2x2x3(), known.null_t_3x2x3()
        x = representation_null(s, t, factory.dense(2, 3, 3))
        assert relative_error(tprod_chain(x, s, x), x) <= 1e-10
        projector = tprod(moore_penrose(t).inverse, t)
        assert relative_error(tprod(x, projector), x) <= 1e-10

    def test_zero_parameter_gives_outer_null(self, known):
        """Test Z = 0 reproduces outer_null."""
        s, t = known.s_2x2x3(), known.null_t_3x2x3()
        x = representation_null(s, t, Tensor3.zeros(2, 3, 3))
        np.testing.assert_allclose(x.data, outer_null(s, t).inverse.data, atol=1e-12)

    def test_parameter_shape(self, known):
        """Test a wrongly shaped Z is rejected."""
        with pytest.raises(DimensionMismatchError):
            representation_range(known.s_2x2x3(), known.range_t_2x3x3(), Tensor3.zeros(2, 2, 3))


class TestSpecialInverses:
    """Tests for Moore-Penrose, Drazin and group inverses."""

    @pytest.mark.parametrize("seed", range(50))
    def test_penrose_equations(self, seed):
        """Test equations (1)-(4) on random and rank-deficient tensors."""
        f = TensorFactory(seed)
        rng = np.random.default_rng(1000 + seed)
        p, q = (int(v) for v in rng.integers(1, 9, size=2))
        n = int(rng.integers(1, 7))
        if seed % 3 == 0:
            s = f.low_rank(p, q, n, rank=max(1, min(p, q) - 1))
        elif seed % 3 == 1:
            s = f.dense(p, q, n, complex_=seed % 2 == 0)
        else:
            s = f.low_rank(max(p, 2), max(q, 2), n, rank=1)
        x = moore_penrose(s).inverse
        report = residuals(s, x)
        scales = penrose_scales(s, x)
        for name in ("e1", "e2", "e3", "e4"):
            assert getattr(report, name) <= 1e-10 * max(scales[name], 1.0), name

    def test_real_input_gives_real_inverse(self, factory):
        """Test conjugate symmetry keeps S^† real."""
        assert moore_penrose(factory.dense(3, 5, 4)).inverse.is_real

    def test_moore_penrose_ranks_agree(self, factory):
        """Test the rank record for S^†."""
        result = moore_penrose(factory.low_rank(4, 3, 2, rank=2))
        assert dict(result.ranks_checked) == {"rank_t(S)": 4, "rank_t(S^*)": 4}

    @pytest.mark.parametrize("seed", range(20))
    def test_drazin_equations(self, seed):
        """Test equations (1^k), (2) and (5) on tensors of index 1 to 3."""
        f = TensorFactory(seed)
        nilpotent = 1 + seed % 3
        s = f.with_index(invertible=2 + seed % 4, nilpotent=nilpotent, n=1 + seed % 5)
        result = drazin(s)
        k = result.prescription.power
        assert k == result.extras["index"] == nilpotent
        x = result.inverse
        report = residuals(s, x, k=k)
        ns, nx = fro_norm(s), fro_norm(x)
        scale = s.n * max(ns, 1.0) ** (k + 1) * max(nx, 1.0) ** 2
        assert report.e1k <= 1e-9 * scale
        assert report.e2 <= 1e-9 * scale
        assert report.e5 <= 1e-9 * scale

    def test_drazin_power_above_index(self, factory):
        """Test any power at least the index gives the same inverse."""
        s = factory.with_index(3, 2, 3)
        base = drazin(s).inverse
        assert relative_error(drazin(s, power=3).inverse, base) <= 1e-9

    def test_drazin_power_below_index(self, factory):
        """Test a power below the index is rejected."""
        with pytest.raises(InvalidParameterError):
            drazin(factory.with_index(2, 3, 2), power=1)

    def test_drazin_of_invertible_is_inverse(self, factory):
        """Test index 0 gives the ordinary inverse."""
        s = factory.dense(3, 3, 2) + 5.0 * identity_tensor(3, 2)
        x = drazin(s).inverse
        assert relative_error(tprod(s, x), identity_tensor(3, 2)) <= 1e-12

    def test_group_rejects_index_two(self, known):
        """Test the group inverse needs index at most 1."""
        with pytest.raises(IndexTooLargeError) as info:
            group_inverse(known.nilpotent_2x2x3())
        assert info.value.details["index"] == 2
        assert info.value.exit_code == 4

    def test_group_of_invertible_gallery_tensor(self):
        """Test index 0 gives the group inverse as the ordinary inverse."""
        s = generate(GallerySpec(family="cycol", rows=16, cols=16, n=8, slice_rule="perturb", seed=3))
        assert t_index(s) == 0
        result = group_inverse(s)
        assert result.extras["index"] == 0
        assert relative_error(result.inverse, t_inverse(s)) <= 1e-8
        assert relative_error(drazin(s).inverse, t_inverse(s)) <= 1e-8

    def test_drazin_of_high_index_gallery_tensor(self):
        """Test a chow tensor of large index gets its Drazin inverse."""
        s = generate(GallerySpec(family="chow", rows=16, cols=16, n=8))
        result = drazin(s)
        assert result.extras["index"] == t_index(s) > 1
        assert dict(result.ranks_checked)["rank_t(T^k)"] > 0
        x = result.inverse
        assert relative_error(tprod_chain(x, s, x), x) <= 1e-6

    def test_group_equals_drazin_at_index_one(self, factory):
        """Test S^# = S^D when the index is 1."""
        s = factory.with_index(3, 1, 3)
        assert relative_error(group_inverse(s).inverse, drazin(s).inverse) <= 1e-10

    def test_one_inverse_tensor(self, factory):
        """Test T * G * T = T."""
        t = factory.low_rank(4, 5, 3, rank=2)
        g = one_inverse_tensor(t)
        assert relative_error(tprod_chain(t, g, t), t) <= 1e-12

    def test_one_inverse_matches_bcirc(self, factory):
        """Test bcirc(G) is a {1}-inverse of bcirc(T)."""
        t = factory.dense(3, 2, 4)
        b, g = bcirc(t).entries, bcirc(one_inverse_tensor(t)).entries
        np.testing.assert_allclose(b @ g @ b, b, atol=1e-11)


class TestFullRank:
    """Tests for the full-rank decomposition formula."""

    def test_matches_moore_penrose(self, factory):
        """Test B = Q̃, C = R̃ * P^T from t-QR of S^T reproduce S^†."""
        s = factory.dense(5, 3, 4)
        partition = t_qrcp(t_transpose(s))
        c = tprod(partition.r_tilde, t_transpose(partition.permutation))
        result = outer_full_rank(s, partition.q_tilde, c)
        assert result.prescription.kind is PrescriptionKind.FULL_RANK
        assert relative_error(result.inverse, moore_penrose(s).inverse) <= 1e-9

    def test_singular_middle(self, factory):
        """Test a zero B leaves C*T*B singular."""
        s = factory.dense(3, 3, 2)
        with pytest.raises(ExistenceFailedError):
            outer_full_rank(s, Tensor3.zeros(3, 2, 2), factory.dense(2, 3, 2))


class TestOracleEquivalence:
    """Tests comparing the Fourier path against the block-circulant matrix path."""

    @pytest.mark.parametrize("seed", range(30))
    def test_outer_inverses_match_flattened(self, seed):
        """Test bcirc(X) equals the matrix-level result for every prescription."""
        f = TensorFactory(seed)
        rng = np.random.default_rng(500 + seed)
        n = int(rng.integers(1, 5))
        p, q = (int(v) for v in rng.integers(2, 30 // n + 1, size=2).clip(max=7))
        k = max(1, min(p, q) - 1)
        s = f.dense(p, q, n)
        bs = bcirc(s).entries

        t_range = f.dense(q, k, n)
        x = outer_range(s, t_range).inverse
        assert relative_error(bcirc(x).entries, flat_outer_range(bs, bcirc(t_range).entries)) <= 1e-9

        t_null = f.dense(k, p, n)
        x = outer_null(s, t_null).inverse
        assert relative_error(bcirc(x).entries, flat_outer_null(bs, bcirc(t_null).entries)) <= 1e-9

        b, c = f.dense(q, k, n), f.dense(k, p, n)
        x = outer_range_null(s, b, c).inverse
        expected = flat_outer_range_null(bs, bcirc(b).entries, bcirc(c).entries)
        assert relative_error(bcirc(x).entries, expected) <= 1e-9

        x = moore_penrose(s).inverse
        assert relative_error(bcirc(x).entries, flat_moore_penrose(bs)) <= 1e-9

    @pytest.mark.parametrize("seed", range(10))
    def test_drazin_and_group_match_flattened(self, seed):
        """Test Drazin and group inverses against the matrix path."""
        f = TensorFactory(seed)
        s = f.with_index(invertible=3, nilpotent=2, n=1 + seed % 4)
        expected = flat_drazin(bcirc(s).entries)
        assert relative_error(bcirc(drazin(s).inverse).entries, expected) <= 1e-9

        g = f.with_index(invertible=3, nilpotent=1, n=1 + seed % 4)
        expected = flat_group(bcirc(g).entries)
        assert relative_error(bcirc(group_inverse(g).inverse).entries, expected) <= 1e-9

    def test_t_rank_of_drazin_power(self, factory):
        """Test rank_t(S^k) drops to the invertible part once k reaches the index."""
        s = factory.with_index(3, 2, 2)
        assert t_rank(t_power(s, 2)) == t_rank(t_power(s, 3)) == 6


class TestEngine:
    """Tests for the InverseEngine dispatcher."""

    def test_outer_dispatch(self, known):
        """Test range, null and range-null dispatch."""
        engine = InverseEngine()
        s = known.s_2x2x3()
        r = engine.compute("outer", s, range_tensor=known.range_t_2x3x3())
        assert r.prescription.kind is PrescriptionKind.RANGE_ONLY
        r = engine.compute("outer", s, null_tensor=known.null_t_3x2x3())
        assert r.prescription.kind is PrescriptionKind.NULL_ONLY

    def test_outer_needs_prescription(self, known):
        """Test missing operands are a usage error."""
        with pytest.raises(InvalidParameterError):
            InverseEngine().compute("outer", known.s_2x2x3())
        with pytest.raises(InvalidParameterError):
            InverseEngine().compute("outer", known.s_2x2x3(), b=known.b_2x3x3())

    def test_drazin_qr_route(self, factory):
        """Test the QR route with T = S^k gives the Drazin inverse."""
        s = factory.with_index(3, 2, 1)
        via_qr = InverseEngine().compute("drazin", s, method="qr")
        assert via_qr.prescription.kind is PrescriptionKind.DRAZIN
        assert via_qr.prescription.power == 2
        assert relative_error(via_qr.inverse, drazin(s).inverse) <= 1e-9

    def test_drazin_qr_route_power_check(self, factory):
        """Test a power below the index is rejected on the QR route too."""
        with pytest.raises(InvalidParameterError):
            InverseEngine().compute("drazin", factory.with_index(2, 2, 1), method="qr", power=1)
