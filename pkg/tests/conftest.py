"""Shared fixtures: worked-example tensors and seeded tensor factories."""

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from app.core.config import Settings, get_settings
from app.core.logging import configure_logging
from app.repositories.tensor_file import TensorFileRepository
from app.tensors.algebra import fro_norm
from app.tensors.structure import tensor_block_diag
from app.tensors.tensor import Tensor3, identity_tensor


@pytest.fixture(autouse=True, scope="session")
def quiet_logging():
    """Only warnings and errors reach stderr during tests."""
    configure_logging(Settings(log_level="WARNING"))


@pytest.fixture
def fresh_settings():
    """Clear the settings cache before and after a test that edits the environment."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def _q(*rows):
    """Matrix from rows of ints and 'a/b' strings."""
    return np.array([[float(Fraction(v)) for v in row] for row in rows])


# =============================================================================
# Worked examples
# =============================================================================


class KnownTensors:
    """Small tensors with known outer inverses."""

    @staticmethod
    def s_2x2x3() -> Tensor3:
        return Tensor3.from_slices([
            [[1, 1], [-2, 0]],
            [[0, 1], [1, -2]],
            [[0, -1], [1, 2]],
        ])

    @staticmethod
    def range_t_2x3x3() -> Tensor3:
        return Tensor3.from_slices([
            [[-1, 1, -2], [-2, 1, -2]],
            [[-2, 1, 1], [2, -2, 0]],
            [[2, -1, 2], [0, 1, 2]],
        ])

    @staticmethod
    def range_x() -> Tensor3:
        return Tensor3.from_slices([
            _q([0, "-1/3"], ["1/2", "1/6"]),
            _q([0, 0], ["-1/2", "-1/6"]),
            _q([1, "1/3"], [0, 0]),
        ])

    @staticmethod
    def null_t_3x2x3() -> Tensor3:
        return Tensor3.from_slices([
            [[0, 1], [1, -1], [0, 1]],
            [[1, 0], [0, 0], [1, 0]],
            [[0, 0], [-1, 1], [1, 1]],
        ])

    @staticmethod
    def null_x() -> Tensor3:
        return Tensor3.from_slices([
            _q(["-1/6", "-1/6"], ["2/3", "1/3"]),
            _q(["-1/6", "1/6"], ["-1/3", 0]),
            _q(["5/6", "1/2"], ["1/6", "1/6"]),
        ])

    @staticmethod
    def b_2x3x3() -> Tensor3:
        return Tensor3.from_slices([[[1, 2, 1], [0, 0, 1]]] * 3)

    @staticmethod
    def c_3x2x3() -> Tensor3:
        return Tensor3.from_slices([
            [[1, 2], [0, 0], [1, 1]],
            [[1, 2], [1, 0], [1, 1]],
            [[1, 2], [1, 0], [1, 1]],
        ])

    @staticmethod
    def mp_s_3x4x2() -> Tensor3:
        return Tensor3.from_slices([
            [[0, -1, -1, -1], [0, 1, -1, 1], [0, 0, 0, 0]],
            [[1, 1, 1, 0], [-1, -1, 1, 1], [0, 0, 0, 0]],
        ])

    @staticmethod
    def group_s_4x4x2() -> Tensor3:
        return Tensor3.from_slices([
            [[2, 2, 0, -1], [2, 4, 0, 1], [0, 0, 4, 1], [-1, 1, 1, 3]],
            [[0, -2, 0, -2], [-2, -4, 0, -1], [0, 0, -4, -1], [-2, -1, -1, 2]],
        ])

    @staticmethod
    def nilpotent_2x2x3() -> Tensor3:
        """Every Fourier slice is [[0, 1], [0, 0]]: t-index 2."""
        return Tensor3.from_slices([[[0, 1], [0, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 0]]])


@pytest.fixture
def known() -> type[KnownTensors]:
    return KnownTensors


# =============================================================================
# Seeded factories
# =============================================================================


class TensorFactory:
    """Seeded random tensors with controlled structure."""

    def __init__(self, seed: int = 0):
        self.rng = np.random.default_rng(seed)

    def dense(self, p: int, q: int, n: int, complex_: bool = False) -> Tensor3:
        data = self.rng.standard_normal((p, q, n))
        if complex_:
            data = data + 1j * self.rng.standard_normal((p, q, n))
        return Tensor3(data)

    def low_rank(self, p: int, q: int, n: int, rank: int) -> Tensor3:
        """Rows and columns outside a random ``rank``-sized subset are zero."""
        data = np.zeros((p, q, n))
        rows = self.rng.choice(p, size=rank, replace=False)
        cols = self.rng.choice(q, size=rank, replace=False)
        data[np.ix_(rows, cols, np.arange(n))] = self.rng.standard_normal((rank, rank, n))
        return Tensor3(data)

    def factored(self, p: int, q: int, n: int, rank: int) -> Tensor3:
        """``A * B`` with inner dimension ``rank``: every Fourier slice has rank ``rank``."""
        a = self.dense(p, rank, n)
        b = self.dense(rank, q, n)
        return a @ b

    def with_index(self, invertible: int, nilpotent: int, n: int) -> Tensor3:
        """Square tensor whose Drazin structure is known.

        An invertible block near ``2 I`` sits next to a strictly upper triangular
        block of order ``nilpotent`` held in the first frontal slice, so every
        Fourier slice has index ``nilpotent``. A symmetric permutation hides the
        block structure.
        """
        a_data = 0.1 * self.rng.standard_normal((invertible, invertible, n)) / n
        a = 2.0 * identity_tensor(invertible, n) + Tensor3(a_data)
        nil = np.zeros((nilpotent, nilpotent, n))
        nil[:, :, 0] = np.triu(self.rng.uniform(0.5, 1.5, (nilpotent, nilpotent)), 1)
        block = tensor_block_diag(a, Tensor3(nil))
        perm = self.rng.permutation(invertible + nilpotent)
        return Tensor3(block.data[np.ix_(perm, perm, np.arange(n))])


@pytest.fixture
def factory() -> TensorFactory:
    return TensorFactory(seed=2024)


@pytest.fixture
def repo(tmp_path: Path) -> TensorFileRepository:
    return TensorFileRepository(tmp_path)


def relative_error(actual: np.ndarray | Tensor3, expected: np.ndarray | Tensor3) -> float:
    a = actual.data if isinstance(actual, Tensor3) else np.asarray(actual)
    b = expected.data if isinstance(expected, Tensor3) else np.asarray(expected)
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300))


def penrose_scales(s: Tensor3, x: Tensor3) -> dict[str, float]:
    """Backward-error scalings for E1..E5 and E1k (k = 1)."""
    ns, nx, n = fro_norm(s), fro_norm(x), s.n
    return {
        "e1": n * ns * ns * nx,
        "e2": n * nx * nx * ns,
        "e3": np.sqrt(n) * ns * nx,
        "e4": np.sqrt(n) * ns * nx,
        "e5": np.sqrt(n) * ns * nx,
    }
