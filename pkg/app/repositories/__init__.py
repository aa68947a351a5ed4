"""Data access layer.

    from app.repositories import TensorFileRepository
"""

from app.repositories.tensor_file import TensorFileRepository, decode, encode

__all__ = ["TensorFileRepository", "decode", "encode"]
