"""Residual checks for generalized inverses."""

from app.verification.metrics import ErrorReport, ResidualPath, matrix_residuals, residuals

__all__ = ["ErrorReport", "ResidualPath", "matrix_residuals", "residuals"]
