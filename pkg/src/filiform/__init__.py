"""Exact computation in truncated infinite filiform Lie algebras."""

from .algebra import (
    A, DomainError, Element, ParamTable, ResidualReport, Span, AbelianCheck,
    basis, bracket, bracket_basis, bracket_basis_oracle, derived_series,
    is_abelian_from, jacobi_check, jacobi_polynomials,
    jacobi_residual, jacobi_residual_polynomials,
)
from .polys import QuadPoly

__version__ = "0.1.0"
