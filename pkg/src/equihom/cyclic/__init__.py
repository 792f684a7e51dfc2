"""Equivariant differential forms, paramixed complexes and periodic cyclic homology."""

from .algebra import GAlgebra, base_field, compact_operators, function_algebra, stabilize, tensor
from .forms import BudgetExceeded, OmegaForms, omega_forms
from .hp import NonUnitalError, hp_at_level

__all__ = ["GAlgebra", "base_field", "compact_operators", "function_algebra", "stabilize",
           "tensor", "BudgetExceeded", "OmegaForms", "omega_forms", "NonUnitalError",
           "hp_at_level"]
