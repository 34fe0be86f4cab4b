"""Indecomposable algebraic integers in real quadratic orders Z[sqrt D].

The package expands ``sqrt(D)`` as a continued fraction, enumerates the
indecomposables through semiconvergents, and checks norm bounds for them.
"""

from .cfrac import ContinuedFraction, expand_sqrt, in_scope_reason
from .conjecture import FieldReport, check_conjecture, scan
from .convergents import NormTable, negative_norm_minimizers, norm_table
from .errors import (
    BudgetError,
    FactorizationError,
    InvariantError,
    NoFamilyError,
    OutOfScopeError,
    PeriodBudgetError,
    QuadIndecError,
    UndecidedError,
)
from .family import FamilySpec, family_search, solve_family
from .indec import enumerate_indecomposables, max_indec_norm

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "ContinuedFraction",
    "FactorizationError",
    "FamilySpec",
    "FieldReport",
    "InvariantError",
    "NoFamilyError",
    "NormTable",
    "OutOfScopeError",
    "PeriodBudgetError",
    "QuadIndecError",
    "UndecidedError",
    "check_conjecture",
    "enumerate_indecomposables",
    "expand_sqrt",
    "family_search",
    "in_scope_reason",
    "max_indec_norm",
    "negative_norm_minimizers",
    "norm_table",
    "scan",
    "solve_family",
]
