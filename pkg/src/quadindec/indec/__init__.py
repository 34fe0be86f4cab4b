"""Indecomposable elements of Z[sqrt D]."""

from .core import (
    Semiconvergent,
    argmax_r,
    enumerate_indecomposables,
    max_indec_norm,
    norm_semiconvergent,
    norm_semiconvergent_expanded,
    odd_windows,
    semiconvergent,
)
from .oracle import (
    brute_force_indecomposables,
    canonical_rep,
    domain_indecomposables,
    ellipse_points,
    find_decomposition,
    is_decomposable,
    is_indecomposable,
    unit_reduce,
)

__all__ = [
    "Semiconvergent",
    "argmax_r",
    "brute_force_indecomposables",
    "canonical_rep",
    "domain_indecomposables",
    "ellipse_points",
    "enumerate_indecomposables",
    "find_decomposition",
    "is_decomposable",
    "is_indecomposable",
    "max_indec_norm",
    "norm_semiconvergent",
    "norm_semiconvergent_expanded",
    "odd_windows",
    "semiconvergent",
    "unit_reduce",
]
