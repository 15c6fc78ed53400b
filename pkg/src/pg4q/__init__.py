"""Exhaustive finite-geometry toolkit for solid sets in PG(4,q), q even."""

from .geometry import (
    GeometryIndex,
    Hyperplane,
    ProjectivePoint,
    Subspace,
    gaussian_binomial,
    meet,
    span,
)
from .gf import GF, FieldElement, FieldError
from .quadric import (
    Hyperoval,
    QuadraticForm,
    regular_hyperoval,
    solids_by_section,
    solids_disjoint_from,
    standard_parabolic,
)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FieldElement",
    "FieldError",
    "GeometryIndex",
    "Hyperplane",
    "ProjectivePoint",
    "Subspace",
    "gaussian_binomial",
    "meet",
    "span",
    "Hyperoval",
    "QuadraticForm",
    "regular_hyperoval",
    "solids_by_section",
    "solids_disjoint_from",
    "standard_parabolic",
    "__version__",
]
