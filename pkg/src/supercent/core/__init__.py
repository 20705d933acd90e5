"""Dense linear-algebra primitives: power iteration, OLS, projections."""

from .linalg import (
    SingularTriple,
    as_matrix,
    as_vector,
    complement_projector,
    leading_eigenpair,
    leading_singular_triple,
    leading_singular_triple_lapack,
    ols_fit,
    project_complement,
    projection_distance,
    top_singular_triple,
)

__all__ = [
    "SingularTriple",
    "as_matrix",
    "as_vector",
    "complement_projector",
    "leading_eigenpair",
    "leading_singular_triple",
    "leading_singular_triple_lapack",
    "ols_fit",
    "project_complement",
    "projection_distance",
    "top_singular_triple",
]
