"""Flag-complex homology, Smith normal form and exactness checks."""

from .complex import FlagComplex, IntMatrix, boundary_matrix, flag_complex
from .groups import (
    GroupPresentation,
    GroupSummary,
    HomologySummary,
    compare_homology,
    homology,
    pi1_abelianized,
    relative_homology,
)
from .snf import SmithForm, invariant_factors, matrix_rank, smith_normal_form
