"""Finite closure spaces, their constructions, and flag-complex homology."""

from __future__ import annotations

from .constructions import (
    cone_d,
    coproduct,
    cycle_space,
    interval_space,
    product,
    pushout,
    quotient,
    subspace,
    suspension_d,
    wedge,
)
from .core import CheckResult, CMap, FinSpace, find_homeomorphism, is_coarser
from .covers import (
    Cover,
    RetractionChain,
    good_pair_witness,
    is_interior_cover,
    one_step_homotopic,
    peel_chain,
    verify_retraction_chain,
)
from .errors import ClosureError
from .homology import (
    GroupSummary,
    HomologySummary,
    compare_homology,
    flag_complex,
    homology,
    pi1_abelianized,
    relative_homology,
    smith_normal_form,
)
from .homology.sequences import les_pair_exactness, mv_rank_exactness

__version__ = "0.1.0"

__all__ = [
    "CMap",
    "CheckResult",
    "ClosureError",
    "Cover",
    "FinSpace",
    "GroupSummary",
    "HomologySummary",
    "RetractionChain",
    "compare_homology",
    "cone_d",
    "coproduct",
    "cycle_space",
    "find_homeomorphism",
    "flag_complex",
    "good_pair_witness",
    "homology",
    "interval_space",
    "is_coarser",
    "is_interior_cover",
    "les_pair_exactness",
    "mv_rank_exactness",
    "one_step_homotopic",
    "peel_chain",
    "pi1_abelianized",
    "product",
    "pushout",
    "quotient",
    "relative_homology",
    "smith_normal_form",
    "subspace",
    "suspension_d",
    "verify_retraction_chain",
    "wedge",
]
