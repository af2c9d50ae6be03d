from .dimension import (
    check_irreducible,
    crude_bound_threshold,
    hook_length_count,
    infer_dimension,
    unitary_diagonal,
)
from .experiments import coincidence_search, finite_limit_experiment, rank_candidates
from .separation import Subject, cells_at_norm, separation_index, subject_from_catalog
from .torsion import torsion_approximant, verify_torsion_agreement

__all__ = [
    "Subject",
    "cells_at_norm",
    "check_irreducible",
    "coincidence_search",
    "crude_bound_threshold",
    "finite_limit_experiment",
    "hook_length_count",
    "infer_dimension",
    "rank_candidates",
    "separation_index",
    "subject_from_catalog",
    "torsion_approximant",
    "unitary_diagonal",
    "verify_torsion_agreement",
]
