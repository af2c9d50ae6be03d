from .cyclotomic import cyclotomic_poly, finite_invariants, mobius
from .engine import MomentEngine, MomentTable, PowerCache, moment, moment_table
from .evaluators import torus_invariants, weyl_invariants, weyl_shifts

__all__ = [
    "MomentEngine",
    "MomentTable",
    "PowerCache",
    "cyclotomic_poly",
    "finite_invariants",
    "mobius",
    "moment",
    "moment_table",
    "torus_invariants",
    "weyl_invariants",
    "weyl_shifts",
]
