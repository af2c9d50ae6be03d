from .catalog import (
    ALIASES,
    PRESETS,
    CatalogEntry,
    binary_dihedral,
    catalog_entry,
    catalog_load,
    catalog_names,
    catalog_pairs,
    catalog_summary,
    catalog_verify,
    cyclic,
    finite_subgroup_names,
)
from .representations import (
    TorusWeightData,
    class_order,
    finite_rep_classes,
    rep_degree,
    rep_dimension,
    torus_restriction,
    validate_pair,
)

__all__ = [
    "ALIASES",
    "PRESETS",
    "CatalogEntry",
    "TorusWeightData",
    "binary_dihedral",
    "catalog_entry",
    "catalog_load",
    "catalog_names",
    "catalog_pairs",
    "catalog_summary",
    "catalog_verify",
    "class_order",
    "cyclic",
    "finite_rep_classes",
    "finite_subgroup_names",
    "rep_degree",
    "rep_dimension",
    "torus_restriction",
    "validate_pair",
]
