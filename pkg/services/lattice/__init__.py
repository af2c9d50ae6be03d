from .weight_poly import (
    SupportBound,
    WeightPoly,
    WeightVector,
    add,
    coefficient,
    cross_coefficient,
    dualize,
    elementary_expansion,
    external_product,
    multiply,
    power,
    product_coefficient,
    scale,
    shift,
)

__all__ = [
    "SupportBound",
    "WeightPoly",
    "WeightVector",
    "add",
    "coefficient",
    "cross_coefficient",
    "dualize",
    "elementary_expansion",
    "external_product",
    "multiply",
    "power",
    "product_coefficient",
    "scale",
    "shift",
]
