"""
Declarative compact-group specs: tori, U(n), SU(n), finite-by-classes and products.
"""
import cmath
from typing import Annotated, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

MAX_PRODUCT_DEPTH = 4
TRACE_TOLERANCE = 1e-9


class ClassDatum(BaseModel):
    """One conjugacy class: size and eigenphase exponents over the group modulus."""

    model_config = ConfigDict(frozen=True)

    size: PositiveInt
    exponents: Tuple[int, ...]

    def trace(self, modulus: int) -> complex:
        return sum(
            (cmath.exp(2j * cmath.pi * e / modulus) for e in self.exponents), 0j
        )

    def is_identity(self, modulus: int) -> bool:
        return self.size == 1 and all(e % modulus == 0 for e in self.exponents)


class TorusGroup(BaseModel):
    model_config = ConfigDict(frozen=True)

    type: Literal["torus"] = "torus"
    rank: PositiveInt


class UnitaryGroup(BaseModel):
    model_config = ConfigDict(frozen=True)

    type: Literal["unitary"] = "unitary"
    n: PositiveInt


class SpecialUnitaryGroup(BaseModel):
    model_config = ConfigDict(frozen=True)

    type: Literal["special_unitary"] = "special_unitary"
    n: int = Field(..., ge=2)


class FiniteGroup(BaseModel):
    """
    A finite group known only through its class data on a given representation.

    ``derived`` marks class data produced by a functor applied to catalog data;
    such data may act non-faithfully, so only the existence (not uniqueness) of
    the identity class is enforced.
    """

    model_config = ConfigDict(frozen=True)

    type: Literal["finite"] = "finite"
    name: Optional[str] = None
    modulus: PositiveInt
    order: PositiveInt
    classes: Tuple[ClassDatum, ...] = Field(..., min_length=1)
    derived: bool = False

    @property
    def dim(self) -> int:
        return len(self.classes[0].exponents)

    @model_validator(mode="after")
    def check_class_data(self) -> "FiniteGroup":
        total = sum(c.size for c in self.classes)
        if total != self.order:
            raise ValueError(
                f"Class sizes sum to {total}, expected group order {self.order}"
            )

        dims = {len(c.exponents) for c in self.classes}
        if len(dims) != 1:
            raise ValueError(f"Classes disagree on representation dimension: {sorted(dims)}")
        dim = dims.pop()
        if dim < 1:
            raise ValueError("Representation dimension must be positive")

        for index, datum in enumerate(self.classes):
            bad = [e for e in datum.exponents if not 0 <= e < self.modulus]
            if bad:
                raise ValueError(
                    f"Class {index}: exponents {bad} outside [0, {self.modulus})"
                )
            if abs(datum.trace(self.modulus)) > dim + TRACE_TOLERANCE:
                raise ValueError(f"Class {index}: |trace| exceeds dimension {dim}")

        identities = sum(1 for c in self.classes if c.is_identity(self.modulus))
        if self.derived:
            if identities < 1:
                raise ValueError("No identity class in derived class data")
        elif identities != 1:
            raise ValueError(
                f"Expected exactly one identity class (size 1, all exponents 0), found {identities}"
            )
        return self


class ProductGroup(BaseModel):
    model_config = ConfigDict(frozen=True)

    type: Literal["product"] = "product"
    factors: Tuple["GroupSpec", ...] = Field(..., min_length=2)

    @model_validator(mode="after")
    def check_depth(self) -> "ProductGroup":
        if group_depth(self) > MAX_PRODUCT_DEPTH:
            raise ValueError(f"Product nesting deeper than {MAX_PRODUCT_DEPTH}")
        return self


GroupSpec = Annotated[
    Union[TorusGroup, UnitaryGroup, SpecialUnitaryGroup, FiniteGroup, ProductGroup],
    Field(discriminator="type"),
]

ProductGroup.model_rebuild()


def group_depth(group: "GroupSpec") -> int:
    if isinstance(group, ProductGroup):
        return 1 + max(group_depth(f) for f in group.factors)
    return 0


def torus_rank(group: "GroupSpec") -> int:
    """Rank of the maximal torus used for weight data (0 for finite groups)."""
    if isinstance(group, TorusGroup):
        return group.rank
    if isinstance(group, (UnitaryGroup, SpecialUnitaryGroup)):
        return group.n
    if isinstance(group, ProductGroup):
        return sum(torus_rank(f) for f in group.factors)
    return 0


def describe_group(group: "GroupSpec") -> str:
    if isinstance(group, TorusGroup):
        return f"T^{group.rank}"
    if isinstance(group, UnitaryGroup):
        return f"U({group.n})"
    if isinstance(group, SpecialUnitaryGroup):
        return f"SU({group.n})"
    if isinstance(group, FiniteGroup):
        return group.name or f"finite[order={group.order}]"
    return " x ".join(describe_group(f) for f in group.factors)
