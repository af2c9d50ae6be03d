"""
Representation expression trees over per-factor atoms.
"""
from typing import Annotated, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Std(BaseModel):
    """Natural representation of U(n) / SU(n)."""

    model_config = ConfigDict(frozen=True)

    op: Literal["std"] = "std"


class TorusWeights(BaseModel):
    """Sum of torus characters, one weight vector per basis line."""

    model_config = ConfigDict(frozen=True)

    op: Literal["weights"] = "weights"
    weights: Tuple[Tuple[int, ...], ...] = Field(..., min_length=1)

    @field_validator("weights")
    @classmethod
    def same_rank(cls, v):
        ranks = {len(w) for w in v}
        if len(ranks) != 1:
            raise ValueError(f"Weights have inconsistent ranks: {sorted(ranks)}")
        return v


class FiniteGiven(BaseModel):
    """The eigenphase data embedded in a finite group spec."""

    model_config = ConfigDict(frozen=True)

    op: Literal["given"] = "given"


class Regular(BaseModel):
    """Regular representation of a finite group."""

    model_config = ConfigDict(frozen=True)

    op: Literal["regular"] = "regular"


class Dual(BaseModel):
    model_config = ConfigDict(frozen=True)

    op: Literal["dual"] = "dual"
    of: "RepSpec"


class DirectSum(BaseModel):
    model_config = ConfigDict(frozen=True)

    op: Literal["sum"] = "sum"
    terms: Tuple["RepSpec", ...] = Field(..., min_length=1)


class Tensor(BaseModel):
    model_config = ConfigDict(frozen=True)

    op: Literal["tensor"] = "tensor"
    factors: Tuple["RepSpec", ...] = Field(..., min_length=1)


class Exterior(BaseModel):
    model_config = ConfigDict(frozen=True)

    op: Literal["exterior"] = "exterior"
    k: int = Field(..., ge=0)
    of: "RepSpec"


class Symmetric(BaseModel):
    model_config = ConfigDict(frozen=True)

    op: Literal["symmetric"] = "symmetric"
    k: int = Field(..., ge=0)
    of: "RepSpec"


class ExternalTensor(BaseModel):
    """V_1 ⊠ ... ⊠ V_m over the factors of a product group, one leg per factor."""

    model_config = ConfigDict(frozen=True)

    op: Literal["external"] = "external"
    legs: Tuple["RepSpec", ...] = Field(..., min_length=2)


RepSpec = Annotated[
    Union[
        Std,
        TorusWeights,
        FiniteGiven,
        Regular,
        Dual,
        DirectSum,
        Tensor,
        Exterior,
        Symmetric,
        ExternalTensor,
    ],
    Field(discriminator="op"),
]

for _model in (Dual, DirectSum, Tensor, Exterior, Symmetric, ExternalTensor):
    _model.model_rebuild()


def describe_rep(rep: "RepSpec") -> str:
    if isinstance(rep, Std):
        return "Std"
    if isinstance(rep, TorusWeights):
        return "wt[" + ",".join(
            "(" + ",".join(str(x) for x in w) + ")" if len(w) > 1 else str(w[0])
            for w in rep.weights
        ) + "]"
    if isinstance(rep, FiniteGiven):
        return "given"
    if isinstance(rep, Regular):
        return "regular"
    if isinstance(rep, Dual):
        return f"{describe_rep(rep.of)}*"
    if isinstance(rep, DirectSum):
        return "(" + " + ".join(describe_rep(t) for t in rep.terms) + ")"
    if isinstance(rep, Tensor):
        return "(" + " ⊗ ".join(describe_rep(f) for f in rep.factors) + ")"
    if isinstance(rep, Exterior):
        return f"Λ^{rep.k}{describe_rep(rep.of)}"
    if isinstance(rep, Symmetric):
        return f"S^{rep.k}{describe_rep(rep.of)}"
    return " ⊠ ".join(describe_rep(leg) for leg in rep.legs)
