"""
Result payloads of the sampler and analyzer.
"""
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator

from shared.models.group_models import GroupSpec
from shared.models.rep_models import RepSpec
from shared.models.schemas import BigInt, Norm


# Separation
class Witness(BaseModel):
    a: int
    b: int
    left_value: BigInt
    right_value: BigInt


class SeparationReport(BaseModel):
    left: str
    right: str
    norm: Norm
    bound: int
    index: Optional[int] = None
    witness: Optional[Witness] = None
    cells_checked: int = 0

    @property
    def separated(self) -> bool:
        return self.index is not None

    @property
    def verdict(self) -> str:
        if self.separated:
            return f"separated at norm {self.index}"
        # agreement up to a bound never proves equality of measures
        return f"agree <= {self.bound} (inconclusive)"


# Torsion
class TorsionApproximant(BaseModel):
    model_config = ConfigDict(frozen=True)

    base: str
    n: int
    group: GroupSpec
    rep: RepSpec
    order: int


class CellAgreement(BaseModel):
    a: int
    b: int
    exact: BigInt
    approximant: BigInt
    agree: bool


class TorsionAgreementReport(BaseModel):
    base: str
    approximant: str
    n: int
    degree: int
    cells: List[CellAgreement]
    first_disagreement_norm: Optional[int] = None
    first_disagreement_cell: Optional[Tuple[int, int]] = None

    @property
    def full_agreement(self) -> bool:
        return self.first_disagreement_norm is None

    @property
    def verdict(self) -> str:
        if self.full_agreement:
            return "agreement: full"
        a, b = self.first_disagreement_cell  # type: ignore[misc]
        return f"agreement: fails at norm {self.first_disagreement_norm}, cell ({a},{b})"


# Dimension
class DimensionInference(BaseModel):
    estimate: int
    low: int
    high: Optional[int] = None
    pinned: bool
    lower_binding_a: Optional[int] = None
    upper_binding_a: Optional[int] = None
    amax: int
    source: str = "exact"


class CrudeBoundReport(BaseModel):
    n: int
    amax: int
    threshold: Optional[int] = None
    attained: bool
    values: List[BigInt]
    ratios: List[str]
    ratio_floats: List[float]

    @property
    def verdict(self) -> str:
        if self.attained:
            return f"threshold N = {self.threshold}"
        return f"not yet attained <= {self.amax}"


# Sampling
class SampleConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    group_id: str
    group: GroupSpec
    rep: RepSpec
    samples: int = Field(..., ge=1)
    seed: int = Field(..., ge=0, lt=2**64)
    amax: int = Field(..., ge=0)
    bmax: int = Field(..., ge=0)


class EmpiricalCell(BaseModel):
    a: int
    b: int
    real: float
    imag: float
    stderr: float = Field(..., ge=0.0)


class EmpiricalMoments(BaseModel):
    group_id: str
    samples: int
    seed: int
    amax: int
    bmax: int
    cells: List[EmpiricalCell]
    retries: int = 0

    _index: Dict[Tuple[int, int], EmpiricalCell] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        self._index = {(c.a, c.b): c for c in self.cells}

    def mean(self, a: int, b: int) -> complex:
        cell = self._index[(a, b)]
        return complex(cell.real, cell.imag)

    def stderr(self, a: int, b: int) -> float:
        return self._index[(a, b)].stderr

    def diagonal(self) -> Dict[int, Tuple[float, float]]:
        return {
            a: (self._index[(a, a)].real, self._index[(a, a)].stderr)
            for a in range(min(self.amax, self.bmax) + 1)
        }


class GaussianLimitRow(BaseModel):
    n: int
    a: int
    exact: BigInt
    gaussian: BigInt
    difference: BigInt
    estimate: Optional[float] = None
    stderr: Optional[float] = None


class GaussianLimitReport(BaseModel):
    rows: List[GaussianLimitRow]
    samples: int = 0


# Experiments
class SubgroupSeparation(BaseModel):
    name: str
    order: int
    index: Optional[int] = None
    witness: Optional[Witness] = None


class FiniteLimitReport(BaseModel):
    target: str
    toric: bool
    bound: int
    rows: List[SubgroupSeparation]
    max_index: Optional[int] = None
    argmax: Optional[str] = None
    consistent: bool

    @field_validator("rows")
    @classmethod
    def nonempty(cls, v):
        if not v:
            raise ValueError("Experiment produced no comparison rows")
        return v


class CandidateScore(BaseModel):
    name: str
    consistent_cells: int
    total_cells: int
    max_z: float

    @property
    def consistent(self) -> bool:
        return self.consistent_cells == self.total_cells


class CandidateRanking(BaseModel):
    z: float
    scores: List[CandidateScore]


class Coincidence(BaseModel):
    left: str
    right: str
    bound: int
    note: str = "agree up to bound; equality of measures not established"


class CoincidenceReport(BaseModel):
    bound: int
    pairs_checked: int
    coincidences: List[Coincidence]
