from enum import Enum
from typing import Annotated, Any, Dict, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer

from shared.models.group_models import GroupSpec
from shared.models.rep_models import RepSpec
from shared.utils.security import canonical_digest


def _parse_big_int(v: Any) -> Any:
    if isinstance(v, str):
        return int(v.strip())
    return v


# Arbitrary-precision integer, emitted as a decimal string in JSON
BigInt = Annotated[
    int,
    BeforeValidator(_parse_big_int),
    PlainSerializer(lambda v: str(v), return_type=str, when_used="json"),
]


# Enums
class Norm(str, Enum):
    TOTAL = "total"
    BOX = "box"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class ExitCode(int, Enum):
    OK = 0
    PARSE = 2
    EVALUATOR = 3
    INCONCLUSIVE = 10


# Spec file
class SpecFile(BaseModel):
    """A named (group, rep) pair as read from a JSON spec file."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    group: GroupSpec
    rep: RepSpec

    def canonical(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_defaults=False)

    def digest(self) -> str:
        return canonical_digest(self.canonical())


# Output
class Timing(BaseModel):
    elapsed_seconds: float


class OutputRecord(BaseModel):
    """Machine-readable envelope around every command result."""

    command: str
    inputs: Dict[str, Any]
    inputs_digest: str
    result: Any
    timing: Optional[Timing] = None

    @classmethod
    def build(
        cls,
        command: str,
        inputs: Dict[str, Any],
        result: Any,
        elapsed: Optional[float] = None,
    ) -> "OutputRecord":
        return cls(
            command=command,
            inputs=inputs,
            inputs_digest=canonical_digest({"command": command, **inputs}),
            result=result,
            timing=Timing(elapsed_seconds=elapsed) if elapsed is not None else None,
        )
