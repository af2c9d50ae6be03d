from shared.models.group_models import (
    ClassDatum,
    FiniteGroup,
    GroupSpec,
    ProductGroup,
    SpecialUnitaryGroup,
    TorusGroup,
    UnitaryGroup,
)
from shared.models.rep_models import (
    DirectSum,
    Dual,
    Exterior,
    ExternalTensor,
    FiniteGiven,
    Regular,
    RepSpec,
    Std,
    Symmetric,
    Tensor,
    TorusWeights,
)
from shared.models.schemas import BigInt, ExitCode, Norm, OutputFormat, OutputRecord, SpecFile
