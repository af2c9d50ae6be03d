"""
Dimension detection from diagonal moments, crude-bound thresholds and
irreducibility.
"""
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from shared.exceptions import SpecError
from shared.models.group_models import GroupSpec, UnitaryGroup
from shared.models.rep_models import RepSpec, Std
from shared.models.report_models import CrudeBoundReport, DimensionInference, EmpiricalMoments
from shared.utils.logging import logger
from services.moments.engine import MomentEngine, MomentTable
from services.analyzer.config import config

DiagonalSource = Union[MomentTable, EmpiricalMoments, Mapping[int, int]]


def partitions(total: int, max_parts: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of total into at most max_parts parts, parts non-increasing."""
    largest = total if largest is None else largest
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(total, largest), 0, -1):
        for rest in partitions(total - first, max_parts - 1, first):
            yield (first,) + rest


def hook_length_count(shape: Tuple[int, ...]) -> int:
    """Number of standard Young tableaux of the given shape."""
    size = sum(shape)
    conjugate = [sum(1 for row in shape if row > j) for j in range(shape[0])] if shape else []
    hooks = 1
    for i, row in enumerate(shape):
        for j in range(row):
            hooks *= (row - j - 1) + (conjugate[j] - i - 1) + 1
    return math.factorial(size) // hooks


@lru_cache(maxsize=None)
def unitary_diagonal(n: int, a: int) -> int:
    """F_{U(n),Std}(a,a) = Σ over λ ⊢ a with at most n rows of (f^λ)^2."""
    return sum(hook_length_count(shape) ** 2 for shape in partitions(a, n))


def _ceil_root(value: int, k: int) -> int:
    """Least d >= 0 with d^k >= value, for integer value >= 0."""
    if value <= 1:
        return max(value, 0)
    lo, hi = 1, 1 << (value.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k >= value:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _diagonal(source: DiagonalSource, amax: Optional[int], z: float) -> Tuple[Dict[int, float], Dict[int, float], str]:
    """(lower values, upper values, source kind) for a = 1..amax."""
    if isinstance(source, EmpiricalMoments):
        top = min(source.amax, source.bmax) if amax is None else amax
        lower, upper = {}, {}
        for a in range(1, top + 1):
            mean, s = source.mean(a, a).real, source.stderr(a, a)
            lower[a] = mean - z * s
            upper[a] = mean + z * s
        return lower, upper, "empirical"

    diag = source.diagonal() if isinstance(source, MomentTable) else dict(source)
    top = max(diag) if amax is None else amax
    missing = [a for a in range(1, top + 1) if a not in diag]
    if missing:
        raise SpecError(f"Diagonal entries missing for a = {missing}", {"missing": missing})
    exact = {a: diag[a] for a in range(1, top + 1)}
    return exact, exact, "exact"


def _least_dimension(value, a: int) -> int:
    """Least d >= 1 with value <= d^(2a)."""
    if isinstance(value, int):
        return max(_ceil_root(value, 2 * a), 1)
    if value <= 1.0:
        return 1
    d = max(int(math.floor(value ** (1.0 / (2 * a)))), 1)
    while d ** (2 * a) < value:
        d += 1
    return d


def _largest_unitary(value, a: int) -> Optional[int]:
    """Largest D with F_{U(D)}(a,a) <= value, None when unconstrained (value >= a!)."""
    if value >= math.factorial(a):
        return None
    best = 0
    for d in range(1, a):
        if unitary_diagonal(d, a) <= value:
            best = d
        else:
            break
    return best


def infer_dimension(
    source: DiagonalSource,
    amax: Optional[int] = None,
    z: Optional[float] = None,
) -> DimensionInference:
    """
    Bracket dim V from diagonal moments F(a,a), a = 1..amax.

    Lower side: the least d with F(a,a) <= d^(2a) for every a. Upper side:
    U(dim V) contains G, so F_{U(D)}(a,a) <= F(a,a) must hold for D = dim V;
    the largest such D over the constraining a bounds dim V above. Empirical
    input uses mean -/+ z * stderr on the respective sides.

    Args:
        source: Exact table, empirical moments or a mapping a -> F(a,a)
        amax: Largest a used (default: everything available)
        z: Standard-error multiplier for empirical input

    Returns:
        DimensionInference; ``pinned`` when both sides coincide
    """
    z = config.z_score if z is None else z
    lower, upper, kind = _diagonal(source, amax, z)
    if not lower:
        raise SpecError("Dimension inference needs at least one diagonal entry (amax >= 1)")
    top = max(lower)

    low, low_a = 1, None
    for a in sorted(lower):
        d = _least_dimension(lower[a], a)
        if d > low:
            low, low_a = d, a
    if low_a is None:
        low_a = 1
    if low > config.infer_max_dimension:
        raise SpecError(
            f"Diagonal moments exceed d^(2a) for every d <= {config.infer_max_dimension}",
            {"low": low},
        )

    high, high_a = None, None
    for a in sorted(upper):
        d = _largest_unitary(upper[a], a)
        if d is not None and (high is None or d < high):
            high, high_a = d, a

    if high is not None and high < low:
        raise SpecError(
            f"Inconsistent diagonal: lower bound {low} exceeds upper bound {high}",
            {"low": low, "high": high, "lower_binding_a": low_a, "upper_binding_a": high_a},
        )

    result = DimensionInference(
        estimate=low,
        low=low,
        high=high,
        pinned=high == low,
        lower_binding_a=low_a,
        upper_binding_a=high_a,
        amax=top,
        source=kind,
    )
    logger.debug(f"Dimension bracket [{low}, {high}] from {kind} diagonal up to a={top}")
    return result


def crude_bound_threshold(
    n: int,
    amax: Optional[int] = None,
    engine: Optional[MomentEngine] = None,
) -> CrudeBoundReport:
    """
    Least N with F_{U(n)}(a,a) > (n-1)^(2a) for every N < a <= amax.

    The ratio sequence F(a,a) / (n-1)^(2a) is reported for a = 1..amax.
    """
    amax = config.crude_max_amax if amax is None else amax
    if n < 2:
        raise SpecError(f"Crude bound needs n >= 2, got {n}")
    if not 1 <= amax <= config.crude_max_amax:
        raise SpecError(f"amax must lie in [1, {config.crude_max_amax}], got {amax}")

    engine = engine or MomentEngine()
    group = UnitaryGroup(n=n)
    values: List[int] = []
    ratios: List[Fraction] = []
    last_failure = 0
    for a in range(1, amax + 1):
        value = engine.moment(group, Std(), a, a)
        floor = (n - 1) ** (2 * a)
        values.append(value)
        ratios.append(Fraction(value, floor))
        if value <= floor:
            last_failure = a

    attained = last_failure < amax
    return CrudeBoundReport(
        n=n,
        amax=amax,
        threshold=last_failure if attained else None,
        attained=attained,
        values=values,
        ratios=[str(r) for r in ratios],
        ratio_floats=[float(r) for r in ratios],
    )


def check_irreducible(group: GroupSpec, rep: RepSpec, engine: Optional[MomentEngine] = None) -> bool:
    """V is irreducible iff dim End_G(V) = F(1,1) = 1."""
    engine = engine or MomentEngine()
    return engine.moment(group, rep, 1, 1) == 1
