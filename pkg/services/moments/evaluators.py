"""
Torus and Weyl-alternation evaluators over weight data.
"""
from itertools import permutations
from typing import Callable, List, Optional, Tuple

from shared.exceptions import EvaluationError, UnsupportedGroupError
from shared.models.group_models import SpecialUnitaryGroup, UnitaryGroup, describe_group
from services.groups.representations import TorusWeightData
from services.lattice import SupportBound, WeightPoly, WeightVector, cross_coefficient, power
from services.moments.config import config

# k -> power(w, k); the dual side is read through cross_coefficient
PowerSource = Callable[[int], WeightPoly]

SignedTarget = Tuple[int, WeightVector]


def _parity(perm: Tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def weyl_shifts(n: int) -> List[SignedTarget]:
    """(sgn σ, ρ - σρ) for σ in S_n with ρ = (n-1, ..., 0)."""
    rho = tuple(range(n - 1, -1, -1))
    shifts = []
    for perm in permutations(range(n)):
        shifted = tuple(rho[i] - rho[perm[i]] for i in range(n))
        shifts.append((_parity(perm), shifted))
    return shifts


def _pruned_powers(
    w: WeightPoly,
    a: int,
    b: int,
    norm: str,
    radius: int,
) -> Tuple[WeightPoly, WeightPoly]:
    step = w.max_norm(norm)
    left = power(w, a, bound=SupportBound(norm=norm, radius=radius + b * step, step=step))
    right = power(w, b, bound=SupportBound(norm=norm, radius=radius + a * step, step=step))
    return left, right


def _powers(
    w: WeightPoly,
    a: int,
    b: int,
    norm: str,
    radius: int,
    source: Optional[PowerSource],
) -> Tuple[WeightPoly, WeightPoly]:
    if source is not None:
        return source(a), source(b)
    if config.prune_single_cell:
        return _pruned_powers(w, a, b, norm, radius)
    return power(w, a), power(w, b)


def torus_invariants(
    w: TorusWeightData,
    a: int,
    b: int,
    source: Optional[PowerSource] = None,
) -> int:
    """Constant term of power(w, a) * power(dualize(w), b)."""
    if a == 0 and b == 0:
        return 1
    left, right = _powers(w.weights, a, b, "linf", 0, source)
    return cross_coefficient(left, right, (0,) * w.rank)


def _check_rank(group) -> None:
    if group.n > config.weyl_max_rank:
        raise UnsupportedGroupError(
            f"{describe_group(group)} exceeds the Weyl rank bound {config.weyl_max_rank}",
            {"n": group.n, "bound": config.weyl_max_rank},
        )


def weyl_invariants(
    group,
    w: TorusWeightData,
    a: int,
    b: int,
    source: Optional[PowerSource] = None,
) -> int:
    """
    Trivial-isotypic multiplicity by Weyl alternation.

    For U(n), F = N_0 with N_λ = Σ_σ sgn(σ) m(λ + ρ - σρ), m the weight
    multiplicity of the character of V^⊗a ⊗ V*^⊗b. For SU(n), F is the sum
    of N_(k,...,k) over the k with n*k a total degree of that character.
    """
    if not isinstance(group, (UnitaryGroup, SpecialUnitaryGroup)):
        raise UnsupportedGroupError(f"No Weyl evaluator for {describe_group(group)}")
    _check_rank(group)
    if a == 0 and b == 0:
        return 1

    n = group.n
    shifts = weyl_shifts(n)
    radius = max(max(s) - min(s) for _, s in shifts)
    left, right = _powers(w.weights, a, b, "spread", radius, source)

    if isinstance(group, UnitaryGroup):
        levels = [0]
    else:
        totals = {x - y for x in left.degrees() for y in right.degrees()}
        levels = sorted(t // n for t in totals if t % n == 0)

    result = 0
    for k in levels:
        multiplicity = 0
        for sign, shift in shifts:
            m = cross_coefficient(left, right, tuple(k + s for s in shift))
            if m:
                multiplicity += sign * m
        if multiplicity < 0:
            raise EvaluationError(
                f"Negative alternating sum {multiplicity} for {describe_group(group)} "
                f"at ({a},{b}), level {k}",
                {"a": a, "b": b, "level": k, "value": str(multiplicity)},
            )
        result += multiplicity
    return result
