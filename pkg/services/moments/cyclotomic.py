"""
Exact class-sum evaluation for finite groups in Z[X]/(X^M - 1) and Z[X]/(Phi_M).
"""
from functools import lru_cache
from typing import List, Sequence, Tuple

from shared.exceptions import EvaluationError
from shared.models.group_models import ClassDatum, FiniteGroup

Coeffs = List[int]


def mobius(n: int) -> int:
    """Möbius function by trial division."""
    if n < 1:
        raise ValueError(f"mobius needs a positive integer, got {n}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> Coeffs:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_divexact(p: Sequence[int], q: Sequence[int]) -> Coeffs:
    """p / q for monic q dividing p exactly."""
    quotient, remainder = poly_divmod(p, q)
    if any(remainder):
        raise EvaluationError("Inexact division in cyclotomic construction")
    return quotient


def poly_divmod(p: Sequence[int], q: Sequence[int]) -> Tuple[Coeffs, Coeffs]:
    """Division by a monic integer polynomial; coefficients low to high."""
    if not q or q[-1] != 1:
        raise ValueError("Divisor must be monic")
    rem = list(p)
    dq = len(q) - 1
    if len(rem) <= dq:
        return [0], rem + [0] * (dq - len(rem))
    quotient = [0] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c:
            quotient[i - dq] = c
            for j in range(dq + 1):
                rem[i - dq + j] -= c * q[j]
    return quotient, rem[:dq]


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> Tuple[int, ...]:
    """Phi_m = prod over d | m of (X^d - 1)^mu(m/d), coefficients low to high."""
    numerator: Coeffs = [1]
    denominator: Coeffs = [1]
    for d in range(1, m + 1):
        if m % d:
            continue
        mu = mobius(m // d)
        if mu == 0:
            continue
        factor = [-1] + [0] * (d - 1) + [1]
        if mu > 0:
            numerator = _poly_mul(numerator, factor)
        else:
            denominator = _poly_mul(denominator, factor)
    phi = _poly_divexact(numerator, denominator)
    while len(phi) > 1 and phi[-1] == 0:
        phi.pop()
    return tuple(phi)


def cyclic_mul(p: Sequence[int], q: Sequence[int]) -> Coeffs:
    """Product in Z[X]/(X^M - 1), M = len(p) = len(q)."""
    m = len(p)
    out = [0] * m
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[(i + j) % m] += a * b
    return out


def cyclic_pow(p: Sequence[int], k: int) -> Coeffs:
    m = len(p)
    result = [1] + [0] * (m - 1)
    base = list(p)
    while k:
        if k & 1:
            result = cyclic_mul(result, base)
        k >>= 1
        if k:
            base = cyclic_mul(base, base)
    return result


def trace_vector(datum: ClassDatum, modulus: int) -> Coeffs:
    """Count vector of a class's eigenphase exponents."""
    vec = [0] * modulus
    for e in datum.exponents:
        vec[e % modulus] += 1
    return vec


def conjugate(p: Sequence[int]) -> Coeffs:
    """X -> X^-1 in Z[X]/(X^M - 1)."""
    m = len(p)
    return [p[(-k) % m] for k in range(m)]


def reduce_class_sum(total: Sequence[int], group: FiniteGroup) -> int:
    """
    Turn sum over classes of size * P_class (in Z[X]/(X^M - 1)) into F.

    The value at a primitive M-th root of unity is |G| * F, a rational
    integer, so the remainder mod Phi_M must be a constant divisible by |G|.
    """
    phi = list(cyclotomic_poly(group.modulus))
    _, remainder = poly_divmod(list(total), phi)
    if any(remainder[1:]):
        raise EvaluationError(
            f"Class sum for {group.name or 'finite group'} has non-vanishing "
            "cyclotomic coordinates; class data is corrupt",
            {"remainder": [str(c) for c in remainder]},
        )
    constant = remainder[0] if remainder else 0
    value, rest = divmod(constant, group.order)
    if rest:
        raise EvaluationError(
            f"Class sum {constant} is not divisible by the group order {group.order}",
            {"constant": str(constant), "order": group.order},
        )
    return value


def class_sum(
    group: FiniteGroup,
    powers_a: Sequence[Sequence[int]],
    powers_b: Sequence[Sequence[int]],
) -> Coeffs:
    """Sum of size * T^a * conj(T)^b given per-class powers of the trace vectors."""
    m = group.modulus
    total = [0] * m
    for datum, pa, pb in zip(group.classes, powers_a, powers_b):
        product = cyclic_mul(pa, conjugate(pb))
        for k, c in enumerate(product):
            total[k] += datum.size * c
    return total


def finite_invariants(group: FiniteGroup, a: int, b: int) -> int:
    """
    F(a,b) = (1/|G|) * sum over classes of size * tr^a * conj(tr)^b, exactly.

    Args:
        group: Class data of the representation (FiniteGiven semantics)
        a: Tensor power of V
        b: Tensor power of V*

    Returns:
        Nonnegative invariant dimension
    """
    if a == 0 and b == 0:
        return 1
    vectors = [trace_vector(c, group.modulus) for c in group.classes]
    total = class_sum(
        group,
        [cyclic_pow(v, a) for v in vectors],
        [cyclic_pow(v, b) for v in vectors],
    )
    value = reduce_class_sum(total, group)
    if value < 0:
        raise EvaluationError(f"Negative invariant count {value} at ({a},{b})")
    return value
