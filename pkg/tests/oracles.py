"""
Independent reference counts, written without the moment engine.
"""
import cmath
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence, Tuple


@lru_cache(maxsize=None)
def ballot_walks(length: int, height: int = 0) -> int:
    """±1 walks of the given length from height to 0 that never go below 0."""
    if length == 0:
        return 1 if height == 0 else 0
    total = ballot_walks(length - 1, height + 1)
    if height > 0:
        total += ballot_walks(length - 1, height - 1)
    return total


def su2_std(a: int, b: int) -> int:
    """F_{SU(2),Std}(a,b): Std is self-dual, so V^a ⊗ V*^b ≅ V^(a+b)."""
    return ballot_walks(a + b)


def _shapes(total: int, rows: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    if rows == 0:
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _shapes(total - first, rows - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def syt(shape: Tuple[int, ...]) -> int:
    """Standard Young tableaux by removing the cell holding the largest entry."""
    if sum(shape) <= 1:
        return 1
    total = 0
    for i, row in enumerate(shape):
        below = shape[i + 1] if i + 1 < len(shape) else 0
        if row > below:
            smaller = list(shape)
            smaller[i] -= 1
            total += syt(tuple(r for r in smaller if r > 0))
    return total


def unitary_std_diagonal(n: int, a: int) -> int:
    """Σ over λ ⊢ a with at most n rows of (f^λ)²."""
    return sum(syt(shape) ** 2 for shape in _shapes(a, n, a))


def torus_count(weights: Sequence[Tuple[int, ...]], a: int, b: int) -> int:
    """Brute force: choices of a + b basis lines whose weights cancel."""
    rank = len(weights[0])
    count = 0
    for left in product(weights, repeat=a):
        for right in product(weights, repeat=b):
            total = [0] * rank
            for w in left:
                total = [x + y for x, y in zip(total, w)]
            for w in right:
                total = [x - y for x, y in zip(total, w)]
            if not any(total):
                count += 1
    return count


def class_sum(classes: Sequence[Tuple[int, Sequence[int]]], modulus: int, a: int, b: int) -> int:
    """Floating-point Burnside average over (size, exponents) class data, rounded."""
    order = sum(size for size, _ in classes)
    total = 0j
    for size, exponents in classes:
        tr = sum(cmath.exp(2j * cmath.pi * e / modulus) for e in exponents)
        total += size * tr ** a * tr.conjugate() ** b
    value = total / order
    rounded = round(value.real)
    assert abs(value - rounded) < 1e-6, value
    return rounded
