"""
Sparse Laurent polynomials over the weight lattice Z^r with exact integer coefficients.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

import numpy as np

from shared.exceptions import RankMismatchError

WeightVector = Tuple[int, ...]

TermSource = Union[Mapping[WeightVector, int], Iterable[Tuple[WeightVector, int]]]


@dataclass(frozen=True)
class SupportBound:
    """
    Pruning rule for dynamic programs that only need coefficients near a target.

    ``norm`` is a subadditive seminorm on the lattice: ``"linf"`` (max |w_i|,
    targets near the origin) or ``"spread"`` (max w - min w, targets near the
    diagonal line). A partial product ``u`` with ``remaining`` factors still to
    be multiplied in, each of norm at most ``step``, can only reach a target of
    norm at most ``radius`` if ``norm(u) <= radius + remaining * step``.
    """

    norm: str
    radius: int
    step: int

    def measure(self, weight: WeightVector) -> int:
        if not weight:
            return 0
        if self.norm == "linf":
            return max(abs(x) for x in weight)
        if self.norm == "spread":
            return max(weight) - min(weight)
        raise ValueError(f"Unknown support norm: {self.norm}")

    def admits(self, weight: WeightVector, remaining: int) -> bool:
        return self.measure(weight) <= self.radius + remaining * self.step


class WeightPoly:
    """Immutable sparse map WeightVector -> int with no stored zeros."""

    __slots__ = ("_rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: TermSource = (), *, _trusted: bool = False):
        if rank < 0:
            raise ValueError(f"Rank must be nonnegative, got {rank}")
        self._rank = rank
        self._hash: Optional[int] = None
        if _trusted:
            self._terms: Dict[WeightVector, int] = terms  # type: ignore[assignment]
            return

        items = terms.items() if isinstance(terms, Mapping) else terms
        builder: Dict[WeightVector, int] = {}
        for weight, coeff in items:
            key = tuple(int(x) for x in weight)
            if len(key) != rank:
                raise RankMismatchError(rank, len(key))
            builder[key] = builder.get(key, 0) + int(coeff)
        self._terms = {w: c for w, c in builder.items() if c != 0}

    # Constructors

    @classmethod
    def zero(cls, rank: int) -> "WeightPoly":
        return cls(rank, {}, _trusted=True)

    @classmethod
    def one(cls, rank: int) -> "WeightPoly":
        return cls(rank, {(0,) * rank: 1}, _trusted=True)

    @classmethod
    def monomial(cls, weight: WeightVector, coeff: int = 1) -> "WeightPoly":
        return cls(len(weight), [(weight, coeff)])

    @classmethod
    def from_weights(cls, rank: int, weights: Iterable[WeightVector]) -> "WeightPoly":
        """Multiset of weights, each contributing multiplicity one."""
        return cls(rank, [(w, 1) for w in weights])

    # Mapping-like access

    @property
    def rank(self) -> int:
        return self._rank

    def items(self) -> List[Tuple[WeightVector, int]]:
        """Terms in canonical (lexicographic) order."""
        return sorted(self._terms.items())

    def weights(self) -> List[WeightVector]:
        return sorted(self._terms)

    def get(self, weight: WeightVector, default: int = 0) -> int:
        return self._terms.get(weight, default)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[WeightVector]:
        return iter(self.weights())

    def __contains__(self, weight: object) -> bool:
        return weight in self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightPoly):
            return NotImplemented
        return self._rank == other._rank and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._rank, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: {c}" for w, c in self.items()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"WeightPoly(rank={self._rank}, {{{body}{more}}})"

    def __add__(self, other: "WeightPoly") -> "WeightPoly":
        return add(self, other)

    def __mul__(self, other: "WeightPoly") -> "WeightPoly":
        return multiply(self, other)

    # Summary statistics

    def coefficient_sum(self) -> int:
        """Evaluation at the identity: dim V for a genuine character."""
        return sum(self._terms.values())

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def degrees(self) -> List[int]:
        return sorted({sum(w) for w in self._terms})

    def max_degree(self) -> Optional[int]:
        return max((sum(w) for w in self._terms), default=None)

    def min_degree(self) -> Optional[int]:
        return min((sum(w) for w in self._terms), default=None)

    def max_norm(self, norm: str) -> int:
        gauge = SupportBound(norm=norm, radius=0, step=0)
        return max((gauge.measure(w) for w in self._terms), default=0)

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """(weights as an int matrix, coefficients as floats) for numeric evaluation."""
        items = self.items()
        if not items:
            return np.zeros((0, self._rank), dtype=np.int64), np.zeros(0)
        weights = np.array([w for w, _ in items], dtype=np.int64).reshape(len(items), self._rank)
        coeffs = np.array([float(c) for _, c in items])
        return weights, coeffs


def _check_rank(p: WeightPoly, q: WeightPoly) -> None:
    if p.rank != q.rank:
        raise RankMismatchError(p.rank, q.rank)


def add(p: WeightPoly, q: WeightPoly) -> WeightPoly:
    """Term-wise sum."""
    _check_rank(p, q)
    builder = dict(p._terms)
    for w, c in q._terms.items():
        builder[w] = builder.get(w, 0) + c
    return WeightPoly(p.rank, {w: c for w, c in builder.items() if c != 0}, _trusted=True)


def scale(p: WeightPoly, factor: int) -> WeightPoly:
    if factor == 0:
        return WeightPoly.zero(p.rank)
    return WeightPoly(p.rank, {w: c * factor for w, c in p._terms.items()}, _trusted=True)


def shift(p: WeightPoly, by: WeightVector) -> WeightPoly:
    """Multiply by the monomial x^by."""
    if len(by) != p.rank:
        raise RankMismatchError(p.rank, len(by))
    return WeightPoly(
        p.rank,
        {tuple(x + y for x, y in zip(w, by)): c for w, c in p._terms.items()},
        _trusted=True,
    )


def _accumulate(
    chunk: List[Tuple[WeightVector, int]],
    q_terms: List[Tuple[WeightVector, int]],
) -> Dict[WeightVector, int]:
    builder: Dict[WeightVector, int] = {}
    get = builder.get
    for u, cu in chunk:
        for v, cv in q_terms:
            w = tuple(x + y for x, y in zip(u, v))
            builder[w] = get(w, 0) + cu * cv
    return builder


def multiply(
    p: WeightPoly,
    q: WeightPoly,
    bound: Optional[SupportBound] = None,
    remaining: int = 0,
    workers: int = 1,
) -> WeightPoly:
    """
    Product of two sparse Laurent polynomials.

    Args:
        p: Left operand
        q: Right operand (same rank)
        bound: Optional pruning rule; terms it rejects are dropped
        remaining: Factors still to follow, passed to ``bound.admits``
        workers: Partition p's terms over this many threads

    Returns:
        Normalized product (bit-identical for any ``workers``)
    """
    _check_rank(p, q)
    if not p._terms or not q._terms:
        return WeightPoly.zero(p.rank)

    p_terms = p.items()
    q_terms = list(q._terms.items())

    if workers <= 1 or len(p_terms) < 2 * workers:
        partials = [_accumulate(p_terms, q_terms)]
    else:
        size = (len(p_terms) + workers - 1) // workers
        chunks = [p_terms[i:i + size] for i in range(0, len(p_terms), size)]
        with ThreadPoolExecutor(max_workers=workers) as executor:
            partials = list(
                executor.map(lambda chunk: _accumulate(chunk, q_terms), chunks)
            )

    merged: Dict[WeightVector, int] = {}
    for partial in partials:
        for w, c in partial.items():
            merged[w] = merged.get(w, 0) + c

    if bound is not None:
        result = {w: c for w, c in merged.items() if c != 0 and bound.admits(w, remaining)}
    else:
        result = {w: c for w, c in merged.items() if c != 0}
    return WeightPoly(p.rank, result, _trusted=True)


def dualize(p: WeightPoly) -> WeightPoly:
    """V -> V*: negate every weight."""
    return WeightPoly(
        p.rank, {tuple(-x for x in w): c for w, c in p._terms.items()}, _trusted=True
    )


def power(
    p: WeightPoly,
    k: int,
    bound: Optional[SupportBound] = None,
    workers: int = 1,
) -> WeightPoly:
    """
    k-fold product of p with itself; power(p, 0) is the unit.

    Without a bound this uses repeated squaring. With a bound the product is
    built incrementally so each partial product can be pruned against the
    number of factors still to come.
    """
    if k < 0:
        raise ValueError(f"Exponent must be nonnegative, got {k}")
    result = WeightPoly.one(p.rank)
    if k == 0:
        return result

    if bound is not None:
        for j in range(1, k + 1):
            result = multiply(result, p, bound=bound, remaining=k - j, workers=workers)
        return result

    base = p
    e = k
    while e:
        if e & 1:
            result = multiply(result, base, workers=workers)
        e >>= 1
        if e:
            base = multiply(base, base, workers=workers)
    return result


def coefficient(p: WeightPoly, w: WeightVector) -> int:
    """Stored coefficient at w, zero when absent."""
    if len(w) != p.rank:
        raise RankMismatchError(p.rank, len(w))
    return p.get(tuple(w))


def product_coefficient(p: WeightPoly, q: WeightPoly, w: WeightVector) -> int:
    """Coefficient of p*q at w without forming the product."""
    _check_rank(p, q)
    if len(w) != p.rank:
        raise RankMismatchError(p.rank, len(w))
    smaller, larger = (p, q) if len(p) <= len(q) else (q, p)
    get = larger._terms.get
    total = 0
    for u, cu in smaller._terms.items():
        cv = get(tuple(t - x for t, x in zip(w, u)))
        if cv:
            total += cu * cv
    return total


def cross_coefficient(p: WeightPoly, q: WeightPoly, t: WeightVector) -> int:
    """Coefficient of p * dualize(q) at t, i.e. sum over u of p[u] * q[u - t]."""
    _check_rank(p, q)
    if len(t) != p.rank:
        raise RankMismatchError(p.rank, len(t))
    total = 0
    if len(p) <= len(q):
        get = q._terms.get
        for u, cu in p._terms.items():
            cv = get(tuple(x - y for x, y in zip(u, t)))
            if cv:
                total += cu * cv
    else:
        get = p._terms.get
        for v, cv in q._terms.items():
            cu = get(tuple(x + y for x, y in zip(v, t)))
            if cu:
                total += cu * cv
    return total


def external_product(p: WeightPoly, q: WeightPoly) -> WeightPoly:
    """Character of an external tensor product on the concatenated lattice."""
    terms = {
        u + v: cu * cv for u, cu in p._terms.items() for v, cv in q._terms.items()
    }
    return WeightPoly(p.rank + q.rank, terms, _trusted=True)


def elementary_expansion(p: WeightPoly, k: int, symmetric: bool = False) -> WeightPoly:
    """
    Character of the k-th exterior (or symmetric) power of a genuine character.

    DP over the weights in sorted order: each basis vector of weight w
    updates the running table E[j] by E[j] += E[j-1] * x^w. Descending j
    picks each basis vector at most once (exterior); ascending j reads the
    already-updated E[j-1] and so allows repeats (symmetric).
    """
    if k < 0:
        raise ValueError(f"Exponent must be nonnegative, got {k}")
    if not p.is_nonnegative():
        raise ValueError("Exterior/symmetric powers need nonnegative multiplicities")

    rank = p.rank
    table: List[Dict[WeightVector, int]] = [{(0,) * rank: 1}] + [{} for _ in range(k)]

    for weight, mult in p.items():
        for _ in range(mult):
            order = range(1, k + 1) if symmetric else range(k, 0, -1)
            for j in order:
                source = table[j - 1]
                if not source:
                    continue
                target = table[j]
                for u, c in list(source.items()):
                    w = tuple(x + y for x, y in zip(u, weight))
                    target[w] = target.get(w, 0) + c

    return WeightPoly(rank, table[k])
