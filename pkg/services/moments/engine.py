"""
Moment engine: dispatch to the torus, Weyl and class-sum evaluators, with
per-(group, rep) power caches and the product rule for external tensors.
"""
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Dict, Generic, List, Optional, Tuple, TypeVar

from shared.exceptions import (
    CellEvaluationError,
    EvaluationError,
    SatoTateError,
    SpecError,
    UnsupportedGroupError,
)
from shared.models.group_models import (
    FiniteGroup,
    GroupSpec,
    ProductGroup,
    SpecialUnitaryGroup,
    TorusGroup,
    UnitaryGroup,
    describe_group,
)
from shared.models.rep_models import ExternalTensor, RepSpec, describe_rep
from shared.utils.config import settings
from shared.utils.logging import logger
from services.groups.representations import (
    TorusWeightData,
    finite_rep_classes,
    rep_dimension,
    torus_restriction,
)
from services.lattice import WeightPoly, multiply
from services.moments.config import config
from services.moments.cyclotomic import (
    Coeffs,
    class_sum,
    cyclic_mul,
    finite_invariants,
    reduce_class_sum,
    trace_vector,
)
from services.moments.evaluators import torus_invariants, weyl_invariants

T = TypeVar("T")

Cell = Tuple[int, int]


class PowerCache(Generic[T]):
    """
    Incremental powers base^0, base^1, ... filled on demand under a lock.

    Entries are exact and never overwritten, so a hit is identical to a fresh
    computation.
    """

    def __init__(self, one: T, base: T, mul: Callable[[T, T], T]):
        self._base = base
        self._mul = mul
        self._powers: List[T] = [one]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._powers)

    def get(self, k: int) -> T:
        if k < len(self._powers):
            return self._powers[k]
        with self._lock:
            while len(self._powers) <= k:
                self._powers.append(self._mul(self._powers[-1], self._base))
            return self._powers[k]


@dataclass
class MomentTable:
    """F(a,b) on [0, amax] x [0, bmax]."""

    group_id: str
    rep_id: str
    dim: int
    amax: int
    bmax: int
    entries: Dict[Cell, int] = field(default_factory=dict)

    def __getitem__(self, cell: Cell) -> int:
        return self.entries[cell]

    def get(self, a: int, b: int) -> int:
        return self.entries[(a, b)]

    def diagonal(self) -> Dict[int, int]:
        return {a: self.entries[(a, a)] for a in range(min(self.amax, self.bmax) + 1)}

    def rows(self) -> List[Tuple[int, int, int]]:
        return [(a, b, self.entries[(a, b)]) for a, b in sorted(self.entries)]

    def violations(self) -> List[str]:
        """Broken table invariants, empty for a consistent table."""
        problems = []
        if self.entries.get((0, 0)) != 1:
            problems.append(f"F(0,0) = {self.entries.get((0, 0))}, expected 1")
        for (a, b), value in self.entries.items():
            mirror = self.entries.get((b, a))
            if mirror is not None and mirror != value:
                problems.append(f"F({a},{b}) = {value} but F({b},{a}) = {mirror}")
            if value < 0:
                problems.append(f"F({a},{b}) = {value} is negative")
            elif value > self.dim ** (a + b):
                problems.append(f"F({a},{b}) = {value} exceeds dim^(a+b)")
        return problems

    def check_invariants(self) -> None:
        problems = self.violations()
        if problems:
            raise EvaluationError(
                f"Moment table for {self.group_id} violates {len(problems)} invariants",
                {"violations": problems[:10]},
            )


class _Prepared:
    """Validated evaluation state of one (group, rep) pair."""

    def __init__(self, group: GroupSpec, rep: RepSpec, legs: List["_Prepared"]):
        self.group = group
        self.rep = rep
        self.dim = rep_dimension(group, rep)
        self.legs = legs
        self.weights: Optional[TorusWeightData] = None
        self.classes: Optional[FiniteGroup] = None
        self.weight_powers: Optional[PowerCache[WeightPoly]] = None
        self.class_powers: Optional[List[PowerCache[Coeffs]]] = None

        if isinstance(group, ProductGroup):
            self.kind = "product"
        elif isinstance(group, FiniteGroup):
            self.kind = "finite"
            self.classes = finite_rep_classes(group, rep)
            m = self.classes.modulus
            one = [1] + [0] * (m - 1)
            self.class_powers = [
                PowerCache(one, trace_vector(c, m), cyclic_mul) for c in self.classes.classes
            ]
        elif isinstance(group, (TorusGroup, UnitaryGroup, SpecialUnitaryGroup)):
            self.kind = "torus" if isinstance(group, TorusGroup) else "weyl"
            self.weights = torus_restriction(group, rep)
            w = self.weights.weights
            self.weight_powers = PowerCache(WeightPoly.one(w.rank), w, multiply)
        else:
            raise UnsupportedGroupError(f"No evaluator for {describe_group(group)}")

    def warm(self, k: int) -> None:
        if self.weight_powers is not None:
            self.weight_powers.get(k)
        for cache in self.class_powers or []:
            cache.get(k)
        for leg in self.legs:
            leg.warm(k)


def _check_degrees(a: int, b: int) -> None:
    if a < 0 or b < 0:
        raise SpecError(f"Moment degrees must be nonnegative, got ({a},{b})")


def _split_legs(group: GroupSpec, rep: RepSpec) -> List[Tuple[GroupSpec, RepSpec]]:
    if not isinstance(rep, ExternalTensor):
        raise SpecError("Representations of product groups must be an ExternalTensor at the root")
    return list(zip(group.factors, rep.legs))


def _finite_cell(classes: FiniteGroup, caches: List[PowerCache[Coeffs]], a: int, b: int) -> int:
    if a + b > config.finite_max_degree:
        raise UnsupportedGroupError(
            f"a + b = {a + b} exceeds the finite-group degree guard {config.finite_max_degree}"
        )
    total = class_sum(classes, [c.get(a) for c in caches], [c.get(b) for c in caches])
    value = reduce_class_sum(total, classes)
    if value < 0:
        raise EvaluationError(f"Negative invariant count {value} at ({a},{b})")
    return value


def moment(group: GroupSpec, rep: RepSpec, a: int, b: int) -> int:
    """
    F(a,b) = dim(V^⊗a ⊗ V*^⊗b)^G for a single cell, without shared state.

    Args:
        group: Group spec
        rep: Representation spec compatible with ``group``
        a: Power of V
        b: Power of V*

    Returns:
        Exact nonnegative invariant dimension
    """
    _check_degrees(a, b)
    rep_dimension(group, rep)
    if a == 0 and b == 0:
        return 1

    if isinstance(group, ProductGroup):
        value = 1
        for factor, leg in _split_legs(group, rep):
            value *= moment(factor, leg, a, b)
            if value == 0:
                break
        return value
    if isinstance(group, FiniteGroup):
        if a + b > config.finite_max_degree:
            raise UnsupportedGroupError(
                f"a + b = {a + b} exceeds the finite-group degree guard {config.finite_max_degree}"
            )
        return finite_invariants(finite_rep_classes(group, rep), a, b)
    if isinstance(group, TorusGroup):
        return torus_invariants(torus_restriction(group, rep), a, b)
    if isinstance(group, (UnitaryGroup, SpecialUnitaryGroup)):
        return weyl_invariants(group, torus_restriction(group, rep), a, b)
    raise UnsupportedGroupError(f"No evaluator for {describe_group(group)}")


class MomentEngine:
    """
    Caching evaluator shared across cells, tables and threads.

    Caches are advisory: every value equals the one ``moment`` computes from
    scratch.
    """

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max_workers or settings.max_workers
        self._prepared: Dict[Tuple[GroupSpec, RepSpec], _Prepared] = {}
        self._lock = threading.Lock()

    def prepare(self, group: GroupSpec, rep: RepSpec) -> _Prepared:
        key = (group, rep)
        prepared = self._prepared.get(key)
        if prepared is not None:
            return prepared
        legs = (
            [self.prepare(f, leg) for f, leg in _split_legs(group, rep)]
            if isinstance(group, ProductGroup)
            else []
        )
        prepared = _Prepared(group, rep, legs)
        with self._lock:
            prepared = self._prepared.setdefault(key, prepared)
        logger.debug(
            f"Prepared {prepared.kind} evaluator for {describe_group(group)} "
            f"on {describe_rep(rep)} (dim {prepared.dim})"
        )
        return prepared

    def _evaluate(self, prepared: _Prepared, a: int, b: int) -> int:
        if a == 0 and b == 0:
            return 1
        if prepared.kind == "product":
            value = 1
            for leg in prepared.legs:
                value *= self._evaluate(leg, a, b)
                if value == 0:
                    break
            return value
        if prepared.kind == "finite":
            return _finite_cell(prepared.classes, prepared.class_powers, a, b)
        if prepared.kind == "torus":
            return torus_invariants(prepared.weights, a, b, source=prepared.weight_powers.get)
        return weyl_invariants(
            prepared.group, prepared.weights, a, b, source=prepared.weight_powers.get
        )

    def moment(self, group: GroupSpec, rep: RepSpec, a: int, b: int) -> int:
        _check_degrees(a, b)
        return self._evaluate(self.prepare(group, rep), a, b)

    def diagonal(self, group: GroupSpec, rep: RepSpec, amax: int) -> List[int]:
        """[F(0,0), F(1,1), ..., F(amax,amax)]."""
        return [self.moment(group, rep, a, a) for a in range(amax + 1)]

    def moment_table(
        self,
        group: GroupSpec,
        rep: RepSpec,
        amax: int,
        bmax: int,
        group_id: Optional[str] = None,
        rep_id: Optional[str] = None,
    ) -> MomentTable:
        """
        Complete table on [0, amax] x [0, bmax].

        Cells whose mirror (b, a) is also in range are evaluated once. Cells
        run concurrently once the power caches are filled; a failing cell is
        reported as ``CellEvaluationError`` for the first failing cell in
        (a, b) order.

        Args:
            group: Group spec
            rep: Representation spec
            amax: Largest power of V
            bmax: Largest power of V*
            group_id: Identifier recorded in the table
            rep_id: Identifier recorded in the table

        Returns:
            MomentTable whose invariants have been checked
        """
        _check_degrees(amax, bmax)
        prepared = self.prepare(group, rep)
        prepared.warm(max(amax, bmax))

        cells = [
            (a, b)
            for a in range(amax + 1)
            for b in range(bmax + 1)
            if a >= b or b > amax or a > bmax
        ]
        entries: Dict[Cell, int] = {}
        failures: Dict[Cell, Exception] = {}

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_cell = {
                executor.submit(self._evaluate, prepared, a, b): (a, b) for a, b in cells
            }
            for future in as_completed(future_to_cell):
                cell = future_to_cell[future]
                try:
                    entries[cell] = future.result()
                except (SatoTateError, ArithmeticError, ValueError) as e:
                    failures[cell] = e

        if failures:
            a, b = min(failures)
            logger.error(f"Moment table failed at {len(failures)} cells, first ({a},{b})")
            cause = failures[(a, b)]
            # input guards surface as SpecError on every path
            if isinstance(cause, SpecError):
                raise cause
            raise CellEvaluationError(a, b, cause)

        for (a, b), value in list(entries.items()):
            if b <= amax and a <= bmax:
                entries[(b, a)] = value

        table = MomentTable(
            group_id=group_id or describe_group(group),
            rep_id=rep_id or describe_rep(rep),
            dim=prepared.dim,
            amax=amax,
            bmax=bmax,
            entries=entries,
        )
        table.check_invariants()
        logger.info(f"Computed {len(cells)} cells of {table.group_id} up to ({amax},{bmax})")
        return table


def moment_table(
    group: GroupSpec,
    rep: RepSpec,
    amax: int,
    bmax: int,
    max_workers: Optional[int] = None,
) -> MomentTable:
    """One-shot table with a private engine."""
    return MomentEngine(max_workers=max_workers).moment_table(group, rep, amax, bmax)
