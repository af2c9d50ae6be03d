"""
Separation indices: the first norm at which two Sato-Tate functions differ.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import List, NamedTuple, Optional, Tuple

from shared.exceptions import SpecError
from shared.models.group_models import GroupSpec
from shared.models.rep_models import RepSpec
from shared.models.report_models import SeparationReport, Witness
from shared.models.schemas import Norm
from shared.utils.config import settings
from shared.utils.logging import logger
from services.groups.catalog import catalog_entry
from services.moments.engine import MomentEngine
from services.analyzer.config import config


class Subject(NamedTuple):
    """A named (group, rep) pair under comparison."""

    name: str
    group: GroupSpec
    rep: RepSpec


def subject_from_catalog(name: str) -> Subject:
    entry = catalog_entry(name)
    return Subject(entry.name, entry.group, entry.rep)


def cells_at_norm(level: int, norm: Norm) -> List[Tuple[int, int]]:
    """
    Canonical cells (a >= b) of one norm level, a ascending then b.

    F(a,b) = F(b,a), so the mirrored half carries no extra information.
    """
    if norm == Norm.TOTAL:
        return [(a, level - a) for a in range((level + 1) // 2, level + 1)]
    return [(level, b) for b in range(level + 1)]


def _scan_level(
    engine: MomentEngine,
    left: Subject,
    right: Subject,
    level: int,
    norm: Norm,
) -> Tuple[int, Optional[Witness], int]:
    checked = 0
    for a, b in cells_at_norm(level, norm):
        checked += 1
        lv = engine.moment(left.group, left.rep, a, b)
        rv = engine.moment(right.group, right.rep, a, b)
        if lv != rv:
            return level, Witness(a=a, b=b, left_value=lv, right_value=rv), checked
    return level, None, checked


def separation_index(
    left: Subject,
    right: Subject,
    norm: Norm = Norm.TOTAL,
    bound: Optional[int] = None,
    engine: Optional[MomentEngine] = None,
    max_workers: Optional[int] = None,
) -> SeparationReport:
    """
    Scan norm levels 0..bound for the first disagreement of F_left and F_right.

    Levels are evaluated in parallel batches; the reported index is the least
    disagreeing level, identical to a sequential scan.

    Args:
        left: First (group, rep)
        right: Second (group, rep)
        norm: ``total`` (a+b) or ``box`` (max(a,b))
        bound: Largest norm scanned (default from config)
        engine: Shared moment engine
        max_workers: Levels evaluated per batch

    Returns:
        SeparationReport; ``index`` is None when the functions agree up to bound
    """
    bound = config.separation_default_bound if bound is None else bound
    if bound < 0 or bound > config.separation_max_bound:
        raise SpecError(
            f"Separation bound must lie in [0, {config.separation_max_bound}], got {bound}",
            {"bound": bound},
        )
    engine = engine or MomentEngine()
    workers = max_workers or settings.max_workers

    checked = 0
    level = 0
    with ThreadPoolExecutor(max_workers=workers) as executor:
        while level <= bound:
            batch = list(range(level, min(level + workers, bound + 1)))
            results = list(
                executor.map(lambda lv: _scan_level(engine, left, right, lv, norm), batch)
            )
            for lv, witness, count in sorted(results, key=lambda r: r[0]):
                checked += count
                if witness is not None:
                    logger.info(
                        f"{left.name} vs {right.name} separated at {norm.value} norm {lv} "
                        f"by cell ({witness.a},{witness.b})"
                    )
                    return SeparationReport(
                        left=left.name,
                        right=right.name,
                        norm=norm,
                        bound=bound,
                        index=lv,
                        witness=witness,
                        cells_checked=checked,
                    )
            level = batch[-1] + 1

    logger.info(f"{left.name} vs {right.name} agree up to {norm.value} norm {bound}")
    return SeparationReport(
        left=left.name, right=right.name, norm=norm, bound=bound, cells_checked=checked
    )
