"""
Finite-limit experiment, candidate ranking from sampled moments and
coincidence search among catalog entries.
"""
import math
from itertools import combinations
from typing import List, Optional, Sequence

from shared.exceptions import SpecError
from shared.models.rep_models import FiniteGiven
from shared.models.report_models import (
    CandidateRanking,
    CandidateScore,
    Coincidence,
    CoincidenceReport,
    EmpiricalMoments,
    FiniteLimitReport,
    SubgroupSeparation,
)
from shared.models.schemas import Norm
from shared.utils.logging import logger
from services.groups.catalog import cyclic, finite_subgroup_names
from services.moments.engine import MomentEngine
from services.analyzer.config import config
from services.analyzer.separation import Subject, separation_index, subject_from_catalog

TORUS_TARGET = "u1-wt1"
SU2_TARGET = "su2-std"


def finite_limit_experiment(
    target: str,
    bound: Optional[int] = None,
    names: Optional[Sequence[str]] = None,
    engine: Optional[MomentEngine] = None,
) -> FiniteLimitReport:
    """
    Separation of a target from its finite subgroups.

    Toric target (u1-wt1): cyclic(n), n = 1..bound, must separate at exactly
    n, so the indices grow without bound. Non-toric target (su2-std): every
    catalog finite subgroup separates, and the indices stay bounded.

    Args:
        target: ``u1-wt1`` or ``su2-std``
        bound: Separation bound (and largest n for the toric target)
        names: Subset of finite subgroups for the non-toric target
        engine: Shared moment engine

    Returns:
        FiniteLimitReport with one row per subgroup
    """
    bound = config.separation_default_bound if bound is None else bound
    engine = engine or MomentEngine()
    goal = subject_from_catalog(target)

    rows: List[SubgroupSeparation] = []
    if goal.name == TORUS_TARGET:
        toric = True
        for n in range(1, bound + 1):
            group = cyclic(n)
            report = separation_index(
                goal, Subject(group.name, group, FiniteGiven()), Norm.TOTAL, bound, engine
            )
            rows.append(
                SubgroupSeparation(name=group.name, order=n, index=report.index, witness=report.witness)
            )
        consistent = all(row.index == row.order for row in rows)
    elif goal.name == SU2_TARGET:
        toric = False
        for name in names or finite_subgroup_names():
            subgroup = subject_from_catalog(name)
            report = separation_index(goal, subgroup, Norm.TOTAL, bound, engine)
            rows.append(
                SubgroupSeparation(
                    name=subgroup.name,
                    order=subgroup.group.order,
                    index=report.index,
                    witness=report.witness,
                )
            )
        consistent = all(row.index is not None for row in rows)
    else:
        raise SpecError(
            f"Finite-limit target must be {TORUS_TARGET} or {SU2_TARGET}, got {target}",
            {"target": target},
        )

    indexed = [row for row in rows if row.index is not None]
    best = max(indexed, key=lambda row: row.index, default=None)
    report = FiniteLimitReport(
        target=goal.name,
        toric=toric,
        bound=bound,
        rows=rows,
        max_index=best.index if best else None,
        argmax=best.name if best else None,
        consistent=consistent,
    )
    logger.info(
        f"Finite-limit experiment for {goal.name}: max index {report.max_index} "
        f"({report.argmax}), consistent={consistent}"
    )
    return report


def rank_candidates(
    empirical: EmpiricalMoments,
    candidates: Sequence[str],
    z: Optional[float] = None,
    engine: Optional[MomentEngine] = None,
) -> CandidateRanking:
    """
    Score catalog candidates against sampled moments.

    A cell is consistent when |m̂(a,b) - F(a,b)| <= z * s(a,b). Candidates are
    ordered by consistent cells (descending), then by worst z-score.
    """
    z = config.z_score if z is None else z
    engine = engine or MomentEngine()
    scores: List[CandidateScore] = []
    for name in candidates:
        subject = subject_from_catalog(name)
        consistent, worst = 0, 0.0
        cells = [(c.a, c.b) for c in empirical.cells]
        for a, b in cells:
            exact = engine.moment(subject.group, subject.rep, a, b)
            deviation = abs(empirical.mean(a, b) - exact)
            s = empirical.stderr(a, b)
            if s > 0:
                score = deviation / s
            else:
                score = 0.0 if deviation < 1e-9 else math.inf
            worst = max(worst, score)
            if score <= z:
                consistent += 1
        scores.append(
            CandidateScore(
                name=subject.name,
                consistent_cells=consistent,
                total_cells=len(cells),
                max_z=worst,
            )
        )
    scores.sort(key=lambda s: (-s.consistent_cells, s.max_z, s.name))
    return CandidateRanking(z=z, scores=scores)


def coincidence_search(
    names: Sequence[str],
    bound: Optional[int] = None,
    norm: Norm = Norm.TOTAL,
    engine: Optional[MomentEngine] = None,
) -> CoincidenceReport:
    """
    Pairs of entries whose Sato-Tate functions agree on every cell up to bound.

    Agreement up to a bound never establishes equality of the measures; each
    hit is reported as inconclusive.
    """
    bound = config.separation_default_bound if bound is None else bound
    engine = engine or MomentEngine()
    subjects = [subject_from_catalog(name) for name in names]
    found: List[Coincidence] = []
    checked = 0
    for left, right in combinations(subjects, 2):
        checked += 1
        report = separation_index(left, right, norm, bound, engine)
        if not report.separated:
            found.append(Coincidence(left=left.name, right=right.name, bound=bound))
    if found:
        logger.warning(f"{len(found)} catalog pairs agree up to norm {bound} (inconclusive)")
    return CoincidenceReport(bound=bound, pairs_checked=checked, coincidences=found)
