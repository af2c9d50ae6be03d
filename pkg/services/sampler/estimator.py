"""
Monte Carlo moment estimation over seeded Philox substreams.
"""
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from shared.exceptions import EvaluationError
from shared.models.group_models import UnitaryGroup
from shared.models.rep_models import Std
from shared.models.report_models import (
    EmpiricalCell,
    EmpiricalMoments,
    GaussianLimitReport,
    GaussianLimitRow,
    SampleConfig,
)
from shared.utils.config import settings
from shared.utils.logging import logger
from services.moments.engine import MomentEngine
from services.sampler.config import config
from services.sampler.haar import TraceSampler

Cell = Tuple[int, int]


@dataclass
class _ChunkSums:
    """Per-cell partial sums of one substream: Σ Re, Σ Im, Σ |x|^2."""

    index: int
    count: int
    sums: Dict[Cell, Tuple[float, float, float]]
    retries: int


def _canonical_cells(amax: int, bmax: int) -> List[Cell]:
    # (a, b) with a > b is the conjugate of (b, a) when both are in range
    return [
        (a, b)
        for a in range(amax + 1)
        for b in range(bmax + 1)
        if a <= b or a > bmax or b > amax
    ]


def _chunk_sums(
    sampler: TraceSampler,
    seed: np.random.SeedSequence,
    index: int,
    count: int,
    cells: Sequence[Cell],
    top: int,
) -> _ChunkSums:
    rng = np.random.Generator(np.random.Philox(seed))
    traces, retries = sampler.sample(rng, count)
    conj = np.conj(traces)

    z_powers = [np.ones(count, dtype=complex)]
    w_powers = [np.ones(count, dtype=complex)]
    for _ in range(top):
        z_powers.append(z_powers[-1] * traces)
        w_powers.append(w_powers[-1] * conj)

    sums: Dict[Cell, Tuple[float, float, float]] = {}
    for a, b in cells:
        values = z_powers[a] * w_powers[b]
        sums[(a, b)] = (
            float(np.sum(values.real)),
            float(np.sum(values.imag)),
            float(np.sum(values.real ** 2 + values.imag ** 2)),
        )
    return _ChunkSums(index=index, count=count, sums=sums, retries=retries)


def _chunk_sizes(samples: int) -> List[int]:
    full, rest = divmod(samples, config.chunk_size)
    return [config.chunk_size] * full + ([rest] if rest else [])


def estimate_moments(cfg: SampleConfig, max_workers: Optional[int] = None) -> EmpiricalMoments:
    """
    Estimate ∫ z^a z̄^b dμ on [0, amax] x [0, bmax] from cfg.samples Haar draws.

    Substream k draws from Philox seeded by the k-th child of
    SeedSequence(cfg.seed), so output depends only on cfg. Per-chunk sums are
    combined in chunk order with math.fsum. m̂(0,0) = 1 with zero stderr, and
    m̂(b,a) is the exact conjugate of m̂(a,b).

    Args:
        cfg: Sampling configuration
        max_workers: Threads for chunk evaluation (defaults to settings)

    Returns:
        EmpiricalMoments with means, standard errors and retry count
    """
    sampler = TraceSampler(cfg.group, cfg.rep)
    cells = _canonical_cells(cfg.amax, cfg.bmax)
    top = max(cfg.amax, cfg.bmax)
    sizes = _chunk_sizes(cfg.samples)
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(sizes))

    logger.info(
        f"Sampling {cfg.samples} traces for {cfg.group_id} in {len(sizes)} substreams (seed {cfg.seed})"
    )

    results: List[Optional[_ChunkSums]] = [None] * len(sizes)
    with ThreadPoolExecutor(max_workers=max_workers or settings.max_workers) as executor:
        futures = [
            executor.submit(_chunk_sums, sampler, seed, index, count, cells, top)
            for index, (seed, count) in enumerate(zip(seeds, sizes))
        ]
        for future in as_completed(futures):
            chunk = future.result()
            results[chunk.index] = chunk

    chunks = [c for c in results if c is not None]
    n = cfg.samples
    estimates: Dict[Cell, EmpiricalCell] = {}
    for a, b in cells:
        if a == 0 and b == 0:
            estimates[(0, 0)] = EmpiricalCell(a=0, b=0, real=1.0, imag=0.0, stderr=0.0)
            continue
        re = math.fsum(c.sums[(a, b)][0] for c in chunks) / n
        im = math.fsum(c.sums[(a, b)][1] for c in chunks) / n
        second = math.fsum(c.sums[(a, b)][2] for c in chunks) / n
        if n > 1:
            variance = max(second - (re * re + im * im), 0.0) * n / (n - 1)
            stderr = math.sqrt(variance / n)
        else:
            stderr = 0.0
        estimates[(a, b)] = EmpiricalCell(a=a, b=b, real=re, imag=im, stderr=stderr)

    for (a, b), cell in list(estimates.items()):
        if b <= cfg.amax and a <= cfg.bmax and (b, a) not in estimates:
            estimates[(b, a)] = EmpiricalCell(
                a=b, b=a, real=cell.real, imag=-cell.imag, stderr=cell.stderr
            )

    return EmpiricalMoments(
        group_id=cfg.group_id,
        samples=n,
        seed=cfg.seed,
        amax=cfg.amax,
        bmax=cfg.bmax,
        cells=[estimates[key] for key in sorted(estimates)],
        retries=sum(c.retries for c in chunks),
    )


def gaussian_limit_report(
    ns: Sequence[int],
    amax: int,
    samples: int = 0,
    seed: int = 0,
    engine: Optional[MomentEngine] = None,
) -> GaussianLimitReport:
    """
    Exact F_{U(n),Std}(a,a) against the complex Gaussian moment a!.

    The two agree for a <= n; with ``samples`` > 0 each row also carries a
    Monte Carlo estimate of E|tr|^(2a).
    """
    engine = engine or MomentEngine()
    rows: List[GaussianLimitRow] = []
    for n in ns:
        group = UnitaryGroup(n=n)
        empirical = None
        if samples > 0:
            empirical = estimate_moments(
                SampleConfig(
                    group_id=f"u{n}-std",
                    group=group,
                    rep=Std(),
                    samples=samples,
                    seed=seed,
                    amax=amax,
                    bmax=amax,
                )
            )
        for a in range(amax + 1):
            exact = engine.moment(group, Std(), a, a)
            gaussian = math.factorial(a)
            if a <= n and exact != gaussian:
                raise EvaluationError(
                    f"F_U({n})({a},{a}) = {exact} differs from {a}! below the rank",
                    {"n": n, "a": a},
                )
            rows.append(
                GaussianLimitRow(
                    n=n,
                    a=a,
                    exact=exact,
                    gaussian=gaussian,
                    difference=gaussian - exact,
                    estimate=empirical.mean(a, a).real if empirical else None,
                    stderr=empirical.stderr(a, a) if empirical else None,
                )
            )
    return GaussianLimitReport(rows=rows, samples=samples)
