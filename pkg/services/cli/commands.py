"""
Subcommand implementations. Each returns a process exit code.
"""
import time
from argparse import Namespace
from typing import Any, Dict, List, Optional

from shared.exceptions import SpecError
from shared.models.report_models import SampleConfig
from shared.models.schemas import ExitCode, Norm, OutputFormat
from shared.utils.logging import logger
from services.analyzer import (
    check_irreducible,
    coincidence_search,
    crude_bound_threshold,
    finite_limit_experiment,
    infer_dimension,
    rank_candidates,
    separation_index,
    verify_torsion_agreement,
)
from services.analyzer.config import config as analyzer_config
from services.analyzer.separation import Subject
from services.groups.catalog import catalog_entry, catalog_names, catalog_summary, catalog_verify
from services.moments.engine import MomentEngine
from services.sampler import estimate_moments, gaussian_limit_report
from services.cli.output import emit, record_json, table_csv, table_json_rows
from services.cli.spec_io import read_spec_file, read_table_csv, resolve_subject


def _subject(args: Namespace) -> Subject:
    if getattr(args, "group", None):
        spec = read_spec_file(args.group)
        return Subject(spec.name, spec.group, spec.rep)
    if getattr(args, "catalog", None):
        entry = catalog_entry(args.catalog)
        return Subject(entry.name, entry.group, entry.rep)
    raise SpecError("One of --group FILE or --catalog NAME is required")


def _describe(subject: Subject) -> Dict[str, Any]:
    return {
        "name": subject.name,
        "group": subject.group.model_dump(mode="json"),
        "rep": subject.rep.model_dump(mode="json"),
    }


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.start = time.perf_counter()

    def elapsed(self) -> Optional[float]:
        return time.perf_counter() - self.start if self.enabled else None


def _finish(args: Namespace, command: str, inputs: Dict[str, Any], result: Any, clock: _Clock) -> None:
    emit(record_json(command, inputs, result, clock.elapsed()), args.output)


def _engine(args: Namespace) -> MomentEngine:
    return MomentEngine(max_workers=getattr(args, "workers", None))


def cmd_moments(args: Namespace) -> int:
    clock = _Clock(args.timing)
    subject = _subject(args)
    if args.amax < 0 or args.bmax < 0:
        raise SpecError("--amax and --bmax must be nonnegative")
    table = _engine(args).moment_table(
        subject.group, subject.rep, args.amax, args.bmax, group_id=subject.name
    )
    rows = table.rows()
    if args.format == OutputFormat.CSV.value:
        emit(table_csv(rows), args.output)
        return ExitCode.OK
    inputs = {"subject": _describe(subject), "amax": args.amax, "bmax": args.bmax}
    result = {"name": subject.name, "dim": table.dim, "entries": table_json_rows(rows)}
    _finish(args, "moments", inputs, result, clock)
    return ExitCode.OK


def cmd_separate(args: Namespace) -> int:
    clock = _Clock(args.timing)
    left, right = resolve_subject(args.left), resolve_subject(args.right)
    report = separation_index(
        left, right, Norm(args.norm), args.bound, _engine(args), args.workers
    )
    inputs = {
        "left": _describe(left),
        "right": _describe(right),
        "norm": args.norm,
        "bound": report.bound,
    }
    result = {**report.model_dump(mode="json"), "verdict": report.verdict}
    _finish(args, "separate", inputs, result, clock)
    return ExitCode.OK if report.separated else ExitCode.INCONCLUSIVE


def cmd_torsion(args: Namespace) -> int:
    clock = _Clock(args.timing)
    subject = _subject(args)
    report = verify_torsion_agreement(
        subject.group, subject.rep, args.n, args.degree, base=subject.name, engine=_engine(args)
    )
    inputs = {"subject": _describe(subject), "n": args.n, "degree": report.degree}
    result = {**report.model_dump(mode="json"), "verdict": report.verdict}
    _finish(args, "torsion", inputs, result, clock)
    return ExitCode.OK


def cmd_infer_dim(args: Namespace) -> int:
    clock = _Clock(args.timing)
    if args.from_table:
        table = read_table_csv(args.from_table)
        diagonal = {a: f for (a, b), f in table.items() if a == b}
        inputs: Dict[str, Any] = {"table": str(args.from_table), "amax": args.amax}
        inference = infer_dimension(diagonal, args.amax)
    else:
        subject = _subject(args)
        amax = args.amax if args.amax is not None else analyzer_config.infer_default_amax
        diagonal = dict(enumerate(_engine(args).diagonal(subject.group, subject.rep, amax)))
        inputs = {"subject": _describe(subject), "amax": amax}
        inference = infer_dimension(diagonal, amax)
    _finish(args, "infer-dim", inputs, inference.model_dump(mode="json"), clock)
    return ExitCode.OK


def _sample_config(args: Namespace, subject: Subject) -> SampleConfig:
    return SampleConfig(
        group_id=subject.name,
        group=subject.group,
        rep=subject.rep,
        samples=args.samples,
        seed=args.seed,
        amax=args.amax,
        bmax=args.bmax,
    )


def cmd_sample(args: Namespace) -> int:
    clock = _Clock(args.timing)
    subject = _subject(args)
    cfg = _sample_config(args, subject)
    empirical = estimate_moments(cfg, args.workers)
    inputs = {
        "subject": _describe(subject),
        "samples": cfg.samples,
        "seed": cfg.seed,
        "amax": cfg.amax,
        "bmax": cfg.bmax,
    }
    _finish(args, "sample", inputs, empirical.model_dump(mode="json"), clock)
    return ExitCode.OK


def cmd_catalog(args: Namespace) -> int:
    clock = _Clock(args.timing)
    if args.action == "list":
        rows = [catalog_summary(name) for name in catalog_names()]
        _finish(args, "catalog list", {}, rows, clock)
        return ExitCode.OK
    if args.action == "show":
        if not args.name:
            raise SpecError("catalog show needs a NAME")
        _finish(args, "catalog show", {"name": args.name}, catalog_summary(args.name), clock)
        return ExitCode.OK

    results = catalog_verify()
    failed = [r for r in results if not r["ok"]]
    _finish(args, "catalog verify", {}, {"ok": not failed, "entries": results}, clock)
    return ExitCode.PARSE if failed else ExitCode.OK


def _split_names(value: Optional[str], default: List[str]) -> List[str]:
    # commas inside parentheses belong to the name
    if not value:
        return default
    names, depth, current = [], 0, ""
    for ch in value:
        if ch == "," and depth == 0:
            names.append(current.strip())
            current = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        current += ch
    if current.strip():
        names.append(current.strip())
    return names


DEFAULT_CANDIDATES = [
    "u1-wt1",
    "t2-std",
    "u2-std",
    "su2-std",
    "binary_dihedral(8)",
    "binary_tetrahedral",
    "binary_octahedral",
    "binary_icosahedral",
]

DEFAULT_COINCIDENCE_NAMES = [
    "regular(cyclic(24))",
    "regular(binary_dihedral(24))",
    "regular(binary_tetrahedral)",
    "regular(binary_dihedral(8))",
]


def cmd_identify(args: Namespace) -> int:
    clock = _Clock(args.timing)
    subject = _subject(args)
    cfg = _sample_config(args, subject)
    empirical = estimate_moments(cfg, args.workers)
    candidates = _split_names(args.candidates, DEFAULT_CANDIDATES)
    ranking = rank_candidates(empirical, candidates, args.z, _engine(args))
    inputs = {
        "subject": _describe(subject),
        "samples": cfg.samples,
        "seed": cfg.seed,
        "amax": cfg.amax,
        "bmax": cfg.bmax,
        "candidates": candidates,
    }
    _finish(args, "identify", inputs, ranking.model_dump(mode="json"), clock)
    return ExitCode.OK


def cmd_coincidences(args: Namespace) -> int:
    clock = _Clock(args.timing)
    names = _split_names(args.names, DEFAULT_COINCIDENCE_NAMES)
    report = coincidence_search(names, args.bound, Norm(args.norm), _engine(args))
    inputs = {"names": names, "bound": report.bound, "norm": args.norm}
    _finish(args, "coincidences", inputs, report.model_dump(mode="json"), clock)
    return ExitCode.INCONCLUSIVE if report.coincidences else ExitCode.OK


def cmd_crude(args: Namespace) -> int:
    clock = _Clock(args.timing)
    report = crude_bound_threshold(args.n, args.amax, _engine(args))
    result = {**report.model_dump(mode="json"), "verdict": report.verdict}
    _finish(args, "crude", {"n": args.n, "amax": report.amax}, result, clock)
    return ExitCode.OK


def cmd_irreducible(args: Namespace) -> int:
    clock = _Clock(args.timing)
    subject = _subject(args)
    irreducible = check_irreducible(subject.group, subject.rep, _engine(args))
    _finish(args, "irreducible", {"subject": _describe(subject)}, {"irreducible": irreducible}, clock)
    return ExitCode.OK


def cmd_finite_limit(args: Namespace) -> int:
    clock = _Clock(args.timing)
    report = finite_limit_experiment(args.target, args.bound, engine=_engine(args))
    inputs = {"target": args.target, "bound": report.bound}
    _finish(args, "finite-limit", inputs, report.model_dump(mode="json"), clock)
    return ExitCode.OK


def _positive_ints(value: str, option: str) -> List[int]:
    items = [item.strip() for item in value.split(",") if item.strip()]
    try:
        numbers = [int(item) for item in items]
    except ValueError:
        raise SpecError(f"{option} expects comma-separated integers, got {value!r}", {option: value})
    if not numbers or min(numbers) < 1:
        raise SpecError(f"{option} needs positive integers, got {value!r}", {option: value})
    return numbers


def cmd_gaussian(args: Namespace) -> int:
    clock = _Clock(args.timing)
    ns = _positive_ints(args.ns, "--ns")
    if args.amax < 0:
        raise SpecError(f"--amax must be nonnegative, got {args.amax}")
    report = gaussian_limit_report(ns, args.amax, args.samples, args.seed, _engine(args))
    inputs = {"ns": ns, "amax": args.amax, "samples": args.samples, "seed": args.seed}
    _finish(args, "gaussian", inputs, report.model_dump(mode="json"), clock)
    logger.debug(f"Gaussian limit rows: {len(report.rows)}")
    return ExitCode.OK
