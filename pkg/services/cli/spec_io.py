"""
Spec-file ingestion and canonical serialization.
"""
import json
from pathlib import Path
from typing import Dict, List, Tuple, Union

import pandas as pd
from pydantic import ValidationError

from shared.exceptions import SpecError
from shared.models.schemas import SpecFile
from services.analyzer.separation import Subject, subject_from_catalog
from services.groups.representations import validate_pair


def _field_path(loc: Tuple[Union[str, int], ...]) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def parse_spec_text(text: str, source: str = "<string>") -> SpecFile:
    """
    Parse a JSON spec document.

    Args:
        text: Document text
        source: Name used in diagnostics

    Returns:
        Validated SpecFile whose (group, rep) pair is compatible

    Raises:
        SpecError: JSON syntax error (with line/column), schema violation
            (with field paths) or incompatible representation
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(
            f"{source}:{e.lineno}:{e.colno}: {e.msg}",
            {"source": source, "line": e.lineno, "column": e.colno},
        )

    try:
        spec = SpecFile.model_validate(document)
    except ValidationError as e:
        errors: List[Dict[str, str]] = [
            {"field": _field_path(err["loc"]), "message": err["msg"]} for err in e.errors()
        ]
        first = errors[0]
        raise SpecError(
            f"{source}: {first['field']}: {first['message']}"
            + (f" (+{len(errors) - 1} more)" if len(errors) > 1 else ""),
            {"source": source, "errors": errors},
        )

    validate_pair(spec.group, spec.rep)
    return spec


def serialize_spec(spec: SpecFile) -> str:
    """Canonical form: sorted keys, two-space indent, trailing newline."""
    return json.dumps(spec.canonical(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def read_spec_file(path: Union[str, Path]) -> SpecFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecError(f"Cannot read spec file {path}: {e.strerror}", {"source": str(path)})
    return parse_spec_text(text, str(path))


def resolve_subject(reference: str) -> Subject:
    """A spec file path (``*.json`` or an existing file) or a catalog name."""
    path = Path(reference)
    if reference.endswith(".json") or path.is_file():
        spec = read_spec_file(path)
        return Subject(spec.name, spec.group, spec.rep)
    return subject_from_catalog(reference)


def read_table_csv(path: Union[str, Path]) -> Dict[Tuple[int, int], int]:
    """Read an ``a,b,F`` table; F stays an exact integer."""
    try:
        frame = pd.read_csv(path, dtype=str)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise SpecError(f"Cannot read table {path}: {e}", {"source": str(path)})

    missing = {"a", "b", "F"} - set(frame.columns)
    if missing:
        raise SpecError(f"{path}: missing columns {sorted(missing)}", {"source": str(path)})

    table: Dict[Tuple[int, int], int] = {}
    for line, row in enumerate(frame.itertuples(index=False), start=2):
        try:
            table[(int(row.a), int(row.b))] = int(row.F)
        except (TypeError, ValueError):
            raise SpecError(f"{path}:{line}: non-integer entry", {"source": str(path), "line": line})
    return table
