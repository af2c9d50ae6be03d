"""
Command output: CSV / JSON payloads written once, atomically when to a file.
"""
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Tuple

import pandas as pd

from shared.models.schemas import OutputRecord
from shared.utils.logging import logger


def table_csv(rows: Iterable[Tuple[int, int, int]]) -> str:
    """CSV with header a,b,F; F as exact decimal strings."""
    rows = list(rows)
    frame = pd.DataFrame(
        {
            "a": [str(a) for a, _, _ in rows],
            "b": [str(b) for _, b, _ in rows],
            "F": [str(f) for _, _, f in rows],
        },
        dtype="string",
    )
    return frame.to_csv(index=False, lineterminator="\n")


def table_json_rows(rows: Iterable[Tuple[int, int, int]]) -> list:
    return [{"a": a, "b": b, "F": str(f)} for a, b, f in rows]


def record_json(
    command: str,
    inputs: Dict[str, Any],
    result: Any,
    elapsed: Optional[float] = None,
) -> str:
    record = OutputRecord.build(command, inputs, result, elapsed)
    return json.dumps(record.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


def emit(text: str, output: Optional[Path] = None) -> None:
    """
    Write the payload to stdout, or to ``output`` via temp file + rename.

    Args:
        text: Complete payload
        output: Destination file; None for stdout
    """
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{output.name}.", dir=output.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, output)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.info(f"Wrote {len(text)} bytes to {output}")
