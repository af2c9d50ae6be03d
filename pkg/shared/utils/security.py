import hashlib
import json
from typing import Any, Union

CHECKSUM_ALGORITHM = "sha256"


def content_checksum(data: Union[bytes, str]) -> str:
    """
    Hex SHA-256 of a data file's exact bytes.

    Args:
        data: File content; text is encoded as UTF-8 first

    Returns:
        The checksum recorded in (and compared against) the catalog manifest
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.new(CHECKSUM_ALGORITHM, data).hexdigest()


def canonical_digest(payload: Any) -> str:
    """Digest of a JSON-able payload in canonical (sorted, compact) form."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return content_checksum(text)
