from .main import build_parser, main
from .spec_io import parse_spec_text, read_spec_file, read_table_csv, resolve_subject, serialize_spec

__all__ = [
    "build_parser",
    "main",
    "parse_spec_text",
    "read_spec_file",
    "read_table_csv",
    "resolve_subject",
    "serialize_spec",
]
