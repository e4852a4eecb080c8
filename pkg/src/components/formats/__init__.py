from components.formats.codefile import (
    BodyKind,
    CodeFile,
    format_word,
    load_word,
    parse_word,
)
from components.formats.interfaces import DocumentInterface
from components.formats.report import REPORT_SCHEMA, VerdictReport

__all__ = [
    "BodyKind",
    "CodeFile",
    "DocumentInterface",
    "REPORT_SCHEMA",
    "VerdictReport",
    "format_word",
    "load_word",
    "parse_word",
]
