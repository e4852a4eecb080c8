"""Plain-text matrix, template and received-word files.

    # optional comments
    field gf(3)
    params m=2 l=2 r=1,1 k=3
    1 0 1 0 1 1
    0 1 2 0 1 1
    0 0 0 1 1 2

Entries are canonical integers. Templates use ``*`` for wildcards; received
words are a single row with ``?`` for erasures.
"""

import logging
import re
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from components.algebra.field import FieldSpec, parse_field_literal
from components.algebra.matrix import MatrixGF
from components.codes.classify import MatrixTemplate
from components.codes.decode import ReceivedWord
from components.codes.pmds import PmdsParams
from components.formats.interfaces import DocumentInterface
from exceptions import FieldError, FormatError, ParameterError
from utils import parse_int_list

logger = logging.getLogger(__name__)

WILDCARD = "*"
ERASURE = "?"

_PARAMS_PATTERN = re.compile(
    r"^params\s+m=(?P<m>\d+)\s+l=(?P<ell>\d+)\s+r=(?P<r>[\d,]+)\s+k=(?P<k>\d+)$"
)

Rows = Tuple[Tuple[Optional[int], ...], ...]


class BodyKind(str, Enum):
    MATRIX = "matrix"
    TEMPLATE = "template"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def _parse_symbol(token: str, spec: FieldSpec, marker: Optional[str], number: int):
    if marker is not None and token == marker:
        return None
    try:
        value = int(token, 0)
    except ValueError:
        raise FormatError(f"line {number}: {token!r} is not a field element") from None
    if not 0 <= value < spec.order:
        raise FormatError(f"line {number}: {value} is not an element of {spec.literal}")
    return value


def _format_row(row: Sequence[Optional[int]], marker: str) -> str:
    return " ".join(marker if value is None else str(value) for value in row)


class CodeFile(DocumentInterface):
    """A generator matrix or template together with its field and parameters."""

    def __init__(
        self,
        spec: FieldSpec,
        params: PmdsParams,
        rows: Rows,
        kind: Union[BodyKind, str] = BodyKind.MATRIX,
    ):
        super().__init__()
        self.spec = spec
        self.params = params
        self.rows = tuple(tuple(row) for row in rows)
        self.kind = BodyKind(kind)
        self.validate()

    def validate(self):
        expected = (self.params.k, self.params.n)
        found = (len(self.rows), len(self.rows[0]) if self.rows else 0)
        if found != expected or any(len(row) != expected[1] for row in self.rows):
            raise FormatError(
                f"Body is {found[0]}x{found[1]}, parameters {self.params.describe()} "
                f"need {expected[0]}x{expected[1]}"
            )
        if self.kind is BodyKind.MATRIX and any(None in row for row in self.rows):
            raise FormatError("Wildcards are only allowed in templates")
        super().validate()

    @classmethod
    def parse(cls, text: str, kind: Union[BodyKind, str] = BodyKind.MATRIX) -> "CodeFile":
        kind = BodyKind(kind)
        lines = _content_lines(text)
        if len(lines) < 3:
            raise FormatError("Expected a field line, a params line and a body")

        (field_number, field_line), (params_number, params_line) = lines[:2]
        if not field_line.startswith("field "):
            raise FormatError(f"line {field_number}: expected 'field <literal>'")
        try:
            spec = parse_field_literal(field_line[len("field ") :].strip())
        except FieldError as error:
            raise FormatError(f"line {field_number}: {error}") from error

        match = _PARAMS_PATTERN.match(params_line)
        if match is None:
            raise FormatError(
                f"line {params_number}: expected 'params m=<int> l=<int> r=<csv> k=<int>'"
            )
        try:
            params = PmdsParams(
                int(match["m"]), int(match["ell"]), parse_int_list(match["r"]), int(match["k"])
            )
        except ParameterError as error:
            raise FormatError(f"line {params_number}: {error}") from error

        marker = WILDCARD if kind is BodyKind.TEMPLATE else None
        rows = tuple(
            tuple(_parse_symbol(token, spec, marker, number) for token in line.split())
            for number, line in lines[2:]
        )
        logger.debug("Parsed %s %s over %s", kind.value, params.describe(), spec.literal)
        return cls(spec, params, rows, kind)

    @classmethod
    def load(cls, path: Union[str, Path], kind: Union[BodyKind, str] = BodyKind.MATRIX):
        return cls.parse(Path(path).read_text(encoding="utf-8"), kind)

    @classmethod
    def from_matrix(cls, matrix: MatrixGF, params: PmdsParams) -> "CodeFile":
        rows = tuple(tuple(row) for row in matrix.to_ints())
        return cls(matrix.spec, params, rows, BodyKind.MATRIX)

    @classmethod
    def from_template(cls, template: MatrixTemplate, params: PmdsParams) -> "CodeFile":
        return cls(template.spec, params, template.entries, BodyKind.TEMPLATE)

    def matrix(self) -> MatrixGF:
        if self.kind is not BodyKind.MATRIX:
            raise FormatError("File holds a template, not a matrix")
        return MatrixGF(self.spec, [list(row) for row in self.rows])

    def template(self) -> MatrixTemplate:
        return MatrixTemplate(self.spec, self.rows)

    def dumps(self) -> str:
        r = ",".join(str(value) for value in self.params.r)
        lines = [
            f"field {self.spec.literal}",
            f"params m={self.params.m} l={self.params.ell} r={r} k={self.params.k}",
        ]
        lines.extend(_format_row(row, WILDCARD) for row in self.rows)
        return "\n".join(lines) + "\n"


def parse_word(text: str, spec: FieldSpec, n: Optional[int] = None) -> ReceivedWord:
    """A received word: one line of symbols, ``?`` marking erasures."""
    lines = _content_lines(text)
    if len(lines) != 1:
        raise FormatError(f"Expected exactly one word line, found {len(lines)}")
    number, line = lines[0]
    values = tuple(_parse_symbol(token, spec, ERASURE, number) for token in line.split())
    if n is not None and len(values) != n:
        raise FormatError(f"line {number}: word has length {len(values)}, expected {n}")
    return ReceivedWord(spec, values)


def load_word(path: Union[str, Path], spec: FieldSpec, n: Optional[int] = None) -> ReceivedWord:
    return parse_word(Path(path).read_text(encoding="utf-8"), spec, n)


def format_word(values: Sequence[Optional[int]]) -> str:
    return _format_row(values, ERASURE) + "\n"
