from components.algebra.field import (
    FieldElement,
    FieldKind,
    FieldSpec,
    add,
    elements,
    field_make,
    inv,
    mul,
    neg,
    parse_field_literal,
    smallest_field,
    sub,
)
from components.algebra.matrix import (
    MatrixGF,
    SolveResult,
    SolveStatus,
    det,
    hstack,
    inverse,
    rank,
    rref,
    select_columns,
    solve,
    vstack,
)

__all__ = [
    "FieldElement",
    "FieldKind",
    "FieldSpec",
    "add",
    "elements",
    "field_make",
    "inv",
    "mul",
    "neg",
    "parse_field_literal",
    "smallest_field",
    "sub",
    "MatrixGF",
    "SolveResult",
    "SolveStatus",
    "det",
    "hstack",
    "inverse",
    "rank",
    "rref",
    "select_columns",
    "solve",
    "vstack",
]
