"""MDS predicates and MDS building blocks.

The MDS test is exhaustive: a k x n generator is MDS iff every k x k column
submatrix is invertible. Witnesses are always the lexicographically smallest
failing column subset, whatever ``PMDS_THREADS`` is set to.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional, Sequence, Tuple, Union

import galois
import numpy as np

from components.algebra.field import FieldElement, FieldKind, FieldSpec
from components.algebra.matrix import MatrixGF, array_pivots, array_rank, as_vector
from exceptions import (
    ConstructionError,
    FieldError,
    MatrixShapeError,
    RankDeficientError,
)
from utils import first_match

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MdsReport:
    is_mds: bool
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.is_mds


@dataclass(frozen=True)
class SuperregularReport:
    is_superregular: bool
    witness_rows: Optional[Tuple[int, ...]] = None
    witness_cols: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.is_superregular


class RsVariant(str, Enum):
    PLAIN = "plain"
    EXTENDED = "extended"
    DOUBLY_EXTENDED = "doubly-extended"


def singular_subset(
    array: galois.FieldArray, parallel: bool = True
) -> Optional[Tuple[int, ...]]:
    """First k-subset of columns (lex order) of a k x n array that is singular."""
    k, n = array.shape

    def is_singular(cols: Tuple[int, ...]) -> bool:
        return array_rank(array[:, list(cols)]) < k

    subsets = combinations(range(n), k)
    if not parallel:
        return next((cols for cols in subsets if is_singular(cols)), None)

    match = first_match(is_singular, subsets, bool)
    return match[0] if match else None


def is_mds_generator(generator: MatrixGF) -> MdsReport:
    k, n = generator.shape
    if k > n:
        raise MatrixShapeError(f"Generator has more rows than columns: {generator.shape}")
    found = array_rank(generator.array)
    if found < k:
        raise RankDeficientError(
            f"Generator has rank {found}, expected {k}", rank=found, expected=k
        )

    witness = singular_subset(generator.array)
    if witness is not None:
        logger.debug("Singular column subset %s", witness)
    return MdsReport(witness is None, witness)


def is_superregular(matrix: MatrixGF) -> SuperregularReport:
    """Every square minor of every size must be nonzero."""
    array = matrix.array
    rows, cols = matrix.shape
    for size in range(1, min(rows, cols) + 1):
        for row_set in combinations(range(rows), size):
            for col_set in combinations(range(cols), size):
                minor = array[np.ix_(row_set, col_set)]
                if array_rank(minor) < size:
                    return SuperregularReport(False, row_set, col_set)
    return SuperregularReport(True)


def _check_systematic(array: galois.FieldArray):
    k = array.shape[0]
    if array.shape[1] < k or not np.array_equal(array[:, :k], type(array).Identity(k)):
        raise MatrixShapeError("Matrix is not in systematic form (I | X)")


def systematic_mds_equivalence(
    generator: MatrixGF, alphas: Sequence[Union[int, FieldElement]]
) -> MatrixGF:
    """Map ``(I | X)`` to ``(I | diag(alphas) X)``; MDS-ness is preserved."""
    array = generator.array
    _check_systematic(array)
    k = generator.rows
    scale = as_vector(generator.spec, alphas)
    if scale.size != k:
        raise MatrixShapeError(f"Expected {k} multipliers, got {scale.size}")
    if np.any(scale == 0):
        raise FieldError("Row multipliers must all be nonzero")

    scaled = array.copy()
    scaled[:, k:] = scale.reshape(-1, 1) * array[:, k:]
    return MatrixGF(generator.spec, scaled)


def _evaluation_rows(spec: FieldSpec, k: int, points: galois.FieldArray):
    rows = spec.gf.Zeros((k, points.size))
    rows[0] = 1
    for power in range(1, k):
        rows[power] = rows[power - 1] * points
    return rows


def _unit_column(spec: FieldSpec, k: int, index: int):
    column = spec.gf.Zeros((k, 1))
    column[index, 0] = 1
    return column


def rs_generator(
    spec: FieldSpec, k: int, n: int, variant: Union[RsVariant, str] = RsVariant.PLAIN
) -> MatrixGF:
    """Reed-Solomon generator evaluating ``x^0 .. x^(k-1)`` at the first points of
    ``elements(spec)``, lengthened by unit columns for the extended variants."""
    variant = RsVariant(variant)
    q = spec.order
    if k < 1 or n < k:
        raise ConstructionError(f"Invalid RS dimensions k={k}, n={n}")

    if variant is RsVariant.PLAIN:
        if n > q:
            raise ConstructionError(f"Plain RS needs n <= q, got n={n}, q={q}", bound=n)
        points = spec.gf(np.arange(n))
        return MatrixGF(spec, _evaluation_rows(spec, k, points))

    if variant is RsVariant.EXTENDED:
        if n > q + 1:
            raise ConstructionError(
                f"Extended RS needs n <= q+1, got n={n}, q={q}", bound=n - 1
            )
        points = spec.gf(np.arange(n - 1))
        array = np.hstack([_evaluation_rows(spec, k, points), _unit_column(spec, k, k - 1)])
        return MatrixGF(spec, array)

    exceptional = spec.kind is FieldKind.BINARY and k in (3, q - 1)
    if n != q + 2 or not exceptional:
        raise ConstructionError(
            f"Doubly-extended RS needs q = 2^h, n = q+2 and k in {{3, q-1}}; "
            f"got q={q}, n={n}, k={k}"
        )
    if k == 3:
        points = spec.gf(np.arange(q))
        array = np.hstack(
            [
                _evaluation_rows(spec, 3, points),
                _unit_column(spec, 3, 2),
                _unit_column(spec, 3, 1),
            ]
        )
        generator = MatrixGF(spec, array)
    else:
        generator = parity_check(rs_generator(spec, 3, n, RsVariant.DOUBLY_EXTENDED))

    report = is_mds_generator(generator)
    if not report.is_mds:
        raise ConstructionError(
            f"Doubly-extended RS over {spec.literal} is not MDS (columns {report.witness})"
        )
    return generator


def systematic_form(
    generator: MatrixGF, pivot_cols: Optional[Sequence[int]] = None
) -> MatrixGF:
    """Row-equivalent matrix with the identity on ``pivot_cols`` (default: the first
    independent columns in column order)."""
    array = generator.array
    k, n = generator.shape

    if pivot_cols is None:
        pivot_cols = array_pivots(array.row_reduce())
        if len(pivot_cols) < k:
            raise RankDeficientError(
                f"Generator has rank {len(pivot_cols)}, expected {k}",
                rank=len(pivot_cols),
                expected=k,
            )
    pivot_cols = [int(col) for col in pivot_cols]
    if len(pivot_cols) != k or len(set(pivot_cols)) != k:
        raise MatrixShapeError(f"Need {k} distinct pivot columns, got {pivot_cols}")
    if any(col < 0 or col >= n for col in pivot_cols):
        raise MatrixShapeError(f"Pivot columns {pivot_cols} out of range for {n}")

    square = array[:, pivot_cols]
    found = array_rank(square)
    if found < k:
        raise RankDeficientError(
            f"Pivot columns {pivot_cols} are dependent (rank {found})",
            rank=found,
            expected=k,
        )
    return MatrixGF(generator.spec, np.linalg.inv(square) @ array)


def parity_check(generator: MatrixGF) -> MatrixGF:
    """``H`` with ``G H^T = 0`` and full row rank ``n - k``."""
    k, n = generator.shape
    if k >= n:
        raise MatrixShapeError(f"An [{n},{k}] code has an empty dual")

    reduced = generator.array.row_reduce()
    pivots = array_pivots(reduced)
    if len(pivots) < k:
        raise RankDeficientError(
            f"Generator has rank {len(pivots)}, expected {k}",
            rank=len(pivots),
            expected=k,
        )
    free = [col for col in range(n) if col not in pivots]

    gf = generator.spec.gf
    check = gf.Zeros((n - k, n))
    check[:, pivots] = -reduced[:, free].T
    check[:, free] = gf.Identity(n - k)
    return MatrixGF(generator.spec, check)


def mds_code_exists(n: int, k: int, spec: FieldSpec) -> bool:
    """Constructive existence of an [n, k]-MDS code over ``spec``.

    Beyond the trivial codes this is decided by the (doubly-)extended
    Reed-Solomon bounds, i.e. it assumes the MDS conjecture.
    """
    if k < 1 or n < k:
        return False
    if k == 1 or k >= n - 1:
        return True
    q = spec.order
    if n <= q + 1:
        return True
    return n == q + 2 and spec.kind is FieldKind.BINARY and k in (3, q - 1)


def mds_generator(spec: FieldSpec, n: int, k: int) -> MatrixGF:
    if not mds_code_exists(n, k, spec):
        raise ConstructionError(f"No [{n},{k}]-MDS code is known over {spec.literal}")

    gf = spec.gf
    if k == n:
        return MatrixGF.identity(spec, n)
    if k == 1:
        return MatrixGF(spec, gf.Ones((1, n)))
    if k == n - 1:
        return MatrixGF(spec, np.hstack([gf.Identity(k), gf.Ones((k, 1))]))

    q = spec.order
    if n <= q:
        return rs_generator(spec, k, n, RsVariant.PLAIN)
    if n == q + 1:
        return rs_generator(spec, k, n, RsVariant.EXTENDED)
    return rs_generator(spec, k, n, RsVariant.DOUBLY_EXTENDED)
