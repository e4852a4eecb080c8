"""Dense immutable matrices over a :class:`FieldSpec`.

Every operation returns a new matrix; the wrapped ``galois`` array is marked
read-only so a :class:`MatrixGF` can be shared freely between threads.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from components.algebra.field import FieldElement, FieldSpec
from exceptions import FieldError, FieldMismatchError, MatrixShapeError, RankDeficientError

logger = logging.getLogger(__name__)

Entries = Union[Sequence[Sequence[Union[int, FieldElement]]], np.ndarray]
Vector = Union[Sequence[Union[int, FieldElement]], np.ndarray]


def _to_int(value) -> int:
    if isinstance(value, FieldElement):
        return value.value
    return int(value)


class MatrixGF:
    def __init__(self, spec: FieldSpec, entries: Entries):
        if isinstance(entries, galois.FieldArray):
            if type(entries) is not spec.gf:
                raise FieldMismatchError(
                    f"Array over {type(entries).name} does not belong to {spec.literal}"
                )
            array = entries.copy()
        else:
            if not isinstance(entries, np.ndarray):
                entries = [[_to_int(value) for value in row] for row in entries]
            raw = np.asarray(entries, dtype=np.int64)
            if raw.ndim != 2:
                raise MatrixShapeError(f"Expected a 2-D matrix, got {raw.ndim} dims")
            if raw.size and (raw.min() < 0 or raw.max() >= spec.order):
                raise FieldError(f"Matrix entries out of range for {spec.literal}")
            array = spec.gf(raw)

        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise MatrixShapeError(f"Matrix must be at least 1x1, got {array.shape}")

        array.flags.writeable = False
        self._spec = spec
        self._array = array

    @classmethod
    def from_array(cls, spec: FieldSpec, array: galois.FieldArray) -> "MatrixGF":
        return cls(spec, array)

    @classmethod
    def identity(cls, spec: FieldSpec, size: int) -> "MatrixGF":
        return cls(spec, spec.gf.Identity(size))

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "MatrixGF":
        return cls(spec, spec.gf.Zeros((rows, cols)))

    @property
    def spec(self) -> FieldSpec:
        return self._spec

    @property
    def array(self) -> galois.FieldArray:
        """Read-only view of the underlying field array."""
        return self._array

    @property
    def rows(self) -> int:
        return self._array.shape[0]

    @property
    def cols(self) -> int:
        return self._array.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, row: int, col: int) -> FieldElement:
        return FieldElement(int(self._array[row, col]), self._spec)

    def row(self, index: int) -> Tuple[FieldElement, ...]:
        return tuple(FieldElement(int(v), self._spec) for v in self._array[index])

    def to_ints(self) -> List[List[int]]:
        return np.asarray(self._array, dtype=np.int64).tolist()

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self._spec, self._array.T)

    @property
    def T(self) -> "MatrixGF":
        return self.transpose()

    def rows_of(self, indices: Sequence[int]) -> "MatrixGF":
        return MatrixGF(self._spec, self._array[list(indices), :])

    def is_zero(self) -> bool:
        return not np.any(self._array)

    def _same_field(self, other: "MatrixGF"):
        if not isinstance(other, MatrixGF):
            raise FieldMismatchError(f"Expected a MatrixGF, got {type(other).__name__}")
        if other._spec != self._spec:
            raise FieldMismatchError(
                f"Cannot combine matrices over {self._spec.literal} and "
                f"{other._spec.literal}"
            )

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        self._same_field(other)
        if self.cols != other.rows:
            raise MatrixShapeError(f"Cannot multiply {self.shape} by {other.shape}")
        return MatrixGF(self._spec, self._array @ other._array)

    def __add__(self, other: "MatrixGF") -> "MatrixGF":
        self._same_field(other)
        if self.shape != other.shape:
            raise MatrixShapeError(f"Cannot add {self.shape} and {other.shape}")
        return MatrixGF(self._spec, self._array + other._array)

    def __neg__(self) -> "MatrixGF":
        return MatrixGF(self._spec, -self._array)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixGF)
            and other._spec == self._spec
            and other.shape == self.shape
            and bool(np.all(other._array == self._array))
        )

    def __hash__(self) -> int:
        return hash((self._spec, self.shape, np.asarray(self._array).tobytes()))

    def __repr__(self) -> str:
        return f"MatrixGF({self._spec.literal}, {self.to_ints()})"


def hstack(*matrices: MatrixGF) -> MatrixGF:
    first = matrices[0]
    for matrix in matrices[1:]:
        first._same_field(matrix)
    if len({matrix.rows for matrix in matrices}) != 1:
        raise MatrixShapeError("Horizontal stacking needs equal row counts")
    return MatrixGF(first.spec, np.hstack([matrix.array for matrix in matrices]))


def vstack(*matrices: MatrixGF) -> MatrixGF:
    first = matrices[0]
    for matrix in matrices[1:]:
        first._same_field(matrix)
    if len({matrix.cols for matrix in matrices}) != 1:
        raise MatrixShapeError("Vertical stacking needs equal column counts")
    return MatrixGF(first.spec, np.vstack([matrix.array for matrix in matrices]))


def array_rank(array: galois.FieldArray) -> int:
    if array.size == 0:
        return 0
    return int(np.linalg.matrix_rank(array))


def array_pivots(reduced: galois.FieldArray) -> List[int]:
    return [int(np.argmax(row != 0)) for row in reduced if np.any(row)]


def rref(matrix: MatrixGF) -> Tuple[MatrixGF, int, List[int]]:
    """Reduced row-echelon form, rank and pivot columns.

    Pivoting takes the first nonzero entry in column order.
    """
    reduced = matrix.array.row_reduce()
    pivots = array_pivots(reduced)
    return MatrixGF(matrix.spec, reduced), len(pivots), pivots


def rank(matrix: MatrixGF) -> int:
    return array_rank(matrix.array)


def det(matrix: MatrixGF) -> FieldElement:
    if not matrix.is_square:
        raise MatrixShapeError(f"Determinant needs a square matrix, got {matrix.shape}")
    return FieldElement(int(np.linalg.det(matrix.array)), matrix.spec)


def inverse(matrix: MatrixGF) -> MatrixGF:
    if not matrix.is_square:
        raise MatrixShapeError(f"Inverse needs a square matrix, got {matrix.shape}")
    found = rank(matrix)
    if found < matrix.rows:
        raise RankDeficientError(
            f"Matrix of size {matrix.rows} is singular (rank {found})",
            rank=found,
            expected=matrix.rows,
        )
    return MatrixGF(matrix.spec, np.linalg.inv(matrix.array))


def check_columns(cols: int, indices: Sequence[int]) -> List[int]:
    indices = [int(index) for index in indices]
    if not indices:
        raise MatrixShapeError("Column selection must not be empty")
    if any(index < 0 or index >= cols for index in indices):
        raise MatrixShapeError(f"Column indices {indices} out of range for {cols}")
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise MatrixShapeError(f"Column indices {indices} are not strictly increasing")
    return indices


def select_columns(matrix: MatrixGF, indices: Sequence[int]) -> MatrixGF:
    indices = check_columns(matrix.cols, indices)
    return MatrixGF(matrix.spec, matrix.array[:, indices])


class SolveStatus(str, Enum):
    UNIQUE = "unique"
    PARAMETRIZED = "parametrized"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    solution: Optional[Tuple[FieldElement, ...]]
    nullity: int
    multiplications: int

    @property
    def solved(self) -> bool:
        return self.status is not SolveStatus.INCONSISTENT


def as_vector(spec: FieldSpec, values: Vector) -> galois.FieldArray:
    if isinstance(values, MatrixGF):
        if values.cols != 1 and values.rows != 1:
            raise MatrixShapeError(f"Expected a vector, got shape {values.shape}")
        return values.array.reshape(-1)
    if isinstance(values, galois.FieldArray):
        if type(values) is not spec.gf:
            raise FieldMismatchError(f"Vector does not belong to {spec.literal}")
        return values.reshape(-1)
    for value in values:
        if isinstance(value, FieldElement) and value.spec != spec:
            raise FieldMismatchError(f"Vector entry {value!r} is not in {spec.literal}")
    raw = np.asarray([_to_int(value) for value in values], dtype=np.int64)
    if raw.size and (raw.min() < 0 or raw.max() >= spec.order):
        raise FieldError(f"Vector entries out of range for {spec.literal}")
    return spec.gf(raw)


def solve_array(
    system: galois.FieldArray, rhs: galois.FieldArray
) -> Tuple[Optional[galois.FieldArray], int, int]:
    """Gauss-Jordan on ``[system | rhs]``, counting the field multiplications it
    performs.

    ``rhs`` is a vector or a matrix with one right-hand side per column; the
    solution has the same layout. Each pivot row is scaled from the pivot column
    rightwards and every other row with a nonzero entry in the pivot column is
    updated over the same span. Returns ``(solution or None, rank,
    multiplications)``; free variables are set to zero.
    """
    rows, cols = system.shape
    rhs_columns = rhs if rhs.ndim == 2 else rhs.reshape(-1, 1)
    width = cols + rhs_columns.shape[1]
    augmented = np.hstack([system, rhs_columns])
    multiplications = 0
    pivots = []

    for col in range(cols):
        top = len(pivots)
        if top == rows:
            break
        nonzero = np.flatnonzero(augmented[top:, col] != 0)
        if nonzero.size == 0:
            continue
        pivot = top + int(nonzero[0])
        if pivot != top:
            augmented[[top, pivot]] = augmented[[pivot, top]]

        span = slice(col, width)
        augmented[top, span] *= np.reciprocal(augmented[top, col])
        multiplications += width - col
        for other in range(rows):
            factor = augmented[other, col]
            if other == top or factor == 0:
                continue
            augmented[other, span] -= factor * augmented[top, span]
            multiplications += width - col
        pivots.append(col)

    found = len(pivots)
    if np.any(augmented[found:, cols:] != 0):
        return None, found, multiplications

    solution = type(system).Zeros((cols, rhs_columns.shape[1]))
    for row, pivot in enumerate(pivots):
        solution[pivot] = augmented[row, cols:]
    return solution.reshape((cols,) + rhs.shape[1:]), found, multiplications


def solve(system: MatrixGF, rhs: Vector) -> SolveResult:
    vector = as_vector(system.spec, rhs)
    if vector.size != system.rows:
        raise MatrixShapeError(
            f"Right-hand side has length {vector.size}, expected {system.rows}"
        )

    solution, found, multiplications = solve_array(system.array, vector)
    nullity = system.cols - found
    if solution is None:
        return SolveResult(SolveStatus.INCONSISTENT, None, nullity, multiplications)

    status = SolveStatus.UNIQUE if nullity == 0 else SolveStatus.PARAMETRIZED
    values = tuple(FieldElement(int(v), system.spec) for v in solution)
    return SolveResult(status, values, nullity, multiplications)
