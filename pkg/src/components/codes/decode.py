"""Erasure decoding through the block-structured parity-check matrix.

For a standard form the parity-check matrix is, in role column order,

    ( C_1  0    ...  0        0 )
    ( ...                       )
    ( 0    ...  C_{m-1}       0 )
    ( X_1  ...  X_{m-1}  A_perp )

where ``C_i`` checks ``B_i``, the first r_m rows of ``A_perp`` check the last
block locally, and the last row of the bottom band is the single global row.
``X_i`` is zero except for that last row, fixed by
``M_i A_perp^T = -B_i X_i^T``.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from components.algebra.field import FieldSpec
from components.algebra.matrix import (
    MatrixGF,
    SolveStatus,
    array_rank,
    as_vector,
    solve,
    solve_array,
)
from components.codes.classify import StandardForm, standardize
from components.codes.mds import parity_check
from components.codes.pmds import ErasurePattern, PmdsParams, check_generator
from exceptions import (
    DecodeError,
    FieldError,
    MatrixShapeError,
    ParameterError,
    PatternOutsideFamilyError,
    UncorrectableError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StructuredParityCheck:
    form: StandardForm
    local_checks: Tuple[MatrixGF, ...]
    a_perp: MatrixGF
    coupling: Tuple[MatrixGF, ...]
    matrix: MatrixGF

    @property
    def local_rows(self) -> Dict[int, Tuple[int, ...]]:
        """Rows of ``matrix`` supported on a single block, keyed by original block."""
        rows, start = {}, 0
        for block, check in zip(self.form.block_order, self.local_checks):
            rows[block] = tuple(range(start, start + check.rows))
            start += check.rows
        last = self.form.params.r[self.form.last_block]
        rows[self.form.last_block] = tuple(range(start, start + last))
        return rows

    @property
    def global_row(self) -> int:
        return self.matrix.rows - 1


def _global_row(form: StandardForm, v: galois.FieldArray) -> galois.FieldArray:
    """A row orthogonal to ``A`` but not to ``v``."""
    gf = form.spec.gf
    a = form.a
    candidates = gf.Identity(v.size) if a is None else parity_check(a).array
    for row in candidates:
        if np.dot(v, row) != 0:
            return row
    raise DecodeError("No global check row: v lies in the row space of A")


def build_structured_H(form: StandardForm) -> StructuredParityCheck:
    params, spec = form.params, form.spec
    gf = spec.gf
    order = form.block_order
    sizes = [params.block_sizes[block] for block in order]
    r_last = params.r[form.last_block]

    local_checks = tuple(parity_check(block) for block in form.blocks)

    v = form.shared_row
    stacked = v.reshape(1, -1)
    if form.a is not None:
        stacked = np.vstack([stacked, form.a.array])
    local_last = parity_check(MatrixGF(spec, stacked)).array
    h = _global_row(form, v)
    a_perp = MatrixGF(spec, np.vstack([local_last, h.reshape(1, -1)]))

    scale = np.dot(v, h)
    coupling = []
    for group, block in enumerate(form.blocks):
        rhs = -scale * gf(list(form.alphas[group]))
        result = solve(block, rhs)
        if result.status is SolveStatus.INCONSISTENT:
            raise DecodeError(f"Coupling row for block {order[group]} has no solution")
        x = gf.Zeros((r_last + 1, block.cols))
        x[-1] = [element.value for element in result.solution]
        coupling.append(MatrixGF(spec, x))

    redundancy = params.n - params.k
    role_h = gf.Zeros((redundancy, params.n))
    row, col = 0, 0
    for group, check in enumerate(local_checks):
        role_h[row : row + check.rows, col : col + sizes[group]] = check.array
        role_h[redundancy - r_last - 1 :, col : col + sizes[group]] = coupling[group].array
        row += check.rows
        col += sizes[group]
    role_h[row:, col:] = a_perp.array

    matrix = gf.Zeros(role_h.shape)
    matrix[:, list(form.column_order)] = role_h
    check = StructuredParityCheck(
        form, local_checks, a_perp, tuple(coupling), MatrixGF(spec, matrix)
    )
    _verify(check)
    return check


def _verify(check: StructuredParityCheck):
    form = check.form
    params = form.params
    a_perp_t = check.a_perp.array.T
    for group, (m_block, block, x) in enumerate(zip(form.ms, form.blocks, check.coupling)):
        if not np.array_equal(m_block.array @ a_perp_t, -(block.array @ x.array.T)):
            raise DecodeError(f"Coupling identity fails for group {group}")

    if np.any(form.generator().array @ check.matrix.array.T):
        raise DecodeError("Structured parity-check matrix is not orthogonal to the code")
    found = array_rank(check.matrix.array)
    if found != params.n - params.k:
        raise DecodeError(f"Structured parity-check matrix has rank {found}")


@dataclass(frozen=True)
class ReceivedWord:
    """A word of length n; ``None`` marks an erased position."""

    spec: FieldSpec
    values: Tuple[Optional[int], ...]

    def __post_init__(self):
        values = tuple(None if value is None else int(value) for value in self.values)
        if not values:
            raise MatrixShapeError("Received word is empty")
        for value in values:
            if value is not None and not 0 <= value < self.spec.order:
                raise FieldError(f"Symbol {value} not in {self.spec.literal}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_codeword(
        cls, spec: FieldSpec, codeword: Sequence[int], erased: Sequence[int]
    ) -> "ReceivedWord":
        erased = set(erased)
        return cls(
            spec,
            tuple(None if index in erased else value for index, value in enumerate(codeword)),
        )

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def pattern(self) -> ErasurePattern:
        return ErasurePattern(
            self.n, tuple(index for index, value in enumerate(self.values) if value is None)
        )


@dataclass(frozen=True)
class DecodeResult:
    """``multiplications`` counts the elimination work; ``syndrome_multiplications``
    the products with already known symbols that form the right-hand sides."""

    codeword: Tuple[int, ...]
    multiplications: int
    global_row_used: bool = False
    overflow_block: Optional[int] = None
    syndrome_multiplications: int = 0


def _check_word(word: ReceivedWord, spec: FieldSpec, n: int):
    if word.spec != spec:
        raise FieldError(f"Word over {word.spec.literal}, code over {spec.literal}")
    if word.n != n:
        raise MatrixShapeError(f"Word has length {word.n}, expected {n}")


def _check_family(pattern: ErasurePattern, params: PmdsParams):
    if not pattern.in_family(params):
        raise PatternOutsideFamilyError(
            f"Erasures {pattern.erased} exceed the per-block budgets by "
            f"{pattern.overflow(params)}, more than s={params.s}"
        )


def _fill_structured(
    check: StructuredParityCheck, pattern: ErasurePattern, values: galois.FieldArray
) -> Tuple[int, int, Optional[int]]:
    """Fill the erased columns of ``values`` in place, one word per row.

    Returns the elimination and syndrome multiplication counts and the block
    solved with the global row, if any.
    """
    params = check.form.params
    h = check.matrix.array
    missing = set(pattern.erased)
    counts = pattern.per_block_counts(params)
    overflow = next(
        (block for block, (count, r) in enumerate(zip(counts, params.r)) if count > r), None
    )

    local_rows = check.local_rows
    order = [block for block in range(params.m) if block != overflow]
    if overflow is not None:
        order.append(overflow)

    multiplications = syndrome_multiplications = 0
    for block in order:
        cols = [col for col in params.block_ranges[block] if col in missing]
        if not cols:
            continue
        rows = list(local_rows[block])
        if block == overflow:
            rows.append(check.global_row)
        known = [col for col in range(params.n) if col not in missing]

        known_part = h[rows][:, known]
        rhs = -(known_part @ values[:, known].T)
        syndrome_multiplications += int(np.count_nonzero(known_part)) * values.shape[0]
        solution, found, performed = solve_array(h[rows][:, cols], rhs)
        multiplications += performed
        if solution is None:
            raise DecodeError(f"Received word is inconsistent on block {block}")
        if found < len(cols):
            raise UncorrectableError(
                f"Erasures {tuple(cols)} in block {block} are not determined",
                deficit=len(cols) - found,
            )
        values[:, cols] = solution.T
        missing.difference_update(cols)

    if np.any(values @ h.T):
        raise DecodeError("Received word is not a corrupted codeword: nonzero syndrome")
    if overflow is not None:
        logger.debug("Block %d overflowed; used the global row", overflow)
    return multiplications, syndrome_multiplications, overflow


def _fill_generic(
    generator: MatrixGF, pattern: ErasurePattern, values: galois.FieldArray
) -> int:
    """Re-encode the messages solved from the surviving columns, one word per row."""
    k, n = generator.shape
    survivors = list(pattern.survivors)
    if not survivors:
        raise UncorrectableError(f"Every position is erased; rank deficit {k}", deficit=k)

    messages, found, performed = solve_array(
        generator.array[:, survivors].T, values[:, survivors].T
    )
    if messages is None:
        raise DecodeError("Received word is not a corrupted codeword")
    if found < k:
        raise UncorrectableError(
            f"Erasures {pattern.erased} leave rank {found} < {k}", deficit=k - found
        )
    values[:] = messages.T @ generator.array
    return performed + k * n * values.shape[0]


def decode_erasures(
    check: StructuredParityCheck,
    word: ReceivedWord,
    params: Optional[PmdsParams] = None,
) -> DecodeResult:
    """Fill the erasures of ``word`` block by block.

    Blocks with at most r_i erasures are solved from their local rows; the
    single block exceeding its budget is solved last with the global row added.
    """
    form = check.form
    if params is not None and params != form.params:
        raise ParameterError(f"Parity check is for {form.params.describe()}")
    params, spec = form.params, form.spec
    _check_word(word, spec, params.n)
    pattern = word.pattern
    _check_family(pattern, params)

    values = spec.gf([[0 if value is None else value for value in word.values]])
    multiplications, syndrome_multiplications, overflow = _fill_structured(
        check, pattern, values
    )
    return DecodeResult(
        tuple(int(value) for value in values[0]),
        multiplications,
        overflow is not None,
        overflow,
        syndrome_multiplications,
    )


def decode_generic(generator: MatrixGF, word: ReceivedWord) -> DecodeResult:
    """Recover the message from the surviving columns by Gaussian elimination."""
    _check_word(word, generator.spec, generator.cols)
    values = generator.spec.gf([[0 if value is None else value for value in word.values]])
    multiplications = _fill_generic(generator, word.pattern, values)
    return DecodeResult(tuple(int(value) for value in values[0]), multiplications)


def decode_stripes(
    code: Union[StructuredParityCheck, MatrixGF],
    erased: Sequence[int],
    received: np.ndarray,
) -> galois.FieldArray:
    """Decode many words that share one erasure pattern, one word per row.

    Entries of ``received`` at erased positions are ignored. A
    :class:`StructuredParityCheck` decodes block by block and needs the pattern
    to be in the correctable family; a generator matrix decodes generically.
    """
    if isinstance(code, StructuredParityCheck):
        params, spec = code.form.params, code.form.spec
        n = params.n
    else:
        spec, n = code.spec, code.cols
    raw = np.array(received, dtype=np.int64)
    if raw.ndim != 2 or raw.shape[1] != n:
        raise MatrixShapeError(f"Expected words of length {n}, got shape {raw.shape}")
    if raw.size and (raw.min() < 0 or raw.max() >= spec.order):
        raise FieldError(f"Received symbols out of range for {spec.literal}")

    pattern = ErasurePattern(n, tuple(erased))
    raw[:, list(pattern.erased)] = 0
    values = spec.gf(raw)
    if isinstance(code, StructuredParityCheck):
        _check_family(pattern, params)
        _fill_structured(code, pattern, values)
    else:
        _fill_generic(code, pattern, values)
    return values


def encode(
    code: Union[StandardForm, MatrixGF], message: Sequence[int]
) -> Tuple[int, ...]:
    generator = code.generator() if isinstance(code, StandardForm) else code
    vector = as_vector(generator.spec, message)
    if vector.size != generator.rows:
        raise MatrixShapeError(
            f"Message has length {vector.size}, expected {generator.rows}"
        )
    return tuple(int(value) for value in vector @ generator.array)


class PmdsDecoder:
    """Decoder for an arbitrary s = 1 PMDS generator.

    The generator is standardized once; words whose erasures fall outside the
    correctable family go through :func:`decode_generic`.
    """

    def __init__(self, generator: MatrixGF, params: PmdsParams):
        check_generator(generator, params)
        self.generator = generator
        self.params = params
        self.check = build_structured_H(standardize(generator, params))
        if np.any(generator.array @ self.check.matrix.array.T):
            raise DecodeError("Standard form does not span the generator's code")

    def decode(self, word: ReceivedWord) -> DecodeResult:
        try:
            return decode_erasures(self.check, word)
        except (PatternOutsideFamilyError, UncorrectableError) as error:
            logger.debug("Falling back to generic decoding: %s", error)
            return decode_generic(self.generator, word)
