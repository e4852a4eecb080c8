"""Structural PMDS test for s = 1 and exhaustive template completion.

A (m l - 1) x n generator is PMDS iff, after row reduction and a choice of the
block that carries only l - 1 pivots, it takes the block form

    ( B_1  0   ...  0        | M_1 )
    ( ...                    | ... )
    ( 0    0   ...  B_{m-1}  | M_{m-1} )
    ( 0    0   ...  0        | A )

with every row of M_i a nonzero multiple ``alpha`` of one row
``v = (0, ..., 0, 1, x_l)``, and with ``(B_i | alpha^(i))`` and the de-scaled
last seed both MDS.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import galois
import numpy as np
from tqdm import tqdm

from components.algebra.field import FieldSpec
from components.algebra.matrix import MatrixGF, array_rank
from components.codes.mds import is_mds_generator, systematic_mds_equivalence
from components.codes.pmds import (
    PmdsParams,
    PmdsVerdict,
    check_generator,
    pmds_oracle,
    rank_requirements,
)
from constants import DEFAULT_SEARCH_BUDGET, MAX_WILDCARDS
from exceptions import (
    BudgetExceededError,
    FieldError,
    FormatError,
    MatrixShapeError,
    ParameterError,
    RankDeficientError,
    StandardizationError,
)

logger = logging.getLogger(__name__)


class FailureKind(str, Enum):
    NOT_STANDARDIZABLE = "not-standardizable"
    ZERO_ALPHA = "zero-alpha"
    B_HAT_NOT_MDS = "b-hat-not-mds"
    A_HAT_NOT_MDS = "a-hat-not-mds"


@dataclass(frozen=True)
class ClassificationFailure:
    kind: FailureKind
    detail: str
    block: Optional[int] = None
    witness: Optional[Tuple[int, ...]] = None
    role: Optional[int] = None


@dataclass(frozen=True)
class StandardForm:
    """Decomposed s = 1 generator.

    ``blocks`` and the first m - 1 entries of ``alphas`` follow ``block_order``;
    the last entry of ``alphas`` holds the l - 1 multipliers of ``A``. Row
    ``l - 1`` of ``x_last`` is the tail shared by every ``M_i``; rows
    ``0 .. l - 2`` are the tails of ``A`` before scaling.
    """

    params: PmdsParams
    spec: FieldSpec
    blocks: Tuple[MatrixGF, ...]
    alphas: Tuple[Tuple[int, ...], ...]
    x_last: MatrixGF
    last_block: int

    def __post_init__(self):
        params, ell = self.params, self.params.ell
        if params.s != 1 or params.m < 2:
            raise ParameterError(f"Standard forms need s = 1 and m >= 2, got {params}")
        if len(self.blocks) != params.m - 1 or len(self.alphas) != params.m:
            raise MatrixShapeError("Standard form needs m - 1 blocks and m multiplier groups")
        for group, block in enumerate(self.block_order[:-1]):
            if self.blocks[group].shape != (ell, ell + params.r[block]):
                raise MatrixShapeError(f"B for block {block} has the wrong shape")
            if len(self.alphas[group]) != ell:
                raise MatrixShapeError(f"Block {block} needs {ell} multipliers")
        if len(self.alphas[-1]) != ell - 1:
            raise MatrixShapeError(f"A needs {ell - 1} multipliers")
        if self.x_last.shape != (ell, params.r[self.last_block]):
            raise MatrixShapeError("x_last has the wrong shape")
        if any(value == 0 for group in self.alphas for value in group):
            raise FieldError("Every multiplier must be nonzero")

    @property
    def block_order(self) -> Tuple[int, ...]:
        others = tuple(b for b in range(self.params.m) if b != self.last_block)
        return others + (self.last_block,)

    @property
    def column_order(self) -> Tuple[int, ...]:
        ranges = self.params.block_ranges
        return tuple(col for block in self.block_order for col in ranges[block])

    @property
    def all_alphas_one(self) -> bool:
        return all(value == 1 for group in self.alphas for value in group)

    @property
    def shared_row(self) -> galois.FieldArray:
        """``v = (0, ..., 0, 1, x_l)``; every row of every ``M_i`` is a multiple of it."""
        gf, ell = self.spec.gf, self.params.ell
        v = gf.Zeros(ell + self.x_last.cols)
        v[ell - 1] = 1
        v[ell:] = self.x_last.array[ell - 1]
        return v

    @property
    def ms(self) -> Tuple[MatrixGF, ...]:
        v = self.shared_row
        return tuple(
            MatrixGF(self.spec, self.spec.gf(list(group)).reshape(-1, 1) * v)
            for group in self.alphas[:-1]
        )

    @property
    def a(self) -> Optional[MatrixGF]:
        ell = self.params.ell
        if ell == 1:
            return None
        gf = self.spec.gf
        alpha = gf(list(self.alphas[-1])).reshape(-1, 1)
        tails = alpha * self.x_last.array[: ell - 1]
        return MatrixGF(self.spec, np.hstack([gf.Identity(ell - 1), alpha, tails]))

    def assemble(self) -> MatrixGF:
        """The block form with columns in ``column_order``."""
        params, ell = self.params, self.params.ell
        gf = self.spec.gf
        sizes = [params.block_sizes[b] for b in self.block_order]
        generator = gf.Zeros((params.k, params.n))

        start = 0
        for group, (block, m_block) in enumerate(zip(self.blocks, self.ms)):
            rows = slice(group * ell, (group + 1) * ell)
            generator[rows, start : start + sizes[group]] = block.array
            generator[rows, params.n - sizes[-1] :] = m_block.array
            start += sizes[group]
        if ell > 1:
            generator[(params.m - 1) * ell :, params.n - sizes[-1] :] = self.a.array
        return MatrixGF(self.spec, generator)

    def generator(self) -> MatrixGF:
        """The assembled form mapped back to the original column order."""
        assembled = self.assemble().array
        generator = self.spec.gf.Zeros(assembled.shape)
        generator[:, list(self.column_order)] = assembled
        return MatrixGF(self.spec, generator)

    def b_hat(self, group: int) -> MatrixGF:
        alpha = self.spec.gf(list(self.alphas[group])).reshape(-1, 1)
        return MatrixGF(self.spec, np.hstack([self.blocks[group].array, alpha]))

    def a_hat_scaled(self) -> MatrixGF:
        """``(I | beta | diag(beta) X)`` with beta the distinguished M multiplier
        followed by the multipliers of ``A``."""
        gf, ell = self.spec.gf, self.params.ell
        beta = gf([self.alphas[-2][-1], *self.alphas[-1]]).reshape(-1, 1)
        x = np.vstack([self.x_last.array[ell - 1 :], self.x_last.array[: ell - 1]])
        return MatrixGF(self.spec, np.hstack([gf.Identity(ell), beta, beta * x]))

    def a_hat(self) -> MatrixGF:
        gf, ell = self.spec.gf, self.params.ell
        x = np.vstack([self.x_last.array[ell - 1 :], self.x_last.array[: ell - 1]])
        return MatrixGF(
            self.spec, np.hstack([gf.Identity(ell), gf.Ones((ell, 1)), x])
        )


def _check_s1(params: PmdsParams):
    if params.s != 1:
        raise ParameterError(f"Classification needs s = 1, got s = {params.s}")
    if params.m < 2:
        raise ParameterError(f"Classification needs m >= 2, got m = {params.m}")


def _standardize_role(
    array: galois.FieldArray, params: PmdsParams, spec: FieldSpec, role: int
) -> Union[StandardForm, ClassificationFailure]:
    m, ell, k = params.m, params.ell, params.k
    blocks = params.block_ranges
    order = [b for b in range(m) if b != role]

    pivots = [col for b in order for col in blocks[b][:ell]] + list(blocks[role][: ell - 1])
    square = array[:, pivots]
    if array_rank(square) < k:
        return ClassificationFailure(
            FailureKind.NOT_STANDARDIZABLE,
            f"pivot columns {tuple(pivots)} are dependent",
            witness=tuple(pivots),
            role=role,
        )
    reduced = np.linalg.inv(square) @ array

    alpha = reduced[:, blocks[role][ell - 1]]
    zero_rows = tuple(int(row) for row in np.flatnonzero(alpha == 0))
    if zero_rows:
        return ClassificationFailure(
            FailureKind.ZERO_ALPHA,
            f"multipliers vanish in rows {zero_rows}",
            block=role,
            witness=zero_rows,
            role=role,
        )

    b_blocks = []
    for group, block in enumerate(order):
        cols = list(blocks[block])
        outside = np.ones(k, dtype=bool)
        outside[group * ell : (group + 1) * ell] = False
        if np.any(reduced[outside][:, cols] != 0):
            return ClassificationFailure(
                FailureKind.NOT_STANDARDIZABLE,
                f"block {block} spans more than {ell} dimensions",
                block=block,
                role=role,
            )
        b_blocks.append(MatrixGF(spec, reduced[group * ell : (group + 1) * ell][:, cols]))

    shared = (m - 1) * ell
    tails = reduced[:, list(blocks[role][ell:])]
    x_ell = tails[shared - 1] / alpha[shared - 1]
    expected = alpha[:shared].reshape(-1, 1) * x_ell
    if not np.array_equal(tails[:shared], expected):
        return ClassificationFailure(
            FailureKind.NOT_STANDARDIZABLE,
            f"rows over block {role} are not multiples of a single row",
            block=role,
            role=role,
        )

    x_a = tails[shared:] / alpha[shared:].reshape(-1, 1)
    x_last = np.vstack([x_a, x_ell.reshape(1, -1)])
    alphas = tuple(
        tuple(int(value) for value in alpha[group * ell : (group + 1) * ell])
        for group in range(m - 1)
    ) + (tuple(int(value) for value in alpha[shared:]),)

    return StandardForm(
        params, spec, tuple(b_blocks), alphas, MatrixGF(spec, x_last), role
    )


def standardize(generator: MatrixGF, params: PmdsParams) -> StandardForm:
    """Reduce ``generator`` to its block standard form.

    The last block takes the role of the block with l - 1 pivots first; the
    remaining blocks are tried in order if that fails. Raises
    :class:`StandardizationError` carrying the failure of the last-block attempt
    when no role works.
    """
    _check_s1(params)
    check_generator(generator, params)

    roles = [params.m - 1] + list(range(params.m - 1))
    first_failure = None
    for role in roles:
        outcome = _standardize_role(generator.array, params, generator.spec, role)
        if isinstance(outcome, StandardForm):
            if role != roles[0]:
                logger.debug("Standardized with block %d in the last role", role)
            return outcome
        logger.debug("Role %d: %s", role, outcome.detail)
        first_failure = first_failure or outcome
    raise StandardizationError(first_failure)


@dataclass(frozen=True)
class ClassificationVerdict:
    is_pmds: bool
    standard_form: Optional[StandardForm] = None
    failure: Optional[ClassificationFailure] = None

    def __bool__(self) -> bool:
        return self.is_pmds


def classify_s1(generator: MatrixGF, params: PmdsParams) -> ClassificationVerdict:
    try:
        form = standardize(generator, params)
    except StandardizationError as error:
        return ClassificationVerdict(False, failure=error.failure)

    for group, block in enumerate(form.block_order[:-1]):
        report = is_mds_generator(form.b_hat(group))
        if not report.is_mds:
            failure = ClassificationFailure(
                FailureKind.B_HAT_NOT_MDS,
                f"(B | alpha) of block {block} is not MDS: columns {report.witness}",
                block=block,
                witness=report.witness,
                role=form.last_block,
            )
            return ClassificationVerdict(False, form, failure)

    scaled = form.a_hat_scaled()
    beta = scaled.array[:, params.ell]
    a_hat = systematic_mds_equivalence(scaled, beta**-1)
    report = is_mds_generator(a_hat)
    if not report.is_mds:
        failure = ClassificationFailure(
            FailureKind.A_HAT_NOT_MDS,
            f"last-block seed is not MDS: columns {report.witness}",
            block=form.last_block,
            witness=report.witness,
            role=form.last_block,
        )
        return ClassificationVerdict(False, form, failure)
    return ClassificationVerdict(True, form)


@dataclass(frozen=True)
class AgreementReport:
    classification: ClassificationVerdict
    oracle: PmdsVerdict

    @property
    def agree(self) -> bool:
        return self.classification.is_pmds == self.oracle.is_pmds


def classify_equals_oracle(generator: MatrixGF, params: PmdsParams) -> AgreementReport:
    report = AgreementReport(classify_s1(generator, params), pmds_oracle(generator, params))
    if not report.agree:
        logger.error(
            "Classification (%s) and oracle (%s) disagree",
            report.classification.is_pmds,
            report.oracle.is_pmds,
        )
    return report


@dataclass(frozen=True)
class MatrixTemplate:
    """Matrix entries over ``spec`` with ``None`` marking wildcards."""

    spec: FieldSpec
    entries: Tuple[Tuple[Optional[int], ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(value for value in row) for row in self.entries)
        if not entries or not entries[0] or len({len(row) for row in entries}) != 1:
            raise MatrixShapeError("Template rows must be non-empty and of equal length")
        for row in entries:
            for value in row:
                if value is not None and not 0 <= int(value) < self.spec.order:
                    raise FieldError(f"Entry {value} not in {self.spec.literal}")
        object.__setattr__(self, "entries", entries)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def wildcards(self) -> Tuple[Tuple[int, int], ...]:
        """Wildcard positions in row-major order."""
        return tuple(
            (row, col)
            for row, values in enumerate(self.entries)
            for col, value in enumerate(values)
            if value is None
        )

    def fill(self, values: Sequence[int]) -> MatrixGF:
        positions = self.wildcards
        if len(values) != len(positions):
            raise FormatError(f"Expected {len(positions)} values, got {len(values)}")
        grid = [[0 if value is None else int(value) for value in row] for row in self.entries]
        for (row, col), value in zip(positions, values):
            grid[row][col] = int(value)
        return MatrixGF(self.spec, grid)

    @classmethod
    def from_matrix(
        cls, matrix: MatrixGF, wildcards: Sequence[Tuple[int, int]]
    ) -> "MatrixTemplate":
        grid = [list(row) for row in matrix.to_ints()]
        for row, col in wildcards:
            grid[row][col] = None
        return cls(matrix.spec, tuple(tuple(row) for row in grid))


@dataclass(frozen=True)
class SearchResult:
    completion: Optional[MatrixGF]
    solutions: Tuple[Tuple[int, ...], ...] = ()
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.completion is not None


def _candidates(template: MatrixTemplate, col: int) -> Tuple[galois.FieldArray, List[int]]:
    """All assignments of one column's wildcards, in canonical order."""
    gf, q = template.spec.gf, template.spec.order
    rows = [row for row in range(template.rows) if template.entries[row][col] is None]
    values = np.array(list(product(range(q), repeat=len(rows))), dtype=np.int64)
    base = np.array(
        [0 if row[col] is None else int(row[col]) for row in template.entries],
        dtype=np.int64,
    )
    columns = np.repeat(base.reshape(-1, 1), len(values), axis=1)
    columns[rows, :] = values.T
    return gf(columns), rows


def _in_span_mask(
    fixed: galois.FieldArray, candidates: galois.FieldArray
) -> Tuple[int, np.ndarray]:
    """Rank of ``fixed`` and, per candidate column, whether it lies in its span."""
    if fixed.shape[1] == 0:
        return 0, np.all(candidates == 0, axis=0)
    found = array_rank(fixed)
    kernel = fixed.left_null_space()
    if kernel.shape[0] == 0:
        return found, np.ones(candidates.shape[1], dtype=bool)
    return found, np.all((kernel @ candidates) == 0, axis=0)


def completion_search(
    template: MatrixTemplate,
    params: PmdsParams,
    budget: int = DEFAULT_SEARCH_BUDGET,
    progress: bool = False,
) -> SearchResult:
    """Exhaustively complete the wildcards of ``template`` into a PMDS generator.

    Columns are filled left to right; each rank requirement is tested as soon
    as its last wildcard column is assigned. All completions are collected and
    the first in row-major canonical order is re-verified with the oracle.
    """
    spec = template.spec
    if (template.rows, template.cols) != (params.k, params.n):
        raise MatrixShapeError(
            f"Template is {template.rows}x{template.cols}, expected {params.k}x{params.n}"
        )

    positions = template.wildcards
    required = spec.order ** len(positions)
    if len(positions) > MAX_WILDCARDS or required > budget:
        raise BudgetExceededError(
            f"{len(positions)} wildcards over {spec.literal} need {required} assignments",
            required=required,
            budget=budget,
        )

    if not positions:
        matrix = template.fill(())
        try:
            verdict = pmds_oracle(matrix, params)
        except RankDeficientError:
            return SearchResult(None)
        if not verdict.is_pmds:
            return SearchResult(None)
        return SearchResult(matrix, ((),), 1)

    wildcard_cols = sorted({col for _, col in positions})
    checks: Dict[Optional[int], List] = {col: [] for col in wildcard_cols}
    checks[None] = []
    for requirement in rank_requirements(params):
        last = max((col for col in requirement.columns if col in wildcard_cols), default=None)
        checks[last].append(requirement)

    start = template.fill([0] * len(positions)).array.copy()
    for requirement in checks[None]:
        if array_rank(start[:, list(requirement.columns)]) != requirement.rank:
            logger.debug("Fixed columns %s already violate the requirements", requirement.columns)
            return SearchResult(None)

    candidates = {col: _candidates(template, col) for col in wildcard_cols}
    found: List[Tuple[int, ...]] = []
    nodes = 0

    def surviving(array: galois.FieldArray, col: int) -> np.ndarray:
        options, _ = candidates[col]
        mask = np.ones(options.shape[1], dtype=bool)
        for requirement in checks[col]:
            others = [c for c in requirement.columns if c != col]
            base, in_span = _in_span_mask(array[:, others], options)
            if base == requirement.rank:
                mask &= in_span
            elif base == requirement.rank - 1:
                mask &= ~in_span
            else:
                return np.zeros_like(mask)
            if not mask.any():
                break
        return np.flatnonzero(mask)

    def descend(array: galois.FieldArray, depth: int):
        nonlocal nodes
        col = wildcard_cols[depth]
        options, _ = candidates[col]
        indices = surviving(array, col)
        if depth == 0:
            indices = tqdm(indices, desc="completion search", disable=not progress)
        for index in indices:
            nodes += 1
            array[:, col] = options[:, index]
            if depth + 1 < len(wildcard_cols):
                descend(array, depth + 1)
            else:
                found.append(tuple(int(array[row, c]) for row, c in positions))

    descend(start, 0)
    logger.info("Completion search: %d nodes, %d completions", nodes, len(found))

    solutions = tuple(sorted(found))
    for values in solutions:
        matrix = template.fill(values)
        if pmds_oracle(matrix, params).is_pmds:
            return SearchResult(matrix, solutions, nodes)
        logger.error("Completion %s failed oracle re-verification", values)
    return SearchResult(None, solutions, nodes)
