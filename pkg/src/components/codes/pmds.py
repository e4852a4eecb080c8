"""PMDS parameters and the brute-force ground truth.

A generator ``G`` (k x n, blocks of ``ell + r_i`` columns) is PMDS when every
block restriction spans an ``ell``-dimensional [ell + r_i, ell]-MDS code and,
after erasing any ``r_i`` columns in every block, the remaining ``m * ell``
columns generate an [m * ell, k]-MDS code.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Iterator, List, Optional, Sequence, Tuple

import galois
import numpy as np

from components.algebra.field import FieldSpec
from components.algebra.matrix import MatrixGF, array_rank
from components.codes.mds import (
    MdsReport,
    is_mds_generator,
    mds_code_exists,
    singular_subset,
)
from exceptions import (
    BoundHypothesisError,
    MatrixShapeError,
    ParameterError,
    RankDeficientError,
)
from utils import first_match

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PmdsParams:
    m: int
    ell: int
    r: Tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(value) for value in self.r))
        if self.m < 1:
            raise ParameterError(f"Need at least one block, got m={self.m}")
        if self.ell < 1:
            raise ParameterError(f"Locality must be >= 1, got l={self.ell}")
        if len(self.r) != self.m:
            raise ParameterError(f"Expected {self.m} local redundancies, got {self.r}")
        if any(value < 1 for value in self.r):
            raise ParameterError(f"Every r_i must be >= 1, got {self.r}")
        if not self.ell <= self.k <= self.m * self.ell:
            raise ParameterError(
                f"Dimension k={self.k} must lie in [{self.ell}, {self.m * self.ell}]"
            )

    @classmethod
    def with_s(cls, m: int, ell: int, r: Sequence[int], s: int) -> "PmdsParams":
        return cls(m, ell, tuple(r), m * ell - s)

    @property
    def n(self) -> int:
        return self.m * self.ell + sum(self.r)

    @property
    def s(self) -> int:
        return self.m * self.ell - self.k

    @property
    def max_r(self) -> int:
        return max(self.r)

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(self.ell + value for value in self.r)

    @property
    def block_ranges(self) -> Tuple[range, ...]:
        ranges, start = [], 0
        for size in self.block_sizes:
            ranges.append(range(start, start + size))
            start += size
        return tuple(ranges)

    def block_of(self, coordinate: int) -> int:
        for index, block in enumerate(self.block_ranges):
            if coordinate in block:
                return index
        raise ParameterError(f"Coordinate {coordinate} outside [0, {self.n})")

    def describe(self) -> str:
        r = ",".join(str(value) for value in self.r)
        return f"[{self.n},{self.k},{self.ell}; {r}]"


@dataclass(frozen=True)
class ErasurePattern:
    n: int
    erased: Tuple[int, ...] = ()

    def __post_init__(self):
        erased = tuple(sorted(int(index) for index in self.erased))
        if len(set(erased)) != len(erased):
            raise ParameterError(f"Duplicate erasure positions in {erased}")
        if any(index < 0 or index >= self.n for index in erased):
            raise ParameterError(f"Erasure positions {erased} out of range for {self.n}")
        object.__setattr__(self, "erased", erased)

    @property
    def survivors(self) -> Tuple[int, ...]:
        erased = set(self.erased)
        return tuple(index for index in range(self.n) if index not in erased)

    def per_block_counts(self, params: PmdsParams) -> Tuple[int, ...]:
        return tuple(
            sum(1 for index in self.erased if index in block)
            for block in params.block_ranges
        )

    def overflow(self, params: PmdsParams) -> int:
        counts = self.per_block_counts(params)
        return sum(max(0, count - r) for count, r in zip(counts, params.r))

    def in_family(self, params: PmdsParams) -> bool:
        return self.overflow(params) <= params.s

    def __len__(self) -> int:
        return len(self.erased)


class FailingStage(str, Enum):
    BLOCK_MDS = "block-mds"
    PUNCTURED_MDS = "punctured-mds"
    NONE = "none"


@dataclass(frozen=True)
class PmdsVerdict:
    is_pmds: bool
    failing_stage: FailingStage = FailingStage.NONE
    block: Optional[int] = None
    puncture: Optional[Tuple[int, ...]] = None
    report: Optional[MdsReport] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.is_pmds


def check_generator(generator: MatrixGF, params: PmdsParams):
    if generator.shape != (params.k, params.n):
        raise MatrixShapeError(
            f"Generator shape {generator.shape} does not match "
            f"{params.describe()} (expected {params.k}x{params.n})"
        )
    found = array_rank(generator.array)
    if found < params.k:
        raise RankDeficientError(
            f"Generator has rank {found}, expected {params.k}",
            rank=found,
            expected=params.k,
        )


def _block_verdict(
    array: galois.FieldArray, params: PmdsParams, index: int
) -> Optional[PmdsVerdict]:
    block = params.block_ranges[index]
    restriction = array[:, list(block)]
    reduced = restriction.row_reduce()
    basis = reduced[np.any(reduced != 0, axis=1)]

    if basis.shape[0] != params.ell:
        return PmdsVerdict(
            False,
            FailingStage.BLOCK_MDS,
            block=index,
            detail=f"block {index} spans {basis.shape[0]} dimensions, expected {params.ell}",
        )

    witness = singular_subset(basis)
    if witness is None:
        return None
    witness = tuple(block[col] for col in witness)
    return PmdsVerdict(
        False,
        FailingStage.BLOCK_MDS,
        block=index,
        report=MdsReport(False, witness),
        detail=f"block {index} is not MDS: columns {witness} are dependent",
    )


def punctures(params: PmdsParams) -> Iterator[Tuple[int, ...]]:
    """Every choice of r_i erased columns per block, in lexicographic order."""
    choices = [combinations(block, r) for block, r in zip(params.block_ranges, params.r)]
    for choice in product(*choices):
        yield tuple(index for part in choice for index in part)


def pmds_oracle(generator: MatrixGF, params: PmdsParams) -> PmdsVerdict:
    check_generator(generator, params)
    array = generator.array

    for index in range(params.m):
        verdict = _block_verdict(array, params, index)
        if verdict is not None:
            logger.debug("Oracle: %s", verdict.detail)
            return verdict

    def punctured_witness(erased: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        kept = [col for col in range(params.n) if col not in erased]
        witness = singular_subset(array[:, kept], parallel=False)
        return None if witness is None else tuple(kept[col] for col in witness)

    match = first_match(punctured_witness, punctures(params), lambda w: w is not None)
    if match is None:
        return PmdsVerdict(True)

    erased, witness = match
    detail = f"erasing {erased} leaves dependent columns {witness}"
    logger.debug("Oracle: %s", detail)
    return PmdsVerdict(
        False,
        FailingStage.PUNCTURED_MDS,
        puncture=erased,
        report=MdsReport(False, witness),
        detail=detail,
    )


def pattern_correctable(generator: MatrixGF, pattern: ErasurePattern) -> bool:
    k, n = generator.shape
    if pattern.n != n:
        raise MatrixShapeError(f"Pattern length {pattern.n} does not match n={n}")
    survivors = pattern.survivors
    if len(survivors) < k:
        return False
    return array_rank(generator.array[:, list(survivors)]) == k


def _subsets(n: int, accept) -> Iterator[Tuple[int, ...]]:
    """Depth-first, prefix-first enumeration of subsets of range(n).

    ``accept(subset)`` decides whether the subtree below ``subset`` is explored.
    """
    stack = [()]
    while stack:
        subset = stack.pop()
        yield subset
        if not accept(subset):
            continue
        start = subset[-1] + 1 if subset else 0
        for index in range(n - 1, start - 1, -1):
            stack.append(subset + (index,))


def pmds_pattern_family(params: PmdsParams) -> Iterator[ErasurePattern]:
    """Patterns with at most r_i erasures per block plus at most s extra anywhere."""
    def in_family(subset: Tuple[int, ...]) -> bool:
        return ErasurePattern(params.n, subset).in_family(params)

    for subset in _subsets(params.n, in_family):
        if in_family(subset):
            yield ErasurePattern(params.n, subset)


@dataclass(frozen=True)
class MrReport:
    holds: bool
    counterexample: Optional[ErasurePattern] = None
    expected_correctable: Optional[bool] = None
    patterns_checked: int = 0

    def __bool__(self) -> bool:
        return self.holds


def mr_check(generator: MatrixGF, params: PmdsParams) -> MrReport:
    """Family patterns must be correctable and every other pattern must not be.

    Uncorrectable patterns outside the family prune their supersets, which are
    outside the family and uncorrectable as well.
    """
    check_generator(generator, params)
    array = generator.array
    redundancy = params.n - params.k
    checked = 0
    pruned = set()

    def explore(subset: Tuple[int, ...]) -> bool:
        return subset not in pruned

    for subset in _subsets(params.n, explore):
        checked += 1
        pattern = ErasurePattern(params.n, subset)
        in_family = pattern.in_family(params)

        if len(subset) > redundancy:
            correctable = False
        else:
            survivors = list(pattern.survivors)
            correctable = array_rank(array[:, survivors]) == params.k

        if in_family != correctable:
            logger.debug("MR check failed on %s", subset)
            return MrReport(False, pattern, in_family, checked)
        if not correctable:
            pruned.add(subset)

    logger.debug("MR check passed after %d patterns", checked)
    return MrReport(True, patterns_checked=checked)


@dataclass(frozen=True)
class TrivialCaseReport:
    oracle: bool
    mds: bool

    @property
    def agree(self) -> bool:
        return self.oracle == self.mds


def trivial_case_check(generator: MatrixGF, params: PmdsParams) -> TrivialCaseReport:
    """For k = l, PMDS coincides with MDS; run both and report."""
    if params.k != params.ell:
        raise ParameterError(f"Needs k = l, got k={params.k}, l={params.ell}")
    oracle = pmds_oracle(generator, params).is_pmds
    mds = is_mds_generator(generator).is_mds
    return TrivialCaseReport(oracle, mds)


@dataclass(frozen=True)
class NecessaryConditionsReport:
    local_code: Tuple[int, int]
    local_exists: bool
    global_code: Tuple[int, int]
    global_exists: bool
    conditional: bool = True

    @property
    def satisfied(self) -> bool:
        return self.local_exists and self.global_exists


def necessary_conditions_general_s(
    params: PmdsParams, spec: FieldSpec
) -> NecessaryConditionsReport:
    """Existence of an [l + max r + s, l]- and an [m l, m l - s]-MDS code over spec.

    Both are necessary for a PMDS code; existence assumes the MDS conjecture.
    """
    local_code = (params.ell + params.max_r + params.s, params.ell)
    global_code = (params.m * params.ell, params.m * params.ell - params.s)
    return NecessaryConditionsReport(
        local_code,
        mds_code_exists(*local_code, spec),
        global_code,
        mds_code_exists(*global_code, spec),
    )


@dataclass(frozen=True)
class FieldSizeBound:
    q: int
    conditional: bool
    case: str


def _is_exceptional(length: int, dimension: int) -> bool:
    """``length = 2^h + 2`` with ``dimension`` in {3, 2^h - 1} for some h > 1."""
    h = 2
    while 2**h + 2 <= length:
        if length == 2**h + 2 and dimension in (3, 2**h - 1):
            return True
        h += 1
    return False


def field_size_bound_s1(ell: int, max_r: int) -> FieldSizeBound:
    """Smallest admissible field size for s = 1."""
    if ell < 1:
        raise ParameterError(f"Locality must be >= 1, got {ell}")
    if ell == 1:
        return FieldSizeBound(2, False, "l = 1: any field")
    total = max_r + ell
    if _is_exceptional(total + 1, ell):
        return FieldSizeBound(total - 1, True, "doubly-extended: q = 2^h = max r + l - 1")
    return FieldSizeBound(total, True, "q >= max r + l")


def field_size_bound_general_s(params: PmdsParams) -> FieldSizeBound:
    """Lower bound on q for l, m, s > 1, conditional on the MDS conjecture."""
    if params.ell == 1:
        raise BoundHypothesisError(
            "l = 1: use the concatenation construction (q >= m - 1) instead"
        )
    if params.m == 1:
        raise BoundHypothesisError("m = 1: a single block is an MDS code")
    if params.s <= 1:
        raise BoundHypothesisError("s <= 1: use the s = 1 bound instead")

    local_length = params.ell + params.max_r + params.s
    global_length = params.m * params.ell
    bound = FieldSizeBound(max(local_length, global_length) - 2, True, "baseline")

    if local_length <= global_length and not _is_exceptional(local_length, params.ell):
        if local_length - 1 > bound.q:
            bound = FieldSizeBound(local_length - 1, True, "local length")
    if global_length <= local_length and not _is_exceptional(
        global_length, global_length - params.s
    ):
        if global_length - 1 > bound.q:
            bound = FieldSizeBound(global_length - 1, True, "global length")
    return bound


@dataclass(frozen=True)
class RankRequirement:
    columns: Tuple[int, ...]
    rank: int


def rank_requirements(params: PmdsParams) -> List[RankRequirement]:
    """The PMDS conditions as exact column-subset ranks.

    Each block spans exactly l dimensions, every l columns of a block are
    independent, and every k columns with at most l per block are independent.
    """
    requirements = []
    for block in params.block_ranges:
        requirements.append(RankRequirement(tuple(block), params.ell))
        for cols in combinations(block, params.ell):
            requirements.append(RankRequirement(cols, params.ell))

    for cols in combinations(range(params.n), params.k):
        counts = [sum(1 for col in cols if col in block) for block in params.block_ranges]
        if max(counts) <= params.ell:
            requirements.append(RankRequirement(cols, params.k))
    return requirements
