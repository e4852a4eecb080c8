"""Generator-matrix builders for PMDS codes.

``build_s1`` assembles the block-systematic s = 1 matrix

    ( B_1  0   ...  0        | M )
    ( 0    B_2 ...  0        | M )
    ( ...                    | . )
    ( 0    0   ...  B_{m-1}  | M )
    ( 0    0   ...  0        | A )

from MDS seeds: ``(B_i | 1)`` for the first m - 1 blocks, and a last seed whose
first row (minus its leading unit entry) is the repeated row of ``M`` and whose
remaining rows are ``A``.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from components.algebra.field import FieldKind, FieldSpec, smallest_field
from components.algebra.matrix import MatrixGF
from components.codes.mds import (
    RsVariant,
    is_mds_generator,
    mds_code_exists,
    mds_generator,
    rs_generator,
    systematic_form,
    systematic_mds_equivalence,
)
from components.codes.pmds import PmdsParams, field_size_bound_s1
from exceptions import ConstructionError, FieldError, ParameterError

logger = logging.getLogger(__name__)


class SeedRole(str, Enum):
    INTERIOR = "interior"
    LAST = "last"


def _ones_column(seed: MatrixGF, column: int) -> bool:
    return bool(np.all(seed.array[:, column] == 1))


def _is_systematic(seed: MatrixGF) -> bool:
    ell = seed.rows
    return bool(np.array_equal(seed.array[:, :ell], seed.spec.gf.Identity(ell)))


@dataclass(frozen=True)
class S1Blueprint:
    """Validated seeds for :func:`build_s1`.

    ``interior`` holds ``(B_i | 1)`` for the first m - 1 blocks, ``last`` the
    ``ell x (ell + r_m + 1)`` seed whose column ``ell`` is all ones.
    """

    params: PmdsParams
    spec: FieldSpec
    interior: Tuple[MatrixGF, ...]
    last: MatrixGF

    def __post_init__(self):
        params, ell = self.params, self.params.ell
        if params.s != 1 or params.m < 2:
            raise ParameterError(f"Blueprints need s = 1 and m >= 2, got {params}")
        if len(self.interior) != params.m - 1:
            raise ConstructionError(
                f"Expected {params.m - 1} interior seeds, got {len(self.interior)}"
            )

        seeds = [(seed, r, SeedRole.INTERIOR) for seed, r in zip(self.interior, params.r)]
        seeds.append((self.last, params.r[-1], SeedRole.LAST))
        for index, (seed, r, role) in enumerate(seeds):
            if seed.spec != self.spec:
                raise ConstructionError(f"Seed {index} is not over {self.spec.literal}")
            if seed.shape != (ell, ell + r + 1):
                raise ConstructionError(
                    f"Seed {index} has shape {seed.shape}, expected {(ell, ell + r + 1)}"
                )
            if not _is_systematic(seed):
                raise ConstructionError(f"Seed {index} is not systematic")
            column = seed.cols - 1 if role is SeedRole.INTERIOR else ell
            if not _ones_column(seed, column):
                raise ConstructionError(f"Seed {index} column {column} is not all ones")
            report = is_mds_generator(seed)
            if not report.is_mds:
                raise ConstructionError(
                    f"Seed {index} is not MDS (columns {report.witness} dependent)"
                )


def seed_from_rs(spec: FieldSpec, ell: int, r: int, role: Union[SeedRole, str]) -> MatrixGF:
    """A systematic [ell + r + 1, ell]-MDS seed with the all-ones column in place.

    The seed is an extended (or, at length q + 2, doubly-extended) Reed-Solomon
    code in systematic form, rows rescaled so that the target column is all ones.
    """
    role = SeedRole(role)
    length = ell + r + 1
    if ell == 1:
        return MatrixGF(spec, spec.gf.Ones((1, length)))

    q = spec.order
    if length <= q + 1:
        generator = rs_generator(spec, ell, length, RsVariant.EXTENDED)
    elif length == q + 2 and spec.kind is FieldKind.BINARY and ell in (3, q - 1):
        generator = rs_generator(spec, ell, length, RsVariant.DOUBLY_EXTENDED)
    else:
        raise ConstructionError(
            f"No [{length},{ell}]-MDS seed over {spec.literal}", bound=r + ell
        )

    systematic = systematic_form(generator)
    column = length - 1 if role is SeedRole.INTERIOR else ell
    alphas = systematic.array[:, column] ** -1
    return systematic_mds_equivalence(systematic, alphas)


def default_blueprint(params: PmdsParams, spec: FieldSpec) -> S1Blueprint:
    interior = tuple(
        seed_from_rs(spec, params.ell, r, SeedRole.INTERIOR) for r in params.r[:-1]
    )
    last = seed_from_rs(spec, params.ell, params.r[-1], SeedRole.LAST)
    return S1Blueprint(params, spec, interior, last)


def _check_s1(params: PmdsParams):
    if params.s != 1:
        raise ParameterError(f"Needs s = 1, got s = {params.s}")
    if params.m < 2:
        raise ParameterError(f"Needs m >= 2 blocks, got m = {params.m}")


def _check_field_s1(params: PmdsParams, spec: FieldSpec):
    bound = field_size_bound_s1(params.ell, params.max_r)
    if spec.order < bound.q:
        raise ConstructionError(
            f"{spec.literal} is too small for {params.describe()}: "
            f"need q >= {bound.q} ({bound.case})",
            bound=bound.q,
        )


def assemble_s1(blueprint: S1Blueprint) -> MatrixGF:
    params, ell = blueprint.params, blueprint.params.ell
    gf = blueprint.spec.gf
    generator = gf.Zeros((params.k, params.n))
    blocks = params.block_ranges
    last = blocks[-1]

    m_row = blueprint.last.array[0, 1:]
    for index, seed in enumerate(blueprint.interior):
        rows = slice(index * ell, (index + 1) * ell)
        generator[rows, blocks[index].start : blocks[index].stop] = seed.array[:, :-1]
        generator[rows, last.start : last.stop] = m_row
    generator[(params.m - 1) * ell :, last.start : last.stop] = blueprint.last.array[1:, 1:]
    return MatrixGF(blueprint.spec, generator)


def build_s1(
    params: PmdsParams,
    spec: FieldSpec,
    blueprint: Optional[S1Blueprint] = None,
) -> MatrixGF:
    """PMDS generator for s = 1 from (doubly-)extended Reed-Solomon seeds, or from
    a caller-supplied blueprint."""
    _check_s1(params)
    if params.ell == 1 and blueprint is None:
        return build_ell1_s1(params, spec)

    if blueprint is None:
        _check_field_s1(params, spec)
        blueprint = default_blueprint(params, spec)
    elif blueprint.params != params or blueprint.spec != spec:
        raise ConstructionError("Blueprint does not match the requested code")

    logger.debug("Building %s over %s", params.describe(), spec.literal)
    return assemble_s1(blueprint)


def build_ell1_s1(params: PmdsParams, spec: FieldSpec) -> MatrixGF:
    """Locality-one s = 1 code: row i repeats 1 over block i and the last block."""
    _check_s1(params)
    if params.ell != 1:
        raise ParameterError(f"Needs l = 1, got l = {params.ell}")

    generator = spec.gf.Zeros((params.k, params.n))
    blocks = params.block_ranges
    for index in range(params.m - 1):
        generator[index, blocks[index].start : blocks[index].stop] = 1
        generator[index, blocks[-1].start : blocks[-1].stop] = 1
    return MatrixGF(spec, generator)


def build_ell1_general_s(
    m: int, s: int, r: Sequence[int], spec: FieldSpec
) -> MatrixGF:
    """Locality-one code for any s: column j of an [m, m - s]-MDS generator repeated
    r_j + 1 times."""
    if m < 2:
        raise ParameterError(f"Needs m >= 2 blocks, got m = {m}")
    if not 1 <= s < m:
        raise ParameterError(f"Needs 1 <= s < m, got s = {s}, m = {m}")
    params = PmdsParams.with_s(m, 1, r, s)

    if not mds_code_exists(m, m - s, spec):
        raise ConstructionError(
            f"No [{m},{m - s}]-MDS code over {spec.literal}: need q >= {m - 1}",
            bound=m - 1,
        )
    outer = mds_generator(spec, m, m - s)
    repeats = [value + 1 for value in params.r]
    generator = MatrixGF(spec, np.repeat(outer.array, repeats, axis=1))
    logger.debug("Expanded [%d,%d] outer code to %s", m, m - s, params.describe())
    return generator


def minimal_s1_field(params: PmdsParams) -> FieldSpec:
    return smallest_field(field_size_bound_s1(params.ell, params.max_r).q)


def minimal_ell1_field(m: int, s: int) -> FieldSpec:
    spec = smallest_field(2)
    while True:
        if mds_code_exists(m, m - s, spec):
            return spec
        try:
            spec = smallest_field(spec.order + 1)
        except FieldError:
            raise ConstructionError(f"No supported field carries an [{m},{m - s}]-MDS code")
