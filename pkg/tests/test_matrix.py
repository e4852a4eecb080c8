import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from components.algebra import (
    MatrixGF,
    SolveStatus,
    det,
    hstack,
    inverse,
    parse_field_literal,
    rank,
    rref,
    select_columns,
    solve,
    vstack,
)
from exceptions import (
    FieldError,
    FieldMismatchError,
    MatrixShapeError,
    RankDeficientError,
)

FIELDS = ["gf(2)", "gf(3)", "gf(5)", "gf(7)", "gf(2^2)", "gf(2^3)"]


@st.composite
def matrices(draw, min_rows=1, max_rows=4, min_cols=1, max_cols=5, square=False):
    spec = parse_field_literal(draw(st.sampled_from(FIELDS)))
    rows = draw(st.integers(min_value=min_rows, max_value=max_rows))
    cols = rows if square else draw(st.integers(min_value=min_cols, max_value=max_cols))
    cell = st.integers(min_value=0, max_value=spec.order - 1)
    grid = draw(st.lists(st.lists(cell, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return MatrixGF(spec, grid)


def test_construction_checks(gf3, gf7):
    with pytest.raises(FieldError):
        MatrixGF(gf3, [[0, 3]])
    with pytest.raises(MatrixShapeError):
        MatrixGF(gf3, [[]])
    with pytest.raises(FieldMismatchError):
        MatrixGF(gf3, gf7.gf([[1, 2]]))


def test_matrix_is_read_only(gf3):
    matrix = MatrixGF(gf3, [[1, 2], [0, 1]])
    with pytest.raises(ValueError):
        matrix.array[0, 0] = 2
    assert matrix.to_ints() == [[1, 2], [0, 1]]


def test_arithmetic(gf3, gf7):
    a = MatrixGF(gf3, [[1, 2], [0, 1]])
    b = MatrixGF(gf3, [[2, 0], [1, 1]])
    assert (a @ b).to_ints() == [[1, 2], [1, 1]]
    assert (a + b).to_ints() == [[0, 2], [1, 2]]
    assert (-a).to_ints() == [[2, 1], [0, 2]]
    assert a.T.to_ints() == [[1, 0], [2, 1]]
    with pytest.raises(MatrixShapeError):
        a @ MatrixGF(gf3, [[1, 1, 1]])
    with pytest.raises(FieldMismatchError):
        a @ MatrixGF(gf7, [[1], [1]])


def test_identity_and_zero(gf4):
    assert MatrixGF.identity(gf4, 3).to_ints() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert MatrixGF.zeros(gf4, 2, 3).is_zero()


def test_stacking(gf3):
    a = MatrixGF(gf3, [[1, 2]])
    b = MatrixGF(gf3, [[0, 1]])
    assert vstack(a, b).shape == (2, 2)
    assert hstack(a, b).to_ints() == [[1, 2, 0, 1]]
    with pytest.raises(MatrixShapeError):
        hstack(a, MatrixGF(gf3, [[1], [1]]))


def test_equality_and_hash(gf3, gf7):
    a = MatrixGF(gf3, [[1, 2]])
    assert a == MatrixGF(gf3, [[1, 2]])
    assert hash(a) == hash(MatrixGF(gf3, [[1, 2]]))
    assert a != MatrixGF(gf7, [[1, 2]])


def test_rref_pivots_in_column_order(gf3):
    matrix = MatrixGF(gf3, [[0, 1, 1, 2], [0, 2, 2, 1], [1, 1, 0, 0]])
    reduced, found, pivots = rref(matrix)
    assert found == 2
    assert pivots == [0, 1]
    assert reduced.to_ints() == [[1, 0, 2, 1], [0, 1, 1, 2], [0, 0, 0, 0]]


def test_det_and_inverse(gf7):
    matrix = MatrixGF(gf7, [[2, 1], [1, 1]])
    assert det(matrix).value == 1
    assert inverse(matrix).to_ints() == [[1, 6], [6, 2]]
    singular = MatrixGF(gf7, [[1, 2], [2, 4]])
    assert det(singular).is_zero()
    with pytest.raises(RankDeficientError) as excinfo:
        inverse(singular)
    assert excinfo.value.rank == 1
    with pytest.raises(MatrixShapeError):
        det(MatrixGF(gf7, [[1, 2]]))


@pytest.mark.parametrize("indices", [[], [2, 1], [0, 0], [0, 5]])
def test_select_columns_rejects(gf3, indices):
    with pytest.raises(MatrixShapeError):
        select_columns(MatrixGF(gf3, [[1, 2, 0]]), indices)


def test_solve_statuses(gf3):
    system = MatrixGF(gf3, [[1, 1], [0, 1]])
    unique = solve(system, [2, 1])
    assert unique.status is SolveStatus.UNIQUE
    assert [value.value for value in unique.solution] == [1, 1]
    assert unique.nullity == 0

    flat = MatrixGF(gf3, [[1, 1], [2, 2]])
    assert solve(flat, [1, 1]).status is SolveStatus.INCONSISTENT
    parametrized = solve(flat, [1, 2])
    assert parametrized.status is SolveStatus.PARAMETRIZED
    assert parametrized.nullity == 1

    with pytest.raises(MatrixShapeError):
        solve(system, [1, 2, 0])


@pytest.mark.parametrize(
    "entries, rhs, solution, multiplications",
    [
        ([[1, 1], [1, 2]], [0, 1], [2, 1], 10),
        ([[1, 0], [0, 1]], [1, 2], [1, 2], 5),
        ([[0, 2], [1, 0]], [1, 1], [1, 2], 5),
        ([[1], [2]], [1, 2], [1], 4),
    ],
)
def test_solve_counts_performed_multiplications(gf3, entries, rhs, solution, multiplications):
    result = solve(MatrixGF(gf3, entries), rhs)
    assert [value.value for value in result.solution] == solution
    assert result.multiplications == multiplications


@settings(max_examples=60, deadline=None)
@given(matrix=matrices())
def test_rref_is_idempotent_and_keeps_row_space(matrix):
    reduced, found, pivots = rref(matrix)
    assert rref(reduced)[0] == reduced
    assert found == rank(matrix) == len(pivots)
    assert rank(vstack(matrix, reduced)) == found


@settings(max_examples=60, deadline=None)
@given(a=matrices(square=True, max_rows=3), data=st.data())
def test_det_is_multiplicative(a, data):
    cell = st.integers(min_value=0, max_value=a.spec.order - 1)
    grid = data.draw(
        st.lists(st.lists(cell, min_size=a.rows, max_size=a.rows), min_size=a.rows, max_size=a.rows)
    )
    b = MatrixGF(a.spec, grid)
    assert det(a @ b) == det(a) * det(b)
    assert det(a).is_zero() == (rank(a) < a.rows)


@settings(max_examples=60, deadline=None)
@given(matrix=matrices(max_rows=4, max_cols=4), data=st.data())
def test_solve_satisfies_system(matrix, data):
    cell = st.integers(min_value=0, max_value=matrix.spec.order - 1)
    x = data.draw(st.lists(cell, min_size=matrix.cols, max_size=matrix.cols))
    rhs = matrix.array @ matrix.spec.gf(x)
    result = solve(matrix, rhs)
    assert result.solved
    found = matrix.spec.gf([value.value for value in result.solution])
    assert np.array_equal(matrix.array @ found, rhs)
    assert result.nullity == matrix.cols - rank(matrix)
    assert (result.status is SolveStatus.UNIQUE) == (result.nullity == 0)
