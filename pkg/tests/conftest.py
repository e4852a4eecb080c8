import itertools
from pathlib import Path

import numpy as np
import pytest

from components.algebra import MatrixGF, parse_field_literal
from components.codes import PmdsParams
from components.formats import BodyKind, CodeFile

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_SEED = 20240917


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="Seed for the randomized differential tests",
    )


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


def load_code(name: str) -> CodeFile:
    return CodeFile.load(DATA_DIR / name)


def load_template(name: str) -> CodeFile:
    return CodeFile.load(DATA_DIR / name, BodyKind.TEMPLATE)


@pytest.fixture
def gf2():
    return parse_field_literal("gf(2)")


@pytest.fixture
def gf3():
    return parse_field_literal("gf(3)")


@pytest.fixture
def gf4():
    return parse_field_literal("gf(2^2)")


@pytest.fixture
def gf7():
    return parse_field_literal("gf(7)")


@pytest.fixture
def gf3_example():
    """The [6,3,2;1,1] code over GF(3) and its parameters."""
    document = load_code("gf3_example.txt")
    return document.matrix(), document.params


@pytest.fixture
def gf4_example():
    document = load_code("gf4_example.txt")
    return document.matrix(), document.params


@pytest.fixture
def gf7_two_parities():
    document = load_code("gf7_two_parities.txt")
    return document.matrix(), document.params


def mutate(matrix: MatrixGF, row: int, col: int, value: int) -> MatrixGF:
    grid = matrix.to_ints()
    grid[row][col] = value
    return MatrixGF(matrix.spec, grid)


def random_full_rank(rng: np.random.Generator, spec, rows: int, cols: int) -> MatrixGF:
    while True:
        array = spec.gf(rng.integers(0, spec.order, size=(rows, cols)))
        if np.linalg.matrix_rank(array) == rows:
            return MatrixGF(spec, array)


def s1_params(m: int, ell: int, r) -> PmdsParams:
    return PmdsParams.with_s(m, ell, r, 1)


def construction_grid():
    """(m, l, r) for m in {2, 3}, l in {1, 2, 3} and every r_i in {1, 2}."""
    return [
        (m, ell, r)
        for m in (2, 3)
        for ell in (1, 2, 3)
        for r in itertools.product((1, 2), repeat=m)
    ]
