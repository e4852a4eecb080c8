import numpy as np
import pytest
from conftest import construction_grid, load_code, s1_params

from components.algebra import MatrixGF, parse_field_literal
from components.codes import (
    PmdsParams,
    S1Blueprint,
    SeedRole,
    build_ell1_general_s,
    build_ell1_s1,
    build_s1,
    classify_s1,
    default_blueprint,
    minimal_ell1_field,
    minimal_s1_field,
    mr_check,
    pmds_oracle,
    seed_from_rs,
)
from exceptions import ConstructionError, ParameterError


@pytest.mark.parametrize(
    "m, ell, r, literal",
    [
        (2, 2, (1, 1), "gf(3)"),
        (2, 2, (2, 2), "gf(2^2)"),
        (2, 3, (1, 1), "gf(2^2)"),
        (2, 3, (2, 1), "gf(2^2)"),
        (2, 3, (2, 2), "gf(2^2)"),
        (3, 1, (1, 1, 1), "gf(2)"),
    ],
)
def test_minimal_s1_field(m, ell, r, literal):
    assert minimal_s1_field(s1_params(m, ell, r)).literal == literal


class TestBuildS1:
    @pytest.mark.parametrize("m, ell, r", [(2, 2, (1, 1)), (2, 3, (2, 1)), (3, 2, (1, 2, 1))])
    def test_minimal_field_codes_are_pmds(self, m, ell, r):
        params = s1_params(m, ell, r)
        generator = build_s1(params, minimal_s1_field(params))
        assert generator.shape == (params.k, params.n)
        assert pmds_oracle(generator, params)

    def test_standard_form_has_unit_multipliers(self, gf4):
        params = s1_params(2, 3, (2, 1))
        verdict = classify_s1(build_s1(params, gf4), params)
        assert verdict
        assert verdict.standard_form.all_alphas_one
        assert verdict.standard_form.last_block == 1

    def test_field_too_small(self, gf3):
        with pytest.raises(ConstructionError) as excinfo:
            build_s1(s1_params(2, 2, (2, 2)), gf3)
        assert excinfo.value.bound == 4

    def test_needs_single_global_parity(self, gf7):
        with pytest.raises(ParameterError):
            build_s1(PmdsParams.with_s(2, 3, (1, 1), 2), gf7)
        with pytest.raises(ParameterError):
            build_s1(PmdsParams.with_s(1, 3, (1,), 1), gf7)

    def test_explicit_blueprint(self, gf7):
        params = s1_params(2, 2, (1, 2))
        blueprint = default_blueprint(params, gf7)
        assert build_s1(params, gf7, blueprint) == build_s1(params, gf7)
        with pytest.raises(ConstructionError):
            build_s1(s1_params(2, 2, (1, 1)), gf7, blueprint)


class TestBlueprint:
    def test_seed_columns(self, gf7):
        interior = seed_from_rs(gf7, 2, 2, SeedRole.INTERIOR)
        last = seed_from_rs(gf7, 2, 2, SeedRole.LAST)
        assert interior.to_ints()[0][:2] == [1, 0]
        assert all(row[-1] == 1 for row in interior.to_ints())
        assert all(row[2] == 1 for row in last.to_ints())

    def test_seed_beyond_mds_length(self, gf3):
        with pytest.raises(ConstructionError):
            seed_from_rs(gf3, 2, 2, SeedRole.INTERIOR)

    def test_rejects_non_mds_seed(self, gf3):
        params = s1_params(2, 2, (1, 1))
        good = seed_from_rs(gf3, 2, 1, SeedRole.LAST)
        bad = MatrixGF(gf3, [[1, 0, 1, 1], [0, 1, 0, 1]])
        with pytest.raises(ConstructionError):
            S1Blueprint(params, gf3, (bad,), good)

    def test_rejects_seed_count(self, gf3):
        params = s1_params(3, 2, (1, 1, 1))
        seed = seed_from_rs(gf3, 2, 1, SeedRole.INTERIOR)
        with pytest.raises(ConstructionError):
            S1Blueprint(params, gf3, (seed,), seed_from_rs(gf3, 2, 1, SeedRole.LAST))


class TestLocalityOne:
    def test_s1_matches_golden_file(self, gf2):
        document = load_code("gf2_locality_one.txt")
        generator = build_ell1_s1(document.params, gf2)
        assert generator == document.matrix()
        assert build_s1(document.params, gf2) == generator

    @pytest.mark.parametrize(
        "m, s, r, literal",
        [(4, 2, (1, 2, 1, 1), "gf(3)"), (3, 1, (2, 1, 1), "gf(2)"), (5, 2, (1, 1, 1, 1, 1), "gf(2^2)")],
    )
    def test_general_s_is_pmds(self, m, s, r, literal):
        spec = parse_field_literal(literal)
        assert minimal_ell1_field(m, s) == spec
        generator = build_ell1_general_s(m, s, r, spec)
        params = PmdsParams.with_s(m, 1, r, s)
        assert generator.shape == (m - s, params.n)
        assert pmds_oracle(generator, params)

    def test_columns_repeat_within_blocks(self, gf3):
        generator = build_ell1_general_s(4, 2, (1, 2, 1, 1), gf3)
        array = generator.array
        assert np.array_equal(array[:, 2], array[:, 3])
        assert np.array_equal(array[:, 3], array[:, 4])

    def test_field_too_small(self, gf2):
        with pytest.raises(ConstructionError) as excinfo:
            build_ell1_general_s(4, 2, (1, 1, 1, 1), gf2)
        assert excinfo.value.bound == 3

    @pytest.mark.parametrize("m, s", [(1, 1), (3, 0), (3, 3)])
    def test_rejects_parameters(self, gf3, m, s):
        with pytest.raises(ParameterError):
            build_ell1_general_s(m, s, (1,) * m, gf3)


@pytest.mark.slow
@pytest.mark.parametrize("m, ell, r", construction_grid())
def test_construction_grid(m, ell, r):
    params = s1_params(m, ell, r)
    generator = build_s1(params, minimal_s1_field(params))
    assert pmds_oracle(generator, params)
    assert mr_check(generator, params)
    verdict = classify_s1(generator, params)
    assert verdict
    assert verdict.standard_form.all_alphas_one


@pytest.mark.slow
@pytest.mark.parametrize(
    "m, s",
    [(m, s) for m in (2, 3, 4) for s in range(1, m)],
)
@pytest.mark.parametrize("spread", [1, 2, None])
def test_locality_one_grid(m, s, spread):
    r = (spread,) * m if spread else tuple(1 + index % 2 for index in range(m))
    spec = minimal_ell1_field(m, s)
    params = PmdsParams.with_s(m, 1, r, s)
    assert pmds_oracle(build_ell1_general_s(m, s, r, spec), params)
