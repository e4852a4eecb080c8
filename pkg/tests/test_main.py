import json

import pytest
from conftest import DATA_DIR

import components.codes.decode as decode_module
from constants import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERDICT_FALSE
from exceptions import DecodeError
from main import PmdsPlayground


def run(*argv):
    return PmdsPlayground().run([str(arg) for arg in argv])


def run_json(capsys, *argv):
    code = run("--json", *argv)
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture
def mutated_file(tmp_path):
    text = (DATA_DIR / "gf3_example.txt").read_text().replace("0 1 2 0 1 1", "0 1 1 0 1 1")
    path = tmp_path / "mutated.txt"
    path.write_text(text)
    return path


class TestConstruct:
    def test_output_verifies(self, capsys, tmp_path):
        assert run("construct", "--m", 2, "--l", 2, "--r", "1,1") == EXIT_OK
        output = capsys.readouterr().out
        assert output.startswith("field gf(3)\nparams m=2 l=2 r=1,1 k=3\n")

        path = tmp_path / "built.txt"
        path.write_text(output)
        assert run("verify", path, "--mode", "both") == EXIT_OK

    def test_locality_one_general_s(self, capsys):
        code, report = run_json(capsys, "construct", "--m", 4, "--l", 1, "--r", "1,1,1,1", "--s", 2)
        assert code == EXIT_OK
        assert report["parameters"]["field"] == "gf(3)"

    @pytest.mark.parametrize(
        "argv",
        [
            ("construct", "--m", 2, "--l", 2, "--r", "2,2", "--field", "gf(3)"),
            ("construct", "--m", 2, "--l", 2, "--r", "1,1", "--s", 2),
            ("construct", "--m", 2, "--l", 2, "--r", "1,1", "--field", "gf(6)"),
            ("construct", "--m", 2, "--l", 2),
        ],
    )
    def test_usage_errors(self, capsys, argv):
        assert run(*argv) == EXIT_USAGE
        assert capsys.readouterr().err


class TestVerify:
    @pytest.mark.parametrize("mode", ["oracle", "classify", "both", "mr"])
    def test_golden_file(self, capsys, mode):
        code, report = run_json(capsys, "verify", DATA_DIR / "gf3_example.txt", "--mode", mode)
        assert code == EXIT_OK
        assert report["verdict"]["ok"] is True
        assert report["witness"] is None
        assert report["timing_seconds"] >= 0

    def test_not_pmds(self, capsys, mutated_file):
        code, report = run_json(capsys, "verify", mutated_file)
        assert code == EXIT_VERDICT_FALSE
        assert report["verdict"]["is_pmds"] is False
        assert report["witness"]["stage"] == "punctured-mds"
        assert report["witness"]["columns"] == [2, 4, 5]

    def test_text_output_names_dependent_columns(self, capsys, mutated_file):
        assert run("verify", mutated_file) == EXIT_VERDICT_FALSE
        output = capsys.readouterr().out
        assert "  erased: [0, 3]\n" in output
        assert "  columns: [2, 4, 5]\n" in output

    def test_classification_witness(self, capsys, mutated_file):
        code, report = run_json(capsys, "verify", mutated_file, "--mode", "both")
        assert code == EXIT_VERDICT_FALSE
        assert report["verdict"]["agree"] is True
        assert report["witness"]["classification"]["kind"] == "b-hat-not-mds"

    def test_two_global_parities(self, capsys):
        assert run("verify", DATA_DIR / "gf7_two_parities.txt") == EXIT_OK
        assert run("verify", DATA_DIR / "gf7_two_parities.txt", "--mode", "classify") == EXIT_USAGE

    def test_missing_file(self, capsys, tmp_path):
        assert run("verify", tmp_path / "absent.txt") == EXIT_USAGE
        assert "error:" in capsys.readouterr().err


class TestDecode:
    def test_golden_word(self, capsys):
        assert run("decode", DATA_DIR / "gf3_example.txt", DATA_DIR / "gf3_word.txt") == EXIT_OK
        assert capsys.readouterr().out == "1 1 0 1 0 1\n"

    def test_report(self, capsys):
        code, report = run_json(
            capsys, "decode", DATA_DIR / "gf3_example.txt", DATA_DIR / "gf3_word.txt"
        )
        assert code == EXIT_OK
        assert report["parameters"]["erased"] == [2, 3, 5]
        assert report["verdict"]["global_row_used"] is True
        assert report["verdict"]["overflow_block"] == 1

    def test_uncorrectable(self, capsys, tmp_path):
        word = tmp_path / "word.txt"
        word.write_text("? ? ? ? 0 1\n")
        code, report = run_json(capsys, "decode", DATA_DIR / "gf3_example.txt", word)
        assert code == EXIT_VERDICT_FALSE
        assert report["witness"]["deficit"] == 1

    def test_structured_setup_failure_decodes_generically(self, capsys, monkeypatch):
        def no_structured_check(form):
            raise DecodeError("No global check row")

        monkeypatch.setattr(decode_module, "build_structured_H", no_structured_check)
        code, report = run_json(
            capsys, "decode", DATA_DIR / "gf3_example.txt", DATA_DIR / "gf3_word.txt"
        )
        assert code == EXIT_OK
        assert report["verdict"]["codeword"] == [1, 1, 0, 1, 0, 1]
        assert report["verdict"]["global_row_used"] is False

    def test_generic_for_two_parities(self, capsys, tmp_path):
        word = tmp_path / "word.txt"
        word.write_text("1 0 0 ? 0 ? 2 2\n")
        assert run("decode", DATA_DIR / "gf7_two_parities.txt", word) == EXIT_OK
        assert capsys.readouterr().out == "1 0 0 1 0 1 2 2\n"


def test_encode(capsys):
    assert run("encode", DATA_DIR / "gf3_example.txt", "--message", "1,1,1") == EXIT_OK
    assert capsys.readouterr().out == "1 1 0 1 0 1\n"
    assert run("encode", DATA_DIR / "gf3_example.txt", "--message", "1,1") == EXIT_USAGE


class TestSearch:
    def test_no_completion(self, capsys):
        assert run("search", DATA_DIR / "gf3_field_necessity.txt") == EXIT_VERDICT_FALSE
        assert capsys.readouterr().out == "none\n"

    def test_completion(self, capsys, tmp_path):
        assert run("search", DATA_DIR / "gf4_field_necessity.txt") == EXIT_OK
        path = tmp_path / "completed.txt"
        path.write_text(capsys.readouterr().out)
        assert run("verify", path) == EXIT_OK

    def test_budget(self, capsys):
        code = run("search", DATA_DIR / "gf4_field_necessity.txt", "--budget", 10)
        assert code == EXIT_BUDGET
        assert "error:" in capsys.readouterr().err


class TestBounds:
    @pytest.mark.parametrize(
        "argv, q",
        [
            (("--m", 2, "--l", 3, "--r", "2,1"), 4),
            (("--m", 3, "--l", 1), 2),
            (("--m", 2, "--l", 2, "--r", "2,2"), 4),
            (("--m", 2, "--l", 3, "--s", 2), 5),
            (("--m", 4, "--l", 1, "--s", 2), 3),
        ],
    )
    def test_minimal_q(self, capsys, argv, q):
        code, report = run_json(capsys, "bounds", *argv)
        assert code == EXIT_OK
        assert report["verdict"]["minimal_q"] == q

    def test_necessary_conditions_over_a_field(self, capsys):
        argv = ("bounds", "--m", 2, "--l", 3, "--s", 2)
        code, report = run_json(capsys, *argv, "--field", "gf(2^2)")
        assert code == EXIT_VERDICT_FALSE
        assert report["verdict"]["global_exists"] is False
        assert run(*argv, "--field", "gf(7)") == EXIT_OK


def test_standardize(capsys):
    assert run("standardize", DATA_DIR / "gf3_example.txt") == EXIT_OK
    assert capsys.readouterr().out == (DATA_DIR / "gf3_example.txt").read_text()


def test_standardize_failure(capsys, tmp_path):
    text = (DATA_DIR / "gf3_example.txt").read_text().replace("1 0 1 0 1 1", "1 0 1 0 0 1")
    path = tmp_path / "zero.txt"
    path.write_text(text)
    code, report = run_json(capsys, "standardize", path)
    assert code == EXIT_VERDICT_FALSE
    assert report["witness"]["kind"] == "zero-alpha"


@pytest.mark.parametrize("argv, code", [((), EXIT_USAGE), (("--help",), EXIT_OK), (("launch",), EXIT_USAGE)])
def test_argument_parsing(capsys, argv, code):
    assert run(*argv) == code
