import json

import pytest
from conftest import DATA_DIR

from components.formats import (
    BodyKind,
    CodeFile,
    VerdictReport,
    format_word,
    load_word,
    parse_word,
)
from exceptions import FormatError

HEADER = "field gf(3)\nparams m=2 l=2 r=1,1 k=3\n"


class TestCodeFile:
    @pytest.mark.parametrize("name", ["gf3_example.txt", "gf4_example.txt", "gf7_two_parities.txt"])
    def test_canonical_files_are_stable(self, name):
        text = (DATA_DIR / name).read_text(encoding="utf-8")
        document = CodeFile.parse(text)
        assert document.dumps() == text
        assert document.is_validated

    def test_template_drops_comments(self):
        document = CodeFile.load(DATA_DIR / "gf7_template.txt", BodyKind.TEMPLATE)
        assert document.dumps().startswith("field gf(7)\nparams m=2 l=3 r=1,1 k=4\n")
        assert "#" not in document.dumps()
        assert len(document.template().wildcards) == 7
        assert CodeFile.parse(document.dumps(), BodyKind.TEMPLATE).rows == document.rows

    def test_symbols_accept_integer_literals(self):
        document = CodeFile.parse(HEADER + "1 0 0x1 0 1 1\n0 1 2 0 1 1\n0 0 0 1 1 0b10\n")
        assert document.matrix().to_ints()[0][2] == 1
        assert document.matrix().to_ints()[2][5] == 2

    def test_from_matrix(self, gf3_example):
        generator, params = gf3_example
        assert CodeFile.from_matrix(generator, params).dumps() == (DATA_DIR / "gf3_example.txt").read_text()

    @pytest.mark.parametrize(
        "text",
        [
            "",
            HEADER,
            "fields gf(3)\nparams m=2 l=2 r=1,1 k=3\n1 0 1 0 1 1\n",
            "field gf(6)\nparams m=2 l=2 r=1,1 k=3\n1 0 1 0 1 1\n",
            "field gf(3)\nparams m=2 l=2 r=1,1\n1 0 1 0 1 1\n",
            "field gf(3)\nparams m=2 l=2 r=1,1 k=7\n1 0 1 0 1 1\n",
            HEADER + "1 0 1 0 1 1\n0 1 2 0 1 1\n",
            HEADER + "1 0 1 0 1 1\n0 1 2 0 1 1\n0 0 0 1 1\n",
            HEADER + "1 0 1 0 1 1\n0 1 2 0 1 1\n0 0 0 1 1 3\n",
            HEADER + "1 0 1 0 1 1\n0 1 2 0 1 1\n0 0 0 1 1 x\n",
            HEADER + "1 0 1 0 1 1\n0 1 2 0 1 1\n0 0 0 1 1 *\n",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(FormatError):
            CodeFile.parse(text)

    def test_template_is_not_a_matrix(self):
        document = CodeFile.load(DATA_DIR / "gf3_field_necessity.txt", BodyKind.TEMPLATE)
        with pytest.raises(FormatError):
            document.matrix()


class TestWords:
    def test_load_word(self, gf3):
        word = load_word(DATA_DIR / "gf3_word.txt", gf3, 6)
        assert word.values == (1, 1, None, None, 0, None)
        assert word.pattern.erased == (2, 3, 5)

    @pytest.mark.parametrize("text", ["1 1 ? 0\n", "1 1 ? 0 0 0\n1 1 1 1 1 1\n", "1 1 ? 0 0 3\n", ""])
    def test_rejects(self, gf3, text):
        with pytest.raises(FormatError):
            parse_word(text, gf3, 6)

    def test_format_word(self):
        assert format_word((1, None, 0)) == "1 ? 0\n"


class TestVerdictReport:
    def test_json_shape(self):
        report = VerdictReport("verify", {"mode": "oracle"}, {"ok": True}, timing_seconds=0.25)
        data = json.loads(report.dumps())
        assert data == {
            "schema_version": "1.0",
            "command": "verify",
            "parameters": {"mode": "oracle"},
            "verdict": {"ok": True},
            "witness": None,
            "timing_seconds": 0.25,
        }
        assert report.is_validated

    def test_loads(self):
        report = VerdictReport("bounds", {"l": 2}, {"ok": False, "q": 3}, {"reason": "small"})
        loaded = VerdictReport.loads(report.dumps())
        assert loaded.as_dict() == report.as_dict()
        assert not loaded.ok

    @pytest.mark.parametrize(
        "report",
        [
            VerdictReport("launch", {}, {"ok": True}),
            VerdictReport("verify", {}, {"pmds": True}),
            VerdictReport("verify", {}, {"ok": "yes"}),
            VerdictReport("verify", {}, {"ok": True}, timing_seconds=-1.0),
        ],
    )
    def test_schema_violations(self, report):
        with pytest.raises(FormatError):
            report.dumps()

    def test_loads_rejects(self):
        with pytest.raises(FormatError):
            VerdictReport.loads("{not json")
        with pytest.raises(FormatError):
            VerdictReport.loads(json.dumps({"command": "verify"}))

    def test_text(self):
        report = VerdictReport("verify", {"mode": "mr"}, {"ok": False, "patterns_checked": 9})
        assert report.to_text() == "verify: failed\n  mode: mr\n  patterns_checked: 9\n"
