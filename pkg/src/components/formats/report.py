import json
import logging
from typing import Any, Dict, Optional

from jsonschema import Draft202012Validator

from components.formats.interfaces import DocumentInterface
from constants import REPORT_SCHEMA_VERSION
from exceptions import FormatError

logger = logging.getLogger(__name__)

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "schema_version",
        "command",
        "parameters",
        "verdict",
        "witness",
        "timing_seconds",
    ],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": REPORT_SCHEMA_VERSION},
        "command": {
            "enum": [
                "construct",
                "verify",
                "decode",
                "encode",
                "search",
                "bounds",
                "standardize",
            ]
        },
        "parameters": {"type": "object"},
        "verdict": {
            "type": "object",
            "required": ["ok"],
            "properties": {"ok": {"type": "boolean"}},
        },
        "witness": {"type": ["object", "null"]},
        "timing_seconds": {"type": "number", "minimum": 0},
    },
}

_VALIDATOR = Draft202012Validator(REPORT_SCHEMA)


class VerdictReport(DocumentInterface):
    """Machine-readable outcome of one command."""

    def __init__(
        self,
        command: str,
        parameters: Dict[str, Any],
        verdict: Dict[str, Any],
        witness: Optional[Dict[str, Any]] = None,
        timing_seconds: float = 0.0,
    ):
        super().__init__()
        self.command = command
        self.parameters = parameters
        self.verdict = verdict
        self.witness = witness
        self.timing_seconds = timing_seconds

    @property
    def ok(self) -> bool:
        return bool(self.verdict.get("ok"))

    def as_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "witness": self.witness,
            "timing_seconds": round(self.timing_seconds, 6),
        }

    def validate(self):
        error = next(_VALIDATOR.iter_errors(self.as_dict()), None)
        if error is not None:
            raise FormatError(f"Report fails schema validation: {error.message}")
        super().validate()

    def dumps(self) -> str:
        self.validate()
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command}: {'ok' if self.ok else 'failed'}"]
        for section in ("parameters", "verdict", "witness"):
            values = getattr(self, section) or {}
            for key, value in values.items():
                if section == "verdict" and key == "ok":
                    continue
                lines.append(f"  {key}: {value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "VerdictReport":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as error:
            raise FormatError(f"Report is not JSON: {error}") from error
        error = next(_VALIDATOR.iter_errors(data), None)
        if error is not None:
            raise FormatError(f"Report fails schema validation: {error.message}")
        report = cls(
            data["command"],
            data["parameters"],
            data["verdict"],
            data["witness"],
            data["timing_seconds"],
        )
        report.validate()
        return report
