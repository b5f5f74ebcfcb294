"""Machine-readable verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__

RESULTS = ("pass", "fail", "value", "error", "unsupported")

EXIT_CODES = {"pass": 0, "value": 0, "fail": 1, "error": 2, "unsupported": 3}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "hamop report",
    "type": "object",
    "required": ["command", "inputs", "result", "timing_ms", "cites", "version"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "array", "items": {"type": "string"}},
        "result": {"enum": list(RESULTS)},
        "value": {"type": "string"},
        "witness": {"type": "string"},
        "message": {"type": "string"},
        "timing_ms": {"type": "integer", "minimum": 0},
        "cites": {"type": "string"},
        "version": {"type": "string"},
        "details": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "result"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "result": {"enum": ["pass", "fail", "value"]},
                    "value": {"type": "string"},
                    "witness": {"type": "string"},
                    "cites": {"type": "string"},
                },
            },
        },
    },
    "allOf": [
        {
            "if": {"properties": {"result": {"const": "fail"}}},
            "then": {"required": ["witness"]},
            "else": {"not": {"required": ["witness"]}},
        }
    ],
}


@dataclass
class Detail:
    name: str
    result: str
    value: str | None = None
    witness: str | None = None
    cites: str | None = None

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "result": self.result}
        for key in ("value", "witness", "cites"):
            v = getattr(self, key)
            if v is not None:
                d[key] = v
        return d


@dataclass
class Report:
    command: str
    inputs: list[str] = field(default_factory=list)
    result: str = "value"
    value: str | None = None
    witness: str | None = None
    message: str | None = None
    timing_ms: int = 0
    cites: str = ""
    details: list[Detail] = field(default_factory=list)
    version: str = __version__

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.result]

    def check(self, name: str, ok: bool, *, witness: str | None = None, value: str | None = None,
              cites: str | None = None) -> bool:
        self.details.append(Detail(name, "pass" if ok else "fail", value, None if ok else witness or "mismatch", cites))
        return ok

    def finish_from_details(self) -> None:
        failed = [d for d in self.details if d.result == "fail"]
        if failed:
            self.result = "fail"
            self.witness = f"{failed[0].name}: {failed[0].witness}"
        else:
            self.result = "pass"

    def to_dict(self) -> dict:
        d: dict[str, Any] = {
            "command": self.command,
            "inputs": list(self.inputs),
            "result": self.result,
            "timing_ms": int(self.timing_ms),
            "cites": self.cites,
            "version": self.version,
        }
        if self.value is not None:
            d["value"] = self.value
        if self.result == "fail":
            d["witness"] = self.witness or "mismatch"
        if self.message is not None:
            d["message"] = self.message
        if self.details:
            d["details"] = [x.to_dict() for x in self.details]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.result.upper()}"]
        if self.cites:
            lines.append(f"  verifies: {self.cites}")
        for inp in self.inputs:
            lines.append(f"  input: {inp}")
        if self.value is not None:
            lines.append(f"  value: {self.value}")
        for det in self.details:
            extra = f" = {det.value}" if det.value is not None else ""
            lines.append(f"  [{det.result.upper()}] {det.name}{extra}")
            if det.witness:
                lines.append(f"      witness: {det.witness}")
        if self.result == "fail":
            lines.append(f"  witness: {self.witness}")
        if self.message:
            lines.append(f"  message: {self.message}")
        if self.timing_ms:
            lines.append(f"  time: {self.timing_ms} ms")
        return "\n".join(lines) + "\n"
