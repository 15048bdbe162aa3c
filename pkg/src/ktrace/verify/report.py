"""JSON form of verification reports and its schema."""

from __future__ import annotations

import json

NULLABLE_NUMBER = {"type": ["number", "null"]}

FAILURE_SCHEMA = {
    "type": "object",
    "required": ["trial", "tau", "gap"],
    "properties": {
        "trial": {"type": "integer", "minimum": 0},
        "tau": NULLABLE_NUMBER,
        "gap": NULLABLE_NUMBER,
        "error": {"type": "string"},
    },
    "additionalProperties": False,
}

CASE_REPORT_SCHEMA = {
    "type": "object",
    "required": ["case", "trials", "worst_gap", "scale", "failures", "millis"],
    "properties": {
        "case": {"type": "string"},
        "status": {"enum": ["PASS", "FAIL", "SKIPPED"]},
        "trials": {"type": "integer", "minimum": 0},
        "evaluations": {"type": "integer", "minimum": 0},
        "n": {"type": "integer", "minimum": 1},
        "k": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "tol": {"type": "number", "minimum": 0},
        "worst_gap": NULLABLE_NUMBER,
        "scale": NULLABLE_NUMBER,
        "failures": {"type": "array", "items": FAILURE_SCHEMA},
        "millis": NULLABLE_NUMBER,
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ktrace verification report",
    "type": "array",
    "items": CASE_REPORT_SCHEMA,
}

MATRIX_SCHEMA = {
    "type": "object",
    "required": ["n", "entries"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        },
    },
}

SCALAR_RESULT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["quantity", "value"],
    "properties": {
        "quantity": {"enum": ["trace-k", "mixed-disc"]},
        "value": {"type": "number"},
        "k": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "method": {"type": "string"},
    },
    "additionalProperties": False,
}

COMPOUND_RESULT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["k", "basis", "matrix"],
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "basis": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "matrix": MATRIX_SCHEMA,
    },
    "additionalProperties": False,
}


def reports_to_json(reports) -> str:
    """Serialize reports; identical reports give identical bytes."""
    return json.dumps([r.to_dict() for r in reports], indent=2, allow_nan=False) + "\n"


def load_reports(text: str) -> list:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("a report is a JSON array of per-case objects")
    return data
