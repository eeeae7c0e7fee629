"""JSON schemas for every file format read or written by the CLI."""

from jsonschema import Draft202012Validator

from .errors import SigmaSopError

_labels = {"type": "array", "items": {"type": "string"}}
_pair = {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}

POSET = {
    "type": "object",
    "required": ["elements", "lt"],
    "properties": {
        "elements": {**_labels, "uniqueItems": True},
        "lt": {"type": "array", "items": _pair},
    },
}

PATTERN = {
    "type": "object",
    "required": ["indices", "inconsistent", "consistent"],
    "properties": {
        "indices": {**_labels, "uniqueItems": True},
        "inconsistent": {"type": "array", "items": _pair},
        "consistent": {"type": "array", "items": _labels},
    },
}

SET_SYSTEM = {
    "type": "object",
    "required": ["universe", "sets"],
    "properties": {
        "universe": {**_labels, "uniqueItems": True},
        "sets": {"type": "object", "additionalProperties": _labels},
        "intended": {"type": "object", "additionalProperties": {"type": "string"}},
    },
}

EMBEDDING = {
    "type": "object",
    "required": ["map"],
    "properties": {"map": {"type": "object", "additionalProperties": {"type": "string"}}},
}

REPORT = {
    "type": "object",
    "required": ["ok", "checks"],
    "properties": {
        "ok": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "witnesses"],
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "skip"]},
                    "witnesses": {"type": "array"},
                    "note": {"type": "string"},
                },
            },
        },
    },
}


class SchemaViolation(SigmaSopError):
    def __init__(self, what, pointer, message):
        super().__init__(f"{what}: invalid field at {pointer or '/'}: {message}")
        self.pointer = pointer


def validate(data, schema, what="input"):
    errors = sorted(Draft202012Validator(schema).iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        pointer = "/" + "/".join(str(p) for p in err.absolute_path)
        raise SchemaViolation(what, pointer, err.message)
    return data
