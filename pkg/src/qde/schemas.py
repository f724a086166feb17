"""JSON Schemas for the CLI's --json outputs.

These are plain dicts in JSON Schema (draft 2020-12) form; they are the
stability contract for machine consumers and are exercised by the test suite.
"""

_ABELIAN_GROUP = {
    "type": "object",
    "properties": {
        "invariant_factors": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "order": {"type": "integer", "minimum": 1},
    },
    "required": ["invariant_factors", "order"],
    "additionalProperties": False,
}

CF_SCHEMA = {
    "type": "object",
    "properties": {
        "theta": {"type": "string"},
        "preperiod": {"type": "array", "items": {"type": "integer"}},
        "period": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
    },
    "required": ["theta", "preperiod", "period"],
    "additionalProperties": False,
}

UNIT_SCHEMA = {
    "type": "object",
    "properties": {
        "D": {"type": "integer", "minimum": 2},
        "x": {"type": "integer"},
        "y": {"type": "integer"},
        "norm": {"enum": [1, -1]},
        "expr": {"type": "string"},
    },
    "required": ["D", "x", "y", "norm", "expr"],
    "additionalProperties": False,
}

ORDER_SCHEMA = {
    "type": "object",
    "properties": {
        "D": {"type": "integer", "minimum": 2},
        "f": {"type": "integer", "minimum": 1},
        "discriminant": {"type": "integer", "minimum": 1},
    },
    "required": ["D", "f", "discriminant"],
    "additionalProperties": False,
}

CLASSGROUP_SCHEMA = {
    "type": "object",
    "properties": {
        "D": {"type": "integer", "minimum": 2},
        "f": {"type": "integer", "minimum": 1},
        "discriminant": {"type": "integer", "minimum": 1},
        "h": {"type": "integer", "minimum": 1},
        "h_field": {"type": "integer", "minimum": 1},
        "unit_index": {"type": "integer", "minimum": 1},
        "invariant_factors": {"type": "array", "items": {"type": "integer", "minimum": 2}},
    },
    "required": ["D", "f", "discriminant", "h", "h_field", "unit_index", "invariant_factors"],
    "additionalProperties": False,
}

COMPANIONS_SCHEMA = {
    "type": "object",
    "properties": {
        "D": {"type": "integer", "minimum": 2},
        "f": {"type": "integer", "minimum": 1},
        "count": {"type": "integer", "minimum": 1},
        "companions": {"type": "array", "items": {"type": "string"}, "minItems": 1},
    },
    "required": ["D", "f", "count", "companions"],
    "additionalProperties": False,
}

K0_SCHEMA = {
    "type": "object",
    "properties": {
        "theta": {"type": "string"},
        "D": {"type": "integer", "minimum": 2},
        "f": {"type": "integer", "minimum": 1},
        "k0_rank": {"type": "integer", "minimum": 2},
        "trace_generators": {"type": "array", "items": {"type": "string"}, "minItems": 2},
        "galois_group": _ABELIAN_GROUP,
    },
    "required": ["theta", "D", "f", "k0_rank", "trace_generators", "galois_group"],
    "additionalProperties": False,
}

PREDICT_SCHEMA = {
    "type": "object",
    "properties": {
        "D": {"type": "integer", "minimum": 2},
        "f": {"type": "integer", "minimum": 1},
        "h": {"type": "integer", "minimum": 1},
        "rank": {"type": "integer", "minimum": 0},
        "sha": _ABELIAN_GROUP,
        "k0_rank": {"type": "integer", "minimum": 2},
    },
    "required": ["D", "f", "h", "rank", "sha", "k0_rank"],
    "additionalProperties": False,
}

VALIDATE_SCHEMA = {
    "type": "object",
    "properties": {
        "total": {"type": "integer", "minimum": 0},
        "consistent": {"type": "integer", "minimum": 0},
        "violations": {"type": "integer", "minimum": 0},
        "violation_rows": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "label": {"type": "string"},
                    "rank": {"type": "integer", "minimum": 0},
                    "sha_order": {"type": "integer", "minimum": 1},
                    "predicted": {"type": "integer", "minimum": 1},
                },
                "required": ["label", "rank", "sha_order", "predicted"],
                "additionalProperties": False,
            },
        },
        "by_rank": {
            "type": "object",
            "patternProperties": {
                r"^\d+$": {
                    "type": "object",
                    "properties": {
                        "total": {"type": "integer", "minimum": 0},
                        "consistent": {"type": "integer", "minimum": 0},
                    },
                    "required": ["total", "consistent"],
                    "additionalProperties": False,
                }
            },
            "additionalProperties": False,
        },
    },
    "required": ["total", "consistent", "violations", "violation_rows", "by_rank"],
    "additionalProperties": False,
}

SCHEMAS = {
    "cf": CF_SCHEMA,
    "unit": UNIT_SCHEMA,
    "order": ORDER_SCHEMA,
    "classgroup": CLASSGROUP_SCHEMA,
    "companions": COMPANIONS_SCHEMA,
    "k0": K0_SCHEMA,
    "predict": PREDICT_SCHEMA,
    "validate": VALIDATE_SCHEMA,
}
