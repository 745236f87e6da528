"""Loading and validating the JSON rule and configuration files."""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .dynamics import Configuration
from .models import rule_from_json

_INT = {"type": "integer"}
_NAT = {"type": "integer", "minimum": 0}
_POS = {"type": "integer", "minimum": 1}
_MOD = {"type": "integer", "minimum": 2}
_TABLE = {"type": "array", "items": {"type": "array", "items": _INT}}
_POLY = {"type": "array", "items": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}}

RULE_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "hoca"},
                "m": _MOD,
                "memory": _POS,
                "radius": _NAT,
                "coeffs": _TABLE,
            },
            "required": ["kind", "m", "memory", "radius", "coeffs"],
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "lca"},
                "m": _MOD,
                "n": _POS,
                "radius": _NAT,
                "matrices": {"type": "array", "items": _TABLE},
            },
            "required": ["kind", "m", "n", "radius", "matrices"],
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "frobenius"},
                "m": _MOD,
                "n": _POS,
                "row": {"type": "array", "items": _POLY, "minItems": 1},
            },
            "required": ["kind", "m", "row"],
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "pnuca"},
                "m": _MOD,
                "period": _POS,
                "radius": _NAT,
                "rules": _TABLE,
            },
            "required": ["kind", "m", "period", "radius", "rules"],
        },
    ]
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "m": _MOD,
        "n": _POS,
        "cells": {
            "type": "object",
            "patternProperties": {"^-?[0-9]+$": {"type": "array", "items": _INT}},
            "additionalProperties": False,
        },
    },
    "required": ["m", "n", "cells"],
}


class SchemaError(ValueError):
    pass


def _residues(d: dict) -> list[int]:
    kind = d["kind"]
    if kind == "hoca":
        return [v for row in d["coeffs"] for v in row]
    if kind == "lca":
        return [v for mat in d["matrices"] for row in mat for v in row]
    if kind == "pnuca":
        return [v for row in d["rules"] for v in row]
    return [c for poly in d["row"] for _, c in poly]


def parse_rule(d):
    try:
        jsonschema.validate(d, RULE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"rule file does not match any rule schema: {exc.message}") from exc
    m = d["m"]
    if any(not 0 <= v < m for v in _residues(d)):
        raise SchemaError(f"coefficients must lie in [0, {m})")
    try:
        return rule_from_json(d)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def parse_config(d) -> Configuration:
    try:
        jsonschema.validate(d, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"bad configuration file: {exc.message}") from exc
    m = d["m"]
    if any(not 0 <= v < m for vec in d["cells"].values() for v in vec):
        raise SchemaError(f"cell states must lie in [0, {m})")
    try:
        return Configuration.from_json(d)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def load_rule(path):
    return parse_rule(_read_json(path))


def load_config(path) -> Configuration:
    return parse_config(_read_json(path))
