"""
Schemas - JSON Schema of every command's input document
"""

from typing import Dict

import jsonschema


class SchemaViolation(Exception):
    """Input document does not match the command's schema (usage error, exit 2)"""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message
        self.name = "SchemaViolation"

    def to_dict(self) -> dict:
        return {"error": self.name, "message": self.message}


NAT = {"type": "integer", "minimum": 0}
NATS = {"type": "array", "items": NAT}
PREFIX = {"type": "array", "items": NAT, "uniqueItems": True}

DEFS = {
    "family": {
        "oneOf": [
            {
                "type": "object",
                "required": ["horizon", "members"],
                "properties": {"horizon": NAT, "members": {"type": "array", "items": NATS}},
            },
            {
                "type": "object",
                "required": ["f", "count", "horizon"],
                "properties": {"f": PREFIX, "count": NAT, "horizon": NAT},
            },
        ]
    },
    "property": {"type": "string", "pattern": "^(F|D[0-9]+|Dbar[0-9]+)$"},
    "poset": {
        "type": "object",
        "required": ["size"],
        "properties": {
            "size": NAT,
            "leq": {"type": "array", "items": {"type": "array", "items": NAT, "minItems": 2, "maxItems": 2}},
        },
    },
    "det_rules": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["to"],
            "properties": {"from": NATS, "to": NAT},
        },
    },
    "nondet_rules": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["choices"],
            "properties": {"from": NATS, "choices": {"type": "array", "items": NAT, "minItems": 1}},
        },
    },
    "predicate": {
        "type": "object",
        "required": ["kind"],
        "properties": {
            "kind": {"enum": ["true", "divisible", "not_divisible", "member_of", "avoid",
                              "max_size", "empty_or_contains", "all_of"]},
            "by": {"type": "integer", "minimum": 1},
            "set": NATS,
            "bound": NAT,
            "element": NAT,
            "of": {"type": "array", "items": {"$ref": "#/definitions/predicate"}},
        },
    },
    "tree": {"type": "array", "items": {"$ref": "#/definitions/tree"}},
    "strategy": {
        "type": "object",
        "required": ["entries"],
        "properties": {
            "name": {"type": "string"},
            "entries": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["x", "value", "stage"],
                    "properties": {"x": NAT, "value": NAT, "stage": NAT},
                },
            },
        },
    },
}


def _doc(required, **properties) -> dict:
    return {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "type": "object",
        "required": list(required),
        "properties": properties,
        "definitions": DEFS,
    }


def _ref(name: str) -> dict:
    return {"$ref": f"#/definitions/{name}"}


SUBFAMILY = NATS
PRED_INPUT = dict(predicate=_ref("predicate"), universe=NAT, A=NATS)

SCHEMAS: Dict[str, dict] = {
    "family check": _doc(["family", "subfamily", "property"],
                         family=_ref("family"), subfamily=SUBFAMILY, property=_ref("property")),
    "family greedy": _doc(["family", "property"],
                          family=_ref("family"), property=_ref("property"), start=NAT),
    "family maximal": _doc(["family", "subfamily", "property"],
                           family=_ref("family"), subfamily=SUBFAMILY, property=_ref("property")),
    "family tilde": _doc(["family", "n"],
                         family=_ref("family"), n={"type": "integer", "minimum": 2},
                         stages=NAT, exact_size={"type": "boolean"}),
    "family encode-range": _doc(["f", "count"], f=PREFIX, count=NAT, horizon=NAT),
    "family decode-range": _doc(["family", "subfamily", "property"],
                                family=_ref("family"), subfamily=SUBFAMILY, property=_ref("property")),
    "family random": _doc([], members={"type": "integer", "minimum": 1}, horizon={"type": "integer", "minimum": 1},
                          density={"type": "number", "minimum": 0, "maximum": 1}),
    "poset zl1": _doc(["poset", "start"], poset=_ref("poset"), start=NAT),
    "poset maximals": _doc(["poset"], poset=_ref("poset")),
    "poset assign": _doc(["poset"], poset=_ref("poset")),
    "poset reversal": _doc(["f", "columns", "rows"], f=PREFIX, columns=NAT, rows={"type": "integer", "minimum": 1}),
    "poset zl2": _doc(["f", "columns", "rows"], f=PREFIX, columns=NAT, rows={"type": "integer", "minimum": 1}),
    "fcp check": _doc(["predicate", "universe"], predicate=_ref("predicate"), universe=NAT),
    "fcp max": _doc(["predicate", "universe", "A"], **PRED_INPUT),
    "fcp sigma1": _doc(["predicate", "universe", "A"], **PRED_INPUT),
    "fcp sequential": _doc(["f", "count"], f=PREFIX, count=NAT),
    "closure cl": _doc(["rules", "X"], rules=_ref("det_rules"), X=NATS, universe=NAT),
    "closure closed": _doc(["rules", "X"], rules=_ref("det_rules"), X=NATS),
    "closure ce-max": _doc(["rules", "predicate", "universe", "A"],
                           rules=_ref("det_rules"), C=NATS, **PRED_INPUT),
    "closure prime-gadget": _doc(["f", "primes", "exp_bound"],
                                 f=PREFIX, primes={"type": "integer", "minimum": 1},
                                 exp_bound={"type": "integer", "minimum": 1}),
    "closure semilattice": _doc(["poset"], poset=_ref("poset"), C=NATS),
    "nce check": _doc(["rules", "X"], rules=_ref("nondet_rules"), X=NATS),
    "nce max": _doc(["rules", "predicate", "universe", "A"],
                    rules=_ref("nondet_rules"), C=NATS, mode={"enum": ["exact", "greedy"]}, **PRED_INPUT),
    "nce ideal-encode": _doc(["poset"], poset=_ref("poset")),
    "nce tree-encode": _doc(["depth", "trees"], depth=NAT, trees={"type": "array", "items": _ref("tree")}),
    "nce decode-paths": _doc(["depth", "trees", "B"],
                             depth=NAT, trees={"type": "array", "items": _ref("tree")}, B=NATS),
    "construct adversary": _doc([], bundled={"type": "boolean"},
                                strategies={"type": "array", "items": _ref("strategy")}, stages=NAT),
    "construct permit": _doc(["family"], family=_ref("family"),
                             W={"type": "array", "items": {"type": "array", "items": NAT,
                                                           "minItems": 2, "maxItems": 2}},
                             stages=NAT),
    "construct escape": _doc(["family"], family=_ref("family"), steps=NAT, bound=NATS),
    "construct forcing": _doc(["family"], family=_ref("family"), steps=NAT, dense=NATS),
    "construct good-seq": _doc(["family", "bits"], family=_ref("family"),
                               bits={"type": "object", "required": ["length"],
                                     "properties": {"length": NAT, "ones": NATS}}),
    "construct pi01g": _doc(["family"], family=_ref("family"), indices=NATS, steps=NAT),
    "verify oracle": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "type": "object",
        "anyOf": [
            {"required": ["artifact"],
             "properties": {"artifact": {"type": "object", "required": ["command", "input", "options"]}}},
            {"required": ["artifacts"],
             "properties": {"artifacts": {"type": "array", "items": {"type": "object", "required": ["artifact"]}}}},
        ],
    },
}


def schema_for(command: str) -> dict:
    if command not in SCHEMAS:
        raise SchemaViolation(f"unknown command '{command}'")
    return SCHEMAS[command]


def validate_document(command: str, doc) -> None:
    """
    Validate an input document against its command's schema

    Raises:
        SchemaViolation: naming the most relevant failing path
    """
    validator = jsonschema.Draft7Validator(schema_for(command))
    error = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if error is not None:
        where = "/".join(str(p) for p in error.absolute_path) or "<root>"
        raise SchemaViolation(f"{command}: {where}: {error.message}")
