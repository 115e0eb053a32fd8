"""JSON dialect for every structure, with schema validation.

Every document carries a ``"kind"``; :func:`load` validates the shape with
jsonschema and then builds the object through the matching validator.
"""

import json

import jsonschema

from .balg import BooleanAlgebra, MAX_ATOMS, validate_partition
from .bset import eq_family_from_blocks, validate_bset
from .clone.dual import dual_op_from_map
from .errors import CapacityError, RepresentationError
from .mon import MAX_MONOID, validate_maction, validate_monoid

_NAT = {"type": "integer", "minimum": 0}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _NAT}}
_CUBE = {"type": "array", "items": _MATRIX}
_BOOLEAN = {"type": "object", "required": ["atoms"],
            "properties": {"atoms": {"type": "integer", "minimum": 1}}}
_MONOID = {"type": "object", "required": ["size", "identity", "table"],
           "properties": {"size": {"type": "integer", "minimum": 1}, "identity": _NAT, "table": _MATRIX}}
_PAIR_BODY = {"boolean": _BOOLEAN, "monoid": _MONOID, "bset_on_m": _CUBE, "m_on_b": _MATRIX}
_PAIR = {"type": "object", "required": ["boolean", "monoid", "bset_on_m", "m_on_b"], "properties": _PAIR_BODY}


def _kind(name, required, props):
    return {"type": "object", "required": ["kind"] + required,
            "properties": dict(props, kind={"const": name})}


SCHEMAS = {
    "boolean": _kind("boolean", ["atoms"], _BOOLEAN["properties"]),
    "partition": _kind("partition", ["boolean", "parts"],
                       {"boolean": _BOOLEAN, "base": _NAT, "parts": {"type": "array", "items": _NAT}}),
    "monoid": _kind("monoid", ["size", "identity", "table"], _MONOID["properties"]),
    "maction": _kind("maction", ["monoid", "carrier", "table"],
                     {"monoid": _MONOID, "carrier": {"type": "integer", "minimum": 1}, "table": _MATRIX}),
    "bset": _kind("bset", ["boolean", "carrier", "action"],
                  {"boolean": _BOOLEAN, "carrier": {"type": "integer", "minimum": 1}, "action": _CUBE}),
    "eq-family": _kind("eq-family", ["boolean", "carrier", "rel"],
                       {"boolean": _BOOLEAN, "carrier": {"type": "integer", "minimum": 1},
                        "rel": {"type": "object", "additionalProperties": _MATRIX}}),
    "matched-pair": _kind("matched-pair", list(_PAIR_BODY), _PAIR_BODY),
    "bmset": _kind("bmset", ["pair", "carrier", "bset", "maction"],
                   {"pair": _PAIR, "carrier": {"type": "integer", "minimum": 1}, "bset": _CUBE,
                    "maction": _MATRIX}),
    "dual-op": _kind("dual-op", ["base", "arity", "map"],
                     {"base": {"type": "integer", "minimum": 1}, "arity": {"type": "integer", "minimum": 1},
                      "map": {"type": "array", "items": {"type": "array", "items": _NAT,
                                                         "minItems": 2, "maxItems": 2}}}),
}

_ENVELOPE = {"type": "object", "required": ["kind"],
             "properties": {"kind": {"enum": sorted(SCHEMAS)}}}


class SchemaError(RepresentationError):
    """Input does not match its schema; ``pointer`` is a JSON pointer."""

    def __init__(self, pointer, message):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")


def _pointer(path):
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def check_schema(doc):
    try:
        jsonschema.validate(doc, _ENVELOPE)
        jsonschema.validate(doc, SCHEMAS[doc["kind"]])
    except jsonschema.ValidationError as e:
        raise SchemaError(_pointer(e.absolute_path), e.message) from None
    return doc["kind"]


class Limits:
    def __init__(self, max_atoms=MAX_ATOMS, max_monoid=MAX_MONOID):
        self.max_atoms = max_atoms
        self.max_monoid = max_monoid

    def algebra(self, spec):
        k = spec["atoms"]
        if k > self.max_atoms:
            raise CapacityError("atom count", k, self.max_atoms)
        return BooleanAlgebra(k)

    def monoid(self, spec):
        if spec["size"] > self.max_monoid:
            raise CapacityError("monoid size", spec["size"], self.max_monoid)
        if len(spec["table"]) != spec["size"]:
            raise SchemaError("/table", f"expected {spec['size']} rows")
        return validate_monoid(spec["table"], spec["identity"])


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def build(doc, limits=None):
    """Object for a schema-checked document, validated."""
    from .matched.bmset import validate_bmset
    from .matched.pair import validate_matched_pair
    L = limits or Limits()
    kind = check_schema(doc)
    if kind == "boolean":
        return L.algebra(doc)
    if kind == "partition":
        B = L.algebra(doc["boolean"])
        return validate_partition(B, doc.get("base", B.top), doc["parts"])
    if kind == "monoid":
        return L.monoid(doc)
    if kind == "maction":
        return validate_maction(L.monoid(doc["monoid"]), doc["table"], doc["carrier"])
    if kind == "bset":
        return validate_bset(L.algebra(doc["boolean"]), doc["action"])
    if kind == "eq-family":
        B = L.algebra(doc["boolean"])
        rel = doc["rel"]
        try:
            blocks = [rel[str(b)] for b in B.elements()]
        except KeyError as e:
            raise SchemaError("/rel", f"missing relation for element {e.args[0]}") from None
        return eq_family_from_blocks(B, doc["carrier"], blocks)
    if kind == "matched-pair":
        return validate_matched_pair(L.algebra(doc["boolean"]), L.monoid(doc["monoid"]),
                                     doc["bset_on_m"], doc["m_on_b"])
    if kind == "bmset":
        P = build(dict(doc["pair"], kind="matched-pair"), L)
        return validate_bmset(P, doc["bset"], doc["maction"])
    if kind == "dual-op":
        return dual_op_from_map(doc["base"], doc["arity"], doc["map"])
    raise SchemaError("/kind", f"unknown kind {kind}")


def load(path, limits=None):
    return build(read_json(path), limits)


def dump(obj):
    """JSON document (with ``kind``) for a structure."""
    from .bset import BSet, EqFamily
    from .matched.bmset import BMSet
    from .matched.pair import MatchedPair
    from .mon import MAction, Monoid
    if isinstance(obj, BooleanAlgebra):
        return {"kind": "boolean", "atoms": obj.atoms}
    if isinstance(obj, Monoid):
        return dict(obj.to_json(), kind="monoid")
    if isinstance(obj, MAction):
        return dict(obj.to_json(), kind="maction")
    if isinstance(obj, BSet):
        return dict(obj.to_json(), kind="bset")
    if isinstance(obj, EqFamily):
        d = obj.to_json()
        return {"kind": "eq-family", "boolean": d["boolean"], "carrier": d["carrier"], "rel": d["rel"]}
    if isinstance(obj, MatchedPair):
        return obj.to_json()
    if isinstance(obj, BMSet):
        d = obj.to_json()
        d["pair"] = {k: v for k, v in d["pair"].items() if k != "kind"}
        return d
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise RepresentationError(f"no JSON form for {type(obj).__name__}")


def dumps(doc):
    """Canonical text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
