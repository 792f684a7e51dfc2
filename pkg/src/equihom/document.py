"""Input documents: a group, a complex with an action, an optional target, options.

Documents are JSON with a ``schema_version`` field.  Example::

    {"schema_version": 1,
     "group": {"kind": "cyclic", "order": 2},
     "complex": {"vertices": [0, 1], "simplices": [[0, 1]]},
     "action": [{"generator": 0, "map": [1, 0]}],
     "options": {"subdivide": true}}

Groups are named (``trivial``, ``cyclic``, ``symmetric``, ``dihedral``,
``quaternion``, ``klein``), given by generating permutations or by a
multiplication table.  Each action entry names a group element either
directly (``element``) or as an index into the group's generators
(``generator``); ``map`` lists vertex images aligned with the sorted vertex
list, or is an object from vertex to image.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from .fingroup import (FiniteGroup, GroupError, build_group, cyclic_group, dihedral_group,
                       quaternion_group, symmetric_group)
from .gcomplex import (ActionError, GComplex, SComplex, barycentric_subdivision)
from .homalg import generating_set

SCHEMA_VERSION = 1

_INT_LIST = {"type": "array", "items": {"type": "integer"}}
_MAP = {"oneOf": [_INT_LIST, {"type": "object", "additionalProperties": {"type": "integer"}}]}
_ACTION = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {"generator": {"type": "integer", "minimum": 0},
                       "element": {"type": "integer", "minimum": 0},
                       "map": _MAP},
        "required": ["map"],
        "oneOf": [{"required": ["generator"]}, {"required": ["element"]}],
        "additionalProperties": False,
    },
}
_COMPLEX = {
    "type": "object",
    "properties": {"vertices": _INT_LIST,
                   "simplices": {"type": "array", "items": _INT_LIST}},
    "additionalProperties": False,
}
SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "group": {
            "type": "object",
            "properties": {
                "kind": {"enum": ["trivial", "cyclic", "symmetric", "dihedral",
                                  "quaternion", "klein"]},
                "order": {"type": "integer", "minimum": 1},
                "degree": {"type": "integer", "minimum": 1},
                "permutations": {"type": "array", "items": _INT_LIST},
                "table": {"type": "array", "items": _INT_LIST},
                "generators": _INT_LIST,
            },
            "additionalProperties": False,
        },
        "complex": _COMPLEX,
        "action": _ACTION,
        "target": {
            "type": "object",
            "properties": {"complex": _COMPLEX, "action": _ACTION},
            "required": ["complex"],
            "additionalProperties": False,
        },
        "options": {
            "type": "object",
            "properties": {
                "subdivide": {"type": "boolean"},
                "levels": {"type": "array", "items": {"type": "integer", "minimum": 0},
                           "minItems": 2, "maxItems": 2},
                "max_degree": {"type": "integer", "minimum": 0},
                "budget": {"type": "integer", "minimum": 1},
                "stabilize": {"type": "boolean"},
                "algebra": {"enum": ["functions", "base-field", "compact-operators",
                                     "stabilized-functions"]},
            },
            "additionalProperties": False,
        },
    },
    "required": ["schema_version", "group", "complex"],
    "additionalProperties": False,
}


class InputError(ValueError):
    """Malformed or inconsistent input; carries a location when known."""


def named_group(spec: dict) -> tuple[FiniteGroup, list[int]]:
    """The group of a ``group`` block and its generator elements."""
    kind = spec.get("kind")
    if kind == "trivial":
        return cyclic_group(1), []
    if kind == "cyclic":
        n = spec.get("order")
        if n is None:
            raise InputError("group: cyclic needs 'order'")
        return cyclic_group(n), ([1] if n > 1 else [])
    if kind == "quaternion":
        return quaternion_group(), [1, 2]
    if kind in ("symmetric", "dihedral"):
        n = spec.get("degree")
        if n is None:
            raise InputError(f"group: {kind} needs 'degree'")
        if kind == "symmetric":
            G = symmetric_group(n)
            perms = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
            if n >= 3:
                perms.append(tuple(list(range(1, n)) + [0]))
        else:
            G = dihedral_group(n)
            perms = [tuple((i + 1) % n for i in range(n)), tuple((-i) % n for i in range(n))]
        return G, [G.perms.index(p) for p in perms] if G.perms else []
    if kind == "klein":
        perms = [(1, 0, 3, 2), (2, 3, 0, 1)]
        G = build_group({"generators": perms, "degree": 4, "name": "V4"})
        return G, [G.perms.index(p) for p in perms]
    if "permutations" in spec:
        perms = [tuple(p) for p in spec["permutations"]]
        G = build_group({"generators": perms})
        return G, [G.perms.index(p) for p in perms]
    if "table" in spec:
        G = build_group({"table": spec["table"]})
        gens = spec.get("generators")
        if gens is None:
            gens = generating_set(G.whole)
        for g in gens:
            if not 0 <= g < G.order:
                raise InputError(f"group.generators: {g} is not an element")
        return G, list(gens)
    raise InputError("group: give 'kind', 'permutations' or 'table'")


def _parse_complex(block: dict, where: str) -> SComplex:
    simplices = block.get("simplices", [])
    vertices = block.get("vertices", [])
    try:
        K = SComplex(simplices, vertices)
    except ValueError as e:
        raise InputError(f"{where}.simplices: {e}") from None
    if not K.vertices:
        raise InputError(f"{where}: complex is empty")
    return K


def _parse_action(entries: list, G: FiniteGroup, gens: list[int], K: SComplex,
                  where: str) -> dict[int, dict[int, int]]:
    verts = K.vertices
    out: dict[int, dict[int, int]] = {}
    for i, e in enumerate(entries):
        if "generator" in e:
            if e["generator"] >= len(gens):
                raise InputError(f"{where}[{i}].generator: group has {len(gens)} generators")
            g = gens[e["generator"]]
        else:
            g = e["element"]
            if g >= G.order:
                raise InputError(f"{where}[{i}].element: group has order {G.order}")
        m = e["map"]
        if isinstance(m, list):
            if len(m) != len(verts):
                raise InputError(f"{where}[{i}].map: expected {len(verts)} images")
            m = dict(zip(verts, m))
        else:
            m = {int(k): v for k, v in m.items()}
        if sorted(m) != verts or sorted(m.values()) != verts:
            raise InputError(f"{where}[{i}].map: not a permutation of the vertices")
        out[g] = m
    if out:
        # generators left out act trivially
        for g in gens:
            out.setdefault(g, {v: v for v in verts})
    return out


def _build_gcomplex(K: SComplex, G: FiniteGroup, action: dict, where: str) -> GComplex:
    try:
        if not action:
            return GComplex.trivial_action(K, G)
        X = GComplex.from_generators(K, G, action)
    except ActionError as e:
        raise InputError(f"{where}: {e}") from None
    for s in K.all_simplices():
        for g in action:
            if X.act(g, s) not in K:
                raise InputError(f"{where}: element {g} does not map simplex {list(s)} "
                                 f"to a simplex")
    return X


@dataclass
class InputDocument:
    raw: dict[str, Any]
    group: FiniteGroup
    generators: list[int]
    X: GComplex
    Y: GComplex | None
    options: dict[str, Any] = field(default_factory=dict)
    subdivided: bool = False

    def canonical(self) -> dict[str, Any]:
        """Resolved form: element indices and list maps, sorted structure."""
        def cx(K: SComplex) -> dict:
            top = [s for s in K.all_simplices()
                   if not any(set(s) < set(t) for t in K.all_simplices())]
            return {"vertices": K.vertices, "simplices": [list(s) for s in top]}

        def act(Z: GComplex) -> list:
            return [{"element": g, "map": [Z.vertex_action[g][v] for v in Z.complex.vertices]}
                    for g in self.generators]

        doc: dict[str, Any] = {"schema_version": SCHEMA_VERSION,
                               "group": {"table": [list(r) for r in self.group.table],
                                         "generators": list(self.generators)},
                               "complex": cx(self.X.complex), "action": act(self.X)}
        if self.Y is not None:
            doc["target"] = {"complex": cx(self.Y.complex), "action": act(self.Y)}
        opts = {k: v for k, v in self.options.items() if k != "subdivide"}
        if opts:
            doc["options"] = opts
        return doc

    def digest(self) -> str:
        text = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _subdivide_if_needed(X: GComplex, allow: bool, where: str) -> tuple[GComplex, bool]:
    if X.is_type_preserving:
        return X, False
    if not allow:
        off = X.report["offending"]
        raise InputError(f"{where}: action is not type-preserving at simplex "
                         f"{list(off) if off else off}; pass --subdivide")
    return barycentric_subdivision(X), True


def parse_document(doc: Any, subdivide: bool | None = None) -> InputDocument:
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"schema_version: expected {SCHEMA_VERSION}, "
                         f"got {doc.get('schema_version')!r}")
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError:
        e = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(SCHEMA).iter_errors(doc))
        path = ".".join(str(p) for p in e.absolute_path) or "<root>"
        raise InputError(f"schema violation at {path}: {e.message}") from None
    try:
        G, gens = named_group(doc["group"])
    except GroupError as e:
        raise InputError(f"group: {e}") from None
    options = dict(doc.get("options", {}))
    if subdivide is not None:
        options["subdivide"] = subdivide
    allow = bool(options.get("subdivide", False))
    K = _parse_complex(doc["complex"], "complex")
    X = _build_gcomplex(K, G, _parse_action(doc.get("action", []), G, gens, K, "action"),
                        "action")
    X, sub_x = _subdivide_if_needed(X, allow, "complex")
    Y = None
    sub_y = False
    if "target" in doc:
        t = doc["target"]
        KY = _parse_complex(t["complex"], "target.complex")
        Y = _build_gcomplex(KY, G, _parse_action(t.get("action", []), G, gens, KY,
                                                 "target.action"), "target.action")
        Y, sub_y = _subdivide_if_needed(Y, allow, "target.complex")
    return InputDocument(doc, G, gens, X, Y, options, sub_x or sub_y)


def parse_input(text: str, subdivide: bool | None = None) -> InputDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return parse_document(doc, subdivide)
