"""Serializers for the class model and the circularity graph.

Three projections: canonical JSON (machine-readable model interchange),
class-diagram text in PlantUML notation, and a DOT digraph of the
circularity relation.  All emitters are deterministic: the same model
yields byte-identical output, which the pipeline relies on for idempotent
file generation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .lexicon import (
    FormatKind,
    Lexicon,
    OccurrenceBounds,
    SymbolType,
)
from .uml import (
    AssociationDef,
    AssociationEnd,
    ClassDef,
    ClassModel,
    OperationDef,
    PropertyDef,
    PropertyKind,
)


@dataclass(frozen=True)
class EmitOptions:
    """Layout switches; these never change model content.

    ``include_accessors=False`` drops get/set-prefixed operations from the
    rendered diagram (the prefixes are the accessor naming contract).
    """

    include_accessors: bool = True
    sort_members: bool = False


def _bounds_json(bounds: OccurrenceBounds) -> dict:
    return {"lower": bounds.lower, "upper": "*" if bounds.upper is None else bounds.upper}


def emit_model_json(model: ClassModel) -> str:
    """Canonical JSON: sorted keys, arrays in model order, 2-space indent, LF."""
    payload = {
        "classes": [
            {
                "name": cls.name,
                "origin": cls.origin,
                "properties": [_property_json(p) for p in cls.properties],
                "operations": [
                    {
                        "name": op.name,
                        "parameters": [
                            {"name": n, "ref": r} for n, r in op.parameters
                        ],
                    }
                    for op in cls.operations
                ],
            }
            for cls in model.classes
        ],
        "associations": [
            {
                "name": a.name,
                "ends": [
                    {
                        "class": end.class_name,
                        "role": end.role,
                        **_bounds_json(end.bounds),
                    }
                    for end in (a.end_a, a.end_b)
                ],
            }
            for a in model.associations
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _property_json(prop: PropertyDef) -> dict:
    out = {
        "name": prop.name,
        "kind": prop.kind.value,
        "format": prop.format.value,
        "size": prop.size,
        "definition": prop.definition,
    }
    if prop.kind is PropertyKind.ASSOCIATION_END:
        out["end_type"] = prop.end_type
        out.update(_bounds_json(prop.bounds))
    return out


def read_model_json(text: str) -> ClassModel:
    """Reconstruct a model from :func:`emit_model_json` output."""
    payload = json.loads(text)

    def bounds(entry: dict) -> OccurrenceBounds:
        upper = entry["upper"]
        return OccurrenceBounds(entry["lower"], None if upper == "*" else upper)

    classes = []
    for cls in payload["classes"]:
        properties = []
        for p in cls["properties"]:
            kind = PropertyKind(p["kind"])
            properties.append(
                PropertyDef(
                    name=p["name"],
                    format=FormatKind(p["format"]),
                    size=p["size"],
                    definition=p["definition"],
                    kind=kind,
                    end_type=p.get("end_type"),
                    bounds=bounds(p) if kind is PropertyKind.ASSOCIATION_END else None,
                )
            )
        operations = [
            OperationDef(
                name=op["name"],
                parameters=tuple((p["name"], p["ref"]) for p in op["parameters"]),
            )
            for op in cls["operations"]
        ]
        classes.append(
            ClassDef(
                name=cls["name"],
                origin=cls["origin"],
                properties=tuple(properties),
                operations=tuple(operations),
            )
        )
    associations = [
        AssociationDef(
            name=a["name"],
            end_a=AssociationEnd(a["ends"][0]["class"], a["ends"][0]["role"], bounds(a["ends"][0])),
            end_b=AssociationEnd(a["ends"][1]["class"], a["ends"][1]["role"], bounds(a["ends"][1])),
        )
        for a in payload["associations"]
    ]
    return ClassModel(classes=tuple(classes), associations=tuple(associations))


def emit_plantuml(model: ClassModel, options: EmitOptions | None = None) -> str:
    """Class-diagram text: quoted class names, ``code : Format(size)`` fields,
    operation names, association lines with ``lo..hi`` multiplicities."""
    options = options or EmitOptions()
    lines = ["@startuml"]
    for cls in model.classes:
        lines.append(f'class "{cls.name}" {{')
        fields = [
            f"  {p.name} : {p.format.value}({p.size})"
            for p in cls.properties
            if p.kind is PropertyKind.DATA
        ]
        ops = [
            f"  {op.name}"
            for op in cls.operations
            if options.include_accessors
            or not (op.name.startswith("get") or op.name.startswith("set"))
        ]
        if options.sort_members:
            fields.sort()
            ops.sort()
        lines.extend(fields)
        lines.extend(ops)
        lines.append("}")
    for assoc in model.associations:
        lines.append(
            f'"{assoc.end_a.class_name}" "{assoc.end_a.bounds.render()}" -- '
            f'"{assoc.end_b.bounds.render()}" "{assoc.end_b.class_name}" : {assoc.name}'
        )
    lines.append("@enduml")
    return "\n".join(lines) + "\n"


_NODE_SHAPES = {
    SymbolType.SUBJECT: "box",
    SymbolType.OBJECT: "ellipse",
    SymbolType.VERB: "diamond",
    SymbolType.STATE: "hexagon",
}


def emit_circularity_dot(lexicon: Lexicon) -> str:
    """DOT digraph of the circularity relation: one node per symbol (shape
    keyed by type), one labeled edge per link, in lexicon/link order."""
    lines = ["digraph circularity {", "  rankdir=LR;"]
    for sym in lexicon.symbols:
        lines.append(f'  "{sym.name}" [shape={_NODE_SHAPES[sym.symbol_type]}];')
    for link in lexicon.links:
        lines.append(f'  "{link.source}" -> "{link.target}" [label="{link.name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
