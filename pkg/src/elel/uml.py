"""Extraction of a UML class-diagram abstract model from a derived lexicon.

Five rules: subject/object symbols become classes; their attributes become
typed properties (name = attribute code); their methods become operations;
circularity links between two class-producing symbols become associations;
the links' occurrence bounds become the association-end cardinalities.

Per the cardinality semantics, each created element of a link turns into
an association-end property owned by the OPPOSITE end's class: the element
names the role, its own class is the property type, its bounds are the
multiplicity.  Role names have spaces replaced by underscores; class names
keep their spaces verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .lexicon import FormatKind, Lexicon, OccurrenceBounds, SymbolType
from .validation import LintFinding, has_errors, lint


class PropertyKind(Enum):
    DATA = "data"
    ASSOCIATION_END = "association_end"


class DanglingLinkError(RuntimeError):
    """A link endpoint passed the type check but has no class in the model."""


class LintGateError(RuntimeError):
    """Transformation refused because the lexicon has lint errors."""

    def __init__(self, findings: list[LintFinding]) -> None:
        errors = [f for f in findings if f.severity.value == "error"]
        super().__init__(
            "lexicon has lint errors: "
            + "; ".join(f"{f.rule_id} {f.symbol}" for f in errors)
        )
        self.findings = findings


@dataclass(frozen=True)
class PropertyDef:
    name: str
    format: FormatKind
    size: int
    definition: str
    kind: PropertyKind
    end_type: str | None = None
    bounds: OccurrenceBounds | None = None

    def __post_init__(self) -> None:
        is_end = self.kind is PropertyKind.ASSOCIATION_END
        if is_end != (self.end_type is not None) or is_end != (self.bounds is not None):
            raise ValueError("end_type and bounds are present exactly for association ends")
        if is_end and " " in self.name:
            raise ValueError(f"association-end name may not contain spaces: {self.name!r}")


@dataclass(frozen=True)
class OperationDef:
    name: str
    parameters: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if not self.name.endswith("()"):
            raise ValueError(f"operation name must end with (): {self.name!r}")


@dataclass(frozen=True)
class ClassDef:
    name: str
    origin: str
    properties: tuple[PropertyDef, ...] = ()
    operations: tuple[OperationDef, ...] = ()

    def __post_init__(self) -> None:
        names = [p.name for p in self.properties]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate property name in class {self.name!r}")


@dataclass(frozen=True)
class AssociationEnd:
    class_name: str
    role: str
    bounds: OccurrenceBounds


@dataclass(frozen=True)
class AssociationDef:
    name: str
    end_a: AssociationEnd
    end_b: AssociationEnd


@dataclass(frozen=True)
class ClassModel:
    classes: tuple[ClassDef, ...] = ()
    associations: tuple[AssociationDef, ...] = ()

    def __post_init__(self) -> None:
        names = [c.name for c in self.classes]
        if len(names) != len(set(names)):
            raise ValueError("duplicate class name in model")
        for assoc in self.associations:
            for end in (assoc.end_a, assoc.end_b):
                if end.class_name not in names:
                    raise ValueError(
                        f"association {assoc.name!r} end {end.class_name!r} "
                        "is not a class"
                    )

    def get(self, name: str) -> ClassDef | None:
        for cls in self.classes:
            if cls.name == name:
                return cls
        return None


def _mangle(name: str) -> str:
    return name.replace(" ", "_")


def rule1_classes(lexicon: Lexicon) -> list[ClassDef]:
    """One empty class per subject or object symbol, in lexicon order."""
    return [
        ClassDef(name=sym.name, origin=sym.name)
        for sym in lexicon.symbols
        if sym.symbol_type in (SymbolType.SUBJECT, SymbolType.OBJECT)
    ]


def rule2_rule3_populate(model: ClassModel, lexicon: Lexicon) -> ClassModel:
    """Copy each origin symbol's attributes and methods into its class.

    Property name/format/size come straight from the attribute's code,
    format and size; operations keep method order, with duplicate names
    merged (first occurrence kept).
    """
    classes = []
    for cls in model.classes:
        sym = lexicon.get(cls.origin)
        if sym is None:
            classes.append(cls)
            continue
        attr_formats = {a.code: a.format.value for a in sym.attributes}
        properties = list(cls.properties) + [
            PropertyDef(
                name=a.code,
                format=a.format,
                size=a.size,
                definition=a.definition,
                kind=PropertyKind.DATA,
            )
            for a in sym.attributes
        ]
        operations = list(cls.operations)
        seen = {op.name for op in operations}
        for method in sym.methods:
            name = method.rendered_name()
            if name in seen:
                continue
            seen.add(name)
            params = tuple(
                (
                    p.target,
                    attr_formats.get(p.target, p.target)
                    if p.role.value == "attribute"
                    else p.target,
                )
                for p in method.parameters
            )
            operations.append(OperationDef(name=name, parameters=params))
        classes.append(
            replace(cls, properties=tuple(properties), operations=tuple(operations))
        )
    return replace(model, classes=tuple(classes))


def rule4_rule5_associations(model: ClassModel, lexicon: Lexicon) -> ClassModel:
    """Turn circularity links between class-producing symbols into
    associations, with created elements as opposite-owned end properties.

    Links touching verb or state symbols produce nothing: those symbols
    have no class to attach an end to.
    """
    class_names = {c.name for c in model.classes}
    extra_props: dict[str, list[PropertyDef]] = {name: [] for name in class_names}
    associations = list(model.associations)

    for link in lexicon.links:
        source = lexicon.get(link.source)
        target = lexicon.get(link.target)
        if source is None or target is None:
            continue
        if source.symbol_type not in (SymbolType.SUBJECT, SymbolType.OBJECT):
            continue
        if target.symbol_type not in (SymbolType.SUBJECT, SymbolType.OBJECT):
            continue
        if source.name not in class_names or target.name not in class_names:
            raise DanglingLinkError(
                f"link {link.name!r} endpoint has no class despite its type"
            )
        src_el, tgt_el = link.elements
        associations.append(
            AssociationDef(
                name=_mangle(link.name),
                end_a=AssociationEnd(source.name, _mangle(src_el.name), src_el.occurrence),
                end_b=AssociationEnd(target.name, _mangle(tgt_el.name), tgt_el.occurrence),
            )
        )
        # Each element becomes a property of the OPPOSITE end's class.
        for element, own_class, opposite_class in (
            (src_el, source.name, target.name),
            (tgt_el, target.name, source.name),
        ):
            owner = model.get(opposite_class)
            taken = {p.name for p in owner.properties} | {
                p.name for p in extra_props[opposite_class]
            }
            role = _mangle(element.name)
            while role in taken:
                role += "_link"
            extra_props[opposite_class].append(
                PropertyDef(
                    name=role,
                    format=FormatKind.COMPLEX,
                    size=1,
                    definition=f"{_mangle(link.name)} association end",
                    kind=PropertyKind.ASSOCIATION_END,
                    end_type=own_class,
                    bounds=element.occurrence,
                )
            )

    classes = tuple(
        replace(cls, properties=(*cls.properties, *extra_props[cls.name]))
        for cls in model.classes
    )
    return ClassModel(classes=classes, associations=tuple(associations))


def transform(lexicon: Lexicon) -> ClassModel:
    """Full extraction: classes, members, associations.

    Refuses lexicons whose lint report contains errors; run the linter and
    fix those first.
    """
    _, findings = lint(lexicon)
    if has_errors(findings):
        raise LintGateError(findings)
    model = ClassModel(classes=tuple(rule1_classes(lexicon)))
    model = rule2_rule3_populate(model, lexicon)
    return rule4_rule5_associations(model, lexicon)
