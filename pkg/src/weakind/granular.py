"""Coarsening and refinement of distributions via nested attributes.

``nest`` folds a set of attributes into a single nested attribute whose
cells are normalized sub-distributions; ``unnest`` expands a nested
attribute back out, multiplying outer and inner probabilities exactly.
Nested cells are stored in canonical form (rows sorted, fractions reduced),
and grouping during a nest compares entire remaining-attribute values, so
previously nested cells participate in the grouping key.

All equality here is exact; there is no tolerance parameter anywhere in
this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from . import independence
from .errors import ParseError, SchemaError
from .tables import (
    JOINT,
    Table,
    Variable,
    VariableSchema,
    _to_fraction,
    frac_str,
    uniform_joint_extension,
)

ZERO = Fraction(0)
ONE = Fraction(1)

CellValue = Union[str, "NestedCell"]
RowKey = tuple  # tuple[CellValue, ...]


@dataclass(frozen=True)
class Attribute:
    """A plain variable (with a domain) or a nested attribute (with inner attributes)."""

    name: str
    domain: tuple[str, ...] | None = None
    nested: tuple["Attribute", ...] | None = None

    def __post_init__(self) -> None:
        if (self.domain is None) == (self.nested is None):
            raise SchemaError(
                f"attribute {self.name!r} must have exactly one of domain/nested"
            )

    @property
    def is_nested(self) -> bool:
        return self.nested is not None


@dataclass(frozen=True)
class NestedCell:
    """A normalized sub-distribution stored inside one outer row."""

    attributes: tuple[Attribute, ...]
    rows: tuple[tuple[RowKey, Fraction], ...]

    @classmethod
    def make(
        cls, attributes: tuple[Attribute, ...], rows: Mapping[RowKey, Fraction]
    ) -> "NestedCell":
        ordered = tuple(
            (key, rows[key]) for key in sorted(rows, key=_row_sort_key)
        )
        cell = cls(attributes, ordered)
        total = sum((v for _, v in ordered), ZERO)
        if total != ONE:
            raise SchemaError(f"nested cell values sum to {total}, not 1")
        return cell


def _check_cell(cell: CellValue, attr: Attribute) -> None:
    if attr.is_nested:
        if not isinstance(cell, NestedCell):
            raise SchemaError(f"cell for attribute {attr.name!r} must be nested")
        for inner_key, _ in cell.rows:
            if len(inner_key) != len(attr.nested or ()):
                raise SchemaError(f"nested row arity mismatch in {attr.name!r}")
            for inner_cell, inner_attr in zip(inner_key, attr.nested or ()):
                _check_cell(inner_cell, inner_attr)
    else:
        if not isinstance(cell, str):
            raise SchemaError(f"cell for attribute {attr.name!r} must be a value")
        if cell not in (attr.domain or ()):
            raise SchemaError(
                f"value {cell!r} outside domain of attribute {attr.name!r}"
            )


def _row_sort_key(key: RowKey) -> tuple:
    return tuple(_value_sort_key(v) for v in key)


def _value_sort_key(value: CellValue) -> tuple:
    if isinstance(value, str):
        return ("s", value)
    return (
        "c",
        tuple((_row_sort_key(k), (v.numerator, v.denominator)) for k, v in value.rows),
    )


@dataclass(frozen=True)
class NestedTable:
    """Rows keyed by mixed plain/nested cell values, with exact probabilities."""

    attributes: tuple[Attribute, ...]
    rows: Mapping[RowKey, Fraction]

    def __post_init__(self) -> None:
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate attribute names")
        cleaned: dict[RowKey, Fraction] = {}
        for key, value in self.rows.items():
            key = tuple(key)
            if len(key) != len(self.attributes):
                raise SchemaError("row arity does not match attributes")
            for cell, attr in zip(key, self.attributes):
                _check_cell(cell, attr)
            value = _to_fraction(value)
            if key in cleaned:
                raise SchemaError(f"duplicate row: {key}")
            if value > 0:
                cleaned[key] = value
        object.__setattr__(self, "rows", cleaned)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def total_mass(self) -> Fraction:
        return sum(self.rows.values(), ZERO)

    def is_flat(self) -> bool:
        return all(not a.is_nested for a in self.attributes)

    def to_table(self) -> Table:
        if not self.is_flat():
            raise SchemaError("table still has nested attributes")
        schema = VariableSchema(
            tuple(Variable(a.name, a.domain or ()) for a in self.attributes)
        )
        return Table(schema, dict(self.rows), JOINT)

    def to_json_dict(self) -> dict:
        return {
            "attributes": [_attribute_to_json(a) for a in self.attributes],
            "rows": [
                {
                    "cells": [_cell_to_json(v) for v in key],
                    "p": frac_str(self.rows[key]),
                }
                for key in sorted(self.rows, key=_row_sort_key)
            ],
        }


def _attribute_to_json(attr: Attribute) -> dict:
    if attr.is_nested:
        return {
            "name": attr.name,
            "nested": [_attribute_to_json(a) for a in attr.nested or ()],
        }
    return {"name": attr.name, "domain": list(attr.domain or ())}


def _cell_to_json(value: CellValue):
    if isinstance(value, str):
        return value
    return [
        {"config": [_cell_to_json(v) for v in key], "P(Y)": frac_str(p)}
        for key, p in value.rows
    ]


def as_nested(table: Table | NestedTable) -> NestedTable:
    if isinstance(table, NestedTable):
        return table
    if table.kind != JOINT:
        raise SchemaError("only joint tables can be coarsened directly")
    attributes = tuple(
        Attribute(v.name, domain=v.domain) for v in table.schema.variables
    )
    return NestedTable(attributes, dict(table.rows))


def nest(
    table: Table | NestedTable, b_name: str, names: Iterable[str]
) -> NestedTable:
    """Coarsen the given attributes into a fresh nested attribute.

    One output row is produced per distinct value of the remaining
    attributes; its outer probability is the exact group sum and its cell
    holds the group's projections with probabilities normalized by that sum.
    The new attribute takes the position of the first coarsened attribute.
    """
    nt = as_nested(table)
    wanted = set(names)
    if not wanted:
        raise SchemaError("cannot nest an empty attribute set")
    unknown = wanted - set(nt.names)
    if unknown:
        raise SchemaError(f"unknown attributes: {sorted(unknown)}")
    if b_name in nt.names:
        raise SchemaError(f"attribute name {b_name!r} already in use")

    inner_positions = [i for i, a in enumerate(nt.attributes) if a.name in wanted]
    outer_positions = [i for i, a in enumerate(nt.attributes) if a.name not in wanted]
    inner_attrs = tuple(nt.attributes[i] for i in inner_positions)
    insert_at = sum(1 for i in outer_positions if i < inner_positions[0])

    groups: dict[RowKey, dict[RowKey, Fraction]] = {}
    for key, value in nt.rows.items():
        outer = tuple(key[i] for i in outer_positions)
        inner = tuple(key[i] for i in inner_positions)
        bucket = groups.setdefault(outer, {})
        bucket[inner] = bucket.get(inner, ZERO) + value

    new_attrs = list(nt.attributes[i] for i in outer_positions)
    new_attrs.insert(insert_at, Attribute(b_name, nested=inner_attrs))
    rows: dict[RowKey, Fraction] = {}
    for outer, bucket in groups.items():
        total = sum(bucket.values(), ZERO)
        cell = NestedCell.make(
            inner_attrs, {inner: v / total for inner, v in bucket.items()}
        )
        new_key = outer[:insert_at] + (cell,) + outer[insert_at:]
        rows[new_key] = total
    return NestedTable(tuple(new_attrs), rows)


def unnest(table: NestedTable, b_name: str) -> Table | NestedTable:
    """Reveal a nested attribute, multiplying outer and inner probabilities.

    Rows that coincide after expansion are summed. Returns a plain joint
    table when no nested attributes remain.
    """
    try:
        position = table.names.index(b_name)
    except ValueError:
        raise SchemaError(f"unknown attribute {b_name!r}") from None
    attr = table.attributes[position]
    if not attr.is_nested:
        raise SchemaError(f"attribute {b_name!r} is not nested")
    inner_attrs = attr.nested or ()
    remaining = [a.name for i, a in enumerate(table.attributes) if i != position]
    for inner in inner_attrs:
        if inner.name in remaining:
            raise SchemaError(
                f"revealed attribute {inner.name!r} collides with an existing one"
            )
    new_attrs = (
        table.attributes[:position] + inner_attrs + table.attributes[position + 1 :]
    )
    rows: dict[RowKey, Fraction] = {}
    for key, outer_p in table.rows.items():
        cell = key[position]
        assert isinstance(cell, NestedCell)
        for inner_key, inner_p in cell.rows:
            new_key = key[:position] + inner_key + key[position + 1 :]
            rows[new_key] = rows.get(new_key, ZERO) + outer_p * inner_p
    result = NestedTable(new_attrs, rows)
    if result.is_flat():
        return result.to_table()
    return result


def canonical_equal(a: Table | NestedTable, b: Table | NestedTable) -> bool:
    """Equality up to attribute order, after canonicalization of all cells."""
    na, nb = as_nested(a), as_nested(b)
    by_name_a = {attr.name: attr for attr in na.attributes}
    by_name_b = {attr.name: attr for attr in nb.attributes}
    if set(by_name_a) != set(by_name_b):
        return False
    if any(by_name_a[n] != by_name_b[n] for n in by_name_a):
        return False
    perm = [nb.names.index(n) for n in na.names]
    aligned = {}
    for key, value in nb.rows.items():
        aligned[tuple(key[p] for p in perm)] = value
    return dict(na.rows) == aligned


@dataclass(frozen=True)
class NestCommutationReport:
    equal: bool
    first: NestedTable  # nest Z first, then X
    second: NestedTable  # nest X first, then Z

    def to_json_dict(self) -> dict:
        return {
            "equal": self.equal,
            "first": self.first.to_json_dict(),
            "second": self.second.to_json_dict(),
        }


def nest_commutes(
    table: Table | NestedTable,
    x: Iterable[str],
    z: Iterable[str],
    b_x: str = "B1",
    b_z: str = "B2",
) -> NestCommutationReport:
    """Run both coarsening orders over disjoint attribute sets and compare."""
    xs, zs = set(x), set(z)
    if not xs or not zs:
        raise SchemaError("both attribute sets must be nonempty")
    if xs & zs:
        raise SchemaError("attribute sets overlap")
    first = nest(nest(table, b_z, zs), b_x, xs)
    second = nest(nest(table, b_x, xs), b_z, zs)
    return NestCommutationReport(canonical_equal(first, second), first, second)


@dataclass(frozen=True)
class EquivalenceReport:
    """Agreement between the weak-independence verdict and nest commutativity."""

    wi_holds: bool
    nests_commute: bool
    converted: bool
    verdict: independence.Verdict
    commutation: NestCommutationReport

    @property
    def agree(self) -> bool:
        return self.wi_holds == self.nests_commute

    def to_json_dict(self) -> dict:
        doc = {
            "wi_holds": self.wi_holds,
            "nests_commute": self.nests_commute,
            "agree": self.agree,
            "converted_to_joint": self.converted,
            "verdict": self.verdict.to_json_dict(),
        }
        if not self.agree:
            doc["finding"] = "BUG: weak independence and nest commutativity disagree"
            doc["commutation"] = self.commutation.to_json_dict()
        return doc


def wi_nest_equivalence(
    table: Table, x: Iterable[str], z: Iterable[str], y: Iterable[str]
) -> EquivalenceReport:
    """Check that weak independence coincides with nest commutativity.

    Conditional-shaped tables are first extended to a joint table with a
    uniform prior over their supported given-configurations; the report
    records the conversion.
    """
    converted = table.kind != JOINT
    joint = uniform_joint_extension(table)
    verdict = independence.check_wi(joint, x, z, y)
    commutation = nest_commutes(joint, x, z)
    return EquivalenceReport(
        verdict.holds, commutation.equal, converted, verdict, commutation
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def serialize_nested(table: NestedTable) -> str:
    return json.dumps(table.to_json_dict(), indent=2) + "\n"


def load_nested(text: str | bytes) -> NestedTable:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON document: {exc}") from exc
    if not isinstance(doc, dict) or "attributes" not in doc:
        raise ParseError("nested table document requires an 'attributes' field")
    attributes = tuple(_attribute_from_json(a) for a in doc["attributes"])
    rows: dict[RowKey, Fraction] = {}
    for entry in doc.get("rows", ()):
        try:
            cells = entry["cells"]
            prob = entry["p"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed row entry: {entry!r}") from exc
        if len(cells) != len(attributes):
            raise ParseError("row arity does not match attributes")
        key = tuple(
            _cell_from_json(cell, attr) for cell, attr in zip(cells, attributes)
        )
        rows[key] = _to_fraction(prob)
    return NestedTable(attributes, rows)


def _attribute_from_json(doc: Mapping) -> Attribute:
    try:
        name = str(doc["name"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed attribute: {exc}") from exc
    if "nested" in doc:
        return Attribute(
            name, nested=tuple(_attribute_from_json(a) for a in doc["nested"])
        )
    if "domain" in doc:
        return Attribute(name, domain=tuple(str(d) for d in doc["domain"]))
    raise ParseError(f"attribute {name!r} needs either a domain or nested attributes")


def _cell_from_json(value, attr: Attribute) -> CellValue:
    if not attr.is_nested:
        if not isinstance(value, str):
            raise ParseError(f"cell for plain attribute {attr.name!r} must be a string")
        return value
    if not isinstance(value, list):
        raise ParseError(f"cell for nested attribute {attr.name!r} must be a list")
    inner_attrs = attr.nested or ()
    rows: dict[RowKey, Fraction] = {}
    for entry in value:
        try:
            config = entry["config"]
            prob = entry["P(Y)"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed nested cell entry: {entry!r}") from exc
        if len(config) != len(inner_attrs):
            raise ParseError("nested config arity does not match inner attributes")
        key = tuple(_cell_from_json(v, a) for v, a in zip(config, inner_attrs))
        rows[key] = _to_fraction(prob)
    return NestedCell.make(inner_attrs, rows)
