"""Tautological relations on moduli of quasi-polarized K3 surfaces.

The relations are stored as data (``data/relations_v1.json``); this module
loads them and does exact linear algebra over their span.  Nothing here
derives or checks a relation geometrically.

Noether-Lefschetz divisors are named by their Picard class: ``P``, ``P1``,
``P2``, ``P3`` are the loci with a class ``beta`` such that the lattice
spanned by ``H, beta`` is ``[[2l, d], [d, 0]]`` with ``d = 1, 1, 2, 3``
respectively, and ``S`` has lattice ``[[2l, 0], [0, -2]]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .arith import parse_rational
from .linalg import RationalMatrix

__all__ = [
    "UnsupportedDegree",
    "Underdetermined",
    "TautClassLabel",
    "TautRelation",
    "Elimination",
    "SUPPORTED_DEGREES",
    "load_relations",
    "dump_relations",
    "builtin_relations",
    "builtin_labels",
    "relation_matrix",
    "eliminate",
    "substitute",
]

SUPPORTED_DEGREES = (2, 4, 6, 8)
DATA_VERSION = 1


class UnsupportedDegree(ValueError):
    pass


class Underdetermined(ValueError):
    def __init__(self, message: str, rank: int):
        super().__init__(message)
        self.rank = rank


@dataclass(frozen=True, order=True)
class TautClassLabel:
    name: str
    codimension: int = field(default=1, compare=False)
    note: str = field(default="", compare=False)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class TautRelation:
    """``sum(coefficient * class) = 0`` in the Chow ring of the moduli space."""

    degree: int
    codimension: int
    terms: dict[str, Fraction]
    source: str = ""

    def __post_init__(self):
        nonzero = {k: Fraction(v) for k, v in self.terms.items() if Fraction(v) != 0}
        if len(nonzero) < 2:
            raise ValueError("a relation needs at least two nonzero terms")
        object.__setattr__(self, "terms", nonzero)

    @property
    def labels(self) -> list[str]:
        return sorted(self.terms)

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "codimension": self.codimension,
            "terms": {k: str(v) for k, v in sorted(self.terms.items())},
            "source": self.source,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> TautRelation:
        return cls(
            int(obj["degree"]),
            int(obj["codimension"]),
            {k: parse_rational(v) for k, v in obj["terms"].items()},
            obj.get("source", ""),
        )

    def __str__(self) -> str:
        parts = [f"({v})*[{k}]" for k, v in sorted(self.terms.items())]
        return " + ".join(parts) + " = 0"


def _read_document(path: str | Path | None) -> dict:
    if path is None:
        text = resources.files("segre_k3").joinpath("data/relations_v1.json").read_text()
    else:
        text = Path(path).read_text()
    doc = json.loads(text)
    if doc.get("version") != DATA_VERSION:
        raise ValueError(f"unsupported relation data version {doc.get('version')!r}")
    return doc


def builtin_labels(path: str | Path | None = None) -> dict[str, TautClassLabel]:
    doc = _read_document(path)
    return {
        name: TautClassLabel(name, int(info["codimension"]), info.get("note", ""))
        for name, info in doc.get("labels", {}).items()
    }


def load_relations(path: str | Path | None = None) -> list[TautRelation]:
    """All relations in a relation document (the shipped one by default)."""
    doc = _read_document(path)
    labels = doc.get("labels", {})
    rels = [TautRelation.from_json_obj(r) for r in doc["relations"]]
    for r in rels:
        for name in r.terms:
            info = labels.get(name)
            if info is not None and int(info["codimension"]) != r.codimension:
                raise ValueError(f"label {name} has codimension {info['codimension']}, relation {r.codimension}")
    return rels


def dump_relations(relations: list[TautRelation], labels: dict[str, TautClassLabel] | None = None) -> str:
    doc = {
        "version": DATA_VERSION,
        "labels": {
            k: {"codimension": v.codimension, "note": v.note} for k, v in sorted((labels or {}).items())
        },
        "relations": [r.to_json_obj() for r in relations],
    }
    return json.dumps(doc, indent=2)


def builtin_relations(degree: int, codimension: int | None = None, path: str | Path | None = None) -> list[TautRelation]:
    if degree not in SUPPORTED_DEGREES:
        raise UnsupportedDegree(f"degree {degree} not in {SUPPORTED_DEGREES}")
    return [
        r
        for r in load_relations(path)
        if r.degree == degree and (codimension is None or r.codimension == codimension)
    ]


def relation_matrix(relations: list[TautRelation], columns: list[str]) -> RationalMatrix:
    return RationalMatrix([[r.terms.get(c, Fraction(0)) for c in columns] for r in relations], len(columns))


@dataclass
class Elimination:
    """Solved labels as linear combinations of the remaining ones.

    ``residual`` lists the relations left over among the remaining labels
    when the span has more rank than the number of solved labels.
    """

    expressions: dict[str, dict[str, Fraction]]
    residual: list[dict[str, Fraction]]
    rank: int

    def to_json_obj(self) -> dict:
        return {
            "expressions": {
                k: {m: str(c) for m, c in sorted(v.items())} for k, v in sorted(self.expressions.items())
            },
            "residual": [{m: str(c) for m, c in sorted(r.items())} for r in self.residual],
            "rank": self.rank,
        }


def eliminate(relations: list[TautRelation], solve_for: list[str]) -> Elimination:
    """Express each label in ``solve_for`` through the labels not being solved.

    Columns are ordered solved labels first, then the others, each group
    lexicographically; reduced row echelon form then gives the expressions.
    """
    solve = sorted(set(str(s) for s in solve_for))
    if not solve:
        return Elimination({}, [], 0)
    codims = {r.codimension for r in relations}
    if len(codims) > 1:
        raise ValueError("relations of different codimension cannot be combined linearly")
    present = sorted({k for r in relations for k in r.terms})
    rest = [c for c in present if c not in solve]
    columns = solve + rest
    if not relations:
        raise Underdetermined("no relations given", 0)
    rref, pivots = relation_matrix(relations, columns).rref()
    rank = len(pivots)
    if pivots[: len(solve)] != list(range(len(solve))):
        raise Underdetermined(
            f"relations have rank {rank}; cannot solve for {solve}", rank
        )
    expressions = {}
    for k, name in enumerate(solve):
        row = rref.row(k)
        expressions[name] = {
            rest[j]: -row[len(solve) + j] for j in range(len(rest)) if row[len(solve) + j]
        }
    residual = []
    for k in range(len(solve), rank):
        row = rref.row(k)
        residual.append({rest[j]: row[len(solve) + j] for j in range(len(rest)) if row[len(solve) + j]})
    return Elimination(expressions, residual, rank)


def substitute(relation: TautRelation, expressions: dict[str, dict[str, Fraction]]) -> dict[str, Fraction]:
    """Replace solved labels in ``relation``; returns the surviving coefficients."""
    out: dict[str, Fraction] = {}
    for label, coeff in relation.terms.items():
        if label in expressions:
            for other, c in expressions[label].items():
                out[other] = out.get(other, Fraction(0)) + coeff * c
        else:
            out[label] = out.get(label, Fraction(0)) + coeff
    return {k: v for k, v in out.items() if v}
