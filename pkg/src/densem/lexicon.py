"""Building word operators from co-occurrence data and persisting lexicons.

Mixed word operators come from feature-subset counts: each observation of
a word with a subset B of basis features contributes ``count`` times the
projector onto the uniform superposition of B.  Taxonomy nodes are convex
mixtures of their (normalized) children.  Verb tables accumulate weighted
subject/object vector pairs.

The on-disk form is a JSON document with three sections: ``spaces``,
``words``, and ``verbs``.  Matrix entries are stored as decimal strings
with 17 significant digits so double-precision values round-trip exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Mapping, Sequence

import jsonschema
import numpy as np

from .compose import SpaceRegistry, WordMeaning
from .density import DensityMatrix, mixture, pure
from .errors import LexiconFormatError, RegistryError, ShapeError, UnknownWordError
from .pregroup import format_type, parse_type


@dataclass(frozen=True)
class SubsetRecord:
    """One aggregated observation: a word seen ``count`` times with exactly
    the features in ``features``."""

    word: str
    features: frozenset[str]
    count: float

    def __post_init__(self):
        object.__setattr__(self, "features", frozenset(self.features))
        if not self.features:
            raise ShapeError(f"subset record for {self.word!r} has no features")
        if not self.count > 0.0:
            raise ShapeError(f"subset record for {self.word!r} needs a positive count")


@dataclass(frozen=True)
class PairRecord:
    """One weighted subject/object co-occurrence for a verb."""

    verb: str
    subj_vector: Mapping[str, float]
    obj_vector: Mapping[str, float]
    count: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "subj_vector", dict(self.subj_vector))
        object.__setattr__(self, "obj_vector", dict(self.obj_vector))
        if not self.count > 0.0:
            raise ShapeError(f"pair record for {self.verb!r} needs a positive count")


def build_from_subsets(
    records: Sequence[SubsetRecord], labels: Sequence[str]
) -> DensityMatrix:
    """Sum of count-weighted projectors onto uniform subset superpositions."""
    records = list(records)
    if not records:
        raise ShapeError("need at least one subset record")
    words = {r.word for r in records}
    if len(words) != 1:
        raise ShapeError(f"records mix several words: {sorted(words)}")
    index = {label: i for i, label in enumerate(labels)}
    dim = len(labels)
    acc = np.zeros((dim, dim))
    for record in records:
        psi = np.zeros(dim)
        for feature in record.features:
            if feature not in index:
                raise RegistryError(
                    f"unknown basis label {feature!r} for word {record.word!r}"
                )
            psi[index[feature]] = 1.0
        acc += record.count * np.outer(psi, psi)
    return DensityMatrix._trusted(acc)


def build_verb_from_pairs(
    records: Sequence[PairRecord],
    subject_labels: Sequence[str],
    object_labels: Sequence[str],
) -> np.ndarray:
    """Accumulate count * subj (x) obj into a subject-by-object table."""
    records = list(records)
    if not records:
        raise ShapeError("need at least one pair record")
    verbs = {r.verb for r in records}
    if len(verbs) != 1:
        raise ShapeError(f"records mix several verbs: {sorted(verbs)}")
    s_index = {label: i for i, label in enumerate(subject_labels)}
    o_index = {label: i for i, label in enumerate(object_labels)}
    table = np.zeros((len(subject_labels), len(object_labels)))
    for record in records:
        subj = np.zeros(len(subject_labels))
        for label, value in record.subj_vector.items():
            if label not in s_index:
                raise RegistryError(f"unknown subject label {label!r}")
            subj[s_index[label]] = float(value)
        obj = np.zeros(len(object_labels))
        for label, value in record.obj_vector.items():
            if label not in o_index:
                raise RegistryError(f"unknown object label {label!r}")
            obj[o_index[label]] = float(value)
        table += record.count * np.outer(subj, obj)
    return table


@dataclass(frozen=True)
class VerbTable:
    """A subject-by-object strength table for the closed-form composition."""

    subject_space: str
    object_space: str
    table: np.ndarray


class Lexicon:
    """A registry of meaning spaces plus named word operators and verb tables."""

    def __init__(self, registry: SpaceRegistry | None = None):
        self.registry = registry or SpaceRegistry()
        self._entries: dict[str, WordMeaning] = {}
        self._verbs: dict[str, VerbTable] = {}

    def words(self) -> tuple[str, ...]:
        return tuple(self._entries)

    def verbs(self) -> tuple[str, ...]:
        return tuple(self._verbs)

    def add_word(self, meaning: WordMeaning) -> "Lexicon":
        expected = self.registry.type_dims(meaning.ptype)
        if tuple(meaning.wire_dims) != expected:
            raise ShapeError(
                f"{meaning.word!r}: wire dims {meaning.wire_dims} disagree with"
                f" the registry's {expected}"
            )
        self._entries[meaning.word] = meaning
        return self

    def add_verb_table(self, name: str, verb: VerbTable) -> "Lexicon":
        expected = (self.registry.dim(verb.subject_space), self.registry.dim(verb.object_space))
        if verb.table.shape != expected:
            raise ShapeError(
                f"verb {name!r}: table shape {verb.table.shape} disagrees with"
                f" space dims {expected}"
            )
        self._verbs[name] = verb
        return self

    def word(self, name: str) -> WordMeaning:
        try:
            return self._entries[name]
        except KeyError:
            raise UnknownWordError(f"lexicon has no word {name!r}") from None

    def verb_table(self, name: str) -> VerbTable:
        try:
            return self._verbs[name]
        except KeyError:
            raise UnknownWordError(f"lexicon has no verb table {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._entries


def taxonomy_mix(children: Sequence[tuple[str, float]], lex: Lexicon) -> DensityMatrix:
    """Weighted mixture of normalized child operators.

    Children are normalized before mixing so that raw corpus frequency does
    not skew the parent toward its most common child.
    """
    if not children:
        raise ShapeError("taxonomy node needs at least one child")
    parts = []
    weights = []
    for name, weight in children:
        meaning = lex.word(name)
        parts.append(meaning.dm.normalized())
        weights.append(float(weight))
    return mixture(weights, parts)


# --- serialization ---------------------------------------------------------

_SIGNIFICANT_DIGITS = ".17g"

_NUMBER = {"type": "string", "pattern": r"^-?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?$"}

LEXICON_SCHEMA = {
    "type": "object",
    "required": ["spaces", "words", "verbs"],
    "additionalProperties": False,
    "properties": {
        "spaces": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["dim", "labels"],
                "additionalProperties": False,
                "properties": {
                    "dim": {"type": "integer", "minimum": 1},
                    "labels": {
                        "type": "array",
                        "minItems": 1,
                        "items": {"type": "string"},
                    },
                },
            },
        },
        "words": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["type", "kind", "data"],
                "additionalProperties": False,
                "properties": {
                    "type": {"type": "string"},
                    "kind": {"enum": ["pure", "subsets", "matrix"]},
                    "data": {"type": "object"},
                },
            },
        },
        "verbs": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["subject_space", "object_space", "rows"],
                "additionalProperties": False,
                "properties": {
                    "subject_space": {"type": "string"},
                    "object_space": {"type": "string"},
                    "rows": {
                        "type": "array",
                        "minItems": 1,
                        "items": {"type": "array", "minItems": 1, "items": _NUMBER},
                    },
                },
            },
        },
    },
}

_PURE_DATA_SCHEMA = {
    "type": "object",
    "required": ["vector"],
    "additionalProperties": False,
    "properties": {"vector": {"type": "array", "minItems": 1, "items": _NUMBER}},
}

_SUBSETS_DATA_SCHEMA = {
    "type": "object",
    "required": ["records"],
    "additionalProperties": False,
    "properties": {
        "records": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["features", "count"],
                "additionalProperties": False,
                "properties": {
                    "features": {
                        "type": "array",
                        "minItems": 1,
                        "items": {"type": "string"},
                    },
                    "count": _NUMBER,
                },
            },
        }
    },
}

_MATRIX_DATA_SCHEMA = {
    "type": "object",
    "required": ["matrix"],
    "additionalProperties": False,
    "properties": {
        "matrix": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "minItems": 1, "items": _NUMBER},
        }
    },
}

_DATA_SCHEMAS = {
    "pure": _PURE_DATA_SCHEMA,
    "subsets": _SUBSETS_DATA_SCHEMA,
    "matrix": _MATRIX_DATA_SCHEMA,
}


def _format_number(x: float) -> str:
    return format(float(x), _SIGNIFICANT_DIGITS)


def _format_matrix(m: np.ndarray) -> list[list[str]]:
    return [[_format_number(x) for x in row] for row in np.asarray(m)]


def _word_document(meaning: WordMeaning) -> dict:
    return {
        "type": format_type(meaning.ptype),
        "kind": "matrix",
        "data": {"matrix": _format_matrix(meaning.dm.matrix)},
    }


def save(lex: Lexicon, destination: str | Path | IO[str]):
    """Write the lexicon as JSON; word operators are stored as full matrices."""
    document = {
        "spaces": {
            atom: {"dim": lex.registry.dim(atom), "labels": list(lex.registry.labels(atom))}
            for atom in lex.registry.atoms()
        },
        "words": {name: _word_document(lex.word(name)) for name in lex.words()},
        "verbs": {
            name: {
                "subject_space": vt.subject_space,
                "object_space": vt.object_space,
                "rows": _format_matrix(vt.table),
            }
            for name, vt in ((n, lex.verb_table(n)) for n in lex.verbs())
        },
    }
    if hasattr(destination, "write"):
        json.dump(document, destination, indent=2)
    else:
        with open(destination, "w", encoding="utf-8") as handle:
            json.dump(document, handle, indent=2)


def _schema_path(error: jsonschema.ValidationError) -> str:
    parts = ["$"]
    for part in error.absolute_path:
        parts.append(f"[{part}]" if isinstance(part, int) else f".{part}")
    return "".join(parts)


def _validate(document, schema, prefix: str = ""):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        raise LexiconFormatError(first.message, prefix + _schema_path(first))


def load(source: str | Path | IO[str]) -> Lexicon:
    """Parse, schema-check, and reconstruct a lexicon document.

    Violations raise ``LexiconFormatError`` carrying a path into the
    document, e.g. ``$.words.beer.data.matrix[1]``.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise LexiconFormatError(f"not valid JSON: {err}", "$") from None
    _validate(document, LEXICON_SCHEMA)

    registry = SpaceRegistry()
    for atom, space in document["spaces"].items():
        if space["dim"] != len(space["labels"]):
            raise LexiconFormatError(
                f"dim {space['dim']} does not match {len(space['labels'])} labels",
                f"$.spaces.{atom}",
            )
        try:
            registry.register(atom, space["labels"])
        except RegistryError as err:
            raise LexiconFormatError(str(err), f"$.spaces.{atom}") from None

    lex = Lexicon(registry)
    for name, entry in document["words"].items():
        path = f"$.words.{name}"
        _validate(entry["data"], _DATA_SCHEMAS[entry["kind"]], path + ".data")
        try:
            ptype = parse_type(entry["type"])
            dims = registry.type_dims(ptype)
        except Exception as err:
            raise LexiconFormatError(str(err), path + ".type") from None
        dim = math.prod(dims) if dims else 1
        try:
            if entry["kind"] == "pure":
                vector = np.array([float(x) for x in entry["data"]["vector"]])
                if vector.size != dim:
                    raise ShapeError(f"vector length {vector.size}, expected {dim}")
                dm = pure(vector)
            elif entry["kind"] == "subsets":
                if len(dims) != 1:
                    raise ShapeError("subset words must live on a single wire")
                records = [
                    SubsetRecord(name, frozenset(r["features"]), float(r["count"]))
                    for r in entry["data"]["records"]
                ]
                dm = build_from_subsets(records, registry.labels(ptype.simples[0].base))
            else:
                matrix = np.array(
                    [[float(x) for x in row] for row in entry["data"]["matrix"]]
                )
                if matrix.shape != (dim, dim):
                    raise ShapeError(f"matrix shape {matrix.shape}, expected ({dim}, {dim})")
                dm = DensityMatrix(matrix)
            lex.add_word(WordMeaning(word=name, ptype=ptype, dm=dm, wire_dims=dims))
        except LexiconFormatError:
            raise
        except Exception as err:
            raise LexiconFormatError(str(err), path + ".data") from None

    for name, entry in document["verbs"].items():
        path = f"$.verbs.{name}"
        rows = entry["rows"]
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise LexiconFormatError("rows have inconsistent lengths", path + ".rows")
        table = np.array([[float(x) for x in row] for row in rows])
        try:
            lex.add_verb_table(
                name,
                VerbTable(
                    subject_space=entry["subject_space"],
                    object_space=entry["object_space"],
                    table=table,
                ),
            )
        except (RegistryError, ShapeError) as err:
            raise LexiconFormatError(str(err), path) from None
    return lex
