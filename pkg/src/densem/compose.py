"""From word operators to sentence operators by diagram-driven contraction.

Every word carries a PSD operator on the tensor product of the meaning
spaces of its type's atoms, one "wire" per simple type.  A reduction
diagram turns a sequence of words into a single operator: each link
contracts the row indices of its two wires against each other and,
separately, the column indices (the doubled form of the evaluation map,
which keeps outputs symmetric and positive by construction).  Residual
wires, in diagram order, make up the output operator.

Composition never normalizes: sentence operators legitimately carry trace
below one, and the measures normalize on their own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .density import DensityMatrix, pure
from .errors import RegistryError, ShapeError
from .pregroup import PregroupType, ReductionDiagram, SimpleType, parse_type
from .spectral import DEFAULT_TOL, Tolerance


class SpaceRegistry:
    """Named meaning spaces: one per basic-type atom, with labeled bases."""

    def __init__(self):
        self._spaces: dict[str, tuple[str, ...]] = {}

    def register(self, atom: str, labels: Sequence[str]) -> "SpaceRegistry":
        labels = tuple(str(x) for x in labels)
        if not labels:
            raise RegistryError(f"space {atom!r} needs at least one basis label")
        if len(set(labels)) != len(labels):
            raise RegistryError(f"space {atom!r} has duplicate basis labels")
        if atom in self._spaces and self._spaces[atom] != labels:
            raise RegistryError(f"space {atom!r} is already registered differently")
        self._spaces[atom] = labels
        return self

    def atoms(self) -> tuple[str, ...]:
        return tuple(self._spaces)

    def labels(self, atom: str) -> tuple[str, ...]:
        try:
            return self._spaces[atom]
        except KeyError:
            raise RegistryError(f"unknown meaning space {atom!r}") from None

    def dim(self, atom: str) -> int:
        return len(self.labels(atom))

    def index(self, atom: str, label: str) -> int:
        labels = self.labels(atom)
        try:
            return labels.index(label)
        except ValueError:
            raise RegistryError(f"space {atom!r} has no basis label {label!r}") from None

    def vector(self, atom: str, coords: Mapping[str, float]) -> np.ndarray:
        """Dense vector for a sparse label -> coefficient mapping."""
        out = np.zeros(self.dim(atom))
        for label, value in coords.items():
            out[self.index(atom, label)] = float(value)
        return out

    def type_dims(self, ptype: PregroupType) -> tuple[int, ...]:
        """Wire dimensions for a type; adjoints live in the same space."""
        return tuple(self.dim(s.base) for s in ptype.simples)


@dataclass(frozen=True)
class WordMeaning:
    """A word label, its pregroup type, and its operator over the type's wires.

    ``wire_dims`` follows the type's simple types in order; the operator's
    dimension is their product, with row-major multi-indexing.
    """

    word: str
    ptype: PregroupType
    dm: DensityMatrix
    wire_dims: tuple[int, ...]

    def __post_init__(self):
        expected = math.prod(self.wire_dims) if self.wire_dims else 1
        if len(self.wire_dims) != len(self.ptype.simples):
            raise ShapeError(
                f"{self.word!r}: {len(self.wire_dims)} wire dims for a type of"
                f" {len(self.ptype.simples)} simple types"
            )
        if self.dm.dim != expected:
            raise ShapeError(
                f"{self.word!r}: operator dimension {self.dm.dim} does not match"
                f" the product of wire dims {self.wire_dims}"
            )

    @classmethod
    def for_type(
        cls, registry: SpaceRegistry, word: str, ptype: PregroupType | str, dm: DensityMatrix
    ) -> "WordMeaning":
        if isinstance(ptype, str):
            ptype = parse_type(ptype)
        return cls(word=word, ptype=ptype, dm=dm, wire_dims=registry.type_dims(ptype))


def compose(
    words: Sequence[WordMeaning],
    diagram: ReductionDiagram,
    registry: SpaceRegistry,
    tol: Tolerance = DEFAULT_TOL,
) -> WordMeaning:
    """Contract word operators along a reduction diagram.

    The concatenated word types must equal the diagram's source; linked
    wires must agree in dimension.  The output is typed by the diagram's
    target and is PSD with trace at most the product of the input traces.
    """
    diagram.validate()
    concat: tuple[SimpleType, ...] = ()
    dims: list[int] = []
    for w in words:
        concat = concat + w.ptype.simples
        dims.extend(w.wire_dims)
    if concat != diagram.source.simples:
        raise ShapeError(
            "concatenated word types "
            f"{[str(s) for s in concat]} do not match the diagram source "
            f"{[str(s) for s in diagram.source.simples]}"
        )
    for i, j in diagram.links:
        if dims[i] != dims[j]:
            raise ShapeError(
                f"link ({i}, {j}) joins wires of dimensions {dims[i]} and {dims[j]}"
            )

    # One row label and one column label per wire; a link merges the labels
    # of its two wires (rows with rows, columns with columns).
    row_label = {p: 2 * p for p in range(len(dims))}
    col_label = {p: 2 * p + 1 for p in range(len(dims))}
    for i, j in diagram.links:
        row_label[j] = row_label[i]
        col_label[j] = col_label[i]

    operands = []
    position = 0
    for w in words:
        r = len(w.wire_dims)
        wire_positions = range(position, position + r)
        shape = tuple(dims[p] for p in wire_positions) * 2
        tensor = w.dm.matrix.reshape(shape) if r else w.dm.matrix.reshape(())
        labels = [row_label[p] for p in wire_positions] + [
            col_label[p] for p in wire_positions
        ]
        operands.extend((tensor, labels))
        position += r
    out_labels = [row_label[p] for p in diagram.residuals] + [
        col_label[p] for p in diagram.residuals
    ]
    contracted = np.einsum(*operands, out_labels) if operands else np.array(1.0)

    out_dim = math.prod(dims[p] for p in diagram.residuals) if diagram.residuals else 1
    matrix = contracted.reshape(out_dim, out_dim)
    matrix = (matrix + matrix.T) / 2.0
    return WordMeaning(
        word=" ".join(w.word for w in words),
        ptype=diagram.target,
        dm=DensityMatrix._trusted(matrix, tol),
        wire_dims=tuple(dims[p] for p in diagram.residuals),
    )


def compose_transitive(
    subj: WordMeaning, verb: WordMeaning, obj: WordMeaning, tol: Tolerance = DEFAULT_TOL
) -> WordMeaning:
    """Subject-verb-object composition written as direct tensor contractions.

    Expects ``subj`` and ``obj`` on single plain wires and a verb typed like
    ``n^r s n^l`` over matching spaces; agrees with the generic engine on
    the standard transitive diagram.
    """
    for w, role in ((subj, "subject"), (obj, "object")):
        if len(w.ptype.simples) != 1 or w.ptype.simples[0].z != 0:
            raise ShapeError(f"{role} must have a single plain wire, got '{w.ptype}'")
    if len(verb.ptype.simples) != 3:
        raise ShapeError(f"verb must have three wires, got '{verb.ptype}'")
    left, mid, right = verb.ptype.simples
    if left != SimpleType(subj.ptype.simples[0].base, 1):
        raise ShapeError(f"verb type '{verb.ptype}' does not take subject '{subj.ptype}'")
    if right != SimpleType(obj.ptype.simples[0].base, -1):
        raise ShapeError(f"verb type '{verb.ptype}' does not take object '{obj.ptype}'")
    if mid.z != 0:
        raise ShapeError(f"verb's middle wire must be plain, got '{mid}'")
    dn, ds, do = verb.wire_dims
    if (dn, do) != (subj.dm.dim, obj.dm.dim):
        raise ShapeError(
            f"verb wire dims {verb.wire_dims} do not match subject {subj.dm.dim}"
            f" and object {obj.dm.dim}"
        )

    v6 = verb.dm.matrix.reshape(dn, ds, do, dn, ds, do)
    half = np.tensordot(subj.dm.matrix, v6, axes=([0, 1], [0, 3]))
    sentence = np.tensordot(half, obj.dm.matrix, axes=([1, 3], [0, 1]))
    sentence = (sentence + sentence.T) / 2.0
    return WordMeaning(
        word=f"{subj.word} {verb.word} {obj.word}",
        ptype=PregroupType((mid,)),
        dm=DensityMatrix._trusted(sentence, tol),
        wire_dims=(ds,),
    )


def compose_kronecker(
    verb_mat,
    subj: DensityMatrix,
    obj: DensityMatrix,
    tol: Tolerance = DEFAULT_TOL,
) -> DensityMatrix:
    """Closed-form composition: pure(flatten(verb)) entrywise-multiplied
    with subj (x) obj.

    The verb table has one row per subject basis vector and one column per
    object basis vector; flattening is subject-major.  Both factors of the
    entrywise product are PSD, so the result is PSD by the Schur product
    theorem.  No normalization is applied.
    """
    table = np.asarray(verb_mat, dtype=float)
    if table.ndim != 2:
        raise ShapeError(f"verb table must be a matrix, got shape {table.shape}")
    if table.shape != (subj.dim, obj.dim):
        raise ShapeError(
            f"verb table shape {table.shape} does not match subject dim"
            f" {subj.dim} and object dim {obj.dim}"
        )
    verb_state = pure(table.reshape(-1), tol)
    product = verb_state.matrix * np.kron(subj.matrix, obj.matrix)
    return DensityMatrix._trusted(product, tol)
