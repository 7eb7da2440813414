"""Pregroup types, reductions, and the link diagrams that drive composition.

A type is a sequence of adjoint-decorated atoms.  A sequence of word types
is grammatical for a target when repeated contractions of adjacent pairs
``a^(z) a^(z+1) -> 1`` erase everything except the target, read left to
right.  ``reduce`` decides this and returns a witness: a non-crossing set
of contraction links plus the residual wire positions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ShapeError, TypeParseError

_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True, order=True)
class SimpleType:
    """A basic type with its adjoint order: -1 left adjoint, +1 right adjoint."""

    base: str
    z: int = 0

    def __str__(self):
        suffix = "^l" * max(-self.z, 0) + "^r" * max(self.z, 0)
        return self.base + suffix


@dataclass(frozen=True)
class PregroupType:
    """An ordered product of simple types; the empty product is the unit."""

    simples: tuple[SimpleType, ...] = ()

    def __len__(self):
        return len(self.simples)

    def __iter__(self):
        return iter(self.simples)

    def __add__(self, other: "PregroupType") -> "PregroupType":
        return PregroupType(self.simples + other.simples)

    def __str__(self):
        return format_type(self)


def parse_type(text: str) -> PregroupType:
    """Parse a whitespace-separated type string such as ``"n n^r s n^l n"``.

    Adjoint markers ``^l`` and ``^r`` may repeat (``n^l^l`` is the second
    left adjoint).  Raises with the character position on malformed input.
    """
    simples = []
    for token_match in _TOKEN_RE.finditer(text):
        token = token_match.group()
        pos = token_match.start()
        atom_match = _ATOM_RE.match(token)
        if atom_match is None:
            raise TypeParseError(f"expected an atom, found {token!r}", pos)
        base = atom_match.group()
        rest = token[atom_match.end():]
        z = 0
        while rest:
            if rest.startswith("^l"):
                z -= 1
            elif rest.startswith("^r"):
                z += 1
            else:
                raise TypeParseError(
                    f"expected ^l or ^r after {base!r}, found {rest!r}",
                    pos + atom_match.end(),
                )
            rest = rest[2:]
        simples.append(SimpleType(base, z))
    return PregroupType(tuple(simples))


def format_type(ptype: PregroupType) -> str:
    return " ".join(str(s) for s in ptype.simples)


def contractible(left: SimpleType, right: SimpleType) -> bool:
    """Whether the adjacent pair ``left right`` contracts to the unit."""
    return left.base == right.base and right.z == left.z + 1


@dataclass(frozen=True)
class ReductionDiagram:
    """A witness that a type sequence reduces to a target.

    ``links`` are contraction pairs over positions of the concatenated
    simple-type sequence, sorted and mutually non-crossing; ``residuals``
    are the surviving positions, in order equal to the target.
    """

    source: PregroupType
    links: tuple[tuple[int, int], ...]
    residuals: tuple[int, ...]
    target: PregroupType

    def validate(self):
        """Check every structural invariant; raises ``ShapeError`` on violation."""
        simples = self.source.simples
        n = len(simples)
        seen = set()
        for i, j in self.links:
            if not (0 <= i < j < n):
                raise ShapeError(f"link ({i}, {j}) out of range for {n} positions")
            seen.update((i, j))
            if not contractible(simples[i], simples[j]):
                raise ShapeError(
                    f"link ({i}, {j}) joins non-contractible {simples[i]} {simples[j]}"
                )
        if len(seen) != 2 * len(self.links):
            raise ShapeError("links share a position")
        for a, (i, j) in enumerate(self.links):
            for k, l in self.links[a + 1:]:
                if i < k < j < l or k < i < l < j:
                    raise ShapeError(f"links ({i},{j}) and ({k},{l}) cross")
        if set(self.residuals) & seen or list(self.residuals) != sorted(
            set(range(n)) - seen
        ):
            raise ShapeError("residuals must be exactly the unlinked positions, in order")
        for i, j in self.links:
            if any(i < r < j for r in self.residuals):
                raise ShapeError(f"link ({i},{j}) spans a residual wire")
        got = tuple(simples[r] for r in self.residuals)
        if got != self.target.simples:
            raise ShapeError(
                f"residual types {[str(s) for s in got]} do not match target"
                f" {[str(s) for s in self.target.simples]}"
            )


def _vanish_table(simples: Sequence[SimpleType]) -> list[list[bool]]:
    """vanish[a][b]: positions [a, b) contract fully to the unit."""
    n = len(simples)
    vanish = [[False] * (n + 1) for _ in range(n + 1)]
    for a in range(n + 1):
        vanish[a][a] = True
    for span in range(2, n + 1, 2):
        for a in range(0, n - span + 1):
            b = a + span
            for j in range(a + 1, b, 2):
                if (
                    contractible(simples[a], simples[j])
                    and vanish[a + 1][j]
                    and vanish[j + 1][b]
                ):
                    vanish[a][b] = True
                    break
    return vanish


def _least_vanishing_links(simples, vanish, a: int, b: int) -> list[tuple[int, int]]:
    """Lexicographically least link set contracting [a, b) to the unit.

    Only called when vanish[a][b] holds, so a partner always exists.
    """
    if a == b:
        return []
    for j in range(a + 1, b, 2):
        if contractible(simples[a], simples[j]) and vanish[a + 1][j] and vanish[j + 1][b]:
            return (
                [(a, j)]
                + _least_vanishing_links(simples, vanish, a + 1, j)
                + _least_vanishing_links(simples, vanish, j + 1, b)
            )
    raise AssertionError("vanish table promised a contraction that does not exist")


def reduce(
    seq: Iterable[PregroupType], target: PregroupType
) -> Optional[ReductionDiagram]:
    """Find the lexicographically least contraction diagram, or ``None``.

    Links earlier in the sequence are preferred, and for a fixed opener the
    nearest partner wins, which makes repeated calls reproducible and keeps
    simple sentences looking like their textbook reductions.
    """
    source = PregroupType(())
    for ptype in seq:
        source = source + ptype
    simples = source.simples
    n = len(simples)
    k = len(target.simples)
    if (n - k) % 2 != 0:
        return None
    vanish = _vanish_table(simples)

    feasible_cache: dict[tuple[int, int], bool] = {}

    def feasible(i: int, t: int) -> bool:
        """Can positions [i, n) link/reside to produce target suffix [t, k)?"""
        key = (i, t)
        if key in feasible_cache:
            return feasible_cache[key]
        if i == n:
            out = t == k
        else:
            out = False
            for j in range(i + 1, n):
                if (
                    contractible(simples[i], simples[j])
                    and vanish[i + 1][j]
                    and feasible(j + 1, t)
                ):
                    out = True
                    break
            if not out and t < k and simples[i] == target.simples[t]:
                out = feasible(i + 1, t + 1)
        feasible_cache[key] = out
        return out

    if not feasible(0, 0):
        return None

    links: list[tuple[int, int]] = []
    residuals: list[int] = []
    i, t = 0, 0
    while i < n:
        advanced = False
        for j in range(i + 1, n):
            if (
                contractible(simples[i], simples[j])
                and vanish[i + 1][j]
                and feasible(j + 1, t)
            ):
                links.append((i, j))
                links.extend(_least_vanishing_links(simples, vanish, i + 1, j))
                i = j + 1
                advanced = True
                break
        if advanced:
            continue
        residuals.append(i)
        i += 1
        t += 1

    diagram = ReductionDiagram(
        source=source,
        links=tuple(sorted(links)),
        residuals=tuple(residuals),
        target=target,
    )
    diagram.validate()
    return diagram


def is_grammatical(seq: Iterable[PregroupType], sentence_atom: str = "s") -> bool:
    """Whether the word types reduce to the bare sentence type."""
    return reduce(seq, PregroupType((SimpleType(sentence_atom, 0),))) is not None
