"""Density-matrix meaning representations and graded comparison measures.

A word (or sentence) meaning is a real positive-semidefinite operator.  Two
measures compare them: fidelity, a symmetric similarity score, and
representativeness, an asymmetric entailment score derived from quantum
relative entropy.  Representativeness induces a preorder: ``rho`` precedes
``sigma`` exactly when the support of ``rho`` lies inside the support of
``sigma``, which is the operator analogue of the distributional inclusion
hypothesis.

All logarithms are base 2 unless a different ``base`` is requested; a base
change only rescales relative entropy, never the order it induces.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import spectral
from .errors import DegenerateInputError, ShapeError
from .spectral import DEFAULT_TOL, EigenSystem, Tolerance

INFINITE = math.inf

_NORMALIZED_ATOL = 1e-9


class DensityMatrix:
    """An immutable real PSD operator, not necessarily of unit trace.

    Composition outputs legitimately carry trace below 1, so normalization
    is never implicit here; the measure functions normalize their inputs
    themselves, and ``normalized()`` returns an explicit unit-trace copy.
    """

    __slots__ = ("_m", "_tol", "_eig")

    def __init__(self, matrix, tol: Tolerance = DEFAULT_TOL):
        m = spectral.symmetrize(matrix, tol)
        m.setflags(write=False)
        self._m = m
        self._tol = tol
        self._eig = None
        es = self.eigensystem()
        cut = tol.rank_cut * max(float(es.values[0]), 0.0)
        if es.values[-1] < -cut:
            raise DegenerateInputError(
                f"matrix is not PSD: smallest eigenvalue {es.values[-1]:.6e}"
            )

    @classmethod
    def _trusted(cls, matrix, tol: Tolerance = DEFAULT_TOL) -> "DensityMatrix":
        """Wrap a matrix known PSD by construction, skipping the eigencheck."""
        self = object.__new__(cls)
        m = spectral.symmetrize(matrix, tol)
        m.setflags(write=False)
        self._m = m
        self._tol = tol
        self._eig = None
        return self

    @property
    def matrix(self) -> np.ndarray:
        return self._m.copy()

    @property
    def dim(self) -> int:
        return self._m.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self._m))

    @property
    def tol(self) -> Tolerance:
        return self._tol

    @property
    def is_normalized(self) -> bool:
        return abs(self.trace - 1.0) <= _NORMALIZED_ATOL

    def eigensystem(self) -> EigenSystem:
        if self._eig is None:
            self._eig = spectral.eigh(self._m, self._tol)
        return self._eig

    def normalized(self) -> "DensityMatrix":
        tr = self.trace
        if tr <= 0.0:
            raise DegenerateInputError("cannot normalize an operator with zero trace")
        if self.is_normalized:
            return self
        return DensityMatrix._trusted(self._m / tr, self._tol)

    def scaled(self, factor: float) -> "DensityMatrix":
        if factor <= 0.0:
            raise DegenerateInputError(f"scale factor must be positive, got {factor}")
        return DensityMatrix._trusted(self._m * factor, self._tol)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, trace={self.trace:.6g})"


def pure(vector, tol: Tolerance = DEFAULT_TOL) -> DensityMatrix:
    """Rank-1 operator |v><v| for a nonzero vector ``v``."""
    v = np.asarray(vector, dtype=float).reshape(-1)
    if v.size == 0 or not np.any(v != 0.0):
        raise DegenerateInputError("cannot build a pure state from the zero vector")
    return DensityMatrix._trusted(np.outer(v, v), tol)


def mixture(weights, parts, tol: Tolerance = DEFAULT_TOL) -> DensityMatrix:
    """Weighted sum of PSD operators with strictly positive weights."""
    weights = [float(w) for w in weights]
    parts = list(parts)
    if not parts or len(weights) != len(parts):
        raise ShapeError(
            f"need equally many weights and parts, got {len(weights)} and {len(parts)}"
        )
    if any(w <= 0.0 for w in weights):
        raise DegenerateInputError("mixture weights must be strictly positive")
    dim = parts[0].dim
    if any(p.dim != dim for p in parts):
        raise ShapeError("mixture parts must share one dimension")
    acc = np.zeros((dim, dim))
    for w, p in zip(weights, parts):
        acc += w * p._m
    return DensityMatrix._trusted(acc, tol)


def normalize(rho: DensityMatrix) -> DensityMatrix:
    return rho.normalized()


def _require_same_dim(rho: DensityMatrix, sigma: DensityMatrix):
    if rho.dim != sigma.dim:
        raise ShapeError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")


def fidelity(
    rho: DensityMatrix, sigma: DensityMatrix, tol: Tolerance | None = None
) -> float:
    """tr sqrt(sqrt(rho) sigma sqrt(rho)) on internally normalized inputs.

    Symmetric, in [0, 1], equal to 1 only at equality, and reducing to the
    absolute inner product |<u|v>| on pure states.
    """
    _require_same_dim(rho, sigma)
    tol = tol or rho._tol
    r = rho.normalized()
    s = sigma.normalized()
    root = spectral.mat_sqrt(r._m, tol)
    inner = spectral.symmetrize(root @ s._m @ root, tol)
    values = spectral.eigh(inner, tol).values
    # Eigenvalues of the inner product below the rank cut are round-off noise
    # whose square roots would otherwise pollute the trace.
    cut = tol.rank_cut * max(float(values[0]), 0.0)
    f = float(np.sum(np.sqrt(values[values > cut])))
    return min(max(f, 0.0), 1.0)


def supp_leq(
    rho: DensityMatrix, sigma: DensityMatrix, tol: Tolerance | None = None
) -> bool:
    """Whether the support of ``rho`` is contained in the support of ``sigma``.

    Tested spectrally: the part of ``rho`` living in the kernel of ``sigma``
    must vanish relative to the trace of ``rho``.
    """
    _require_same_dim(rho, sigma)
    tol = tol or rho._tol
    kernel = spectral.kernel_projector(sigma._m, tol)
    leak = float(np.max(np.abs(kernel @ rho._m @ kernel)))
    return leak <= tol.rank_cut * rho.trace


def relative_entropy(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    base: float = 2.0,
    tol: Tolerance | None = None,
) -> float:
    """tr(rho log rho) - tr(rho log sigma), INFINITE on kernel overlap.

    Inputs are normalized internally.  Logarithms act on supports only, so
    the 0*log(0) = 0 convention holds; mass of ``rho`` inside the kernel of
    ``sigma`` makes the divergence infinite.
    """
    _require_same_dim(rho, sigma)
    tol = tol or rho._tol
    r = rho.normalized()
    s = sigma.normalized()
    if not supp_leq(r, s, tol):
        return INFINITE
    es = r.eigensystem()
    cut = tol.rank_cut * max(float(es.values[0]), 0.0)
    lam = es.values[es.values > cut]
    rho_log_rho = float(np.sum(lam * np.log2(lam)))
    rho_log_sigma = float(np.trace(r._m @ spectral.mat_log2(s._m, tol)))
    value = max(rho_log_rho - rho_log_sigma, 0.0)
    if base != 2.0:
        value /= math.log2(base)
    return value


def representativeness(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    base: float = 2.0,
    tol: Tolerance | None = None,
) -> float:
    """1 / (1 + relative entropy); exactly 0 when the divergence is infinite."""
    n = relative_entropy(rho, sigma, base=base, tol=tol)
    if math.isinf(n):
        return 0.0
    return 1.0 / (1.0 + n)


def von_neumann_entropy(rho: DensityMatrix, base: float = 2.0) -> float:
    """-tr(rho log rho) of the normalized input; log2(dim) at maximal mixing."""
    r = rho.normalized()
    es = r.eigensystem()
    cut = r._tol.rank_cut * max(float(es.values[0]), 0.0)
    lam = es.values[es.values > cut]
    value = max(-float(np.sum(lam * np.log2(lam))), 0.0)
    if base != 2.0:
        value /= math.log2(base)
    return value


def precedes(
    rho: DensityMatrix, sigma: DensityMatrix, tol: Tolerance | None = None
) -> bool:
    """The graded-entailment preorder: support inclusion of ``rho`` in ``sigma``."""
    return supp_leq(rho, sigma, tol)


def equivalent(
    rho: DensityMatrix, sigma: DensityMatrix, tol: Tolerance | None = None
) -> bool:
    """Mutual precedence, i.e. equal supports."""
    return supp_leq(rho, sigma, tol) and supp_leq(sigma, rho, tol)


class Relation(enum.Enum):
    HYPONYM = "hyponym"
    HYPERNYM = "hypernym"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class EntailmentVerdict:
    """Directional representativeness scores plus the induced relation."""

    forward: float
    backward: float
    relation: Relation


def classify(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    threshold: float = 0.0,
    base: float = 2.0,
    tol: Tolerance | None = None,
) -> EntailmentVerdict:
    """Classify the pair by thresholding representativeness both ways.

    With the default threshold 0 this is the pure support criterion; any
    positive threshold gives stricter graded judgments at the documented
    cost of transitivity.
    """
    if not 0.0 <= threshold < 1.0:
        raise ValueError(f"threshold must lie in [0, 1), got {threshold}")
    forward = representativeness(rho, sigma, base=base, tol=tol)
    backward = representativeness(sigma, rho, base=base, tol=tol)
    fwd, bwd = forward > threshold, backward > threshold
    if fwd and bwd:
        relation = Relation.EQUIVALENT
    elif fwd:
        relation = Relation.HYPONYM
    elif bwd:
        relation = Relation.HYPERNYM
    else:
        relation = Relation.INCOMPARABLE
    return EntailmentVerdict(forward=forward, backward=backward, relation=relation)
