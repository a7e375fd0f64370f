"""Labeled hermitian kernel matrices.

A :class:`KernelMatrix` pairs an ordered tuple of labels (integers or
words) with a square complex matrix ``entries[i, j] = K(labels[i], labels[j])``.
Inner products follow the moment convention ``<P, Q> = p^H K q`` for
coefficient vectors ``p`` and ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Sequence

import numpy as np

from .exceptions import DegenerateKernelError, PreconditionError, ValidationError
from .words import count_words, enumerate_words

HERMITIAN_TOL = 1e-10
INVARIANCE_TOL = 1e-10


def _label(x):
    # Lists (from JSON) become tuples so labels stay hashable.
    if isinstance(x, (list, tuple)):
        return tuple(int(v) for v in x)
    return int(x)


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    labels: tuple
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._positions[label]
        except AttributeError:
            object.__setattr__(
                self, "_positions", {lab: i for i, lab in enumerate(self.labels)}
            )
            return self._positions[label]

    def __call__(self, a, b) -> complex:
        return complex(self.entries[self.index(a), self.index(b)])

    def __eq__(self, other):
        if not isinstance(other, KernelMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(
            self.entries, other.entries
        )

    def __repr__(self):
        return f"KernelMatrix(size={self.size}, labels={self.labels[:4]}...)"


def build_kernel(labels: Sequence[Hashable], entries) -> KernelMatrix:
    """Validate ``entries`` as a hermitian matrix over ``labels``.

    The stored matrix is exactly hermitian: ``(M + M^H) / 2``.
    """
    labels = tuple(_label(x) for x in labels)
    M = np.array(entries, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"entries must be square, got shape {M.shape}")
    if M.shape[0] != len(labels):
        raise ValidationError(
            f"{len(labels)} labels for a {M.shape[0]}x{M.shape[0]} matrix"
        )
    if len(set(labels)) != len(labels):
        raise ValidationError("duplicate labels")
    if not np.all(np.isfinite(M)):
        raise ValidationError("entries must be finite")
    scale = 1.0 + (np.abs(M).max() if M.size else 0.0)
    asym = np.abs(M - M.conj().T).max() if M.size else 0.0
    if asym > HERMITIAN_TOL * scale:
        raise ValidationError(f"matrix is not hermitian (deviation {asym:.3g})")
    return KernelMatrix(labels, (M + M.conj().T) / 2)


def integer_kernel(entries, start: int = 0) -> KernelMatrix:
    """Kernel on consecutive integer labels ``start, start+1, ...``."""
    M = np.asarray(entries)
    return build_kernel(range(start, start + M.shape[0]), M)


class Definiteness(str, Enum):
    INDEFINITE = "indefinite"
    SEMIDEFINITE = "positive-semidefinite"
    STRICT = "strictly-positive"


@dataclass(frozen=True)
class DefinitenessReport:
    classification: Definiteness
    min_pivot: float

    @property
    def is_psd(self) -> bool:
        return self.classification is not Definiteness.INDEFINITE

    @property
    def is_strict(self) -> bool:
        return self.classification is Definiteness.STRICT


def default_tol(M: np.ndarray) -> float:
    return 1e-10 * max(np.abs(M).max() if M.size else 0.0, 1e-300)


def pivoted_cholesky_pivots(M: np.ndarray, tol: float) -> tuple[list[float], float]:
    """Diagonal-pivoted Cholesky elimination.

    Returns the accepted pivots and the largest off-diagonal magnitude left
    in the trailing Schur complement once no pivot exceeds ``tol``.
    """
    S = np.array(M, dtype=complex)
    pivots: list[float] = []
    n = S.shape[0]
    active = list(range(n))
    while active:
        diag = S[active, active].real
        p = int(np.argmax(diag))
        piv = float(diag[p])
        if piv <= tol:
            pivots.extend(float(x) for x in diag)
            rest = S[np.ix_(active, active)]
            off = np.abs(rest - np.diag(np.diag(rest))).max() if len(active) > 1 else 0.0
            return pivots, float(off)
        i = active.pop(p)
        pivots.append(piv)
        col = S[active, i]
        S[np.ix_(active, active)] -= np.outer(col, col.conj()) / piv
    return pivots, 0.0


def definiteness(K: KernelMatrix, tol: float | None = None) -> DefinitenessReport:
    """Classify ``K`` with a pivoted triangular decomposition."""
    M = K.entries
    if M.size == 0:
        return DefinitenessReport(Definiteness.STRICT, float("inf"))
    tol = default_tol(M) if tol is None else tol
    pivots, leftover = pivoted_cholesky_pivots(M, tol)
    mp = min(pivots)
    if mp > tol:
        return DefinitenessReport(Definiteness.STRICT, mp)
    # A zero diagonal with a nonzero coupling forces a negative direction.
    if mp < -tol or leftover > tol:
        return DefinitenessReport(Definiteness.INDEFINITE, min(mp, -leftover))
    return DefinitenessReport(Definiteness.SEMIDEFINITE, mp)


@dataclass(frozen=True)
class CoefficientMatrix:
    """Rows are coefficient vectors of the orthonormal polynomials.

    ``coefficients[i, j]`` is the coefficient of monomial ``labels[j]`` in
    the polynomial indexed by ``labels[i]``; lower triangular with positive
    real diagonal, and ``conj(A) @ K @ A.T == I``.
    """

    labels: tuple
    coefficients: np.ndarray

    def row(self, label) -> np.ndarray:
        return self.coefficients[self.labels.index(label)]


def gram_residual(A: np.ndarray, K: np.ndarray) -> float:
    """``max |conj(A) K A^T - I|``: failure of orthonormality of the rows of ``A``."""
    return float(np.abs(A.conj() @ K @ A.T - np.eye(K.shape[0])).max())


def orthonormalize(K: KernelMatrix) -> CoefficientMatrix:
    """Gram-Schmidt coefficients of the monomials ordered as ``K.labels``."""
    report = definiteness(K)
    if not report.is_strict:
        raise DegenerateKernelError(
            f"kernel is {report.classification.value} (min pivot {report.min_pivot:.3g})"
        )
    L = np.linalg.cholesky(K.entries)
    Linv = np.linalg.inv(L)
    return CoefficientMatrix(K.labels, np.tril(Linv.conj()))


def restrict(K: KernelMatrix, sublabels: Sequence[Hashable]) -> KernelMatrix:
    """Principal submatrix on ``sublabels`` in the given order."""
    sub = tuple(_label(x) for x in sublabels)
    try:
        idx = [K.index(x) for x in sub]
    except KeyError as exc:
        raise ValidationError(f"unknown label {exc.args[0]!r}") from None
    if len(set(sub)) != len(sub):
        raise ValidationError("duplicate labels")
    return KernelMatrix(sub, K.entries[np.ix_(idx, idx)].copy())


def word_depth(K: KernelMatrix, N: int) -> int:
    """Depth ``n`` such that ``K.labels == enumerate_words(N, n)``."""
    n = 0
    while count_words(N, n) < K.size:
        n += 1
    if count_words(N, n) != K.size or list(K.labels) != enumerate_words(N, n):
        raise PreconditionError(
            f"labels are not all words of length <= n over {N} letters in shortlex order"
        )
    return n


@dataclass(frozen=True)
class InvarianceReport:
    max_violation: float
    triple: tuple | None  # (tau, sigma, sigma') attaining the maximum

    @property
    def invariant(self) -> bool:
        return self.max_violation <= INVARIANCE_TOL


def check_invariance(K: KernelMatrix, N: int) -> InvarianceReport:
    """Largest ``|K(tau sigma, tau sigma') - K(sigma, sigma')|`` over the truncation."""
    n = word_depth(K, N)
    M = K.entries
    words = K.labels
    worst, where = 0.0, None
    for tau in words[1:]:
        shorter = [w for w in words if len(w) + len(tau) <= n]
        if not shorter:
            continue
        base = [K.index(w) for w in shorter]
        moved = [K.index(tau + w) for w in shorter]
        diff = np.abs(M[np.ix_(moved, moved)] - M[np.ix_(base, base)])
        i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
        if diff[i, j] > worst:
            worst, where = float(diff[i, j]), (tau, shorter[i], shorter[j])
    return InvarianceReport(worst, where)
