"""Schur parameters of positive definite kernels on ``{0, ..., n}``.

A kernel with unit diagonal is the output of a transmission line: a
cascade of 2x2 Julia unitaries, one per parameter ``gamma[k, j]``
(``0 <= k < j <= n``).  ``K(l, m)`` for ``l < m`` is the upper-left entry
of the unitary ``U[l, m]`` assembled recursively from the parameters with
row index ``>= l`` and column index ``<= m``.

Writing ``r`` for the first row of the product of the first ``j-k-1``
Julia factors of ``U[k, j]`` and ``u`` for the first column of
``U[k+1, j]``, the kernel entry is affine in the newest parameter::

    K(k, j) = sum(r[i] * u[i] for i < j-k-1) + tail * gamma[k, j] * u[-1]

where ``tail = prod(d[k, i] for k < i < j)``.  Extraction inverts this one
parameter at a time, diagonal by diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    ContractionError,
    NumericalConsistencyError,
    PreconditionError,
    ValidationError,
)
from .kmatrix import KernelMatrix, definiteness, integer_kernel

CONTRACTION_TOL = 1e-12
EXTRACT_TOL = 1e-8
DEGENERACY_TOL = 1e-12


def defect(g: complex) -> float:
    """``sqrt(1 - |g|^2)``, with round-off below zero clamped to zero."""
    v = 1.0 - abs(g) ** 2
    if v < 0:
        if v < -2 * CONTRACTION_TOL:
            raise ContractionError(f"|gamma| = {abs(g):.15g} exceeds 1")
        return 0.0
    return float(np.sqrt(v))


def julia(g: complex) -> np.ndarray:
    """The Julia unitary ``[[g, d], [d, -conj(g)]]`` of a scalar contraction."""
    if abs(g) > 1 + CONTRACTION_TOL:
        raise ContractionError(f"|gamma| = {abs(g):.15g} exceeds 1")
    d = defect(g)
    return np.array([[g, d], [d, -np.conj(g)]], dtype=complex)


@dataclass(frozen=True)
class SchurParameterTable:
    n: int
    gamma: dict[tuple[int, int], complex]
    degenerate: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        for (k, j), g in self.gamma.items():
            if not 0 <= k < j <= self.n:
                raise ValidationError(f"parameter index ({k}, {j}) out of range")
            if abs(g) > 1 + CONTRACTION_TOL:
                raise ContractionError(f"|gamma[{k},{j}]| = {abs(g):.15g} exceeds 1")

    def __getitem__(self, kj: tuple[int, int]) -> complex:
        k, j = kj
        if k == j:
            return 0j
        if not 0 <= k < j <= self.n:
            raise PreconditionError(f"parameter index ({k}, {j}) out of range 0..{self.n}")
        return self.gamma.get((k, j), 0j)

    def defect(self, k: int, j: int) -> float:
        return defect(self[k, j])

    @classmethod
    def zeros(cls, n: int) -> "SchurParameterTable":
        return cls(n, {(k, j): 0j for k in range(n + 1) for j in range(k + 1, n + 1)})

    @classmethod
    def from_function(cls, n: int, f) -> "SchurParameterTable":
        return cls(n, {(k, j): complex(f(k, j)) for k in range(n + 1) for j in range(k + 1, n + 1)})


def _apply_factors(params, k: int, j: int, u: np.ndarray) -> np.ndarray:
    """First column of ``U[k, j]`` from the first column ``u`` of ``U[k+1, j]``."""
    v = np.zeros(j - k + 1, dtype=complex)
    v[:-1] = u
    # Factors act right to left: the J(gamma[k, j]) block sits lowest.
    for i in range(j - k, 0, -1):
        g = params[k, k + i]
        d = defect(g)
        a, b = v[i - 1], v[i]
        v[i - 1] = g * a + d * b
        v[i] = d * a - np.conj(g) * b
    return v


def _first_row_prefix(params, k: int, j: int) -> tuple[np.ndarray, float]:
    """Entries ``r[0..j-k-2]`` and ``tail`` of the first row before the last factor."""
    r = np.zeros(max(j - k - 1, 0), dtype=complex)
    carry = 1.0
    for i in range(1, j - k):
        g = params[k, k + i]
        r[i - 1] = carry * g
        carry *= defect(g)
    return r, carry


def transmission_columns(params: SchurParameterTable):
    """First columns ``u[(k, j)]`` of every ``U[k, j]``."""
    n = params.n
    cols: dict[tuple[int, int], np.ndarray] = {}
    for j in range(n + 1):
        cols[j, j] = np.ones(1, dtype=complex)
        for k in range(j - 1, -1, -1):
            cols[k, j] = _apply_factors(params, k, j, cols[k + 1, j])
    return cols


def transmission_unitary(params: SchurParameterTable, k: int, j: int) -> np.ndarray:
    """The full unitary ``U[k, j]`` (used to check unitarity)."""
    if k == j:
        return np.eye(1, dtype=complex)
    size = j - k + 1
    M = np.eye(size, dtype=complex)
    for i in range(1, j - k + 1):
        F = np.eye(size, dtype=complex)
        F[i - 1 : i + 1, i - 1 : i + 1] = julia(params[k, k + i])
        M = M @ F
    W = np.eye(size, dtype=complex)
    W[:-1, :-1] = transmission_unitary(params, k + 1, j)
    return M @ W


def reconstruct(params: SchurParameterTable, diag=None) -> KernelMatrix:
    """Kernel on ``{0..n}`` realised by the transmission line of ``params``."""
    n = params.n
    dg = np.ones(n + 1) if diag is None else np.asarray(diag, dtype=float)
    if dg.shape != (n + 1,) or np.any(dg <= 0):
        raise ValidationError("diag must hold n+1 strictly positive reals")
    cols = transmission_columns(params)
    K = np.eye(n + 1, dtype=complex)
    for (k, j), u in cols.items():
        if k < j:
            K[k, j] = u[0]
            K[j, k] = np.conj(u[0])
    sq = np.sqrt(dg)
    return integer_kernel(K * np.outer(sq, sq))


def extract(K: KernelMatrix) -> SchurParameterTable:
    """Schur parameters of a positive semidefinite kernel on ``{0..n}``."""
    M = K.entries
    n = K.size - 1
    dg = M.diagonal().real
    if np.any(dg <= 0):
        raise PreconditionError("kernel diagonal must be strictly positive")
    if not definiteness(K).is_psd:
        raise PreconditionError("kernel is not positive semidefinite")
    sq = np.sqrt(dg)
    Kn = M / np.outer(sq, sq)

    gamma: dict[tuple[int, int], complex] = {}
    degenerate: set[tuple[int, int]] = set()
    table = _MutableTable(n, gamma)
    cols = {(j, j): np.ones(1, dtype=complex) for j in range(n + 1)}
    for span in range(1, n + 1):
        for k in range(n + 1 - span):
            j = k + span
            u = cols[k + 1, j]
            r, tail = _first_row_prefix(table, k, j)
            c0 = complex(np.dot(r, u[:-1]))
            lr = tail * u[-1]
            if abs(lr) < DEGENERACY_TOL:
                g = 0j
                degenerate.add((k, j))
            else:
                g = (Kn[k, j] - c0) / lr
                if abs(g) > 1 + EXTRACT_TOL:
                    raise NumericalConsistencyError(
                        f"solved |gamma[{k},{j}]| = {abs(g):.12g} exceeds 1"
                    )
                if abs(g) > 1:
                    g = g / abs(g)
            gamma[k, j] = complex(g)
            cols[k, j] = _apply_factors(table, k, j, u)
    return SchurParameterTable(n, gamma, frozenset(degenerate))


class _MutableTable:
    """Lookup view over the dictionary being filled during extraction."""

    def __init__(self, n, gamma):
        self.n = n
        self.gamma = gamma

    def __getitem__(self, kj):
        k, j = kj
        return 0j if k == j else self.gamma[k, j]


def roundtrip_error(K: KernelMatrix) -> float:
    params = extract(K)
    R = reconstruct(params, K.entries.diagonal().real)
    return float(np.abs(R.entries - K.entries).max())
