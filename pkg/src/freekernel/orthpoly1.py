"""Orthonormal polynomials in one variable for a general moment matrix.

For a strictly positive definite ``s`` on ``{0..M}`` the polynomials
``phi_n(X, l)`` are orthonormal with respect to the window
``R_n(l) = s[l..l+n, l..l+n]``; coefficient index ``k`` of ``X^k``
corresponds to row ``l + k`` of ``s``.  They and the reversed family
``phi#_n(X, l)`` are produced by a two-term lattice recursion driven by
the Schur parameters of ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateKernelError, PreconditionError
from .kmatrix import KernelMatrix, definiteness, integer_kernel, restrict
from .schur import SchurParameterTable, defect, extract

STRICT_TOL = 1e-10
SYSTEM_TOL = 1e-9


@dataclass(frozen=True)
class ShiftedPolyTable:
    """``phi[n, l]`` / ``phi_sharp[n, l]`` hold the coefficients ``a^l_n`` / ``b^l_n``."""

    phi: dict[tuple[int, int], np.ndarray]
    phi_sharp: dict[tuple[int, int], np.ndarray]
    params: SchurParameterTable
    diag: np.ndarray

    @property
    def max_index(self) -> int:
        return self.params.n

    def leading_product(self, n: int, l: int) -> float:
        """``sqrt(s[l+n, l+n]) * prod_k d[l+n-k, l+n]``, the inverse of ``a^l_{n,n}``."""
        return float(
            np.sqrt(self.diag[l + n])
            * np.prod([defect(self.params[l + n - k, l + n]) for k in range(1, n + 1)])
        )

    def constant_product(self, n: int, l: int) -> float:
        """``sqrt(s[l, l]) * prod_k d[l, l+k]``, the inverse of ``b^l_{n,0}``."""
        return float(
            np.sqrt(self.diag[l])
            * np.prod([defect(self.params[l, l + k]) for k in range(1, n + 1)])
        )


def _moment_kernel(s) -> KernelMatrix:
    if isinstance(s, KernelMatrix):
        return s
    return integer_kernel(s)


def recurrence_polys(s) -> ShiftedPolyTable:
    s = _moment_kernel(s)
    rep = definiteness(s, tol=STRICT_TOL)
    if not rep.is_strict:
        raise DegenerateKernelError(
            f"moment matrix is not strictly positive (min pivot {rep.min_pivot:.3g})"
        )
    params = extract(integer_kernel(s.entries))
    diag = s.entries.diagonal().real.copy()
    M = params.n
    phi: dict[tuple[int, int], np.ndarray] = {}
    sharp: dict[tuple[int, int], np.ndarray] = {}
    for l in range(M + 1):
        phi[0, l] = np.array([diag[l] ** -0.5], dtype=complex)
        sharp[0, l] = phi[0, l].copy()
    for n in range(1, M + 1):
        for l in range(M + 1 - n):
            g = params[l, n + l]
            if abs(g) >= 1 - 1e-12:
                raise DegenerateKernelError(f"parameter gamma[{l},{n + l}] is unimodular")
            d = defect(g)
            shifted = np.concatenate([[0], phi[n - 1, l + 1]])  # X * phi_{n-1}(X, l+1)
            prev = np.concatenate([sharp[n - 1, l], [0]])
            phi[n, l] = (shifted - g * prev) / d
            sharp[n, l] = (-np.conj(g) * shifted + prev) / d
    return ShiftedPolyTable(phi, sharp, params, diag)


@dataclass(frozen=True)
class CoefficientSystemReport:
    phi_residual: float
    sharp_residual: float
    leading_residual: float
    constant_residual: float

    @property
    def max_residual(self) -> float:
        return max(
            self.phi_residual, self.sharp_residual, self.leading_residual, self.constant_residual
        )

    @property
    def ok(self) -> bool:
        return self.max_residual < SYSTEM_TOL


def verify_coefficient_systems(s, n: int, t: int, table: ShiftedPolyTable | None = None):
    """Residuals of ``R_n(t) a = e_n / a_nn`` and ``R_n(t) b = e_0 / b_n0``.

    Also compares both leading coefficients with their defect-product formulas.
    """
    s = _moment_kernel(s)
    table = recurrence_polys(s) if table is None else table
    if n < 0 or t < 0 or t + n > table.max_index:
        raise PreconditionError(f"need t + n <= {table.max_index}, got n={n}, t={t}")
    R = s.entries[t : t + n + 1, t : t + n + 1]
    a, b = table.phi[n, t], table.phi_sharp[n, t]
    ea = np.zeros(n + 1, dtype=complex)
    ea[-1] = 1 / a[-1]
    eb = np.zeros(n + 1, dtype=complex)
    eb[0] = 1 / b[0]
    return CoefficientSystemReport(
        phi_residual=float(np.abs(R @ a - ea).max()),
        sharp_residual=float(np.abs(R @ b - eb).max()),
        leading_residual=abs(1 / a[-1] - table.leading_product(n, t)),
        constant_residual=abs(1 / b[0] - table.constant_product(n, t)),
    )


def window(s, n: int, t: int) -> KernelMatrix:
    """``R_n(t)``, the restriction of ``s`` to ``{t..t+n}``."""
    s = _moment_kernel(s)
    return restrict(s, s.labels[t : t + n + 1])
