"""Markov products of two kernels glued at a single common point.

The right factor lives on ``{0..n}`` and the left factor on ``{-m..0}``;
both are taken positionally (the glue point is the first row of the right
factor and the last row of the left one).  The product is indexed by
``-m..n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import PreconditionError, ValidationError
from .kmatrix import KernelMatrix, build_kernel, definiteness, integer_kernel
from .schur import extract

GLUE_TOL = 1e-10
CROSS_TOL = 1e-8


def markov_product(K_right: KernelMatrix, K_left: KernelMatrix) -> KernelMatrix:
    """Glue ``K_right`` on ``{0..n}`` and ``K_left`` on ``{-m..0}`` at ``0``.

    Cross entries are ``K(a1, a2) = K_right(a1, 0) K(0, 0)^{-1} K_left(0, a2)``
    for ``a1 > 0 > a2``; with a unit glue value this is the plain product.
    """
    R, L = K_right.entries, K_left.entries
    n, m = R.shape[0] - 1, L.shape[0] - 1
    glue = R[0, 0].real
    if abs(glue - L[m, m].real) > GLUE_TOL:
        raise ValidationError(
            f"glue values differ: right {R[0, 0].real!r}, left {L[m, m].real!r}"
        )
    for name, K in (("right", K_right), ("left", K_left)):
        if not definiteness(K).is_psd:
            raise PreconditionError(f"{name} factor is not positive semidefinite")
    if glue <= 0:
        raise PreconditionError("glue value must be strictly positive")

    P = np.zeros((m + n + 1, m + n + 1), dtype=complex)
    P[: m + 1, : m + 1] = L
    P[m:, m:] = R
    # rows a1 > 0 (offset m+1..), columns a2 < 0 (0..m-1)
    cross = np.outer(R[1:, 0], L[m, :m]) / glue
    P[m + 1 :, :m] = cross
    P[:m, m + 1 :] = cross.conj().T
    return build_kernel(range(-m, n + 1), P)


@dataclass(frozen=True)
class MarkovReport:
    left_deviation: float
    right_deviation: float
    cross_max: float
    min_pivot: float

    @property
    def ok(self) -> bool:
        return (
            self.left_deviation < CROSS_TOL
            and self.right_deviation < CROSS_TOL
            and self.cross_max < CROSS_TOL
        )


def verify_markov_parameters(K_right: KernelMatrix, K_left: KernelMatrix) -> MarkovReport:
    """Compare the parameters of the product with those of its factors."""
    P = markov_product(K_right, K_left)
    m = K_left.size - 1
    gp = extract(integer_kernel(P.entries))
    gl = extract(integer_kernel(K_left.entries))
    gr = extract(integer_kernel(K_right.entries))
    left = max((abs(gp[k, j] - g) for (k, j), g in gl.gamma.items()), default=0.0)
    right = max((abs(gp[k + m, j + m] - g) for (k, j), g in gr.gamma.items()), default=0.0)
    cross = max((abs(g) for (k, j), g in gp.gamma.items() if k < m < j), default=0.0)
    return MarkovReport(float(left), float(right), float(cross), definiteness(P).min_pivot)
