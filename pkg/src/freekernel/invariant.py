"""Invariant positive definite kernels on the free semigroup.

Two families are built here:

* the contraction kernel ``K(sigma, tau) = t_{sigma^{-1} tau}`` of a tuple
  of scalars in the open unit disk, whose orthonormal polynomials have a
  closed form;
* moment kernels of free products of one-variable functionals in isometric
  variables (``Z^+ Z = 1``), each factor given by its Toeplitz moments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .exceptions import ContractionError, DepthError, PreconditionError, ValidationError
from .kmatrix import KernelMatrix, build_kernel, definiteness, integer_kernel
from .schur import extract
from .words import Word, enumerate_words, free_reduce, rank, tail_split

Polynomial = Mapping[Word, complex]


def contraction_tuple(t: Sequence[complex]) -> tuple[complex, ...]:
    t = tuple(complex(x) for x in t)
    if not t:
        raise ValidationError("contraction tuple must be nonempty")
    for k, x in enumerate(t, 1):
        if abs(x) >= 1:
            raise ContractionError(f"|t_{k}| = {abs(x):.15g} is not < 1")
    return t


def _power(x: complex, k: int) -> complex:
    return x**k if k >= 0 else np.conj(x) ** (-k)


def t_kernel_entry(t: Sequence[complex], sigma: Word, tau: Word) -> complex:
    """``t_{sigma^{-1} tau}``: product of ``t_i^{[k]}`` over the reduced word."""
    w = 1 + 0j
    for letter, e in free_reduce(sigma, tau):
        w *= _power(complex(t[letter - 1]), e)
    return w


def t_kernel(t: Sequence[complex], n: int) -> KernelMatrix:
    t = contraction_tuple(t)
    words = enumerate_words(len(t), n)
    M = np.array([[t_kernel_entry(t, s, w) for w in words] for s in words])
    return build_kernel(words, M)


def theorem31_polys(t: Sequence[complex], n: int) -> dict[Word, dict[Word, complex]]:
    """Orthonormal polynomials of the contraction kernel up to length ``n``.

    ``phi_k = (X_k - t_k) / d_k`` and ``phi_{sigma k} = X_sigma phi_k``; values
    map each word to its coefficient dictionary in the monomial basis.
    """
    t = contraction_tuple(t)
    polys: dict[Word, dict[Word, complex]] = {(): {(): 1 + 0j}}
    for w in enumerate_words(len(t), n)[1:]:
        sigma, k = w[:-1], w[-1]
        d = float(np.sqrt(1 - abs(t[k - 1]) ** 2))
        polys[w] = {w: 1 / d, sigma: -t[k - 1] / d}
    return polys


def coefficient_matrix(polys: Mapping[Word, Polynomial], labels: Sequence[Word]) -> np.ndarray:
    """Stack coefficient dictionaries as rows over ``labels``."""
    pos = {w: i for i, w in enumerate(labels)}
    A = np.zeros((len(labels), len(labels)), dtype=complex)
    for w, coeffs in polys.items():
        for v, c in coeffs.items():
            A[pos[w], pos[v]] += c
    return A


def xeemp_poly(t: Sequence[complex], sigma: Word, l: int) -> dict[Word, complex]:
    """Shifted polynomial ``(X_sigma - t_p X_q) / d_p`` with ``sigma - l = q p``."""
    t = contraction_tuple(t)
    N = len(t)
    if l < 1:
        raise PreconditionError("shift l must be >= 1; l = 0 is theorem31_polys")
    if rank(sigma, N) <= l:
        raise PreconditionError(f"need rank(sigma) > l, got rank {rank(sigma, N)} and l = {l}")
    q, p = tail_split(sigma, l, N)
    d = float(np.sqrt(1 - abs(t[p - 1]) ** 2))
    out = {tuple(sigma): 1 / d}
    out[q] = out.get(q, 0) - t[p - 1] / d
    return out


@dataclass(frozen=True)
class ChordalReport:
    max_deviation: float
    checked: int


def chordal_identity_check(t: Sequence[complex], n: int) -> ChordalReport:
    """Check ``K(tau, sigma k) = K(tau, sigma) K(sigma, sigma k)`` for ``tau`` before ``sigma k``."""
    t = contraction_tuple(t)
    N = len(t)
    words = enumerate_words(N, n)
    worst, count = 0.0, 0
    for r, w in enumerate(words[1:], 1):
        sigma = w[:-1]
        link = t_kernel_entry(t, sigma, w)
        for tau in words[:r]:
            lhs = t_kernel_entry(t, tau, w)
            rhs = t_kernel_entry(t, tau, sigma) * link
            worst = max(worst, abs(lhs - rhs))
            count += 1
    return ChordalReport(float(worst), count)


def parameter_band(t: Sequence[complex], n: int, tol: float = 1e-10) -> dict[int, int]:
    """For each row ``k`` (in rank order), the largest ``j`` with ``|gamma[k, j]| > tol``.

    Rows whose parameters all vanish map to ``k``.
    """
    K = t_kernel(t, n)
    params = extract(integer_kernel(K.entries))
    band = {k: k for k in range(params.n + 1)}
    for (k, j), g in params.gamma.items():
        if abs(g) > tol:
            band[k] = max(band[k], j)
    return band


# Free products -------------------------------------------------------------


@dataclass(frozen=True)
class ToeplitzMoments:
    """Moments ``c(k) = phi(Z^k)`` of one isometric variable, ``c(0) = 1``."""

    c: tuple[complex, ...]

    def __post_init__(self):
        if not self.c:
            raise ValidationError("moment sequence must be nonempty")
        if abs(self.c[0] - 1) > 1e-12:
            raise ValidationError(f"c(0) must be 1, got {self.c[0]}")

    @classmethod
    def of(cls, values) -> "ToeplitzMoments":
        return cls(tuple(complex(v) for v in values))

    @classmethod
    def geometric(cls, t: complex, depth: int) -> "ToeplitzMoments":
        return cls(tuple(complex(t) ** k for k in range(depth + 1)))

    @property
    def depth(self) -> int:
        return len(self.c) - 1

    def __call__(self, e: int) -> complex:
        """``phi(Z^e)`` for ``e >= 0`` and ``phi((Z^+)^{-e})`` otherwise."""
        if abs(e) > self.depth:
            raise DepthError(f"moment of order {abs(e)} beyond stored depth {self.depth}")
        return self.c[e] if e >= 0 else np.conj(self.c[-e])

    def toeplitz(self, size: int | None = None) -> KernelMatrix:
        size = self.depth + 1 if size is None else size
        M = np.array([[self(j - i) for j in range(size)] for i in range(size)])
        return integer_kernel(M)


def free_product_moment(moments: Sequence[ToeplitzMoments], sigma: Word, tau: Word) -> complex:
    """``phi(W_sigma^+ W_tau)`` for the free product of one-letter functionals.

    Letter ``i`` is the isometric generator of factor ``moments[i-1]``. The
    reduced word splits into alternating blocks ``Z^e`` (``e < 0`` meaning
    ``(Z^+)^{-e}``), none of which is a constant, and the free product is the
    product of the factor values on those blocks.
    """
    for w in (sigma, tau):
        for x in w:
            if not 1 <= x <= len(moments):
                raise ValidationError(f"letter {x} has no factor (N = {len(moments)})")
    value = 1 + 0j
    for letter, e in free_reduce(tuple(sigma), tuple(tau)):
        value *= moments[letter - 1](e)
    return value


STRICT_TOL = 1e-10


def free_product_kernel(moments: Sequence[ToeplitzMoments], n: int) -> KernelMatrix:
    """Moment kernel of the free product over all words of length ``<= n``."""
    moments = list(moments)
    for i, m in enumerate(moments, 1):
        if m.depth < n:
            raise DepthError(f"factor {i} has depth {m.depth} < {n}")
        rep = definiteness(m.toeplitz(n + 1), tol=STRICT_TOL)
        if not rep.is_strict:
            raise PreconditionError(f"factor {i} is not strictly positive to depth {n}")
    words = enumerate_words(len(moments), n)
    size = len(words)
    M = np.zeros((size, size), dtype=complex)
    for i, s in enumerate(words):
        M[i, i] = 1
        for j in range(i + 1, size):
            M[i, j] = free_product_moment(moments, s, words[j])
            M[j, i] = np.conj(M[i, j])
    return build_kernel(words, M)
