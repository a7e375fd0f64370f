"""Displacement equations ``R - sum_k F_k R F_k^H = G J G^H``.

Three instances:

* one variable, forward: ``R_n(t) - F R_n(t+1) F^H = G J G^H`` with the
  lower shift ``F`` and ``J = diag(1, -1)``;
* one variable, inverse: ``R_n(t+1)^{-1} - F^H R_n(t)^{-1} F = H^H J H`` with
  ``H`` read off the orthonormal polynomial coefficients;
* invariant kernels on words of length ``<= n``: the shifts ``F_k`` prepend
  letter ``k`` and the right side is the prefix-free part ``Q_n`` of the
  kernel, factored through a symmetry of fixed size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvarianceError, PreconditionError, ValidationError
from .kmatrix import KernelMatrix, build_kernel, check_invariance, integer_kernel, word_depth
from .orthpoly1 import ShiftedPolyTable, recurrence_polys
from .words import count_words, enumerate_words

FORWARD_TOL = 1e-10
INVERSE_TOL = 1e-9
INVARIANT_TOL = 1e-10
EXACT_TOL = 1e-12

J2 = np.diag([1.0, -1.0]).astype(complex)


def _mat(s) -> np.ndarray:
    return s.entries if isinstance(s, KernelMatrix) else np.asarray(s, dtype=complex)


def lower_shift(size: int) -> np.ndarray:
    return np.eye(size, k=-1, dtype=complex)


def generators_n1(s, n: int, t: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(F_n(t), G_n(t), J(t))`` for the one-variable forward equation."""
    S = _mat(s)
    M = S.shape[0] - 1
    if n < 0 or t < 0 or t + n + 1 > M:
        raise PreconditionError(f"need t + n + 1 <= {M}, got n={n}, t={t}")
    stt = S[t, t].real
    if stt <= 0:
        raise PreconditionError("s[t, t] must be positive")
    G = np.zeros((n + 1, 2), dtype=complex)
    G[0, 0] = stt
    G[1:, 0] = np.conj(S[t, t + 1 : t + n + 1])
    G[1:, 1] = G[1:, 0]
    return lower_shift(n + 1), G / np.sqrt(stt), J2.copy()


def residual_forward_n1(s, n: int, t: int) -> float:
    S = _mat(s)
    F, G, J = generators_n1(S, n, t)
    R0 = S[t : t + n + 1, t : t + n + 1]
    R1 = S[t + 1 : t + n + 2, t + 1 : t + n + 2]
    return float(np.abs(R0 - F @ R1 @ F.conj().T - G @ J @ G.conj().T).max())


@dataclass(frozen=True)
class InverseDisplacement:
    H: np.ndarray
    K: np.ndarray
    residual: float
    identity1_residual: float  # F R(t+1) H^H + G J K^H = 0
    identity2_residual: float  # H R(t+1) H^H + K J K^H = J

    @property
    def max_residual(self) -> float:
        return max(self.residual, self.identity1_residual, self.identity2_residual)

    @property
    def ok(self) -> bool:
        return self.max_residual < INVERSE_TOL


def inverse_generators(table: ShiftedPolyTable, s, n: int, t: int):
    """``(H_n(t), K_n(t))`` built from ``a^{t+1}_n`` and ``b^t_n``."""
    S = _mat(s)
    a, b = table.phi[n, t + 1], table.phi_sharp[n, t]
    H = np.zeros((2, n + 1), dtype=complex)
    H[0, :n] = np.conj(a[:n])
    H[0, n] = a[n]
    H[1, :n] = np.conj(b[1:])
    K = np.zeros((2, 2), dtype=complex)
    K[1, 1] = -np.sqrt(S[t, t].real) * b[0]
    return H, K


def inverse_displacement_n1(s, n: int, t: int, table: ShiftedPolyTable | None = None):
    S = _mat(s)
    F, G, J = generators_n1(S, n, t)
    table = recurrence_polys(integer_kernel(S)) if table is None else table
    H, K = inverse_generators(table, S, n, t)
    R0 = S[t : t + n + 1, t : t + n + 1]
    R1 = S[t + 1 : t + n + 2, t + 1 : t + n + 2]
    lhs = np.linalg.inv(R1) - F.conj().T @ np.linalg.inv(R0) @ F
    return InverseDisplacement(
        H=H,
        K=K,
        residual=float(np.abs(lhs - H.conj().T @ J @ H).max()),
        identity1_residual=float(np.abs(F @ R1 @ H.conj().T + G @ J @ K.conj().T).max()),
        identity2_residual=float(np.abs(H @ R1 @ H.conj().T + K @ J @ K.conj().T - J).max()),
    )


# Invariant kernels ---------------------------------------------------------


def shift_matrices(N: int, n: int) -> list[np.ndarray]:
    """``F_{k,n}`` for ``k = 1..N``: ``(F h)[k sigma] = h[sigma]``, zero elsewhere.

    Words of length ``n`` would map outside the truncation, so their
    columns are zero.
    """
    words = enumerate_words(N, n)
    pos = {w: i for i, w in enumerate(words)}
    out = []
    for k in range(1, N + 1):
        F = np.zeros((len(words), len(words)))
        for w in words:
            if len(w) < n:
                F[pos[(k,) + w], pos[w]] = 1
        out.append(F)
    return out


def displacement_lhs(K: KernelMatrix, N: int) -> np.ndarray:
    n = word_depth(K, N)
    R = K.entries
    out = R.copy()
    for F in shift_matrices(N, n):
        out -= F @ R @ F.T
    return out


def q_matrix(K: KernelMatrix, N: int) -> KernelMatrix:
    """Prefix-free part of ``K``: entries with a common nonempty prefix are zeroed."""
    word_depth(K, N)
    words = K.labels
    Q = K.entries.copy()
    for i, s in enumerate(words):
        for j, w in enumerate(words):
            if s and w and s[0] == w[0]:
                Q[i, j] = 0
    res = float(np.abs(displacement_lhs(K, N) - Q).max())
    if res > INVARIANT_TOL:
        rep = check_invariance(K, N)
        raise InvarianceError(
            f"kernel is not invariant: displacement residual {res:.3g}, "
            f"violation {rep.max_violation:.3g} at (tau, sigma, sigma') = {rep.triple}",
            triple=rep.triple,
            violation=rep.max_violation,
        )
    return build_kernel(words, Q)


def anti_identity(blocks: int, block_size: int) -> np.ndarray:
    """Block anti-diagonal identity with ``blocks`` blocks of size ``block_size``."""
    return np.kron(np.fliplr(np.eye(blocks)), np.eye(block_size))


def zero_diag_factor(A, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Factor a selfadjoint ``p x p`` block matrix with zero diagonal blocks.

    Returns ``(B, I)`` with ``A = B @ I @ B^H``; ``I`` is the block
    anti-identity of ``2p - 2`` blocks.  For ``p = 1`` the matrix is zero
    and both factors are empty.
    """
    A = np.asarray(A, dtype=complex)
    if p < 1 or A.shape[0] % p or A.shape[0] != A.shape[1]:
        raise ValidationError(f"cannot split a {A.shape} matrix into {p}x{p} blocks")
    m = A.shape[0] // p
    if np.abs(A - A.conj().T).max(initial=0) > EXACT_TOL * (1 + np.abs(A).max(initial=0)):
        raise ValidationError("block matrix is not selfadjoint")
    for k in range(p):
        blk = A[k * m : (k + 1) * m, k * m : (k + 1) * m]
        if np.abs(blk).max(initial=0) > 0:
            raise ValidationError(f"diagonal block {k + 1} is not zero")
    if p == 1:
        return np.zeros((m, 0), dtype=complex), np.zeros((0, 0), dtype=complex)
    B = np.zeros((p * m, (2 * p - 2) * m), dtype=complex)
    for c in range(p - 1):
        # column block c carries the strictly lower blocks A[i, c], i > c
        B[(c + 1) * m :, c * m : (c + 1) * m] = A[(c + 1) * m :, c * m : (c + 1) * m]
    for r in range(p - 1):
        # row block r carries an identity in column block 2p-3-r
        col = 2 * p - 3 - r
        B[r * m : (r + 1) * m, col * m : (col + 1) * m] = np.eye(m)
    return B, anti_identity(2 * p - 2, m)


def symmetry_dimension(N: int, n: int) -> int:
    return 2 + (2 * N - 2) * count_words(N, n - 1) if n > 0 else 2


def half_inertia(N: int, n: int) -> int:
    return 1 + (N - 1) * count_words(N, n - 1) if n > 0 else 1


def subtree_permutation(N: int, n: int) -> tuple[np.ndarray, list]:
    """Permutation of the nonempty words grouping them by first letter.

    Returns ``(P, order)`` with ``(P @ x)[i] = x[shortlex index of order[i]]``.
    """
    words = enumerate_words(N, n)[1:]
    pos = {w: i for i, w in enumerate(words)}
    order = sorted(words, key=lambda w: (w[0], len(w), w))
    P = np.zeros((len(words), len(words)))
    for i, w in enumerate(order):
        P[i, pos[w]] = 1
    return P, order


@dataclass(frozen=True)
class InvariantFactorization:
    G: np.ndarray
    J: np.ndarray
    residual: float  # |Q - G J G^H|
    displacement_residual: float  # |R - sum F R F^H - G J G^H|

    @property
    def dimension(self) -> int:
        return self.J.shape[0]

    @property
    def ok(self) -> bool:
        return max(self.residual, self.displacement_residual) < INVARIANT_TOL


def invariant_factorization(K: KernelMatrix, N: int) -> InvariantFactorization:
    """Generators ``(G_n, J_n)`` of the displacement equation of an invariant kernel."""
    n = word_depth(K, N)
    if np.abs(K.entries.diagonal() - 1).max() > EXACT_TOL * 100:
        raise PreconditionError("invariant factorization needs a unit diagonal")
    Q = q_matrix(K, N).entries
    size = Q.shape[0]
    S = Q[0, 1:]
    first = np.zeros((size, 2), dtype=complex)
    first[0, 0] = 1
    first[1:, 0] = S.conj()
    first[1:, 1] = S.conj()
    if n == 0 or N == 1:
        # All nonempty words share their first letter: the L block vanishes.
        G, J = first, J2.copy()
    else:
        P, _ = subtree_permutation(N, n)
        L = Q[1:, 1:]
        B, I = zero_diag_factor(P @ L @ P.T, N)
        lower = np.zeros((size, B.shape[1]), dtype=complex)
        lower[1:] = P.T @ B
        G = np.hstack([first, lower])
        J = np.zeros((2 + I.shape[0],) * 2, dtype=complex)
        J[:2, :2] = J2
        J[2:, 2:] = I
    rhs = G @ J @ G.conj().T
    return InvariantFactorization(
        G=G,
        J=J,
        residual=float(np.abs(Q - rhs).max()),
        displacement_residual=float(np.abs(displacement_lhs(K, N) - rhs).max()),
    )


def diagonalize_symmetry(J) -> tuple[np.ndarray, int]:
    """Unitary ``W`` with ``W J W^H = diag(I_p, -I_q)``; returns ``(W, p)``.

    ``J`` must be a hermitian involution with entries in ``{0, 1, -1}``
    (a signed permutation).  Diagonal entries map to unit vectors and each
    swapped pair ``(i, j)`` to ``(e_i +- v e_j) / sqrt(2)``.
    """
    J = np.asarray(J, dtype=complex)
    dim = J.shape[0]
    if np.abs(J @ J - np.eye(dim)).max(initial=0) > EXACT_TOL or np.abs(J - J.conj().T).max(initial=0) > EXACT_TOL:
        raise ValidationError("J is not a hermitian involution")
    plus, minus = [], []
    seen = set()
    for i in range(dim):
        if i in seen:
            continue
        nz = np.flatnonzero(np.abs(J[i]) > 0.5)
        if len(nz) != 1:
            raise ValidationError("J is not a signed permutation")
        j = int(nz[0])
        v = J[i, j].real
        e_i = np.zeros(dim)
        e_i[i] = 1
        if j == i:
            (plus if v > 0 else minus).append(e_i)
        else:
            e_j = np.zeros(dim)
            e_j[j] = 1
            plus.append((e_i + v * e_j) / np.sqrt(2))
            minus.append((e_i - v * e_j) / np.sqrt(2))
            seen.add(j)
        seen.add(i)
    W = np.array(plus + minus, dtype=complex).reshape(dim, dim)
    return W, len(plus)
