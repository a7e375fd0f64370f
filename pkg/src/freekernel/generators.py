"""Random test data: positive definite kernels, parameter tables, moments."""

from __future__ import annotations

import os

import numpy as np

from .invariant import ToeplitzMoments
from .kmatrix import KernelMatrix, integer_kernel
from .schur import SchurParameterTable

SEED_ENV = "FREEKERNEL_SEED"


def default_rng(seed: int | None = None) -> np.random.Generator:
    """RNG seeded from ``seed`` or, failing that, ``$FREEKERNEL_SEED`` (default 0)."""
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    return np.random.default_rng(seed)


def random_pd_matrix(size: int, rng: np.random.Generator, eps: float = 0.1, unit_diag=False):
    X = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    M = X.conj().T @ X / size + eps * np.eye(size)
    if unit_diag:
        d = np.sqrt(M.diagonal().real)
        M = M / np.outer(d, d)
    return (M + M.conj().T) / 2


def random_pd_kernel(size: int, rng: np.random.Generator, **kw) -> KernelMatrix:
    return integer_kernel(random_pd_matrix(size, rng, **kw))


def random_disk(rng: np.random.Generator, rmax: float) -> complex:
    """Uniform point of the disk of radius ``rmax``."""
    r = rmax * np.sqrt(rng.uniform())
    return complex(r * np.exp(2j * np.pi * rng.uniform()))


def random_params(n: int, rng: np.random.Generator, rmax: float = 0.9) -> SchurParameterTable:
    return SchurParameterTable.from_function(n, lambda k, j: random_disk(rng, rmax))


def random_tuple(N: int, rng: np.random.Generator, rmax: float = 0.9) -> list[complex]:
    return [random_disk(rng, rmax) for _ in range(N)]


def random_moments(depth: int, rng: np.random.Generator, atoms: int = 8) -> ToeplitzMoments:
    """Trigonometric moments of a random atomic probability measure on the circle."""
    w = rng.uniform(0.1, 1.0, atoms)
    w /= w.sum()
    theta = rng.uniform(0, 2 * np.pi, atoms)
    c = [complex(np.sum(w * np.exp(1j * k * theta))) for k in range(depth + 1)]
    c[0] = 1 + 0j
    return ToeplitzMoments(tuple(c))


def random_zero_diagonal(p: int, rng: np.random.Generator, block: int = 1) -> np.ndarray:
    size = p * block
    X = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    A = X + X.conj().T
    for k in range(p):
        A[k * block : (k + 1) * block, k * block : (k + 1) * block] = 0
    return A
