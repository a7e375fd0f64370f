"""Positive definite kernels on the free semigroup.

Schur parameters and their transmission-line realisation, Dyck path sums,
Markov products, invariant kernels (contraction tuples and free products),
one-variable orthonormal polynomials and the associated displacement
equations.
"""

from .kmatrix import (
    CoefficientMatrix,
    KernelMatrix,
    build_kernel,
    check_invariance,
    definiteness,
    orthonormalize,
    restrict,
)
from .schur import SchurParameterTable, extract, julia, reconstruct

__all__ = [
    "CoefficientMatrix",
    "KernelMatrix",
    "SchurParameterTable",
    "build_kernel",
    "check_invariance",
    "definiteness",
    "extract",
    "julia",
    "orthonormalize",
    "reconstruct",
    "restrict",
]

__version__ = "0.1.0"
