import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import toeplitz_half
from freekernel.exceptions import DegenerateKernelError, PreconditionError
from freekernel.generators import default_rng, random_pd_matrix
from freekernel.kmatrix import integer_kernel, orthonormalize
from freekernel.orthpoly1 import recurrence_polys, verify_coefficient_systems, window
from freekernel.schur import defect


def sharp_oracle(R):
    """Coefficients b with R b = e_0 / b_0 and b_0 > 0, by a dense solve."""
    x = np.linalg.solve(R, np.eye(R.shape[0])[:, 0])
    return x / np.sqrt(x[0].real)


def test_identity_moments():
    T = recurrence_polys(np.eye(5))
    for n in range(5):
        for l in range(5 - n):
            e = np.zeros(n + 1)
            e[-1] = 1
            assert np.allclose(T.phi[n, l], e)
            assert np.allclose(T.phi_sharp[n, l], e[::-1])


def test_half_toeplitz():
    T = recurrence_polys(toeplitz_half(4))
    assert np.allclose(T.phi[1, 0], np.array([-0.5, 1]) / np.sqrt(0.75))
    R = toeplitz_half(2)
    assert np.allclose(R @ T.phi[1, 0], [0, np.sqrt(0.75)])
    assert 1 / T.phi[1, 0][-1] == pytest.approx(np.sqrt(0.75))


@given(st.integers(1, 8), st.integers(0, 2**31))
def test_matches_gram_schmidt_on_every_window(size, seed):
    s = integer_kernel(random_pd_matrix(size, default_rng(seed)))
    T = recurrence_polys(s)
    for n in range(size):
        for l in range(size - n):
            R = window(s, n, l)
            A = orthonormalize(R).coefficients
            assert np.abs(T.phi[n, l] - A[n]).max() < 1e-9
            assert np.abs(T.phi_sharp[n, l] - sharp_oracle(R.entries)).max() < 1e-9


@given(st.integers(1, 8), st.integers(0, 2**31))
def test_coefficient_systems(size, seed):
    s = integer_kernel(random_pd_matrix(size, default_rng(seed)))
    T = recurrence_polys(s)
    for n in range(size):
        for t in range(size - n):
            assert verify_coefficient_systems(s, n, t, T).ok


def test_constant_coefficient_uses_first_diagonal_entry(rng):
    # b^l_{n,0} inverts sqrt(s[l,l]) * prod d[l, l+k]; with sqrt(s[l+n,l+n])
    # in its place the formula only holds for a unit diagonal.
    S = random_pd_matrix(5, rng)
    S = S * np.sqrt(np.outer(np.arange(1, 6), np.arange(1, 6)))
    T = recurrence_polys(S)
    n, l = 3, 1
    b0 = T.phi_sharp[n, l][0]
    prod = np.prod([defect(T.params[l, l + k]) for k in range(1, n + 1)])
    assert 1 / b0 == pytest.approx(np.sqrt(S[l, l].real) * prod)
    assert abs(1 / b0 - np.sqrt(S[l + n, l + n].real) * prod) > 1e-3


def test_leading_coefficient_formula(rng):
    S = random_pd_matrix(6, rng) * 3.0
    T = recurrence_polys(S)
    for n in range(6):
        for l in range(6 - n):
            assert 1 / T.phi[n, l][-1] == pytest.approx(T.leading_product(n, l), rel=1e-10)


def test_errors():
    with pytest.raises(DegenerateKernelError):
        recurrence_polys(np.ones((3, 3)))
    s = integer_kernel(toeplitz_half(3))
    with pytest.raises(PreconditionError):
        verify_coefficient_systems(s, 2, 1)
