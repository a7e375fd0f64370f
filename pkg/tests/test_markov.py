import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freekernel.exceptions import PreconditionError, ValidationError
from freekernel.generators import default_rng, random_pd_matrix
from freekernel.kmatrix import definiteness, integer_kernel
from freekernel.markov import markov_product, verify_markov_parameters
from freekernel.schur import extract


def glued_pair(rng, n, m, glue=1.0):
    R = random_pd_matrix(n + 1, rng)
    L = random_pd_matrix(m + 1, rng)
    R *= glue / R[0, 0].real
    L *= glue / L[m, m].real
    return integer_kernel(R), integer_kernel(L)


def test_two_by_two_example():
    K1 = integer_kernel([[1, 0.5], [0.5, 1]])
    K2 = integer_kernel([[1, 0.3], [0.3, 1]])
    P = markov_product(K1, K2)
    assert P.labels == (-1, 0, 1)
    assert P(1, -1) == pytest.approx(0.15)
    assert P(-1, 1) == pytest.approx(0.15)
    assert abs(extract(integer_kernel(P.entries))[0, 2]) < 1e-12


def test_identity_factor_gives_zero_cross_block():
    K = integer_kernel(random_pd_matrix(3, default_rng(1), unit_diag=True))
    P = markov_product(integer_kernel(np.eye(3)), K)
    assert np.abs(P.entries[3:, :2]).max() == 0
    r = verify_markov_parameters(integer_kernel(np.eye(3)), integer_kernel(np.eye(3)))
    assert r.ok and r.cross_max == 0


def test_one_by_one_glue():
    P = markov_product(integer_kernel([[2.0]]), integer_kernel([[2.0]]))
    assert P.labels == (0,)
    assert P(0, 0) == 2


def test_glue_mismatch_and_indefinite():
    with pytest.raises(ValidationError):
        markov_product(integer_kernel([[1, 0], [0, 1]]), integer_kernel([[1, 0], [0, 2]]))
    with pytest.raises(PreconditionError):
        markov_product(integer_kernel([[1, 2], [2, 1]]), integer_kernel([[1]]))


@given(st.integers(0, 5), st.integers(0, 5), st.floats(0.2, 5), st.integers(0, 2**31))
def test_inverse_vanishes_on_cross_block(n, m, glue, seed):
    # Independent characterisation: the glued kernel is the maximum-entropy
    # extension, so its inverse is zero between the two sides.
    R, L = glued_pair(default_rng(seed), n, m, glue)
    P = markov_product(R, L).entries
    Pinv = np.linalg.inv(P)
    assert np.abs(Pinv[m + 1 :, :m]).max(initial=0) < 1e-8 * np.abs(Pinv).max()
    assert np.allclose(P[m:, m:], R.entries)
    assert np.allclose(P[: m + 1, : m + 1], L.entries)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**31))
def test_parameter_structure(n, m, seed):
    R, L = glued_pair(default_rng(seed), n, m)
    r = verify_markov_parameters(R, L)
    assert r.ok
    assert r.min_pivot > 0


def test_semidefinite_factors_stay_psd(rng):
    v = rng.normal(size=3) + 1j * rng.normal(size=3)
    v /= abs(v[0])
    R = integer_kernel(np.outer(v, v.conj()))
    L = random_pd_matrix(3, rng)
    L = integer_kernel(L / L[2, 2].real)
    P = markov_product(R, L)
    assert definiteness(P).is_psd
