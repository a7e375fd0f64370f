import itertools

import numpy as np
import pytest

from freekernel.dyck import (
    VertexClass,
    catalan,
    classify_vertex,
    enumerate_dyck,
    is_dyck,
    kernel_by_dyck_sum,
    path_weight,
    seismic_count,
    seismic_trajectories,
)
from freekernel.exceptions import PreconditionError, ResourceError
from freekernel.schur import SchurParameterTable, reconstruct
from freekernel.generators import random_params


def brute_dyck(k):
    return [p for p in itertools.product((1, -1), repeat=2 * k) if is_dyck(p)]


def catalan_recurrence(n):
    c = [1]
    for m in range(n):
        c.append(sum(c[i] * c[m - i] for i in range(m + 1)))
    return c[n]


def test_catalan_values():
    assert catalan(0) == 1
    assert catalan(3) == 5
    assert catalan(6) == 132
    assert catalan(10) == 16796
    for k in range(20):
        assert catalan(k) == catalan_recurrence(k)
    with pytest.raises(PreconditionError):
        catalan(-1)
    with pytest.raises(ResourceError):
        catalan(31)


@pytest.mark.parametrize("k", range(0, 9))
def test_enumeration_matches_brute_force(k):
    assert sorted(enumerate_dyck(k)) == sorted(brute_dyck(k))
    assert len(enumerate_dyck(k)) == catalan(k)


def test_enumeration_small():
    assert enumerate_dyck(1) == [(1, -1)]
    assert len(enumerate_dyck(2)) == 2
    paths = enumerate_dyck(4)
    assert len(paths) == 14
    assert (1, 1, -1, 1, 1, -1, -1, -1) in paths
    assert all(is_dyck(p) for p in paths)
    with pytest.raises(ResourceError):
        enumerate_dyck(13)


def test_classify_vertex():
    assert classify_vertex((1, -1), 0, 1) is VertexClass.I
    p = (1, 1, -1, -1)
    assert classify_vertex(p, 0, 1) is VertexClass.III
    assert classify_vertex(p, 0, 2) is VertexClass.I
    assert classify_vertex(p, 1, 2) is VertexClass.IV
    q = (1, -1, 1, -1)
    assert classify_vertex(q, 0, 1) is VertexClass.I
    assert classify_vertex(q, 1, 2) is VertexClass.I
    assert classify_vertex(q, 0, 2) is VertexClass.ABSENT
    assert classify_vertex((1, 1, -1, 1, -1, -1), 1, 2) is VertexClass.II
    with pytest.raises(PreconditionError):
        classify_vertex(p, 2, 1)


def test_each_interior_point_has_one_class():
    for p in enumerate_dyck(5):
        present = 0
        for i in range(5):
            for j in range(i + 1, 6):
                if classify_vertex(p, i, j) is not VertexClass.ABSENT:
                    present += 1
        heights = np.cumsum(p)[:-1]
        assert present == int(np.count_nonzero(heights))


def test_path_weight_examples():
    g = {(0, 1): 0.3 + 0.1j, (1, 2): -0.2 + 0.5j, (0, 2): 0.4 - 0.3j}
    params = SchurParameterTable(2, g)
    d = {kj: np.sqrt(1 - abs(v) ** 2) for kj, v in g.items()}
    assert path_weight((1, -1), params, 0, 1) == pytest.approx(g[0, 1])
    assert path_weight((1, 1, -1, -1), params, 0, 2) == pytest.approx(d[0, 1] * g[0, 2] * d[1, 2])
    assert path_weight((1, -1, 1, -1), params, 0, 2) == pytest.approx(g[0, 1] * g[1, 2])


def test_valley_weight():
    # (1,1,-1,1,-1,-1): peaks (0,2),(1,3), valley (1,2), ascent (0,1), descent (2,3)
    g = {(k, j): 0.1 * (k + 1) + 0.05j * j for k in range(4) for j in range(k + 1, 4)}
    params = SchurParameterTable(3, g)
    d = params.defect
    expected = d(0, 1) * g[0, 2] * (-np.conj(g[1, 2])) * g[1, 3] * d(2, 3)
    assert path_weight((1, 1, -1, 1, -1, -1), params, 0, 3) == pytest.approx(expected)


def test_dyck_sum_examples():
    p = SchurParameterTable(1, {(0, 1): 0.5})
    assert kernel_by_dyck_sum(p, 0, 1) == pytest.approx(0.5)
    p = SchurParameterTable(2, {(0, 1): 0.5, (1, 2): 0.5, (0, 2): 0})
    assert kernel_by_dyck_sum(p, 0, 2) == pytest.approx(0.25)


def test_dyck_sum_matches_transmission_line(rng):
    for _ in range(10):
        p = random_params(6, rng)
        K = reconstruct(p)
        for l in range(6):
            for m in range(l + 1, 7):
                assert abs(kernel_by_dyck_sum(p, l, m) - K(l, m)) < 1e-9


def test_dyck_sum_shift():
    p = SchurParameterTable.from_function(4, lambda k, j: 0.1 * k - 0.2j / j)
    K = reconstruct(p)
    assert kernel_by_dyck_sum(p, 2, 4) == pytest.approx(K(2, 4))


def test_seismic():
    assert seismic_count(1, verify=True) == 1
    assert seismic_count(2, verify=True) == 2
    assert len(seismic_trajectories(5)) == 42
    for n in range(7):
        traj = seismic_trajectories(n)
        assert len(traj) == catalan(n)
        for t in traj:
            assert t[0] == 0 and t[-1] == 0 and min(t) >= 0
            assert all(abs(a - b) == 1 for a, b in zip(t, t[1:]))
