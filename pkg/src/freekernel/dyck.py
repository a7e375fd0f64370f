"""Dyck paths and the path-sum form of the transmission line.

A path of length ``2k`` is a tuple of ``+1`` (rise) and ``-1`` (fall)
steps.  The lattice point ``(j + i, j - i)`` with ``0 <= i < j <= k`` is
associated with the parameter ``gamma[i, j]``; a path passing through it
picks up ``gamma`` at a peak, ``-conj(gamma)`` at a valley and the defect
on a straight stretch.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from math import comb

import numpy as np

from .exceptions import PreconditionError, ResourceError
from .schur import SchurParameterTable

MAX_ENUMERATION = 12
MAX_CATALAN = 30

DyckPath = tuple[int, ...]


class VertexClass(str, Enum):
    ABSENT = "absent"
    I = "I"  # rise then fall
    II = "II"  # fall then rise
    III = "III"  # two rises
    IV = "IV"  # two falls


def catalan(k: int) -> int:
    if k < 0:
        raise PreconditionError(f"k must be nonnegative, got {k}")
    if k > MAX_CATALAN:
        raise ResourceError(f"catalan({k}) is beyond the supported range k <= {MAX_CATALAN}")
    return comb(2 * k, k) // (k + 1)


def is_dyck(p) -> bool:
    h = 0
    for s in p:
        if s not in (1, -1):
            return False
        h += s
        if h < 0:
            return False
    return h == 0 and len(p) % 2 == 0


@lru_cache(maxsize=None)
def _enumerate(k: int) -> tuple[DyckPath, ...]:
    out: list[DyckPath] = []
    steps: list[int] = []

    def grow(h: int) -> None:
        left = 2 * k - len(steps)
        if left == 0:
            out.append(tuple(steps))
            return
        if h < left:  # room to come back down
            steps.append(1)
            grow(h + 1)
            steps.pop()
        if h > 0:
            steps.append(-1)
            grow(h - 1)
            steps.pop()

    grow(0)
    return tuple(out)


def enumerate_dyck(k: int) -> list[DyckPath]:
    """All Dyck paths of length ``2k``, lexicographic with rise before fall."""
    if k < 0:
        raise PreconditionError(f"k must be nonnegative, got {k}")
    if k > MAX_ENUMERATION:
        raise ResourceError(f"enumeration is limited to k <= {MAX_ENUMERATION}")
    return list(_enumerate(k))


def classify_vertex(p: DyckPath, i: int, j: int) -> VertexClass:
    k = len(p) // 2
    if not 0 <= i < j <= k:
        raise PreconditionError(f"need 0 <= i < j <= {k}, got ({i}, {j})")
    x, height = j + i, j - i
    if sum(p[:x]) != height:
        return VertexClass.ABSENT
    before, after = p[x - 1], p[x]
    if before == 1:
        return VertexClass.I if after == -1 else VertexClass.III
    return VertexClass.II if after == 1 else VertexClass.IV


@lru_cache(maxsize=None)
def _vertex_table(p: DyckPath) -> tuple[tuple[int, int, VertexClass], ...]:
    # Every interior point of a path lies in the vertex set, so scanning the
    # path gives all non-absent vertices directly.
    out = []
    h = 0
    for x in range(1, len(p)):
        h += p[x - 1]
        if h == 0:
            continue
        i, j = (x - h) // 2, (x + h) // 2
        out.append((i, j, classify_vertex(p, i, j)))
    return tuple(out)


def _factor(cls: VertexClass, g: complex, d: float) -> complex:
    if cls is VertexClass.I:
        return g
    if cls is VertexClass.II:
        return -np.conj(g)
    return d


def path_weight(p: DyckPath, params: SchurParameterTable, l: int, m: int) -> complex:
    """Product of the vertex weights of ``p`` placed between ``(2l, 0)`` and ``(2m, 0)``."""
    if len(p) != 2 * (m - l):
        raise PreconditionError(f"path length {len(p)} does not match 2(m-l) = {2 * (m - l)}")
    if not 0 <= l <= m <= params.n:
        raise PreconditionError(f"range [{l}, {m}] not covered by parameters 0..{params.n}")
    w = 1 + 0j
    for i, j, cls in _vertex_table(tuple(p)):
        g = params[l + i, l + j]
        w *= _factor(cls, g, params.defect(l + i, l + j))
    return w


def kernel_by_dyck_sum(params: SchurParameterTable, l: int, m: int) -> complex:
    """``K(l, m)`` of the unit-diagonal kernel as a sum over Dyck subpaths."""
    if not l < m:
        raise PreconditionError(f"need l < m, got ({l}, {m})")
    if m - l > MAX_ENUMERATION:
        raise ResourceError(f"m - l = {m - l} exceeds the enumeration bound {MAX_ENUMERATION}")
    return complex(sum(path_weight(p, params, l, m) for p in _enumerate(m - l)))


def seismic_trajectories(n: int) -> list[tuple[int, ...]]:
    """Depth sequences of every impulse trajectory returning to the surface at time ``2n``.

    The impulse starts at interface 0 moving down; each unit of time it
    crosses into the next layer (down) or is reflected back up.  Interface
    0 reflects perfectly, so the depth never goes negative.
    """
    out: list[tuple[int, ...]] = []
    depths = [0]

    def move() -> None:
        t = len(depths) - 1
        here = depths[-1]
        if t == 2 * n:
            if here == 0:
                out.append(tuple(depths))
            return
        if here > 2 * n - t:  # cannot make it back in time
            return
        for nxt in (here + 1, here - 1):
            if nxt < 0:
                continue
            depths.append(nxt)
            move()
            depths.pop()

    move()
    return out


def seismic_count(n: int, verify: bool = False) -> int:
    """Number of surface-return trajectories in ``2n`` units of time."""
    c = catalan(n)
    if verify:
        counted = len(seismic_trajectories(n))
        if counted != c:
            raise AssertionError(f"trajectory count {counted} != catalan({n}) = {c}")
    return c
