import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from freekernel.exceptions import InvalidWordError, PreconditionError
from freekernel.words import (
    EMPTY,
    count_words,
    enumerate_words,
    free_reduce,
    from_digits,
    rank,
    step_back,
    strip_common_prefix,
    tail_split,
    unrank,
)


def brute_shortlex(N, n):
    out = []
    for L in range(n + 1):
        out.extend(itertools.product(range(1, N + 1), repeat=L))
    return out


def words(N, max_len=5):
    return st.lists(st.integers(1, N), max_size=max_len).map(tuple)


def test_rank_examples():
    assert rank(EMPTY, 2) == 0
    assert rank((1,), 2) == 1
    assert rank((1, 1), 2) == 3
    assert rank((2, 1), 2) == 5


def test_rank_matches_enumeration_order():
    for N in (1, 2, 3):
        for k, w in enumerate(brute_shortlex(N, 4)):
            assert rank(w, N) == k


def test_unrank_examples():
    assert unrank(0, 3) == ()
    assert unrank(4, 3) == (1, 1)


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_unrank_rank_roundtrip(N):
    for k in range(1001):
        assert rank(unrank(k, N), N) == k


def test_rank_rejects_bad_letters():
    with pytest.raises(InvalidWordError):
        rank((0, 1), 2)
    with pytest.raises(InvalidWordError):
        rank((3,), 2)
    with pytest.raises(PreconditionError):
        unrank(-1, 2)


def test_step_back():
    assert step_back((1, 1), 1, 2) == (2,)
    assert step_back((2,), 2, 2) == ()
    assert step_back((2, 1, 2), 0, 2) == (2, 1, 2)
    with pytest.raises(PreconditionError):
        step_back((1,), 2, 2)


def test_tail_split():
    assert tail_split((1, 1), 0, 2) == ((1,), 1)
    assert tail_split((1, 1), 1, 2) == ((), 2)
    # rank 5 - 2 = rank 3, which is (1, 1)
    assert tail_split((2, 1), 2, 2) == ((1,), 1)
    with pytest.raises(PreconditionError):
        tail_split((1,), 1, 2)


@given(words(3), st.integers(0, 6))
def test_tail_split_consistent_with_step_back(w, l):
    if not w or rank(w, 3) - l < 1:
        return
    q, p = tail_split(w, l, 3)
    assert q + (p,) == step_back(w, l, 3)


def test_enumerate_words():
    assert enumerate_words(2, 1) == [(), (1,), (2,)]
    assert len(enumerate_words(2, 2)) == 7
    assert len(enumerate_words(3, 3)) == 40
    assert enumerate_words(3, 3) == brute_shortlex(3, 3)
    assert count_words(1, 4) == 5


def test_strip_common_prefix():
    assert strip_common_prefix((1, 2), (1, 1)) == ((1,), (2,), (1,))
    assert strip_common_prefix((1,), (2,))[0] == ()
    assert strip_common_prefix((1, 2), (1, 2)) == ((1, 2), (), ())


def test_free_reduce_examples():
    assert free_reduce((1,), (1,)) == ()
    assert free_reduce((1,), (2,)) == ((1, -1), (2, 1))
    assert free_reduce((1, 2), (1,)) == ((2, -1),)
    assert free_reduce((1, 1, 2), (1, 1)) == ((2, -1),)
    assert free_reduce((2, 1, 1), (2, 2)) == ((1, -2), (2, 1))


def _freegroup_reduce(sigma, tau):
    # Independent oracle: stack-based cancellation of sigma^{-1} tau.
    letters = [(x, -1) for x in reversed(sigma)] + [(x, 1) for x in tau]
    stack = []
    for x, e in letters:
        if stack and stack[-1][0] == x and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((x, e))
    runs = []
    for x, e in stack:
        if runs and runs[-1][0] == x and (runs[-1][1] > 0) == (e > 0):
            runs[-1][1] += e
        else:
            runs.append([x, e])
    return tuple((x, e) for x, e in runs)


@given(words(3), words(3))
def test_free_reduce_matches_stack_reduction(s, t):
    assert free_reduce(s, t) == _freegroup_reduce(s, t)


@given(words(2), words(2), words(2))
def test_free_reduce_left_invariant(prefix, s, t):
    assert free_reduce(prefix + s, prefix + t) == free_reduce(s, t)


def test_from_digits():
    assert from_digits("121") == (1, 2, 1)
    assert from_digits("e") == ()
    with pytest.raises(InvalidWordError):
        from_digits("102")
