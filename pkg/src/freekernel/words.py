"""Word arithmetic on the free semigroup with ``N`` generators.

Words are tuples of integers in ``1..N``; the empty tuple is the empty
word.  Ordering is shortlex: shorter words first, ties broken letter by
letter from the left.  Signed words (elements of the free group) are
tuples of ``(letter, exponent)`` pairs with nonzero exponents and no two
adjacent pairs sharing a letter.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .exceptions import InvalidWordError, PreconditionError

Word = tuple[int, ...]
SignedWord = tuple[tuple[int, int], ...]

EMPTY: Word = ()


def as_word(letters: Iterable[int], N: int | None = None) -> Word:
    """Coerce ``letters`` to a word, checking the alphabet when ``N`` is given."""
    w = tuple(int(x) for x in letters)
    if N is not None:
        _check(w, N)
    elif any(x < 1 for x in w):
        raise InvalidWordError(f"letters must be positive, got {w}")
    return w


def _check(w: Sequence[int], N: int) -> None:
    if N < 1:
        raise PreconditionError(f"N must be positive, got {N}")
    for x in w:
        if not 1 <= x <= N:
            raise InvalidWordError(f"letter {x} outside 1..{N} in word {tuple(w)}")


def count_words(N: int, n: int) -> int:
    """Number of words of length at most ``n``."""
    return sum(N**k for k in range(n + 1))


def rank(w: Sequence[int], N: int) -> int:
    """Position of ``w`` in shortlex order (``rank(()) == 0``).

    >>> rank((1, 1), 2)
    3
    """
    _check(w, N)
    L = len(w)
    r = count_words(N, L - 1) if L else 0
    idx = 0
    for x in w:
        idx = idx * N + (x - 1)
    return r + idx


def unrank(k: int, N: int) -> Word:
    """Inverse of :func:`rank`."""
    if k < 0:
        raise PreconditionError(f"rank must be nonnegative, got {k}")
    if N < 1:
        raise PreconditionError(f"N must be positive, got {N}")
    L = 0
    while k >= N**L:
        k -= N**L
        L += 1
    letters = []
    for _ in range(L):
        k, digit = divmod(k, N)
        letters.append(digit + 1)
    return tuple(reversed(letters))


def step_back(w: Sequence[int], l: int, N: int) -> Word:
    """The word ``l`` positions before ``w`` in shortlex order."""
    r = rank(w, N)
    if l < 0:
        raise PreconditionError(f"step count must be nonnegative, got {l}")
    if r < l:
        raise PreconditionError(f"cannot step back {l} from rank {r}")
    return unrank(r - l, N)


def tail_split(w: Sequence[int], l: int, N: int) -> tuple[Word, int]:
    """Split ``step_back(w, l)`` as ``q + (p,)`` with a single last letter ``p``."""
    r = rank(w, N)
    if r <= l:
        raise PreconditionError(
            f"tail_split needs rank(w) > l, got rank {r} and l = {l}"
        )
    v = unrank(r - l, N)
    return v[:-1], v[-1]


def enumerate_words(N: int, n: int) -> list[Word]:
    """All words of length at most ``n`` in shortlex order."""
    if n < 0:
        raise PreconditionError(f"depth must be nonnegative, got {n}")
    if N < 1:
        raise PreconditionError(f"N must be positive, got {N}")
    out: list[Word] = []
    for L in range(n + 1):
        out.extend(product(range(1, N + 1), repeat=L))
    return out


def strip_common_prefix(
    sigma: Sequence[int], tau: Sequence[int]
) -> tuple[Word, Word, Word]:
    """Return ``(alpha, sigma', tau')`` with ``alpha`` the longest common prefix."""
    i = 0
    while i < len(sigma) and i < len(tau) and sigma[i] == tau[i]:
        i += 1
    return tuple(sigma[:i]), tuple(sigma[i:]), tuple(tau[i:])


def _runs(letters: Iterable[int], sign: int) -> list[list[int]]:
    out: list[list[int]] = []
    for x in letters:
        if out and out[-1][0] == x:
            out[-1][1] += sign
        else:
            out.append([x, sign])
    return out


def free_reduce(left: Sequence[int], right: Sequence[int]) -> SignedWord:
    """Reduced form of ``left^{-1} right`` in the free group.

    >>> free_reduce((1, 2), (1,))
    ((2, -1),)
    """
    _, s, t = strip_common_prefix(left, right)
    # After prefix cancellation the junction letters differ, so only
    # same-letter runs on each side merge.
    factors = _runs(reversed(s), -1) + _runs(t, +1)
    return tuple((x, e) for x, e in factors)


def from_digits(text: str) -> Word:
    """Parse a compact digit string such as ``"121"`` (``""`` or ``"e"`` is empty)."""
    text = text.strip()
    if text in ("", "e", "()", "[]"):
        return EMPTY
    if not text.isdigit() or "0" in text:
        raise InvalidWordError(f"not a digit word: {text!r}")
    return tuple(int(c) for c in text)
