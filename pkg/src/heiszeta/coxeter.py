"""Exact permutation statistics on the symmetric group S_n.

Permutations are stored in one-line notation with 1-based values: position i
holds w(i).  Everything here is pure and exact; the statistics provided are
the inversion count (Coxeter length), right descent sets, and right parabolic
length functions, together with the handful of distinguished elements
(identity, longest element, powers of the standard n-cycle) needed by the
zeta-function constructors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _lex_permutations
from typing import Iterable, Iterator

from .errors import CapacityError

# 12! is the practical desk-scale ceiling for full enumeration.
MAX_ENUMERATION_DEGREE = 12


@dataclass(frozen=True)
class Permutation:
    """An element of S_n in one-line notation (1-based images)."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1:
            raise ValueError("degree must be at least 1")
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [{n}]: {self.images!r}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        """Image of i under the permutation, 1-based."""
        return self.images[i - 1]

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)!r})"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest_element(n: int) -> Permutation:
    """The unique longest element w_0, i.e. i -> n+1-i."""
    return Permutation(tuple(range(n, 0, -1)))


def compose(u: Permutation, w: Permutation) -> Permutation:
    """Functional composition: (u o w)(i) = u(w(i))."""
    if u.degree != w.degree:
        raise ValueError(f"degree mismatch: {u.degree} vs {w.degree}")
    ui = u.images
    return Permutation(tuple(ui[j - 1] for j in w.images))


def inverse(w: Permutation) -> Permutation:
    imgs = [0] * w.degree
    for i, j in enumerate(w.images, start=1):
        imgs[j - 1] = i
    return Permutation(tuple(imgs))


def power_of_cycle(n: int, m: int) -> Permutation:
    """c^m for the n-cycle c = (1 2 ... n), so c(i) = i+1 and c(n) = 1."""
    if m < 0:
        raise ValueError("nonnegative powers only")
    return Permutation(tuple((i + m) % n + 1 for i in range(n)))


def enumerate_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic one-line order (identity first, w_0 last)."""
    if not 1 <= n <= MAX_ENUMERATION_DEGREE:
        raise CapacityError(
            f"degree {n} outside [1, {MAX_ENUMERATION_DEGREE}]"
        )
    for images in _lex_permutations(range(1, n + 1)):
        yield Permutation(images)


def inversions(images: tuple[int, ...]) -> int:
    """Inversion count of a raw one-line tuple (shared hot path)."""
    count = 0
    n = len(images)
    for i in range(n):
        wi = images[i]
        for j in range(i + 1, n):
            if wi > images[j]:
                count += 1
    return count


def length(w: Permutation) -> int:
    """Coxeter length of w; equals the number of inversions."""
    return inversions(w.images)


def descents(images: tuple[int, ...]) -> frozenset[int]:
    return frozenset(
        i + 1 for i in range(len(images) - 1) if images[i] > images[i + 1]
    )


def descent_set(w: Permutation) -> frozenset[int]:
    """Right descent set {i in [n-1] : w(i) > w(i+1)}."""
    return descents(w.images)


def _validated_index_set(n: int, I: Iterable[int]) -> frozenset[int]:
    members = frozenset(I)
    if not all(isinstance(i, int) and 1 <= i <= n - 1 for i in members):
        raise ValueError(f"index set {sorted(members)!r} not contained in [1, {n - 1}]")
    return members


@lru_cache(maxsize=None)
def _blocks(n: int, members: frozenset[int]) -> tuple[tuple[int, int], ...]:
    """Maximal runs [start, stop] of positions joined by the generators in I."""
    blocks = []
    start = 1
    for i in range(1, n):
        if i not in members:
            blocks.append((start, i))
            start = i + 1
    blocks.append((start, n))
    return tuple(blocks)


def coset_representative(w: Permutation, I: Iterable[int]) -> Permutation:
    """The shortest element w^I of the coset wW_I.

    Obtained by sorting the images of w over each I-connected block of
    positions; this realizes the unique factorization w = w^I w_I without
    enumerating W_I.
    """
    members = _validated_index_set(w.degree, I)
    imgs = list(w.images)
    for start, stop in _blocks(w.degree, members):
        if stop > start:
            imgs[start - 1:stop] = sorted(imgs[start - 1:stop])
    return Permutation(tuple(imgs))


def parabolic_length(w: Permutation, I: Iterable[int]) -> int:
    """Right parabolic length: the length of the shortest element of wW_I."""
    members = _validated_index_set(w.degree, I)
    imgs = list(w.images)
    for start, stop in _blocks(w.degree, members):
        if stop > start:
            imgs[start - 1:stop] = sorted(imgs[start - 1:stop])
    return inversions(tuple(imgs))
