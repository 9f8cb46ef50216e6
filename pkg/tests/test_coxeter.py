"""Permutation statistics: contract examples and exhaustive identities."""

from collections import deque

import pytest

from heiszeta import coxeter
from heiszeta.coxeter import (
    Permutation,
    compose,
    descent_set,
    enumerate_permutations,
    identity,
    length,
    longest_element,
    parabolic_length,
    power_of_cycle,
)
from heiszeta.errors import CapacityError


def bfs_length(images):
    """Independent length oracle: BFS distance from the identity in the
    Cayley graph of adjacent transpositions."""
    n = len(images)
    start = tuple(range(1, n + 1))
    target = tuple(images)
    seen = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == target:
            return seen[cur]
        for i in range(n - 1):
            nxt = list(cur)
            nxt[i], nxt[i + 1] = nxt[i + 1], nxt[i]
            nxt = tuple(nxt)
            if nxt not in seen:
                seen[nxt] = seen[cur] + 1
                queue.append(nxt)
    raise AssertionError("unreachable permutation")


def all_index_subsets(n):
    return [
        frozenset(i + 1 for i in range(n - 1) if bits >> i & 1)
        for bits in range(1 << (n - 1))
    ]


def test_validation():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation(())
    with pytest.raises(ValueError):
        Permutation((0, 1))


def test_length_paper_example():
    w = Permutation((2, 5, 6, 1, 3, 4))
    assert length(w) == 7
    assert descent_set(w) == {3}
    assert parabolic_length(w, {1, 2, 3, 4}) == 2


def test_length_trivial_cases():
    assert length(identity(5)) == 0
    assert length(longest_element(6)) == 15
    assert descent_set(identity(4)) == frozenset()
    assert descent_set(longest_element(5)) == {1, 2, 3, 4}


def test_parabolic_empty_set_is_length():
    for w in enumerate_permutations(4):
        assert parabolic_length(w, ()) == length(w)


def test_parabolic_longest_element():
    for n in range(2, 7):
        w0 = longest_element(n)
        assert parabolic_length(w0, range(1, n - 1)) == n - 1


def test_parabolic_contract_violation():
    with pytest.raises(ValueError):
        parabolic_length(identity(3), {5})


def test_distinguished_elements():
    assert longest_element(3).images == (3, 2, 1)
    assert power_of_cycle(3, 1).images == (2, 3, 1)
    assert power_of_cycle(4, 0).images == (1, 2, 3, 4)
    w0 = longest_element(4)
    assert compose(w0, w0).images == identity(4).images
    with pytest.raises(ValueError):
        compose(identity(2), identity(3))


def test_enumeration_order_and_cap():
    assert [w.images for w in enumerate_permutations(1)] == [(1,)]
    assert [w.images for w in enumerate_permutations(2)] == [(1, 2), (2, 1)]
    s3 = [w.images for w in enumerate_permutations(3)]
    assert len(s3) == 6
    assert s3[0] == (1, 2, 3) and s3[-1] == (3, 2, 1)
    assert s3 == sorted(s3)
    with pytest.raises(CapacityError):
        list(enumerate_permutations(13))
    with pytest.raises(CapacityError):
        list(enumerate_permutations(0))


@pytest.mark.parametrize("n", range(1, 6))
def test_length_against_bfs_oracle(n):
    for w in enumerate_permutations(n):
        assert length(w) == bfs_length(w.images)


@pytest.mark.parametrize("n", range(1, 6))
def test_parabolic_identities_exhaustive(n):
    """equ-style identities: behaviour under w0, additivity, last-image form.

    The acceptance suite extends these sweeps to n <= 7.
    """
    w0 = longest_element(n)
    subsets = all_index_subsets(n)
    full = frozenset(range(1, n))
    for w in enumerate_permutations(n):
        w0w = compose(w0, w)
        assert descent_set(w0w) == full - descent_set(w)
        if n >= 2:
            assert parabolic_length(w, range(1, n - 1)) == n - w(n)
        for I in subsets:
            assert parabolic_length(w0w, I) == parabolic_length(w0, I) - parabolic_length(w, I)
            rep = coxeter.coset_representative(w, I)
            w_I = compose(coxeter.inverse(rep), w)
            assert length(w) == length(rep) + length(w_I)
