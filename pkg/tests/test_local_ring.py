"""Structure constants, commutator matrices, blocks, and unit criteria."""

import itertools
import random

import pytest

from heiszeta.errors import CapacityError
from heiszeta.local_ring import (
    block,
    ceiling_alpha,
    check_pfaffian_no_points,
    check_unit_lemma,
    commutator_B,
    commutator_M,
    least_irreducible_poly,
    make_ring_spec,
    ring_multiply,
)


def small_shapes(max_n):
    return [
        (e, f)
        for n in range(1, max_n + 1)
        for e in range(1, n + 1)
        if n % e == 0
        for f in [n // e]
    ]


def test_make_ring_spec_examples():
    s = make_ring_spec(2, 2, 1, 3)
    assert s.gamma[1][1] == (2, 0)  # pi * pi = p
    s2 = make_ring_spec(2, 1, 2, 3)
    assert s2.gamma[1][1] == (1, 1)  # beta^2 = beta + 1 over the chosen lift
    for p, e, f in [(2, 2, 2), (3, 1, 3), (5, 3, 1)]:
        spec = make_ring_spec(p, e, f, 2)
        n = spec.n
        for j in range(n):
            assert spec.gamma[0][j] == tuple(
                1 if c == j else 0 for c in range(n)
            )  # d_1 is the identity
    with pytest.raises(ValueError):
        make_ring_spec(4, 1, 1, 2)


def test_least_irreducible_poly():
    assert least_irreducible_poly(2, 2) == (1, 1, 1)
    assert least_irreducible_poly(2, 3) == (1, 1, 0, 1)  # x^3 + x + 1
    assert least_irreducible_poly(3, 2) == (1, 0, 1)  # x^2 + 1
    assert least_irreducible_poly(5, 1) == (0, 1)


def test_alternative_realization_unit():
    assert make_ring_spec(2, 2, 1, 3).eisenstein_unit == 1
    assert make_ring_spec(2, 2, 1, 3, alternative=True).eisenstein_unit == 3
    assert make_ring_spec(3, 2, 1, 3, alternative=True).eisenstein_unit == 2


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("e,f", small_shapes(6))
def test_ring_is_commutative_and_associative(p, e, f):
    spec = make_ring_spec(p, e, f, 2)
    n = spec.n
    basis = [tuple(1 if c == a else 0 for c in range(n)) for a in range(n)]
    for a in range(n):
        for b in range(n):
            assert spec.gamma[a][b] == spec.gamma[b][a]
    for a, b, c in itertools.product(range(n), repeat=3):
        left = ring_multiply(spec, ring_multiply(spec, basis[a], basis[b]), basis[c])
        right = ring_multiply(spec, basis[a], ring_multiply(spec, basis[b], basis[c]))
        assert left == right


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("e,f", small_shapes(6))
@pytest.mark.parametrize("alternative", [False, True])
def test_structure_constant_relations(p, e, f, alternative):
    """The grading relations of the gamma tensor, exhaustively mod p^k."""
    k = 3
    spec = make_ring_spec(p, e, f, k, alternative=alternative)
    n, mod, eta = spec.n, spec.modulus, spec.eisenstein_unit
    for i1b, j1b in itertools.product(range(1, n + 1), repeat=2):
        i0, i1 = (i1b - 1) % f, (i1b - 1) // f
        j0, j1 = (j1b - 1) % f, (j1b - 1) // f
        l1, l0 = divmod(i1 + j1, e)
        assert l1 in (0, 1)
        for kk in range(1, (e - l0) * f + 1):
            lhs = spec.gamma[i1b - 1][j1b - 1][l0 * f + kk - 1]
            rhs = (p**l1 * eta**l1 * spec.gamma[i0][j0][kk - 1]) % mod
            assert lhs == rhs
        for kk in range(1, l0 * f + 1):
            assert spec.gamma[i1b - 1][j1b - 1][kk - 1] % p ** (l1 + 1) == 0


def test_commutator_B_examples():
    s = make_ring_spec(2, 2, 1, 3)
    assert commutator_B(s, (0, 0)) == ((0, 0), (0, 0))
    assert commutator_B(s, (1, 0)) == ((1, 0), (0, 2))
    M = commutator_M(s, (1, 0))
    mod = s.modulus
    for i in range(4):
        for j in range(4):
            assert M[i][j] == (-M[j][i]) % mod


@pytest.mark.parametrize("p,e,f", [(2, 2, 1), (2, 3, 1), (3, 2, 2), (2, 2, 3)])
def test_B_symmetry_random(p, e, f):
    spec = make_ring_spec(p, e, f, 3)
    rng = random.Random(7)
    for _ in range(20):
        v = tuple(rng.randrange(spec.modulus) for _ in range(spec.n))
        B = commutator_B(spec, v)
        assert B == tuple(tuple(B[j][i] for j in range(spec.n)) for i in range(spec.n))


def test_block_examples():
    s1 = make_ring_spec(2, 1, 2, 3)
    v = (1, 1)
    assert block(s1, v, 0) == commutator_B(s1, v)  # e = 1: single block
    s = make_ring_spec(2, 2, 1, 3)
    assert block(s, (1, 0), 0) == ((1,),)
    assert block(s, (1, 0), 2) == ((1,),)  # p * B^(2) = 2 in B
    with pytest.raises(ValueError):
        block(s, (1, 0), 3)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("e,f", small_shapes(6))
@pytest.mark.parametrize("alternative", [False, True])
def test_block_reassembly(p, e, f, alternative):
    """B(v) decomposes into the anti-diagonal blocks, p-scaled past mu = e-1."""
    spec = make_ring_spec(p, e, f, 3, alternative=alternative)
    n, mod = spec.n, spec.modulus
    rng = random.Random(e * 100 + f * 10 + p)
    for _ in range(10):
        v = tuple(rng.randrange(mod) for _ in range(n))
        B = commutator_B(spec, v)
        for r in range(e):
            for c in range(e):
                mu = r + c
                blk = block(spec, v, mu)
                scale = 1 if mu <= e - 1 else p
                for i in range(f):
                    for j in range(f):
                        assert B[r * f + i][c * f + j] == scale * blk[i][j] % mod


def test_ceiling_alpha():
    assert ceiling_alpha((1, 0, 0), 1, 2) == (1, 1)
    assert ceiling_alpha((0, 0, 1), 1, 2) == (3, 3)
    assert ceiling_alpha((0, 2, 1, 0, 2, 0), 2, 2) == (3, 2)
    with pytest.raises(ValueError):
        ceiling_alpha((2, 4), 1, 2)


def test_check_unit_lemma_examples():
    s = make_ring_spec(2, 2, 1, 3)
    assert check_unit_lemma(s, (1, 0))
    assert check_unit_lemma(s, (0, 1))
    e1 = make_ring_spec(3, 1, 2, 2)
    for v in itertools.product(range(3), repeat=2):
        if any(x % 3 for x in v):
            assert check_unit_lemma(e1, v)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("e,f", small_shapes(5))
def test_check_unit_lemma_random(p, e, f):
    spec = make_ring_spec(p, e, f, 3)
    rng = random.Random(1000 * p + 10 * e + f)
    n, mod = spec.n, spec.modulus
    done = 0
    while done < 100:
        v = tuple(rng.randrange(mod) for _ in range(n))
        if not any(x % p for x in v):
            continue
        assert check_unit_lemma(spec, v)
        done += 1


def test_pfaffian_no_points():
    assert check_pfaffian_no_points(make_ring_spec(2, 1, 1, 2))
    assert check_pfaffian_no_points(make_ring_spec(2, 1, 2, 2))
    assert check_pfaffian_no_points(make_ring_spec(3, 1, 3, 2))
    with pytest.raises(ValueError):
        check_pfaffian_no_points(make_ring_spec(2, 2, 1, 2))
    with pytest.raises(CapacityError):
        check_pfaffian_no_points(make_ring_spec(2, 1, 5, 2), cap=4)


def test_spec_json():
    s = make_ring_spec(2, 1, 2, 3)
    data = s.to_json()
    assert data["p"] == 2 and data["e"] == 1 and data["f"] == 2 and data["k"] == 3
    assert data["eisenstein_unit"] == 1
    assert len(data["unramified_poly"]) == 3
