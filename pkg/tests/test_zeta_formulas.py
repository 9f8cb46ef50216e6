"""The four zeta-function constructors and their identities."""

import pytest

from heiszeta.coxeter import Permutation
from heiszeta.errors import CapacityError
from heiszeta.polyrat import (
    LaurentPoly,
    ProductRationalFunction,
    monomial,
    rf_equal,
    series_Y,
)
from heiszeta.zeta_formulas import (
    ExtensionShape,
    check_functional_equation,
    numerical_data,
    shift_identity_check,
    snf_coset_partition_holds,
    snf_denominator_identity_holds,
    zeta_free_abelian,
    zeta_inert,
    zeta_main,
    zeta_snf,
    zeta_totally_ramified,
)


def test_numerical_data():
    assert numerical_data(3, 1) == monomial(14, 8)
    assert numerical_data(3, 2) == monomial(8, 7)
    assert numerical_data(1, 0) == monomial(2, 3)
    with pytest.raises(ValueError):
        numerical_data(3, 3)


def test_zeta_free_abelian():
    assert zeta_free_abelian(1).denominator == ((0, 1),)
    assert zeta_free_abelian(2).denominator == ((0, 1), (1, 1))
    assert series_Y(zeta_free_abelian(6), 2, 1) == [1, 63]
    with pytest.raises(ValueError):
        zeta_free_abelian(0)


def test_zeta_main_rank_one():
    F = zeta_main(ExtensionShape(1, 1))
    expected = ProductRationalFunction(
        LaurentPoly.one(), [(0, 1), (1, 1), (2, 3)]
    )
    assert F == expected
    assert series_Y(F, 2, 2) == [1, 3, 7]


def test_zeta_main_published_cubic_form():
    published = ProductRationalFunction(
        LaurentPoly({(0, 0): 1, (7, 5): 1}),
        [(i, 1) for i in range(6)] + [(6, 3), (8, 7), (14, 8)],
    )
    assert rf_equal(zeta_main(ExtensionShape(3, 1)), published)


def test_zeta_main_index_p_layer():
    assert series_Y(zeta_main(ExtensionShape(3, 1)), 2, 1) == [1, 63]


def test_zeta_main_capacity():
    with pytest.raises(CapacityError):
        zeta_main(ExtensionShape(9, 1))
    with pytest.raises(CapacityError):
        zeta_main(ExtensionShape(3, 3))


def test_zeta_snf_cubic_numerator():
    F = zeta_snf(ExtensionShape(3, 1))
    assert F.numerator == LaurentPoly({(0, 0): 1, (7, 5): 1})
    assert (6, 3) in F.denominator


def test_zeta_snf_unramified_is_inert_representation():
    for n in range(1, 5):
        F = zeta_snf(ExtensionShape(1, n))
        G = zeta_inert(n)
        assert F.denominator == G.denominator
        assert F.numerator == G.numerator


def test_zeta_inert_small():
    assert zeta_inert(1) == ProductRationalFunction(
        LaurentPoly.one(), [(0, 1), (1, 1), (2, 3)]
    )
    for n in (2, 3):
        assert rf_equal(zeta_inert(n), zeta_main(ExtensionShape(1, n)))


def test_zeta_totally_ramified_small():
    assert zeta_totally_ramified(1) == ProductRationalFunction(
        LaurentPoly.one(), [(0, 1), (1, 1), (2, 3)]
    )
    assert rf_equal(zeta_totally_ramified(3), zeta_main(ExtensionShape(3, 1)))
    assert rf_equal(zeta_totally_ramified(4), zeta_main(ExtensionShape(4, 1)))


def test_main_vs_snf_medium():
    for e, f in [(2, 1), (1, 2), (2, 2), (4, 1), (2, 3), (3, 2)]:
        assert rf_equal(zeta_main(ExtensionShape(e, f)), zeta_snf(ExtensionShape(e, f)))


def test_functional_equation_reports():
    r = check_functional_equation(ExtensionShape(1, 1))
    assert (r.holds, r.sign, r.x_exponent, r.y_exponent) == (True, -1, 3, 5)
    r = check_functional_equation(ExtensionShape(3, 1))
    assert (r.holds, r.sign, r.x_exponent, r.y_exponent) == (True, -1, 36, 19)
    r = check_functional_equation(ExtensionShape(2, 2))
    assert (r.holds, r.sign, r.x_exponent, r.y_exponent) == (True, 1, 66, 24)
    assert r.to_json() == {
        "e": 2, "f": 2, "holds": True, "sign": 1,
        "x_exponent": 66, "y_exponent": 24,
    }


def test_shift_identity_examples():
    assert shift_identity_check(2, 1, Permutation((1, 2)), 1)
    assert shift_identity_check(3, 1, Permutation((2, 1, 3)), 0)
    assert shift_identity_check(4, 2, Permutation((2, 1, 3, 4)), 1, aux=True)
    with pytest.raises(ValueError):
        shift_identity_check(2, 1, Permutation((2, 1)), 1)  # w(1) > n - m
    with pytest.raises(ValueError):
        shift_identity_check(4, 2, Permutation((3, 1, 2, 4)), 1, aux=True)


@pytest.mark.parametrize(
    "n,f", [(2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (4, 2), (6, 2), (6, 3)]
)
def test_shift_identities_exhaustive(n, f):
    from heiszeta.coxeter import enumerate_permutations

    for w in enumerate_permutations(n):
        for m in range(n):
            if w(1) <= n - m:
                assert shift_identity_check(n, f, w, m)
        for m in range((n - f) // f + 1):
            if w(1) <= f:
                assert shift_identity_check(n, f, w, m, aux=True)


def test_snf_proof_identities():
    for e, f in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 4), (8, 1), (1, 8)]:
        assert snf_denominator_identity_holds(ExtensionShape(e, f))
    for n, f in [(2, 1), (4, 2), (6, 2), (6, 3), (6, 1), (5, 5)]:
        assert snf_coset_partition_holds(n, f)


@pytest.mark.parametrize("e,f,p", [(1, 2, 2), (2, 1, 3), (2, 2, 2), (3, 1, 2)])
def test_series_positivity(e, f, p):
    coeffs = series_Y(zeta_main(ExtensionShape(e, f)), p, 6)
    assert all(c >= 0 for c in coeffs)
    assert coeffs[0] == 1
