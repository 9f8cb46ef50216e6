"""Closed forms for the local normal zeta function of a Heisenberg group.

Each constructor returns the same rational function W(X, Y) in a different
representation: as a sum over all of S_n, over the subgroup {w : w(1) <= f},
over subsets of [n-1] (unramified case), or over S_{n-1} (totally ramified
case).  All four share one assembly path from a stream of permutation
statistics to a Laurent numerator over a fixed factored denominator, so the
cross-formula equality tests exercise genuinely different summation sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _lex_permutations

from . import coxeter
from .coxeter import Permutation
from .errors import CapacityError, IllFormedSeriesError
from .polyrat import (
    LaurentPoly,
    ProductRationalFunction,
    monomial,
    mul_one_minus_monomial,
    rf_invert_variables,
)

# n! terms per numerator; 8! = 40320 keeps every constructor desk-scale.
DEFAULT_DEGREE_CAP = 8
TOTALLY_RAMIFIED_CAP = 9  # its sum runs over S_{n-1}


@dataclass(frozen=True)
class ExtensionShape:
    """Ramification index e and inertia degree f of the coefficient ring."""

    e: int
    f: int

    def __post_init__(self):
        if self.e < 1 or self.f < 1:
            raise ValueError("e and f must be positive")

    @property
    def n(self) -> int:
        return self.e * self.f


@dataclass(frozen=True)
class FunctionalEquationReport:
    shape: ExtensionShape
    holds: bool
    sign: int
    x_exponent: int
    y_exponent: int

    def to_json(self) -> dict:
        return {
            "e": self.shape.e,
            "f": self.shape.f,
            "holds": self.holds,
            "sign": self.sign,
            "x_exponent": self.x_exponent,
            "y_exponent": self.y_exponent,
        }


def _x_exponents(n: int, i: int) -> tuple[int, int]:
    """Exponent pair of the monomial x_i = X^{(2n+i)(n-i)} Y^{3n-i}."""
    return (2 * n + i) * (n - i), 3 * n - i


def numerical_data(n: int, i: int) -> LaurentPoly:
    """The monomial x_i, for i in [n-1]_0."""
    if not 0 <= i <= n - 1:
        raise ValueError(f"i = {i} outside [0, {n - 1}]")
    a, b = _x_exponents(n, i)
    return monomial(a, b)


def zeta_free_abelian(d: int) -> ProductRationalFunction:
    """Subgroup zeta function of Z_p^d: prod_{i=0}^{d-1} 1/(1 - X^i Y)."""
    if d < 1:
        raise ValueError("rank must be positive")
    return ProductRationalFunction(LaurentPoly.one(), [(i, 1) for i in range(d)])


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapacityError(f"degree n = {n} exceeds cap {cap}")


def _term_exponents(images: tuple[int, ...], n: int, f: int,
                    xdata: list[tuple[int, int]]) -> tuple[int, int]:
    """Exponent pair of X^{-l(w)} Y^{-2f floor(l^{[n-2]}(w)/f)} prod_{j in Des(w)} x_j.

    The parabolic statistic l^{[n-2]}(w) = n - w(n) is read off the last image
    directly; this is the hot inner loop over n! terms.
    """
    a = -coxeter.inversions(images)
    b = -2 * f * ((n - images[-1]) // f)
    for i in range(n - 1):
        if images[i] > images[i + 1]:
            xa, xb = xdata[i + 1]
            a += xa
            b += xb
    return a, b


def _numerator_from_stream(stream, n: int, f: int) -> LaurentPoly:
    """Shared assembly path: permutation stream -> Laurent numerator."""
    xdata = [_x_exponents(n, i) for i in range(n)]
    acc: dict[tuple[int, int], int] = {}
    for images in stream:
        key = _term_exponents(images, n, f, xdata)
        acc[key] = acc.get(key, 0) + 1
    return LaurentPoly(acc)


def _assert_nonnegative(num: LaurentPoly, what: str) -> None:
    min_a, min_b = num.min_exponents()
    if min_a < 0 or min_b < 0:
        raise IllFormedSeriesError(
            f"{what}: assembled numerator has negative exponents "
            f"(min X {min_a}, min Y {min_b})"
        )


def _zeta_zp_factors(n: int) -> list[tuple[int, int]]:
    """Denominator factors of zeta_{Z_p^{2n}}(s)."""
    return [(i, 1) for i in range(2 * n)]


@lru_cache(maxsize=None)
def _zeta_main_cached(e: int, f: int) -> ProductRationalFunction:
    n = e * f
    num = _numerator_from_stream(_lex_permutations(range(1, n + 1)), n, f)
    _assert_nonnegative(num, f"zeta_main({e},{f})")
    den = _zeta_zp_factors(n) + [_x_exponents(n, i) for i in range(n)]
    return ProductRationalFunction(num, den)


def zeta_main(shape: ExtensionShape, cap: int = DEFAULT_DEGREE_CAP) -> ProductRationalFunction:
    """The zeta function as a sum over all of S_n over prod_{i=0}^{n-1}(1-x_i)."""
    _check_cap(shape.n, cap)
    return _zeta_main_cached(shape.e, shape.f)


@lru_cache(maxsize=None)
def _zeta_snf_cached(e: int, f: int) -> ProductRationalFunction:
    n = e * f
    stream = (
        images
        for images in _lex_permutations(range(1, n + 1))
        if images[0] <= f
    )
    num = _numerator_from_stream(stream, n, f)
    den = (
        _zeta_zp_factors(n)
        + [(2 * n * f, 3 * f)]
        + [_x_exponents(n, i) for i in range(1, n)]
    )
    return ProductRationalFunction(num, den)


def zeta_snf(shape: ExtensionShape, cap: int = DEFAULT_DEGREE_CAP) -> ProductRationalFunction:
    """The cancelled form: sum over {w : w(1) <= f} with (1 - X^{2nf} Y^{3f})."""
    _check_cap(shape.n, cap)
    return _zeta_snf_cached(shape.e, shape.f)


@lru_cache(maxsize=None)
def _zeta_inert_cached(n: int) -> ProductRationalFunction:
    # Group length generating polynomials by descent set, then realize each
    # Gaussian multinomial at X^{-1} as sum_{Des(w) subset I} X^{-l(w)}.
    by_descents: dict[frozenset[int], dict[tuple[int, int], int]] = {}
    for images in _lex_permutations(range(1, n + 1)):
        des = coxeter.descents(images)
        key = (-coxeter.inversions(images), 0)
        bucket = by_descents.setdefault(des, {})
        bucket[key] = bucket.get(key, 0) + 1
    groups = [(des, LaurentPoly(terms)) for des, terms in by_descents.items()]

    xdata = [_x_exponents(n, i) for i in range(n)]
    full = frozenset(range(1, n))
    num = LaurentPoly.zero()
    for bits in range(1 << (n - 1)):
        I = frozenset(i + 1 for i in range(n - 1) if bits >> i & 1)
        d_poly = LaurentPoly.zero()
        for des, poly in groups:
            if des <= I:
                d_poly = d_poly + poly
        shift_a = sum(xdata[i][0] for i in I)
        shift_b = sum(xdata[i][1] for i in I)
        term = d_poly.shift(shift_a, shift_b)
        for i in sorted(full - I):
            term = mul_one_minus_monomial(term, *xdata[i])
        num = num + term
    den = _zeta_zp_factors(n) + xdata
    return ProductRationalFunction(num, den)


def zeta_inert(n: int, cap: int = DEFAULT_DEGREE_CAP) -> ProductRationalFunction:
    """The unramified (e = 1) closed form, assembled from Gaussian multinomials."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_cap(n, cap)
    return _zeta_inert_cached(n)


@lru_cache(maxsize=None)
def _zeta_totally_ramified_cached(n: int) -> ProductRationalFunction:
    xdata = [_x_exponents(n, i) for i in range(n)]
    if n == 1:
        num = LaurentPoly.one()
    else:
        # S_{n-1} sits inside S_n as the stabilizer of the letter 1, where the
        # statistic l^{[n-2]} restricts to l^{[n-3]} and descents shift by one.
        acc: dict[tuple[int, int], int] = {}
        m = n - 1
        for images in _lex_permutations(range(1, m + 1)):
            a = -coxeter.inversions(images)
            b = -2 * (m - images[-1])
            for i in range(m - 1):
                if images[i] > images[i + 1]:
                    xa, xb = xdata[i + 2]
                    a += xa
                    b += xb
            key = (a, b)
            acc[key] = acc.get(key, 0) + 1
        num = LaurentPoly(acc)
    den = _zeta_zp_factors(n) + [(2 * n, 3)] + xdata[1:]
    return ProductRationalFunction(num, den)


def zeta_totally_ramified(n: int, cap: int = TOTALLY_RAMIFIED_CAP) -> ProductRationalFunction:
    """The f = 1 closed form as a sum over S_{n-1}."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_cap(n, cap)
    return _zeta_totally_ramified_cached(n)


def functional_equation_constants(shape: ExtensionShape) -> tuple[int, int, int]:
    """(sign, X-exponent, Y-exponent) of the symmetry under (X,Y) -> (X^-1,Y^-1)."""
    n = shape.n
    sign = -1 if (3 * n) % 2 else 1
    x_exp = (3 * n) * (3 * n - 1) // 2
    y_exp = 5 * n + 2 * (shape.e - 1) * shape.f
    return sign, x_exp, y_exp


def check_functional_equation(shape: ExtensionShape,
                              cap: int = DEFAULT_DEGREE_CAP) -> FunctionalEquationReport:
    """Test W(X^-1, Y^-1) = sign * X^a Y^b * W(X, Y) on canonical forms.

    Variable inversion keeps the denominator multiset fixed, so the check is
    an exact numerator comparison; no division is performed.
    """
    F = zeta_main(shape, cap)
    G = rf_invert_variables(F)
    sign, x_exp, y_exp = functional_equation_constants(shape)
    target = F.numerator.shift(x_exp, y_exp) * sign
    holds = G.numerator == target
    return FunctionalEquationReport(shape, holds, sign, x_exp, y_exp)


# ---------------------------------------------------------------------------
# Identities used in the proofs of the cancelled form

def _shift_term(w: Permutation, n: int, f: int, floor_stat: bool) -> LaurentPoly:
    xdata = [_x_exponents(n, i) for i in range(n)]
    stat = n - w.images[-1]
    if floor_stat:
        b = -2 * f * (stat // f)
    else:
        b = -2 * stat
    a = -coxeter.inversions(w.images)
    for j in sorted(coxeter.descents(w.images)):
        a += xdata[j][0]
        b += xdata[j][1]
    return monomial(a, b)


def shift_identity_check(n: int, f: int, w: Permutation, m: int,
                         aux: bool = False) -> bool:
    """Both sides of the cycle-shift identity, evaluated exactly.

    With aux=False this is the plain statement (exponent 2 l^{[n-2]}(w) s,
    shift by c^m, precondition w(1) <= n - m); with aux=True it is the floor
    variant (exponent 2 f floor(l^{[n-2]}(w)/f) s, shift by c^{mf},
    preconditions w(1) <= f and m <= floor((n-f)/f)).  The convention x_n := 1
    from the proof never enters: descent sets stay inside [n-1].
    """
    if w.degree != n:
        raise ValueError("degree mismatch")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if aux:
        if not (w.images[0] <= f and m <= (n - f) // f):
            raise ValueError("need w(1) <= f and m <= floor((n-f)/f)")
        steps = m * f
    else:
        if not w.images[0] <= n - m:
            raise ValueError("need w(1) <= n - m")
        steps = m
    shifted = coxeter.compose(coxeter.power_of_cycle(n, steps), w)
    lhs = _shift_term(shifted, n, f, floor_stat=aux)
    rhs = monomial(2 * n * steps, 3 * steps) * _shift_term(w, n, f, floor_stat=aux)
    return lhs == rhs


def snf_denominator_identity_holds(shape: ExtensionShape) -> bool:
    """1 - x_0 = (1 - X^{2nf} Y^{3f}) * sum_{m=0}^{e-1} X^{2nfm} Y^{3fm}."""
    n, f, e = shape.n, shape.f, shape.e
    geom = LaurentPoly({(2 * n * f * m, 3 * f * m): 1 for m in range(e)})
    lhs = LaurentPoly.one() - monomial(*_x_exponents(n, 0))
    rhs = mul_one_minus_monomial(geom, 2 * n * f, 3 * f)
    return lhs == rhs


def snf_coset_partition_holds(n: int, f: int) -> bool:
    """Every w in S_n is uniquely c^{mf} u with m in [e-1]_0, u(1) <= f."""
    if n % f:
        raise ValueError("f must divide n")
    e = n // f
    for w in coxeter.enumerate_permutations(n):
        hits = 0
        for m in range(e):
            u = coxeter.compose(coxeter.power_of_cycle(n, (n - m * f) % n), w)
            if u.images[0] <= f:
                hits += 1
        if hits != 1:
            return False
    return True
