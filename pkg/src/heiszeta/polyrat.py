"""Exact sparse bivariate Laurent polynomials and factored rational functions.

The two variables are X and Y, standing for p and p^{-s}: a term p^{u-vs}
of a local zeta function is the monomial X^u Y^v.  Coefficients are exact
Python integers; there is no floating point anywhere.  Rational functions are
kept as a Laurent numerator over a multiset of geometric factors (1 - X^a Y^b)
and are never reduced to lowest terms: equality is decided by
cross-multiplication.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import IllFormedSeriesError


class LaurentPoly:
    """Sparse Laurent polynomial in X, Y with integer coefficients.

    Terms live in a dict mapping exponent pairs (a, b) to nonzero integers.
    Instances are treated as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (a, b), c in items:
                if c:
                    key = (a, b)
                    c0 = data.get(key, 0) + c
                    if c0:
                        data[key] = c0
                    elif key in data:
                        del data[key]
        self._terms = data

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({(0, 0): 1})

    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def canonical_terms(self) -> list[tuple[int, int, int]]:
        """Terms as (a, b, coeff) sorted by (b, a) for stable serialization."""
        return [
            (a, b, self._terms[(a, b)])
            for (a, b) in sorted(self._terms, key=lambda ab: (ab[1], ab[0]))
        ]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "LaurentPoly(0)"
        bits = [f"{c}*X^{a}*Y^{b}" for a, b, c in self.canonical_terms()]
        return "LaurentPoly(" + " + ".join(bits) + ")"

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly()
        out._terms = {k: -c for k, c in self._terms.items()}
        return out

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly({(0, 0): other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        small, big = self._terms, other._terms
        if len(small) > len(big):
            small, big = big, small
        data = dict(big)
        for k, c in small.items():
            c0 = data.get(k, 0) + c
            if c0:
                data[k] = c0
            elif k in data:
                del data[k]
        out = LaurentPoly()
        out._terms = data
        return out

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            out = LaurentPoly()
            out._terms = {k: c * other for k, c in self._terms.items()}
            return out
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        small, big = self._terms, other._terms
        if len(small) > len(big):
            small, big = big, small
        data: dict[tuple[int, int], int] = {}
        get = data.get
        for (a1, b1), c1 in small.items():
            for (a2, b2), c2 in big.items():
                key = (a1 + a2, b1 + b2)
                c0 = get(key, 0) + c1 * c2
                if c0:
                    data[key] = c0
                elif key in data:
                    del data[key]
        out = LaurentPoly()
        out._terms = data
        return out

    __rmul__ = __mul__

    def shift(self, da: int, db: int) -> "LaurentPoly":
        """Multiply by the monomial X^da Y^db."""
        out = LaurentPoly()
        out._terms = {(a + da, b + db): c for (a, b), c in self._terms.items()}
        return out

    def invert_exponents(self) -> "LaurentPoly":
        """Term-wise substitution (X, Y) -> (X^-1, Y^-1)."""
        out = LaurentPoly()
        out._terms = {(-a, -b): c for (a, b), c in self._terms.items()}
        return out

    def min_exponents(self) -> tuple[int, int]:
        if not self._terms:
            return (0, 0)
        return (
            min(a for a, _ in self._terms),
            min(b for _, b in self._terms),
        )

    def evaluate(self, x, y) -> Fraction:
        """Exact evaluation at rational points."""
        x, y = Fraction(x), Fraction(y)
        total = Fraction(0)
        for (a, b), c in self._terms.items():
            total += c * x**a * y**b
        return total


def monomial(a: int, b: int, coeff: int = 1) -> LaurentPoly:
    return LaurentPoly({(a, b): coeff})


def poly_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def poly_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def mul_one_minus_monomial(p: LaurentPoly, a: int, b: int) -> LaurentPoly:
    """p * (1 - X^a Y^b), in linear time."""
    return p - p.shift(a, b)


# ---------------------------------------------------------------------------
# Gaussian binomials and multinomials (univariate in Y)

def _ypoly_mul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, ci in enumerate(f):
        if ci:
            for j, cj in enumerate(g):
                out[i + j] += ci * cj
    return out


def _ypoly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of dense Y-polynomials; a remainder is a fatal bug."""
    num = list(num)
    while den and den[-1] == 0:
        den.pop()
    dd = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dd:
        if any(num):
            raise ArithmeticError("inexact polynomial division")
        return [0]
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        q = c // lead
        quot[k - dd] = q
        if q:
            for j, cj in enumerate(den):
                num[k - dd + j] -= q * cj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return quot


def _one_minus_y_power(i: int) -> list[int]:
    out = [0] * (i + 1)
    out[0] = 1
    out[i] = -1
    return out


def gaussian_binomial(a: int, b: int) -> LaurentPoly:
    """The Gaussian binomial coefficient binom(a, b)_Y as a pure Y-polynomial.

    Computed by the defining quotient prod_{i=a-b+1}^{a}(1-Y^i) /
    prod_{i=1}^{b}(1-Y^i) via exact polynomial division.
    """
    if not 0 <= b <= a:
        raise ValueError(f"need a >= b >= 0, got ({a}, {b})")
    num = [1]
    for i in range(a - b + 1, a + 1):
        num = _ypoly_mul(num, _one_minus_y_power(i))
    den = [1]
    for i in range(1, b + 1):
        den = _ypoly_mul(den, _one_minus_y_power(i))
    quot = _ypoly_divexact(num, den)
    return LaurentPoly({(0, k): c for k, c in enumerate(quot)})


def gaussian_multinomial(n: int, I: Iterable[int]) -> LaurentPoly:
    """binom(n, I)_Y = binom(n, i_l) binom(i_l, i_{l-1}) ... binom(i_2, i_1)."""
    chain = sorted(set(I))
    if not all(1 <= i <= n - 1 for i in chain):
        raise ValueError(f"index set {chain!r} not contained in [1, {n - 1}]")
    out = LaurentPoly.one()
    upper = n
    for i in reversed(chain):
        out = out * gaussian_binomial(upper, i)
        upper = i
    return out


# ---------------------------------------------------------------------------
# Rational functions with factored denominators

class GeometricFactor(NamedTuple):
    """A denominator factor (1 - X^a Y^b) with b >= 1."""

    a: int
    b: int


class ProductRationalFunction:
    """Laurent numerator over a sorted multiset of geometric factors.

    No gcd cancellation is ever performed; two values are compared as
    rational functions by cross-multiplication.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPoly, denominator: Iterable[tuple[int, int]]):
        factors = []
        for a, b in denominator:
            if b < 1 or a < 0:
                raise ValueError(f"invalid geometric factor (1 - X^{a} Y^{b})")
            factors.append(GeometricFactor(a, b))
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", tuple(sorted(factors)))

    def __setattr__(self, *_):
        raise AttributeError("ProductRationalFunction is immutable")

    def __repr__(self) -> str:
        den = "".join(f"(1 - X^{a} Y^{b})" for a, b in self.denominator)
        return f"({self.numerator!r}) / {den or '1'}"

    def __eq__(self, other) -> bool:
        """Structural equality (same factors, same numerator); see rf_equal."""
        if not isinstance(other, ProductRationalFunction):
            return NotImplemented
        return (
            self.denominator == other.denominator
            and self.numerator == other.numerator
        )

    def __hash__(self):
        return hash((self.numerator, self.denominator))


def rf_mul(F: ProductRationalFunction, G: ProductRationalFunction) -> ProductRationalFunction:
    return ProductRationalFunction(
        F.numerator * G.numerator, F.denominator + G.denominator
    )


def _expand_factors(poly: LaurentPoly, factors: Iterable[GeometricFactor]) -> LaurentPoly:
    for a, b in factors:
        poly = mul_one_minus_monomial(poly, a, b)
    return poly


def rf_equal(F: ProductRationalFunction, G: ProductRationalFunction) -> bool:
    """Decide F = G as rational functions by exact cross-multiplication.

    Denominator factors common to both sides are cancelled first; this is a
    pure representation-level shortcut and does not change the result.
    """
    fc, gc = Counter(F.denominator), Counter(G.denominator)
    f_extra = list((fc - gc).elements())
    g_extra = list((gc - fc).elements())
    lhs = _expand_factors(F.numerator, g_extra)
    rhs = _expand_factors(G.numerator, f_extra)
    return lhs == rhs


def rf_invert_variables(F: ProductRationalFunction) -> ProductRationalFunction:
    """The canonical representation of F(X^-1, Y^-1).

    Each inverted factor (1 - X^-a Y^-b) equals -X^-a Y^-b (1 - X^a Y^b); the
    collected sign and monomial are divided out of the denominator, i.e. the
    numerator gets its exponents negated term-wise and is then multiplied by
    (-1)^{#factors} X^{sum a} Y^{sum b}.  The denominator multiset is
    unchanged, which makes the functional-equation comparison a plain
    numerator comparison.
    """
    sum_a = sum(a for a, _ in F.denominator)
    sum_b = sum(b for _, b in F.denominator)
    sign = -1 if len(F.denominator) % 2 else 1
    num = F.numerator.invert_exponents().shift(sum_a, sum_b) * sign
    return ProductRationalFunction(num, F.denominator)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def series_Y(F: ProductRationalFunction, p: int, K: int) -> list[int]:
    """First K+1 coefficients of the power series of F(p, Y) in Y.

    The numerator is evaluated at X = p exactly; each factor 1/(1 - p^a Y^b)
    is applied as a truncated geometric series.  A negative Y-exponent in the
    numerator means the function has no Y-expansion and signals a
    formula-construction bug.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if K < 0:
        raise ValueError("K must be nonnegative")
    min_a, min_b = F.numerator.min_exponents()
    if min_b < 0:
        raise IllFormedSeriesError(
            f"numerator has Y-exponent {min_b} < 0; not a power series in Y"
        )
    exact = min_a >= 0
    coeffs = [0 if exact else Fraction(0)] * (K + 1)
    for (a, b), c in F.numerator.terms().items():
        if b <= K:
            coeffs[b] += c * (p**a if a >= 0 else Fraction(1, p**-a))
    for a, b in F.denominator:
        u = p**a
        for t in range(b, K + 1):
            coeffs[t] += u * coeffs[t - b]
    if not exact:
        if any(c.denominator != 1 for c in coeffs):
            raise IllFormedSeriesError("non-integral series coefficients")
        coeffs = [int(c) for c in coeffs]
    return coeffs


# ---------------------------------------------------------------------------
# Serialization

def laurent_to_json(poly: LaurentPoly) -> list[list]:
    """[[a, b, "coeff"], ...] in canonical (b, a) order, coefficients as strings."""
    return [[a, b, str(c)] for a, b, c in poly.canonical_terms()]


def laurent_from_json(data) -> LaurentPoly:
    return LaurentPoly({(int(a), int(b)): int(c) for a, b, c in data})


def prf_to_json(F: ProductRationalFunction) -> dict:
    return {
        "numerator": laurent_to_json(F.numerator),
        "denominator": [[a, b] for a, b in F.denominator],
    }


def prf_from_json(data) -> ProductRationalFunction:
    return ProductRationalFunction(
        laurent_from_json(data["numerator"]),
        [(int(a), int(b)) for a, b in data["denominator"]],
    )


def _exponent_latex(a: int, b: int) -> str:
    """Render the exponent of p^{a - b s}."""
    if b == 0:
        return str(a)
    s = "s" if b == 1 else f"{b}s"
    return f"-{s}" if a == 0 else f"{a}-{s}"


def _monomial_latex(a: int, b: int, c: int) -> str:
    if a == 0 and b == 0:
        return str(c)
    body = f"p^{{{_exponent_latex(a, b)}}}"
    if c == 1:
        return body
    if c == -1:
        return f"-{body}"
    return f"{c} {body}"


def laurent_to_latex(poly: LaurentPoly) -> str:
    """Render with X as p and Y as p^{-s}, matching display conventions."""
    terms = poly.canonical_terms()
    if not terms:
        return "0"
    parts = []
    for idx, (a, b, c) in enumerate(terms):
        body = _monomial_latex(a, b, c)
        if idx == 0:
            parts.append(body)
        elif body.startswith("-"):
            parts.append(" - " + body[1:])
        else:
            parts.append(" + " + body)
    return "".join(parts)


def prf_to_latex(F: ProductRationalFunction) -> str:
    num = laurent_to_latex(F.numerator)
    if not F.denominator:
        return num
    den = "".join(
        f"\\left(1-p^{{{_exponent_latex(a, b)}}}\\right)" for a, b in F.denominator
    )
    return f"\\frac{{{num}}}{{{den}}}"
