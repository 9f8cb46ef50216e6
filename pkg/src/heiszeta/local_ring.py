"""Concrete realization of a compact DVR of characteristic zero mod p^k.

The ring R with inertia degree f and ramification index e is realized as the
Eisenstein extension U[pi]/(pi^e - p*eta) of the unramified ring
U = Z_p[x]/(u(x)), truncated at precision p^k.  The Z_p-basis is ordered
d_{i+fj} = x^{i-1} pi^j with i in [f], j in [e-1]_0, so d_1 = 1.  From the
structure constants we build the commutator matrices B(v) and M(v) of the
Heisenberg Lie ring and the f x f block decomposition of B, together with the
unit criteria that drive the congruence analysis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapacityError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class LocalRingSpec:
    """Structure constants of R mod p^k for a fixed basis.

    gamma[a][b][c] is the coefficient of d_{c+1} in d_{a+1} d_{b+1} (0-based
    storage of 1-based basis indices), reduced mod p^k.  unramified_poly holds
    the coefficients (ascending, monic) of the lift of the degree-f
    irreducible used for the residue field, and eisenstein_unit is
    eta = pi^e / p.
    """

    p: int
    e: int
    f: int
    k: int
    unramified_poly: tuple[int, ...]
    eisenstein_unit: int
    gamma: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def n(self) -> int:
        return self.e * self.f

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "k": self.k,
            "unramified_poly": list(self.unramified_poly),
            "eisenstein_unit": self.eisenstein_unit,
        }


def _poly_divides(div: tuple[int, ...], poly: tuple[int, ...], p: int) -> bool:
    """Whether the monic F_p-polynomial div divides poly."""
    rem = list(poly)
    dd = len(div) - 1
    while len(rem) - 1 >= dd:
        lead = rem[-1] % p
        if lead:
            for j in range(dd + 1):
                rem[len(rem) - 1 - dd + j] = (rem[len(rem) - 1 - dd + j] - lead * div[j]) % p
        rem.pop()
    return not any(c % p for c in rem)


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Exhaustive trial division by monic polynomials of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if _poly_divides(tail + (1,), poly, p):
                return False
    return True


def least_irreducible_poly(p: int, f: int) -> tuple[int, ...]:
    """The minimal monic irreducible of degree f over F_p.

    Minimality is by the value sum(c_i p^i) of the non-leading coefficients,
    which makes fixtures reproducible.
    """
    if f > 8:
        raise CapacityError("irreducibility search capped at f <= 8")
    if f == 1:
        return (0, 1)  # the polynomial x
    for value in range(p**f):
        tail = tuple(value // p**i % p for i in range(f))
        poly = tail + (1,)
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # unreachable


def make_ring_spec(p: int, e: int, f: int, k: int,
                   alternative: bool = False) -> LocalRingSpec:
    """Build the structure-constant tensor of R mod p^k.

    With alternative=False the Eisenstein relation is pi^e = p (eta = 1); the
    alternative realization uses the least integer unit eta != 1 so that
    realization-independence of all counts can be confirmed empirically.
    The residue field lift is chosen so that x^f reduces to the nonnegative
    F_p-representative of x^f mod u(x); in particular products of lifted
    basis elements reduce with small nonnegative coefficients.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1 or f < 1 or k < 1:
        raise ValueError("e, f, k must be positive")
    mod = p**k
    if alternative:
        eta = 2
        while eta % p == 0:
            eta += 1
    else:
        eta = 1

    upoly = least_irreducible_poly(p, f)
    # x^f = rvec(x) in the lifted quotient, coefficients in [0, p).
    rvec = tuple((-upoly[i]) % p for i in range(f))
    lifted = tuple((-rvec[i]) % mod for i in range(f)) + (1,)

    # Powers of x mod the lift, up to degree 2f - 2.
    xpow = []
    cur = [1] + [0] * (f - 1)
    for _ in range(max(2 * f - 1, 1)):
        xpow.append(tuple(cur))
        carry = cur[f - 1]
        cur = [0] + cur[:-1]
        if carry:
            for idx in range(f):
                cur[idx] = (cur[idx] + carry * rvec[idx]) % mod

    n = e * f
    gamma = [[[0] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        ia, ja = a % f, a // f  # d_{a+1} = x^{ia} pi^{ja}
        for b in range(n):
            ib, jb = b % f, b // f
            tdeg = ja + jb
            factor = 1
            if tdeg >= e:
                tdeg -= e
                factor = (p * eta) % mod
            vec = xpow[ia + ib]
            row = gamma[a][b]
            base = tdeg * f
            for m in range(f):
                row[base + m] = (factor * vec[m]) % mod
    gamma_t = tuple(tuple(tuple(row) for row in plane) for plane in gamma)
    return LocalRingSpec(p, e, f, k, lifted, eta, gamma_t)


def ring_multiply(spec: LocalRingSpec, u, v) -> tuple[int, ...]:
    """Product of two coefficient vectors in the realized ring, mod p^k."""
    n, mod = spec.n, spec.modulus
    out = [0] * n
    for a in range(n):
        ua = u[a] % mod
        if not ua:
            continue
        for b in range(n):
            vb = v[b] % mod
            if not vb:
                continue
            for c, g in enumerate(spec.gamma[a][b]):
                if g:
                    out[c] = (out[c] + ua * vb * g) % mod
    return tuple(out)


def commutator_B(spec: LocalRingSpec, v) -> tuple[tuple[int, ...], ...]:
    """The symmetric n x n matrix B(v) with B_{ab} = sum_c gamma^{ab}_c v_c."""
    n, mod = spec.n, spec.modulus
    return tuple(
        tuple(
            sum(g * v[c] for c, g in enumerate(spec.gamma[a][b])) % mod
            for b in range(n)
        )
        for a in range(n)
    )


def commutator_M(spec: LocalRingSpec, v) -> tuple[tuple[int, ...], ...]:
    """The antisymmetric 2n x 2n matrix [[0, B(v)], [-B(v), 0]]."""
    n, mod = spec.n, spec.modulus
    B = commutator_B(spec, v)
    top = [tuple([0] * n) + row for row in B]
    bottom = [
        tuple((-x) % mod for x in row) + tuple([0] * n) for row in B
    ]
    return tuple(top + bottom)


def block(spec: LocalRingSpec, v, mu: int) -> tuple[tuple[int, ...], ...]:
    """The f x f block B^{(mu)}(v) of the anti-diagonal decomposition.

    B(v) carries B^{(r+c-2)}(v) at block position (r, c) when r+c-2 <= e-1 and
    p * B^{(r+c-2)}(v) when r+c-2 >= e; the value here is computed from the
    residue-field structure constants, so it is exact mod p^k in both regimes.
    """
    e, f, mod = spec.e, spec.f, spec.modulus
    if not 0 <= mu <= 2 * e - 2:
        raise ValueError(f"mu = {mu} outside [0, {2 * e - 2}]")
    l1 = 0 if mu <= e - 1 else 1
    l0 = mu - l1 * e
    eta_pow = spec.eisenstein_unit if l1 else 1
    base = l0 * f
    return tuple(
        tuple(
            (eta_pow * sum(spec.gamma[i][j][c] * v[base + c] for c in range(f)))
            % mod
            for j in range(f)
        )
        for i in range(f)
    )


def ceiling_alpha(v, f: int, p: int) -> tuple[int, int]:
    """(mu, ceil(mu/f)) where mu is the largest index with v_mu a unit mod p."""
    mu = 0
    for idx, entry in enumerate(v, start=1):
        if entry % p:
            mu = idx
    if mu == 0:
        raise ValueError("vector is congruent to 0 mod p")
    return mu, -(-mu // f)


def det_mod_p(matrix, p: int) -> int:
    """Determinant of a square matrix over F_p by Gaussian elimination."""
    m = [[x % p for x in row] for row in matrix]
    size = len(m)
    det = 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        inv = pow(m[col][col], -1, p)
        det = det * m[col][col] % p
        for r in range(col + 1, size):
            if m[r][col]:
                factor = m[r][col] * inv % p
                for c in range(col, size):
                    m[r][c] = (m[r][c] - factor * m[col][c]) % p
    return det % p


def check_unit_lemma(spec: LocalRingSpec, v) -> bool:
    """Unit criteria for B(v) at m = ceil(v): block conditions and B(v) J_m.

    Checks that B^{(m-1)}(v) and (when present) B^{(m+e-1)}(v) are invertible
    mod p, that the intermediate blocks vanish mod p, and that the matrix
    B(v) J_m is unimodular, where J_m swaps the last (e-m)f columns (scaled by
    1/p) to the front.  A failed exact division by p reports a lemma
    violation rather than crashing.
    """
    if spec.k < 2:
        raise ValueError("precision k >= 2 required")
    e, f, n, p = spec.e, spec.f, spec.n, spec.p
    _, m = ceiling_alpha(v, f, spec.p)

    if det_mod_p(block(spec, v, m - 1), p) == 0:
        return False
    for mu in range(m, e):
        if any(x % p for row in block(spec, v, mu) for x in row):
            return False
    if m <= e - 1:
        if det_mod_p(block(spec, v, m + e - 1), p) == 0:
            return False
    for mu in range(m + e, 2 * e - 1):
        if any(x % p for row in block(spec, v, mu) for x in row):
            return False

    # B(v) J_m = [ (last (e-m)f columns of B)/p | first mf columns of B ].
    B = commutator_B(spec, v)
    split = m * f
    scaled = []
    for row in B:
        new_row = []
        for x in row[split:]:
            if x % p:
                return False  # exact division impossible: lemma violation
            new_row.append(x // p)
        scaled.append(tuple(new_row) + row[:split])
    return det_mod_p(scaled, p) != 0


def check_pfaffian_no_points(spec: LocalRingSpec, cap: int = 2**16) -> bool:
    """Exhaustively check det B(v) != 0 mod p for all nonzero v in F_p^n.

    Only meaningful in the unramified case, where it says the Pfaffian
    hypersurface has no F_p-rational points.
    """
    if spec.e != 1:
        raise ValueError("e = 1 required")
    p, n = spec.p, spec.n
    if p**n > cap:
        raise CapacityError(f"p^f = {p**n} exceeds cap {cap}")
    for v in itertools.product(range(p), repeat=n):
        if not any(v):
            continue
        if det_mod_p(commutator_B(spec, v), p) == 0:
            return False
    return True
