"""Independent brute-force verification of every count the formulas predict.

Nothing here touches the closed forms: ideals are counted by Hermite normal
form enumeration and direct bracket-membership tests, congruence systems are
solved by Smith normal form over Z/p^m with valuation-greedy pivoting, and
Grassmannian / lattice-type counts are exhaustive.  All arithmetic is in
finite quotients with explicit modulus bookkeeping.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CapacityError, PrecisionError
from .local_ring import LocalRingSpec, ceiling_alpha, det_mod_p

# Most expensive acceptance workload: 50,955,971 index-p^3 sublattices of
# Z^9 for the (e, f, p, K) = (3, 1, 2, 3) oracle run.
DEFAULT_LATTICE_BUDGET = 10**8

_A_CHUNK = 8192  # HNF blocks processed per numpy batch


@dataclass(frozen=True)
class LatticeBasis:
    """Row-style HNF basis of a finite-index sublattice of Z^d.

    Upper triangular, p-power diagonal, entries above a pivot reduced modulo
    that pivot; the rows generate a sublattice of index p^index_exponent.
    """

    dim: int
    rows: tuple[tuple[int, ...], ...]
    index_exponent: int


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`, lex order."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def hnf_count(d: int, k: int, p: int) -> int:
    """Number of HNF bases of index exponent k in dimension d (exact DP)."""
    row = [1] + [0] * k
    for c in range(1, d + 1):
        nxt = [0] * (k + 1)
        for have in range(k + 1):
            if not row[have]:
                continue
            for a in range(k - have + 1):
                nxt[have + a] += row[have] * p ** (a * (c - 1))
        row = nxt
    return row[k]


def _iter_hnf_rows(d: int, k: int, p: int):
    """Yield raw HNF row tuples, grouped by diagonal composition, lex order.

    Free entries sit at (r, c) with r < c; they run through [0, p^{a_c}) in
    row-major position order with the last position varying fastest.
    """
    for diag in _compositions(k, d):
        pivots = [p**a for a in diag]
        free = [(r, c) for c in range(d) if pivots[c] > 1 for r in range(c)]
        base = [[0] * d for _ in range(d)]
        for i in range(d):
            base[i][i] = pivots[i]
        if not free:
            yield tuple(tuple(row) for row in base)
            continue
        for values in itertools.product(*[range(pivots[c]) for _, c in free]):
            for (r, c), val in zip(free, values):
                base[r][c] = val
            yield tuple(tuple(row) for row in base)


def enumerate_hnf(d: int, k: int, p: int,
                  budget: int = DEFAULT_LATTICE_BUDGET):
    """Every index-p^k sublattice of Z^d exactly once, as LatticeBasis values."""
    if d < 1 or k < 0:
        raise ValueError("need d >= 1, k >= 0")
    total = hnf_count(d, k, p)
    if total > budget:
        raise CapacityError(
            f"enumerating {total} bases exceeds budget {budget}"
        )
    for rows in _iter_hnf_rows(d, k, p):
        yield LatticeBasis(d, rows, k)


# ---------------------------------------------------------------------------
# Ideal counting in the Heisenberg Lie ring

def _bracket_tensor(spec: LocalRingSpec, mod: int) -> np.ndarray:
    """T[i, j, :] = c-coordinates of [a_{i+1}, a_{j+1}], reduced mod `mod`.

    Brackets of the generators a_1..a_{2n} land in the span of c_1..c_n; all
    brackets involving the c generators vanish.
    """
    n = spec.n
    T = np.zeros((2 * n, 2 * n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            vec = spec.gamma[i][j]
            for c in range(n):
                g = vec[c] % mod
                T[i, n + j, c] = g
                T[n + j, i, c] = (-g) % mod
    return T


def _membership_batch(vectors: np.ndarray, rows: np.ndarray,
                      pivots: list[int], mod: int) -> np.ndarray:
    """Back-substitution of a batch of c-span vectors against an HNF block.

    vectors has shape (..., n); returns a boolean array of shape (...,) that
    is True where the vector lies in rowspan(rows) + p^k Z^n.  Exact
    divisibility by each diagonal pivot is required at every column.
    """
    x = vectors.copy()
    ok = np.ones(x.shape[:-1], dtype=bool)
    for t, pb in enumerate(pivots):
        col = x[..., t]
        if pb > 1:
            ok &= col % pb == 0
        q = col // pb
        x = (x - q[..., None] * rows[t][None, :]) % mod
    return ok


def count_ideals(spec: LocalRingSpec, k: int,
                 budget: int = DEFAULT_LATTICE_BUDGET) -> int:
    """Number of Z_p-Lie ideals of index p^k in the Heisenberg Lie ring L(R).

    Brute force over HNF bases of index-p^k sublattices of Z^{3n} with basis
    ordered (a_1..a_{2n}, c_1..c_n): a sublattice is an ideal iff the bracket
    of every generator a_i with every basis row lies back in the sublattice,
    which is tested by exact back-substitution mod p^k.  Because brackets land
    in the c-span and depend only on the a-part of a row, the test reads only
    the top-left 2n x 2n and bottom-right n x n blocks of the HNF; bases
    differing only in the remaining 2n x n block are enumerated by their exact
    multiplicity p^{2n (k - j)}.  The budget bounds the total number of
    sublattices covered.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if spec.k < k:
        raise PrecisionError(f"spec precision {spec.k} < requested {k}")
    n, p = spec.n, spec.p
    total = hnf_count(3 * n, k, p)
    if total > budget:
        raise CapacityError(
            f"counting over {total} sublattices exceeds budget {budget}"
        )
    if k == 0:
        return 1
    mod = p**k
    T = _bracket_tensor(spec, mod)
    count = 0
    for j in range(k + 1):
        c_blocks = [
            (np.array(rows, dtype=np.int64), [rows[t][t] for t in range(n)])
            for rows in _iter_hnf_rows(n, k - j, p)
        ]
        weight = p ** (2 * n * (k - j))
        a_iter = _iter_hnf_rows(2 * n, j, p)
        while True:
            chunk = list(itertools.islice(a_iter, _A_CHUNK))
            if not chunk:
                break
            A = np.array(chunk, dtype=np.int64)  # (B, 2n, 2n)
            # brackets[b, r, i, :] = [a_{i+1}, row r of A_b] in c-coordinates
            brackets = np.einsum("bru,iuk->brik", A, T) % mod
            flat = brackets.reshape(len(chunk), 4 * n * n, n)
            if k - j == 0:
                count += len(chunk) * weight
                continue
            for rows, pivots in c_blocks:
                ok = _membership_batch(flat, rows, pivots, mod)
                count += int(ok.all(axis=1).sum()) * weight
    return count


# ---------------------------------------------------------------------------
# Smith normal form over Z/p^m

def _valuation(x: int, p: int, m: int) -> int:
    if x % (p**m) == 0:
        return m
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def smith_valuations_mod(matrix, p: int, m: int) -> list[int]:
    """Elementary-divisor valuations of a matrix over Z/p^m, capped at m.

    Pivoting is p-adic-valuation-greedy (pick an entry of minimal valuation),
    ties broken by row-major position, so the computation is deterministic.
    """
    mod = p**m
    A = [[x % mod for x in row] for row in matrix]
    R, C = len(A), len(A[0]) if A else 0
    steps = min(R, C)
    vals: list[int] = []
    for t in range(steps):
        best, best_v = None, m
        for r in range(t, R):
            row = A[r]
            for c in range(t, C):
                x = row[c]
                if x:
                    v = _valuation(x, p, m)
                    if v < best_v:
                        best, best_v = (r, c), v
                        if v == 0:
                            break
            if best_v == 0:
                break
        if best is None:
            vals.extend([m] * (steps - t))
            break
        br, bc = best
        if br != t:
            A[t], A[br] = A[br], A[t]
        if bc != t:
            for row in A:
                row[t], row[bc] = row[bc], row[t]
        v = best_v
        unit = A[t][t] // p**v
        inv_unit = pow(unit, -1, mod)
        for r in range(t + 1, R):
            x = A[r][t]
            if x:
                q = (x // p**v) * inv_unit % mod
                rowt = A[t]
                rowr = A[r]
                for c in range(t, C):
                    rowr[c] = (rowr[c] - q * rowt[c]) % mod
        for c in range(t + 1, C):
            x = A[t][c]
            if x:
                q = (x // p**v) * inv_unit % mod
                for r in range(t, R):
                    A[r][c] = (A[r][c] - q * A[r][t]) % mod
        vals.append(v)
    return vals


# ---------------------------------------------------------------------------
# Maximal-lattice samples and the congruence-index computation

@dataclass(frozen=True)
class MaximalLatticeSample:
    """A maximal sublattice of Z_p^n given by a coset representative.

    The lattice consists of the vectors v with <alpha^j, v> = 0 mod p^{nu_j}
    for every column alpha^j, where nu is the elementary-divisor pattern of
    type (I, r); equivalently it is alpha^{-T} applied to the diagonal
    lattice.  This is the parameterization under which both the subspace
    spanned mod p by the last columns of alpha and the congruence systems
    below are invariants of the lattice.  alpha is invertible mod p and
    carried mod p^modulus_exponent.
    """

    n: int
    p: int
    alpha: tuple[tuple[int, ...], ...]
    modulus_exponent: int
    type_I: tuple[int, ...]
    r: tuple[int, ...]


def lattice_type_divisors(n: int, I, r) -> tuple[int, ...]:
    """Valuations nu_1 <= ... <= nu_n of the elementary divisors of the type."""
    chain = sorted(I)
    if len(chain) != len(r) or any(x < 1 for x in r):
        raise ValueError("type needs one positive r per index")
    if not all(1 <= i <= n - 1 for i in chain):
        raise ValueError(f"type indices {chain!r} outside [1, {n - 1}]")
    nu = []
    acc = 0
    pos = 0
    for j in range(1, n + 1):
        while pos < len(chain) and chain[pos] < j:
            acc += r[pos]
            pos += 1
        nu.append(acc)
    return tuple(nu)


def kappa_of(sample: MaximalLatticeSample, e: int, f: int) -> int:
    """e minus the largest ceiling statistic over the last n-i columns of alpha.

    Equivalently (informally): the number of trailing all-zero f-row blocks of
    the reduction mod p of those columns.
    """
    n = sample.n
    i = max(sample.type_I) if sample.type_I else 0
    best = 0
    for j in range(i, n):
        col = tuple(sample.alpha[row][j] for row in range(n))
        _, ceil = ceiling_alpha(col, f, sample.p)
        best = max(best, ceil)
    return e - best


def x_lambda_index(spec: LocalRingSpec, sample: MaximalLatticeSample) -> int:
    """log_p of the index in Z_p^{2n} of the solution set of the congruences
    g M(alpha^j) = 0 mod (p^nu)_j for j in [n].

    The n systems are stacked into one 2n x 2n^2 matrix with each block
    scaled by p^{m - nu_j}, so solutions mod p^m are exactly the kernel; the
    index is read off the Smith valuations capped by the working modulus.
    """
    from .local_ring import commutator_M

    n, p = spec.n, spec.p
    m = sample.modulus_exponent
    nu = lattice_type_divisors(n, sample.type_I, sample.r)
    if m <= 2 * sum(sample.r):
        raise PrecisionError(
            f"working modulus exponent {m} too low for sum(r) = {sum(sample.r)}"
        )
    if spec.k < m:
        raise PrecisionError(f"spec precision {spec.k} < working exponent {m}")
    mod = p**m
    stacked = [[0] * (2 * n * n) for _ in range(2 * n)]
    for j in range(n):
        col_vec = tuple(sample.alpha[row][j] for row in range(n))
        M = commutator_M(spec, col_vec)
        scale = p ** (m - nu[j])
        for r_idx in range(2 * n):
            row = stacked[r_idx]
            Mrow = M[r_idx]
            for c_idx in range(2 * n):
                row[j * 2 * n + c_idx] = Mrow[c_idx] * scale % mod
    vals = smith_valuations_mod(stacked, p, m)
    return sum(m - min(v, m) for v in vals)


@dataclass
class XLambdaReport:
    spec: LocalRingSpec
    trials: int
    seed: int
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "trials": self.trials,
            "seed": self.seed,
            "mismatches": self.mismatches,
        }


def _random_type(rng: random.Random, n: int, max_sum: int = 3):
    candidates = []
    for size in range(0, n):
        for I in itertools.combinations(range(1, n), size):
            for r in itertools.product(range(1, max_sum + 1), repeat=size):
                if sum(r) <= max_sum:
                    candidates.append((I, r))
    return candidates[rng.randrange(len(candidates))]


def _random_invertible(rng: random.Random, n: int, p: int, mod: int):
    while True:
        alpha = tuple(
            tuple(rng.randrange(mod) for _ in range(n)) for _ in range(n)
        )
        if det_mod_p(alpha, p) != 0:
            return alpha


def verify_xlambda(spec: LocalRingSpec, trials: int, seed: int) -> XLambdaReport:
    """Check |L : X(Lambda')| = p^{2(n sum(r) - kappa f)} on random samples.

    Types are drawn with sum(r) <= 3 and alpha uniformly among matrices
    invertible mod p, reproducibly from the given seed.  Mismatches are
    report content, not exceptions.
    """
    rng = random.Random(seed)
    report = XLambdaReport(spec, trials, seed)
    n = spec.n
    for trial in range(trials):
        I, r = _random_type(rng, n)
        m = 2 * sum(r) + 2
        if spec.k < m:
            raise PrecisionError(
                f"spec precision {spec.k} < required working exponent {m}"
            )
        alpha = _random_invertible(rng, n, spec.p, spec.p**m)
        sample = MaximalLatticeSample(n, spec.p, alpha, m, I, r)
        kappa = kappa_of(sample, spec.e, spec.f)
        expected = 2 * (n * sum(r) - kappa * spec.f)
        actual = x_lambda_index(spec, sample)
        if actual != expected:
            report.mismatches.append(
                {
                    "trial": trial,
                    "type_I": list(I),
                    "r": list(r),
                    "alpha": [list(row) for row in alpha],
                    "kappa": kappa,
                    "expected_exponent": expected,
                    "actual_exponent": actual,
                }
            )
    return report


# ---------------------------------------------------------------------------
# Grassmannian and lattice-type counts over F_p

def enumerate_subspace_matrices(n: int, dim: int, p: int):
    """Unique cell representatives of dim-dimensional subspaces of F_p^n.

    Matrices are n x dim with an identity submatrix in rows J and zeroes
    below or to the right of each pivot 1; the remaining entries run over
    F_p.  Yields (J, matrix) pairs.
    """
    if not 0 <= dim <= n:
        raise ValueError("dimension out of range")
    for J in itertools.combinations(range(1, n + 1), dim):
        mat = [[0] * dim for _ in range(n)]
        for c, row_1based in enumerate(J):
            mat[row_1based - 1][c] = 1
        free = [
            (r, c)
            for c in range(dim)
            for r in range(J[c] - 1)
            if (r + 1) not in J[:c]
        ]
        if not free:
            yield J, tuple(tuple(row) for row in mat)
            continue
        for values in itertools.product(range(p), repeat=len(free)):
            for (r, c), val in zip(free, values):
                mat[r][c] = val
            yield J, tuple(tuple(row) for row in mat)


def count_subspaces(n: int, dim: int, p: int,
                    budget: int = DEFAULT_LATTICE_BUDGET) -> int:
    """Brute-force number of dim-dimensional subspaces of F_p^n."""
    total = 0
    for _ in enumerate_subspace_matrices(n, dim, p):
        total += 1
        if total > budget:
            raise CapacityError("subspace enumeration exceeds budget")
    return total


def count_subspaces_by_psi(n: int, i: int, f: int, p: int,
                           budget: int = DEFAULT_LATTICE_BUDGET) -> dict[int, int]:
    """Tally of (n-i)-dimensional subspaces of F_p^n by the flag statistic
    psi(W) = min{d : W contained in <e_1, ..., e_{fd}>}.

    The statistic is read off each representative matrix by locating its
    lowest nonzero row.
    """
    if n % f:
        raise ValueError("f must divide n")
    e = n // f
    if p ** (i * (n - i)) > budget:
        raise CapacityError("Grassmannian enumeration exceeds budget")
    tally = {lam: 0 for lam in range(1, e + 1)}
    for _, mat in enumerate_subspace_matrices(n, n - i, p):
        lowest = 0
        for row_idx in range(n, 0, -1):
            if any(mat[row_idx - 1]):
                lowest = row_idx
                break
        if lowest == 0:
            raise AssertionError("zero representative for positive dimension")
        tally[-(-lowest // f)] += 1
    return tally


def count_maximal_lattices(n: int, I, r, p: int,
                           budget: int = DEFAULT_LATTICE_BUDGET) -> int:
    """Exhaustive count of maximal sublattices of Z_p^n of type (I, r).

    HNF bases of the correct total index are classified by their Smith
    valuations over Z/p^{sum(r)+1}; the type fixes the full valuation pattern
    and maximality is its leading zero.
    """
    if not I:
        return 1
    nu = lattice_type_divisors(n, I, r)
    V = sum(nu)
    total = hnf_count(n, V, p)
    if total > budget:
        raise CapacityError(f"scanning {total} bases exceeds budget {budget}")
    m_work = sum(r) + 1
    want = list(nu)
    count = 0
    for rows in _iter_hnf_rows(n, V, p):
        if smith_valuations_mod(rows, p, m_work) == want:
            count += 1
    return count


def maximal_lattice_formula(n: int, I, r, p: int) -> int:
    """The predicted count binom(n, I)_{p^{-1}} p^{sum r_i i(n-i)} (exact)."""
    from .polyrat import gaussian_multinomial

    chain = sorted(I)
    value = gaussian_multinomial(n, chain).evaluate(0, Fraction(1, p))
    value *= p ** sum(r_i * i * (n - i) for i, r_i in zip(chain, r))
    if value.denominator != 1:
        raise AssertionError("lattice-count formula is not integral")
    return int(value)


# ---------------------------------------------------------------------------
# phi-fibres: recover a coset representative from a lattice via SNF over Z

def _snf_with_transform(mat):
    """Integer SNF of a square matrix: returns (divisors, U) with
    U * mat * V = diag(divisors) for unimodular U, V (V is discarded).

    Row operations on the work matrix are applied to U as well, so U is
    maintained exactly over Z.
    """
    A = [list(row) for row in mat]
    size = len(A)
    U = [[int(i == j) for j in range(size)] for i in range(size)]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def row_addmul(i, j, q):  # row_i += q * row_j
        for c in range(size):
            A[i][c] += q * A[j][c]
            U[i][c] += q * U[j][c]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]

    def col_addmul(i, j, q):  # col_i += q * col_j
        for row in A:
            row[i] += q * row[j]

    def row_negate(i):
        for c in range(size):
            A[i][c] = -A[i][c]
            U[i][c] = -U[i][c]

    for t in range(size):
        while True:
            best, best_abs = None, None
            for rr in range(t, size):
                for cc in range(t, size):
                    x = A[rr][cc]
                    if x and (best_abs is None or abs(x) < best_abs):
                        best, best_abs = (rr, cc), abs(x)
            if best is None:
                break
            br, bc = best
            if br != t:
                row_swap(t, br)
            if bc != t:
                col_swap(t, bc)
            if A[t][t] < 0:
                row_negate(t)
            dirty = False
            for rr in range(t + 1, size):
                if A[rr][t]:
                    row_addmul(rr, t, -(A[rr][t] // A[t][t]))
                    if A[rr][t]:
                        dirty = True
            for cc in range(t + 1, size):
                if A[t][cc]:
                    col_addmul(cc, t, -(A[t][cc] // A[t][t]))
                    if A[t][cc]:
                        dirty = True
            if not dirty:
                break
    divisors = [A[t][t] for t in range(size)]
    return divisors, U


def _rref_key(rows, p: int) -> tuple:
    """Canonical form of the F_p-row space of `rows` (tuple of rref rows)."""
    m = [[x % p for x in row] for row in rows]
    n_cols = len(m[0]) if m else 0
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                factor = m[r][col]
                m[r] = [
                    (x - factor * y) % p for x, y in zip(m[r], m[rank])
                ]
        rank += 1
    return tuple(tuple(row) for row in m[:rank])


def maximal_lattice_tally_by_subspace(n: int, I, r, p: int,
                                      budget: int = DEFAULT_LATTICE_BUDGET) -> dict:
    """Tally of maximal lattices of type (I, r) by the subspace spanned mod p
    by the last n-i columns of a coset representative alpha.

    Each lattice is the column span of its transposed HNF matrix G; from an
    integer SNF decomposition U G V = diag(p^nu) the representative in the
    congruence parameterization is alpha = U^T, so the relevant columns are
    the last rows of U.  The resulting point of the Grassmannian does not
    depend on any of the choices made.
    """
    if not I:
        raise ValueError("nonempty type required")
    nu = lattice_type_divisors(n, I, r)
    V = sum(nu)
    total = hnf_count(n, V, p)
    if total > budget:
        raise CapacityError(f"scanning {total} bases exceeds budget {budget}")
    m_work = sum(r) + 1
    want = list(nu)
    i_top = max(I)
    tally: dict[tuple, int] = {}
    for rows in _iter_hnf_rows(n, V, p):
        if smith_valuations_mod(rows, p, m_work) != want:
            continue
        cols = [[rows[r_][c_] for r_ in range(n)] for c_ in range(n)]  # transpose
        divisors, U = _snf_with_transform(cols)
        if [_valuation(abs(dv), p, m_work) for dv in divisors] != want:
            raise AssertionError("SNF disagrees with modular classification")
        key = _rref_key(U[i_top:], p)
        tally[key] = tally.get(key, 0) + 1
    return tally


# ---------------------------------------------------------------------------
# Series cross-validation

@dataclass
class MatchSeriesReport:
    spec: LocalRingSpec
    rows: list

    @property
    def all_match(self) -> bool:
        return all(row["match"] for row in self.rows)

    def to_json(self) -> list:
        return self.rows


def match_series(spec: LocalRingSpec, K: int,
                 budget: int = DEFAULT_LATTICE_BUDGET,
                 seed: int | None = None) -> MatchSeriesReport:
    """Compare brute-force ideal counts with the closed form, term by term."""
    from .polyrat import series_Y
    from .zeta_formulas import ExtensionShape, zeta_main

    shape = ExtensionShape(spec.e, spec.f)
    formula = series_Y(zeta_main(shape), spec.p, K)
    rows = []
    for k in range(K + 1):
        oracle_count = count_ideals(spec, k, budget)
        rows.append(
            {
                "spec": spec.to_json(),
                "k": k,
                "oracle_count": str(oracle_count),
                "formula_count": str(formula[k]),
                "match": oracle_count == formula[k],
                "seed": seed,
                "budget_used": hnf_count(3 * spec.n, k, spec.p),
            }
        )
    return MatchSeriesReport(spec, rows)
