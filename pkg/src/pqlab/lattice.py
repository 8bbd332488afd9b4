"""Integer lattices: circulants, the NTRU modular lattice, LLL, enumeration.

Vectors are rows throughout: a basis is a list of integer row vectors, and
a lattice point is an integer combination of rows.  The NTRU public basis
pairs each unit row e_i with the i-th cyclic shift of h, so row
combinations produce exactly the pairs (a, a*h + q*k), the membership set
{(a, b) : a*h = b (mod q)}.  LLL runs on exact rationals (Fractions) so
every acceptance run is deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import (
    DimensionError,
    MessageRangeError,
    NotInvertible,
    RankError,
    SamplingExhausted,
)
from .convring import center_mod, conv_mul, invert_mod, sample_ternary

IntVector = list[int]
IntMatrix = list[list[int]]


# -- circulant matrices --


def cyclic_shift(v: Sequence[int], k: int) -> IntVector:
    """Coefficients of x^k * v in Z[x]/(x^N - 1)."""
    n = len(v)
    k %= n
    return [v[(i - k) % n] for i in range(n)]


def circulant(v: Sequence[int]) -> IntMatrix:
    """Rows are the cyclic shifts v, x*v, x^2*v, ..."""
    return [cyclic_shift(v, i) for i in range(len(v))]


def circulant_mul(v: Sequence[int], w: Sequence[int], q: int | None = None) -> IntVector:
    """w times the circulant of v (row vector times matrix).

    Built literally from the matrix rows, so it is an independent
    realization of the cyclic convolution w * v.
    """
    n = len(v)
    if len(w) != n:
        raise DimensionError(f"length mismatch: {n} != {len(w)}")
    rows = circulant(v)
    out = [0] * n
    for i, wi in enumerate(w):
        if wi:
            row = rows[i]
            for j in range(n):
                out[j] += wi * row[j]
    if q is not None:
        out = center_mod(out, q)
    return out


# -- lattices --


@dataclass(frozen=True)
class ConvModLattice:
    """Pairs (a, b) in Z^2N with a * c = b (mod q)."""

    c: tuple[int, ...]
    q: int

    @property
    def n(self) -> int:
        return len(self.c)

    def contains(self, a: Sequence[int], b: Sequence[int]) -> bool:
        if len(a) != self.n or len(b) != self.n:
            raise DimensionError("member halves must have length N")
        prod_ = conv_mul(list(a), list(self.c))
        return all((x - y) % self.q == 0 for x, y in zip(prod_, b))

    def contains_vector(self, v: Sequence[int]) -> bool:
        if len(v) != 2 * self.n:
            raise DimensionError("member vectors have length 2N")
        return self.contains(v[: self.n], v[self.n :])


def build_public_basis(h: Sequence[int], q: int) -> IntMatrix:
    """2N x 2N row basis [[I, C(h)], [0, q*I]] with C(h) rows = shifts x^i*h.

    Row combinations (a, k) give (a, a*h + q*k), so the row span is exactly
    the membership set of ConvModLattice(h, q); the determinant is q^N.
    """
    n = len(h)
    basis = []
    for i in range(n):
        row = [0] * n
        row[i] = 1
        basis.append(row + cyclic_shift(h, i))
    for i in range(n):
        row = [0] * (2 * n)
        row[n + i] = q
        basis.append(row)
    return basis


# -- lattice-form NTRU --


@dataclass(frozen=True)
class NtruLatticeKey:
    """Lattice-form key: f = e_1 + p*t_f, g = p*t_g, public h = f^-1*g mod q.

    The circulant of f is the identity mod p and the circulant of g vanishes
    mod p, which is what lets decryption strip the blinding term.
    """

    params: object  # NtruParams (duck-typed to avoid an import cycle)
    f: tuple[int, ...]
    g: tuple[int, ...]
    h: tuple[int, ...]

    @property
    def public_basis(self) -> IntMatrix:
        return build_public_basis(list(self.h), self.params.q)


def lattice_keygen(params, rng: random.Random, max_tries: int = 100) -> NtruLatticeKey:
    n, p, q = params.n, params.p, params.q
    d_plus, d_minus = params.shape
    for _ in range(max_tries):
        t_f = sample_ternary(n, d_plus, d_minus, rng)
        f = [p * c for c in t_f]
        f[0] += 1
        try:
            f_q_inv = invert_mod(f, q)
        except NotInvertible:
            continue
        t_g = sample_ternary(n, d_plus, d_minus, rng)
        g = [p * c for c in t_g]
        h = conv_mul(f_q_inv, g, q)
        return NtruLatticeKey(params, tuple(f), tuple(g), tuple(h))
    raise SamplingExhausted(f"no invertible f in {max_tries} draws")


def _check_ternary_bounded(v: Sequence[int], shape: tuple[int, int], label: str) -> None:
    plus = minus = 0
    for c in v:
        if c == 1:
            plus += 1
        elif c == -1:
            minus += 1
        elif c != 0:
            raise MessageRangeError(f"{label} coefficient {c} is not ternary")
    if plus > shape[0] or minus > shape[1]:
        raise MessageRangeError(
            f"{label} has {plus} ones / {minus} minus-ones, "
            f"allowed at most {shape[0]} / {shape[1]}"
        )


def lattice_encrypt(key: NtruLatticeKey, m: Sequence[int], r: Sequence[int]) -> IntVector:
    """c = m + r * h, centered mod q (blinding folded into h via g = p*t_g)."""
    params = key.params
    if len(m) != params.n or len(r) != params.n:
        raise DimensionError("message and blinding must have length N")
    _check_ternary_bounded(m, params.shape, "message")
    _check_ternary_bounded(r, params.shape, "blinding")
    rh = circulant_mul(list(key.h), list(r), params.q)
    return center_mod([a + b for a, b in zip(m, rh)], params.q)


def lattice_decrypt(key: NtruLatticeKey, c: Sequence[int]) -> IntVector:
    """t = center(c * C(f) mod q), then m = t mod p (centered).

    Correct whenever the integer vector m + p*(t_f*m + t_g*r) stays inside
    (-q/2, q/2], which the test harness checks via the identity predicate.
    """
    params = key.params
    if len(c) != params.n:
        raise DimensionError("ciphertext must have length N")
    t = circulant_mul(list(key.f), list(c), params.q)
    return center_mod(t, params.p)


def lattice_identity_check(key: NtruLatticeKey, m: Sequence[int], r: Sequence[int]) -> bool:
    """True iff f*m + g*r over the integers is inside (-q/2, q/2]."""
    fm = conv_mul(list(key.f), list(m))
    gr = conv_mul(list(key.g), list(r))
    q = key.params.q
    return all(-q < 2 * (a + b) <= q for a, b in zip(fm, gr))


# -- exact Gram-Schmidt and LLL --


def gram_schmidt(
    basis: IntMatrix,
) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact GS data: (mu, B) with mu[i][j] the projection coefficients and
    B[i] = ||b*_i||^2 as Fractions.  RankError on dependent rows."""
    n = len(basis)
    mu: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    bstar: list[list[Fraction]] = []
    bnorm: list[Fraction] = []
    for i in range(n):
        star = [Fraction(x) for x in basis[i]]
        for j in range(i):
            if bnorm[j] == 0:
                raise RankError("dependent rows in basis")
            dot = sum(Fraction(x) * y for x, y in zip(basis[i], bstar[j]))
            mu[i][j] = dot / bnorm[j]
            star = [s - mu[i][j] * t for s, t in zip(star, bstar[j])]
        bstar.append(star)
        norm = sum(s * s for s in star)
        if norm == 0:
            raise RankError("dependent rows in basis")
        bnorm.append(norm)
        mu[i][i] = Fraction(1)
    return mu, bnorm


def is_size_reduced(mu: list[list[Fraction]]) -> bool:
    return all(
        abs(mu[i][j]) <= Fraction(1, 2)
        for i in range(len(mu))
        for j in range(i)
    )


def lovasz_holds(mu: list[list[Fraction]], bnorm: list[Fraction], delta: Fraction) -> bool:
    return all(
        bnorm[k] >= (delta - mu[k][k - 1] ** 2) * bnorm[k - 1]
        for k in range(1, len(bnorm))
    )


def lll_reduce(basis: IntMatrix, delta: Fraction | float = Fraction(3, 4)) -> IntMatrix:
    """LLL reduction with exact rational bookkeeping.

    Output rows span the same lattice (only integer row operations and
    swaps are applied), are size-reduced (|mu| <= 1/2), and satisfy the
    Lovasz condition for the given delta.  RankError on dependent rows.
    """
    delta = Fraction(delta).limit_denominator(10**6) if not isinstance(delta, Fraction) else delta
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    b = [list(row) for row in basis]
    n = len(b)
    if n == 0:
        return b
    dim = len(b[0])
    if any(len(row) != dim for row in b):
        raise DimensionError("ragged basis")

    # incremental GS state: mu[i][j] for j < i, B[i] = ||b*_i||^2
    mu: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    B: list[Fraction] = [Fraction(0)] * n

    def compute_gs_row(i: int) -> None:
        # recompute mu[i][0..i-1] and B[i] from b and earlier GS rows;
        # runs without materializing b* by the standard inner-product recurrence
        d = [Fraction(0)] * (i + 1)  # d[j] = <b_i, b*_j>
        for j in range(i + 1):
            dot = Fraction(sum(x * y for x, y in zip(b[i], b[j])))
            for k in range(j):
                dot -= mu[j][k] * d[k]
            d[j] = dot
            if j < i:
                if B[j] == 0:
                    raise RankError("dependent rows in basis")
                mu[i][j] = dot / B[j]
        B[i] = d[i]  # <b_i, b*_i> = ||b*_i||^2
        if B[i] <= 0:
            raise RankError("dependent rows in basis")

    for i in range(n):
        compute_gs_row(i)

    def size_reduce(k: int, l: int) -> None:
        if abs(mu[k][l]) <= Fraction(1, 2):
            return
        r = int(round(mu[k][l]))
        if r == 0:
            return
        b[k] = [x - r * y for x, y in zip(b[k], b[l])]
        for j in range(l):
            mu[k][j] -= r * mu[l][j]
        mu[k][l] -= r

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
        else:
            # swap rows k-1, k and patch the GS state in place
            m_ = mu[k][k - 1]
            new_bk1 = B[k] + m_ * m_ * B[k - 1]
            mu[k][k - 1] = m_ * B[k - 1] / new_bk1
            B[k] = B[k - 1] * B[k] / new_bk1
            B[k - 1] = new_bk1
            b[k - 1], b[k] = b[k], b[k - 1]
            for j in range(k - 1):
                mu[k - 1][j], mu[k][j] = mu[k][j], mu[k - 1][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m_ * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
    return b


# -- exact solvers and enumeration oracles --


def det(matrix: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise DimensionError("determinant needs a square matrix")
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot = None
        for i in range(col, n):
            if m[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                m[i][j] = (m[i][j] * m[col][col] - m[i][col] * m[col][j]) // prev
            m[i][col] = 0
        prev = m[col][col]
    return sign * m[n - 1][n - 1]


def solve_integer(basis: IntMatrix, target: Sequence[int]) -> IntVector | None:
    """x with x . basis = target if one exists over the integers, else None.

    Exact rational elimination; used to certify that a reduced basis still
    spans every original row (unimodular equivalence).
    """
    rows = len(basis)
    cols = len(basis[0]) if rows else 0
    if len(target) != cols:
        raise DimensionError("target length mismatch")
    # solve A^T y = t^T where A rows are basis vectors
    aug = [[Fraction(basis[i][j]) for i in range(rows)] + [Fraction(target[j])]
           for j in range(cols)]
    pivots = []
    r = 0
    for c in range(rows):
        piv = None
        for i in range(r, cols):
            if aug[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(cols):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    # consistency: zero rows must have zero rhs
    for i in range(r, cols):
        if aug[i][rows] != 0:
            return None
    x = [Fraction(0)] * rows
    for row_idx, c in enumerate(pivots):
        x[c] = aug[row_idx][rows]
    if any(v.denominator != 1 for v in x):
        return None
    return [int(v) for v in x]


def _enum_box(dim: int, bound: int):
    return product(range(-bound, bound + 1), repeat=dim)


def svp_bruteforce(basis: IntMatrix, bound: int = 3) -> IntVector:
    """Shortest nonzero vector among integer combinations with coefficients
    in [-bound, bound].  Global optimum only if the box covers it; at the
    desk scales this package tests, the box is chosen to cover.
    """
    n = len(basis)
    if n > 6:
        raise DimensionError("enumeration limited to dimension <= 6")
    if bound > 8:
        raise ValueError("coefficient box limited to bound <= 8")
    dim = len(basis[0])
    best = None
    best_key = None
    for coeffs in _enum_box(n, bound):
        if all(c == 0 for c in coeffs):
            continue
        v = [0] * dim
        for c, row in zip(coeffs, basis):
            if c:
                for j in range(dim):
                    v[j] += c * row[j]
        norm = sum(x * x for x in v)
        if norm == 0:
            continue
        key = (norm, coeffs)
        if best_key is None or key < best_key:
            best_key = key
            best = v
    if best is None:
        raise RankError("no nonzero vector in the enumeration box")
    return best


def cvp_bruteforce(basis: IntMatrix, x: Sequence[int], bound: int = 3) -> IntVector:
    """Closest lattice point to x with coefficients in [-bound, bound];
    ties broken by lexicographically smallest coefficient vector."""
    n = len(basis)
    if n > 6:
        raise DimensionError("enumeration limited to dimension <= 6")
    if bound > 8:
        raise ValueError("coefficient box limited to bound <= 8")
    dim = len(basis[0])
    if len(x) != dim:
        raise DimensionError("target length mismatch")
    best = None
    best_key = None
    for coeffs in _enum_box(n, bound):
        v = [0] * dim
        for c, row in zip(coeffs, basis):
            if c:
                for j in range(dim):
                    v[j] += c * row[j]
        dist = sum((a - b) * (a - b) for a, b in zip(v, x))
        key = (dist, coeffs)
        if best_key is None or key < best_key:
            best_key = key
            best = v
    return best
