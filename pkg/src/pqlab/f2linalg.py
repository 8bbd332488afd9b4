"""Dense linear algebra over GF(2).

Vectors and matrix rows are stored as Python integers: bit j of a row is
column j.  Bitwise XOR is whole-row addition, which keeps Gauss-Jordan and
multiplication fast at every size this package touches.  Messages are row
vectors and multiply matrices from the left, so every formula reads the way
the cryptosystem equations are written.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .errors import DimensionError, RankError, SingularMatrix


class BinVector:
    """Row vector over GF(2): a bit-packed integer plus a length."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if bits < 0 or bits >> n:
            raise DimensionError(f"bits out of range for length {n}")
        self.n = n
        self.bits = bits

    @classmethod
    def from_bits(cls, seq: Iterable[int]) -> "BinVector":
        bits = 0
        n = 0
        for b in seq:
            if b & 1:
                bits |= 1 << n
            n += 1
        return cls(n, bits)

    @classmethod
    def from_support(cls, n: int, positions: Iterable[int]) -> "BinVector":
        bits = 0
        for p in positions:
            if not 0 <= p < n:
                raise DimensionError(f"position {p} out of range for length {n}")
            bits |= 1 << p
        return cls(n, bits)

    def to_bits(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return [i for i in range(self.n) if (self.bits >> i) & 1]

    def __add__(self, other: "BinVector") -> "BinVector":
        if self.n != other.n:
            raise DimensionError("vector length mismatch")
        return BinVector(self.n, self.bits ^ other.bits)

    __sub__ = __add__

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BinVector)
            and other.n == self.n
            and other.bits == self.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"BinVector({self.to_bits()})"


class BinMatrix:
    """Dense GF(2) matrix; data[i] is row i as a bit-packed integer."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[int]):
        if len(data) != rows:
            raise DimensionError("row count mismatch")
        for r in data:
            if r < 0 or (cols < r.bit_length()):
                raise DimensionError("row value exceeds column count")
        self.rows = rows
        self.cols = cols
        self.data = list(data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BinMatrix":
        if not rows:
            return cls(0, 0, [])
        cols = len(rows[0])
        data = []
        for row in rows:
            if len(row) != cols:
                raise DimensionError("ragged rows")
            bits = 0
            for j, b in enumerate(row):
                if b & 1:
                    bits |= 1 << j
            data.append(bits)
        return cls(len(rows), cols, data)

    @classmethod
    def identity(cls, n: int) -> "BinMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "BinMatrix":
        return cls(rows, cols, [0] * rows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def row(self, i: int) -> BinVector:
        return BinVector(self.cols, self.data[i])

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def copy(self) -> "BinMatrix":
        return BinMatrix(self.rows, self.cols, list(self.data))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BinMatrix)
            and other.rows == self.rows
            and other.cols == self.cols
            and other.data == self.data
        )

    def __repr__(self) -> str:
        return f"BinMatrix({self.rows}x{self.cols})"

    def transpose(self) -> "BinMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                j = (r & -r).bit_length() - 1
                out[j] |= 1 << i
                r &= r - 1
        return BinMatrix(self.cols, self.rows, out)

    def __add__(self, other: "BinMatrix") -> "BinMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix shape mismatch")
        return BinMatrix(
            self.rows, self.cols, [a ^ b for a, b in zip(self.data, other.data)]
        )

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.data)


def mat_mul(a: BinMatrix, b: BinMatrix) -> BinMatrix:
    """A x B: row i of the product XORs the rows of B selected by row i of A."""
    if a.cols != b.rows:
        raise DimensionError(f"inner dimensions {a.cols} != {b.rows}")
    brows = b.data
    out = []
    for r in a.data:
        acc = 0
        rr = r
        while rr:
            j = (rr & -rr).bit_length() - 1
            acc ^= brows[j]
            rr &= rr - 1
        out.append(acc)
    return BinMatrix(a.rows, b.cols, out)


def vec_mat_mul(v: BinVector, a: BinMatrix) -> BinVector:
    """v . A with v a row vector."""
    if v.n != a.rows:
        raise DimensionError(f"vector length {v.n} != row count {a.rows}")
    acc = 0
    bits = v.bits
    while bits:
        j = (bits & -bits).bit_length() - 1
        acc ^= a.data[j]
        bits &= bits - 1
    return BinVector(a.cols, acc)


def mat_vec_mul(a: BinMatrix, v: BinVector) -> BinVector:
    """A . v^T, returned as a length-rows vector (used for parity checks)."""
    if v.n != a.cols:
        raise DimensionError(f"vector length {v.n} != column count {a.cols}")
    out = 0
    for i, r in enumerate(a.data):
        if (r & v.bits).bit_count() & 1:
            out |= 1 << i
    return BinVector(a.rows, out)


def rank(a: BinMatrix) -> int:
    rows = [r for r in a.data if r]
    rk = 0
    while rows:
        pivot = rows.pop()
        rk += 1
        low = pivot & -pivot
        rows = [(r ^ pivot if r & low else r) for r in rows]
        rows = [r for r in rows if r]
    return rk


def invert(a: BinMatrix) -> BinMatrix:
    """Gauss-Jordan inverse over GF(2)."""
    if a.rows != a.cols:
        raise SingularMatrix("only square matrices can be inverted")
    n = a.rows
    work = list(a.data)
    inv = [1 << i for i in range(n)]
    for col in range(n):
        mask = 1 << col
        pivot = None
        for i in range(col, n):
            if work[i] & mask:
                pivot = i
                break
        if pivot is None:
            raise SingularMatrix(f"matrix is singular (no pivot in column {col})")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        wc, ic = work[col], inv[col]
        for i in range(n):
            if i != col and (work[i] & mask):
                work[i] ^= wc
                inv[i] ^= ic
    return BinMatrix(n, n, inv)


def _rref(data: list[int], cols: int) -> tuple[list[int], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    pivots = []
    r = 0
    for col in range(cols):
        mask = 1 << col
        pivot = None
        for i in range(r, len(data)):
            if data[i] & mask:
                pivot = i
                break
        if pivot is None:
            continue
        data[r], data[pivot] = data[pivot], data[r]
        for i in range(len(data)):
            if i != r and (data[i] & mask):
                data[i] ^= data[r]
        pivots.append(col)
        r += 1
    return data[:r], pivots


def rref(a: BinMatrix) -> tuple[BinMatrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    rows, pivots = _rref(list(a.data), a.cols)
    return BinMatrix(len(rows), a.cols, rows), pivots


def null_space(a: BinMatrix) -> BinMatrix:
    """Basis of the right kernel {x : A . x^T = 0}, one row per basis vector.

    Rows come out in free-column order with an identity pattern on the free
    columns, so solving v . K = y for a kernel matrix K is a column lookup.
    """
    rows, pivots = _rref(list(a.data), a.cols)
    pivot_set = set(pivots)
    free_cols = [j for j in range(a.cols) if j not in pivot_set]
    basis = []
    for f in free_cols:
        v = 1 << f
        fm = 1 << f
        for r, p in zip(rows, pivots):
            if r & fm:
                v |= 1 << p
        basis.append(v)
    return BinMatrix(len(basis), a.cols, basis)


class PermMatrix:
    """Permutation matrix stored as an index sequence.

    perm[i] is the image of basis vector e_i, i.e. entry (i, perm[i]) is 1.
    For a row vector v, (v . P)[perm[i]] = v[i].
    """

    __slots__ = ("perm",)

    def __init__(self, perm: Sequence[int]):
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise DimensionError("not a permutation of 0..n-1")
        self.perm = tuple(perm)

    @classmethod
    def identity(cls, n: int) -> "PermMatrix":
        return cls(tuple(range(n)))

    @classmethod
    def from_cols(cls, cols: Sequence[int]) -> "PermMatrix":
        """Build from the column description: column j of the matrix is
        basis vector e_cols[j] (an identity matrix with columns scrambled).
        Entry (cols[j], j) = 1, so perm[cols[j]] = j."""
        n = len(cols)
        perm = [0] * n
        for j, i in enumerate(cols):
            perm[i] = j
        return cls(perm)

    @property
    def n(self) -> int:
        return len(self.perm)

    def inverse(self) -> "PermMatrix":
        inv = [0] * self.n
        for i, j in enumerate(self.perm):
            inv[j] = i
        return PermMatrix(inv)

    def apply_vec(self, v: BinVector) -> BinVector:
        """v . P"""
        if v.n != self.n:
            raise DimensionError("length mismatch")
        bits = 0
        vb = v.bits
        for i, j in enumerate(self.perm):
            if (vb >> i) & 1:
                bits |= 1 << j
        return BinVector(self.n, bits)

    def apply_vec_inverse(self, v: BinVector) -> BinVector:
        """v . P^-1 (= v . P^T)"""
        if v.n != self.n:
            raise DimensionError("length mismatch")
        bits = 0
        vb = v.bits
        for i, j in enumerate(self.perm):
            if (vb >> j) & 1:
                bits |= 1 << i
        return BinVector(self.n, bits)

    def apply_mat(self, a: BinMatrix) -> BinMatrix:
        """A x P (permute columns: new column perm[i] = old column i)."""
        if a.cols != self.n:
            raise DimensionError("column count mismatch")
        out = []
        for r in a.data:
            bits = 0
            rr = r
            while rr:
                i = (rr & -rr).bit_length() - 1
                bits |= 1 << self.perm[i]
                rr &= rr - 1
            out.append(bits)
        return BinMatrix(a.rows, a.cols, out)

    def to_matrix(self) -> BinMatrix:
        return BinMatrix(self.n, self.n, [1 << j for j in self.perm])

    def compose(self, other: "PermMatrix") -> "PermMatrix":
        """self x other as matrices (apply self first to a row vector)."""
        if self.n != other.n:
            raise DimensionError("size mismatch")
        return PermMatrix(tuple(other.perm[j] for j in self.perm))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PermMatrix) and other.perm == self.perm

    def __repr__(self) -> str:
        return f"PermMatrix({list(self.perm)})"


def systematic_form(g: BinMatrix) -> tuple[BinMatrix, PermMatrix]:
    """Column-permute and row-reduce a full-row-rank G to [A | I_k].

    Returns (G', P) with G' = [A | I_k] row-equivalent to G x P.  The
    permutation moves G's pivot columns to the end, keeping the relative
    order of pivot and non-pivot columns stable.
    """
    k = g.rows
    # already [A | I_k]: nothing to move
    if g.cols >= k and all(
        (r >> (g.cols - k)) == 1 << i for i, r in enumerate(g.data)
    ):
        return g.copy(), PermMatrix.identity(g.cols)
    reduced, pivots = rref(g)
    if len(pivots) != k:
        raise RankError(f"rank {len(pivots)} < row count {k}")
    pivot_set = set(pivots)
    free_cols = [j for j in range(g.cols) if j not in pivot_set]
    order = free_cols + pivots  # old column order; new position = index here
    perm = [0] * g.cols
    for new_pos, old_col in enumerate(order):
        perm[old_col] = new_pos
    p = PermMatrix(perm)
    gp = p.apply_mat(g)
    # pivot columns are now the last k; normalize them to the identity
    tail = BinMatrix(
        k, k, [(r >> (g.cols - k)) & ((1 << k) - 1) for r in gp.data]
    )
    gs = mat_mul(invert(tail), gp)
    return gs, p


class RowSolver:
    """Solve v . G = y for a fixed full-row-rank G (message recovery)."""

    def __init__(self, g: BinMatrix):
        reduced, pivots = rref(g)
        if len(pivots) != g.rows:
            raise RankError("generator does not have full row rank")
        self.g = g
        self.pivots = pivots
        # u with u x G = rref(G): redo elimination on an identity tag-along
        n = g.rows
        work = list(g.data)
        tag = [1 << i for i in range(n)]
        r = 0
        for col in range(g.cols):
            mask = 1 << col
            pivot = None
            for i in range(r, n):
                if work[i] & mask:
                    pivot = i
                    break
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            tag[r], tag[pivot] = tag[pivot], tag[r]
            for i in range(n):
                if i != r and (work[i] & mask):
                    work[i] ^= work[r]
                    tag[i] ^= tag[r]
            r += 1
        self.reduced = BinMatrix(n, g.cols, work)
        self.u = BinMatrix(n, n, tag)

    def solve(self, y: BinVector) -> BinVector:
        """Return v with v . G = y; raises RankError if y is outside the row space."""
        # y = w . rref(G) with w read off the pivot columns, then v = w . U
        w = 0
        for idx, col in enumerate(self.pivots):
            if (y.bits >> col) & 1:
                w |= 1 << idx
        v = vec_mat_mul(BinVector(self.g.rows, w), self.u)
        if vec_mat_mul(v, self.g) != y:
            raise RankError("vector is not in the row space")
        return v


def random_invertible(k: int, rng: random.Random) -> BinMatrix:
    """Uniform invertible k x k matrix by rejection sampling on the rank."""
    while True:
        m = BinMatrix(k, k, [rng.getrandbits(k) for _ in range(k)])
        if rank(m) == k:
            return m


def random_permutation(n: int, rng: random.Random) -> PermMatrix:
    perm = list(range(n))
    rng.shuffle(perm)
    return PermMatrix(perm)


def random_weight_vector(n: int, t: int, rng: random.Random) -> BinVector:
    """Uniform vector of weight exactly t."""
    if not 0 <= t <= n:
        raise DimensionError(f"weight {t} out of range for length {n}")
    return BinVector.from_support(n, rng.sample(range(n), t))
