"""The McEliece public-key cryptosystem over binary Goppa codes.

Key generation hides a decodable code G behind an invertible scramble S and
a column permutation P: the public matrix is G_hat = S x G x P.  Encryption
adds a secret weight-t error to m . G_hat; decryption unwinds P, decodes,
and unwinds S.  Includes the key-size and work-factor calculators for the
standard parameter sets and block encryption for byte streams.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import f2linalg, goppa
from .errors import DecodingFailure, DimensionError, SamplingExhausted, UnknownParams
from .f2linalg import BinMatrix, BinVector, PermMatrix
from .gf2m import FieldCtx, random_irreducible
from .goppa import GoppaCode, LinearCode


@dataclass(frozen=True)
class McElieceParams:
    n: int
    k: int
    t: int

    def __post_init__(self):
        if self.n <= 0 or self.k <= 0 or self.t <= 0:
            raise ValueError("parameters must be positive")
        if self.k > self.n:
            raise ValueError("k cannot exceed n")


# Named parameter sets: the classic original proposal, the revision that
# restored its security margin, and the 128-bit post-quantum set.
PRESETS = {
    "legacy": McElieceParams(1024, 524, 50),
    "revised": McElieceParams(2048, 1751, 27),
    "pq128": McElieceParams(6960, 5413, 119),  # keygen at this size is slow
}

# desk-scale presets for demos and tests: (m, t)
TOY_PRESETS = {
    "toy": (4, 2),
    "demo": (5, 3),
}


@dataclass(frozen=True)
class McEliecePublicKey:
    g_hat: BinMatrix
    t: int
    systematic: bool = False

    @property
    def n(self) -> int:
        return self.g_hat.cols

    @property
    def k(self) -> int:
        return self.g_hat.rows


@dataclass(frozen=True)
class McElieceKeyPair:
    public: McEliecePublicKey
    s: BinMatrix
    code: GoppaCode | LinearCode
    p: PermMatrix

    @property
    def n(self) -> int:
        return self.public.n

    @property
    def k(self) -> int:
        return self.public.k

    @property
    def t(self) -> int:
        return self.public.t


def keygen(
    m: int,
    t: int,
    rng: random.Random,
    n: int | None = None,
    systematic: bool = False,
    max_tries: int = 100,
) -> McElieceKeyPair:
    """Generate a key pair over a fresh Goppa code with parameters (m, t).

    n defaults to the full support 2^m; smaller n uses the first n field
    elements.  With systematic=True, S is chosen as the inverse of the last
    k columns of G x P so the public matrix ends in an identity block and
    stores as k x (n-k) bits.
    """
    ctx = FieldCtx(m)
    if n is None:
        n = ctx.order
    if not t * m < n <= ctx.order:
        raise DimensionError(f"need m*t < n <= 2^m, got n={n}")
    g = random_irreducible(ctx, t, rng)
    code = GoppaCode(ctx, g, range(n))
    k = code.k
    if systematic:
        for _ in range(max_tries):
            p = f2linalg.random_permutation(n, rng)
            gp = p.apply_mat(code.generator)
            tail = BinMatrix(
                k, k, [(r >> (n - k)) & ((1 << k) - 1) for r in gp.data]
            )
            if f2linalg.rank(tail) == k:
                s = f2linalg.invert(tail)
                break
        else:
            raise SamplingExhausted("no permutation gave an invertible tail block")
    else:
        s = f2linalg.random_invertible(k, rng)
        p = f2linalg.random_permutation(n, rng)
    g_hat = p.apply_mat(f2linalg.mat_mul(s, code.generator))
    return McElieceKeyPair(
        public=McEliecePublicKey(g_hat, t, systematic), s=s, code=code, p=p
    )


def from_components(
    s: BinMatrix, generator: BinMatrix, p: PermMatrix, t: int
) -> McElieceKeyPair:
    """Assemble a key pair from explicit (S, G, P) with G treated as an
    opaque linear code (decoding falls back to the exhaustive oracle)."""
    code = LinearCode(generator)
    g_hat = p.apply_mat(f2linalg.mat_mul(s, generator))
    return McElieceKeyPair(
        public=McEliecePublicKey(g_hat, t), s=s, code=code, p=p
    )


def encrypt(
    pub: McEliecePublicKey,
    message: BinVector,
    e: BinVector | None = None,
    rng: random.Random | None = None,
) -> BinVector:
    """c = m . G_hat + e with weight(e) = t (e sampled when not supplied)."""
    if message.n != pub.k:
        raise DimensionError(f"message length {message.n} != k {pub.k}")
    if e is None:
        if rng is None:
            raise ValueError("need either an explicit error vector or an rng")
        e = f2linalg.random_weight_vector(pub.n, pub.t, rng)
    elif e.n != pub.n:
        raise DimensionError(f"error length {e.n} != n {pub.n}")
    return f2linalg.vec_mat_mul(message, pub.g_hat) + e


def decrypt(kp: McElieceKeyPair, c: BinVector) -> BinVector:
    """Unwind P, decode to v = m . S, unwind S; verify by re-encryption."""
    if c.n != kp.n:
        raise DimensionError(f"ciphertext length {c.n} != n {kp.n}")
    c_hat = kp.p.apply_vec_inverse(c)
    if isinstance(kp.code, GoppaCode):
        codeword, _ = goppa.patterson_decode(kp.code, c_hat)
    else:
        codeword, _ = goppa.bruteforce_decode(kp.code, c_hat, kp.t)
    v = kp.code.message_of(codeword)
    m = f2linalg.vec_mat_mul(v, f2linalg.invert(kp.s))
    # silent misdecode becomes an explicit error
    residue = c + f2linalg.vec_mat_mul(m, kp.public.g_hat)
    if residue.weight() > kp.t:
        raise DecodingFailure("re-encryption check failed")
    return m


# -- byte-stream block encryption --


def _bytes_to_bits(data: bytes) -> list[int]:
    out = []
    for byte in data:
        for i in range(7, -1, -1):
            out.append((byte >> i) & 1)
    return out


def _bits_to_bytes(bits: list[int]) -> bytes:
    if len(bits) % 8:
        raise ValueError("bit count not a multiple of 8")
    out = bytearray()
    for i in range(0, len(bits), 8):
        b = 0
        for bit in bits[i : i + 8]:
            b = (b << 1) | bit
        out.append(b)
    return bytes(out)


def encrypt_long(
    pub: McEliecePublicKey, data: bytes, rng: random.Random
) -> list[BinVector]:
    """Split a byte stream into k-bit blocks (10* padded) and encrypt each
    with a fresh error vector."""
    k = pub.k
    bits = _bytes_to_bits(data)
    bits.append(1)
    while len(bits) % k:
        bits.append(0)
    blocks = []
    for i in range(0, len(bits), k):
        m = BinVector.from_bits(bits[i : i + k])
        blocks.append(encrypt(pub, m, rng=rng))
    return blocks


def decrypt_long(kp: McElieceKeyPair, blocks: list[BinVector]) -> bytes:
    bits: list[int] = []
    for c in blocks:
        bits.extend(decrypt(kp, c).to_bits())
    while bits and bits[-1] == 0:
        bits.pop()
    if not bits or bits[-1] != 1:
        raise DecodingFailure("padding marker missing after decryption")
    bits.pop()
    return _bits_to_bytes(bits)


# -- calculators --


def key_size_bits(params: McElieceParams, systematic: bool = False) -> int:
    """Public-key storage: k*n bits, or k*(n-k) in systematic form."""
    if systematic:
        return params.k * (params.n - params.k)
    return params.k * params.n


def work_factor_log2(params: McElieceParams) -> tuple[int, int]:
    """log2 work of the two generic attacks: codeword search 2^k and
    coset-leader search 2^(n-k)."""
    return params.k, params.n - params.k


def preset(name: str) -> McElieceParams:
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownParams(f"unknown parameter preset {name!r}") from None
