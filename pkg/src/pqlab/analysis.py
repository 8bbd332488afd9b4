"""Desk-scale analysis tooling: exhaustive code oracles, counting formulas,
security calculators, and the toy lattice attack on small NTRU keys.

Everything here is meant to make claims checkable at toy sizes.  The
exhaustive oracles walk all 2^k codewords with a Gray-code sweep; the
attack runs LLL on the public lattice basis and tests whether any short row
works as a decryption key.  Published attack costs for the full-size
parameter sets are echoed as literature values, never recomputed.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from . import lattice as lattice_mod
from . import mceliece, ntru
from .convring import conv_mul, invert_mod, sample_ternary, ternary_shape
from .errors import DimensionError, NotInvertible, UnknownParams
from .f2linalg import BinMatrix, BinVector
from .lattice import build_public_basis, lll_reduce
from .mceliece import McElieceParams
from .ntru import NtruParams


def _gray_codewords(g: BinMatrix):
    """Yield (message_int, codeword_bits) over all 2^k messages, flipping one
    message bit per step so each codeword is one row XOR away from the last."""
    k = g.rows
    rows = g.data
    word = 0
    msg = 0
    yield 0, 0
    for step in range(1, 1 << k):
        bit = (step & -step).bit_length() - 1
        word ^= rows[bit]
        msg ^= 1 << bit
        yield msg, word


def min_weight_bruteforce(g: BinMatrix) -> tuple[int, BinVector]:
    """Exact minimum nonzero codeword weight and a witness, over all 2^k
    codewords (k <= 24)."""
    if g.rows > 24:
        raise DimensionError("exhaustive enumeration limited to k <= 24")
    best_w = g.cols + 1
    best = 0
    for msg, word in _gray_codewords(g):
        if msg == 0:
            continue
        w = word.bit_count()
        if 0 < w < best_w:
            best_w = w
            best = word
    return best_w, BinVector(g.cols, best)


def weight_spectrum(g: BinMatrix) -> dict[int, int]:
    """Codeword weight histogram over all 2^k messages (k <= 24)."""
    if g.rows > 24:
        raise DimensionError("exhaustive enumeration limited to k <= 24")
    counts: dict[int, int] = {}
    for _, word in _gray_codewords(g):
        w = word.bit_count()
        counts[w] = counts.get(w, 0) + 1
    return counts


def nearest_codeword_bruteforce(g: BinMatrix, w: BinVector) -> BinVector:
    """Codeword at minimum Hamming distance from w; ties resolved toward the
    lexicographically smallest message (bit 0 first)."""
    if g.rows > 24:
        raise DimensionError("exhaustive enumeration limited to k <= 24")
    if w.n != g.cols:
        raise DimensionError("target length mismatch")
    wb = w.bits
    k = g.rows

    def msg_key(m: int) -> tuple[int, ...]:
        return tuple((m >> i) & 1 for i in range(k))

    best_idx = 0
    best_word = 0
    best_dist = (wb ^ 0).bit_count()
    for msg, word in _gray_codewords(g):
        d = (word ^ wb).bit_count()
        if d < best_dist or (d == best_dist and msg_key(msg) < msg_key(best_idx)):
            best_dist = d
            best_idx = msg
            best_word = word
    return BinVector(g.cols, best_word)


def count_bases(k: int) -> int:
    """Number of unordered bases of GF(2)^k: prod(2^k - 2^i) / k!."""
    if not 1 <= k <= 16:
        raise DimensionError("exact counting supported for 1 <= k <= 16")
    prod = 1
    for i in range(k):
        prod *= (1 << k) - (1 << i)
    return prod // math.factorial(k)


# -- toy NTRU lattice attack --


@dataclass
class AttackCandidate:
    f: list[int]
    g: list[int]
    row_norm_sq: int
    decrypts: bool


@dataclass
class AttackReport:
    scheme: str
    params: NtruParams
    seeds: list[int]
    successes: int
    wall_time: float
    details: list[dict] = field(default_factory=list)

    def csv_rows(self) -> list[str]:
        """Deterministic machine-readable rows (no timing: byte-stable
        across runs with the same seeds)."""
        out = ["seed,candidates,success,recovered_f"]
        for d in self.details:
            rec = "" if d["recovered_f"] is None else " ".join(map(str, d["recovered_f"]))
            out.append(f"{d['seed']},{d['candidates']},{int(d['success'])},{rec}")
        return out

    def summary(self) -> str:
        return (
            f"{self.scheme}: {self.successes}/{len(self.seeds)} keys recovered "
            f"(N={self.params.n}, q={self.params.q}, d_f={self.params.d_f})"
        )


def _try_candidate_key(
    f_cand: list[int], params: NtruParams, pub_h: list[int], rng: random.Random
) -> bool:
    """Does f_cand work as a private key for pub_h?  Test: encrypt a random
    shaped message with the real public key and decrypt with the candidate."""
    try:
        f_p_inv = invert_mod(f_cand, params.p)
    except NotInvertible:
        return False
    m = sample_ternary(params.n, *params.shape, rng)
    r = sample_ternary(params.n, *params.shape, rng)
    pub = ntru.NtruPublicKey(params, tuple(pub_h))
    c = ntru.encrypt(pub, m, r=r)
    a = conv_mul(f_cand, c, params.q)
    recovered = conv_mul(f_p_inv, a, params.p)
    return recovered == m


def ntru_lll_attack(
    h: list[int], params: NtruParams, rng: random.Random, seed_label: int = 0
) -> AttackReport:
    """Reduce the public basis with LLL and scan the output rows for ternary
    (a, b) pairs that function as private keys.

    Every candidate satisfies a * h = b (mod q) automatically (rows of a
    lattice basis stay in the lattice under LLL), and the check is asserted
    anyway.  Success means the candidate actually decrypts a test
    ciphertext; rotations x^i * f and negations count, as they are valid
    keys in their own right.
    """
    n = params.n
    if n > 12:
        raise DimensionError("attack demo limited to N <= 12")
    start = time.monotonic()
    basis = build_public_basis(h, params.q)
    reduced = lll_reduce(basis)
    membership = lattice_mod.ConvModLattice(tuple(h), params.q)
    candidates: list[AttackCandidate] = []
    success = False
    recovered = None
    for row in reduced:
        a, b = row[:n], row[n:]
        if ternary_shape(a) is None or ternary_shape(b) is None:
            continue
        if all(c == 0 for c in a):
            continue
        if not membership.contains(a, b):
            raise AssertionError("reduced row left the lattice")
        works = _try_candidate_key(a, params, h, rng)
        candidates.append(
            AttackCandidate(
                f=a, g=b, row_norm_sq=sum(c * c for c in row), decrypts=works
            )
        )
        if works and not success:
            success = True
            recovered = a
    wall = time.monotonic() - start
    return AttackReport(
        scheme="ntru-lll",
        params=params,
        seeds=[seed_label],
        successes=1 if success else 0,
        wall_time=wall,
        details=[
            {
                "seed": seed_label,
                "candidates": len(candidates),
                "success": success,
                "recovered_f": recovered,
                "candidate_list": candidates,
            }
        ],
    )


def run_attack_trials(params: NtruParams, seeds: list[int]) -> AttackReport:
    """Fresh key per seed, one attack per key, merged into one report in
    seed order."""
    start = time.monotonic()
    details = []
    successes = 0
    for seed in seeds:
        rng = random.Random(seed)
        kp = ntru.keygen(params, rng)
        rep = ntru_lll_attack(list(kp.public.h), params, rng, seed_label=seed)
        d = rep.details[0]
        details.append(d)
        if d["success"]:
            successes += 1
    wall = time.monotonic() - start
    return AttackReport(
        scheme="ntru-lll",
        params=params,
        seeds=list(seeds),
        successes=successes,
        wall_time=wall,
        details=details,
    )


# -- security calculators --


@dataclass(frozen=True)
class SecuritySummary:
    scheme: str
    name: str
    params: object
    key_size_bits: int | None
    key_size_bits_systematic: int | None
    work_factor_log2: tuple[int, int] | None
    notes: tuple[str, ...]

    def lines(self) -> list[str]:
        out = [f"scheme: {self.scheme}", f"preset: {self.name}"]
        p = self.params
        if isinstance(p, McElieceParams):
            out.append(f"params: [n,k,t] = [{p.n},{p.k},{p.t}]")
        else:
            out.append(f"params: [N,p,q] = [{p.n},{p.p},{p.q}]")
        if self.key_size_bits is not None:
            out.append(f"public key bits: {self.key_size_bits}")
        if self.key_size_bits_systematic is not None:
            out.append(f"public key bits (systematic): {self.key_size_bits_systematic}")
        if self.work_factor_log2 is not None:
            cw, cl = self.work_factor_log2
            out.append(f"work factor log2: codeword search {cw}, coset leaders {cl}")
        out.extend(f"note: {n}" for n in self.notes)
        return out


_MCELIECE_NOTES = {
    "legacy": (
        "original parameter proposal",
        "broken in about 2^60.55 bit operations by improved "
        "information-set decoding (literature value, not recomputed)",
    ),
    "revised": (
        "revision restoring 80-bit security against that attack "
        "(literature value)",
    ),
    "pq128": ("sized for 128-bit post-quantum security (literature value)",),
}

_NTRU_NOTES = {
    "rec443": (
        "recommended for 128-bit post-quantum security (literature value)",
        "alternate ring degrees 587 and 743 target higher margins",
    ),
}


def security_summary(scheme: str, name: str) -> SecuritySummary:
    """Echo the published security levels and computed size/work numbers
    for a recognized preset."""
    if scheme == "mceliece":
        if name not in mceliece.PRESETS:
            raise UnknownParams(f"unknown mceliece preset {name!r}")
        params = mceliece.PRESETS[name]
        return SecuritySummary(
            scheme="mceliece",
            name=name,
            params=params,
            key_size_bits=mceliece.key_size_bits(params),
            key_size_bits_systematic=mceliece.key_size_bits(params, systematic=True),
            work_factor_log2=mceliece.work_factor_log2(params),
            notes=_MCELIECE_NOTES.get(name, ()),
        )
    if scheme == "ntru":
        if name not in ntru.PRESETS:
            raise UnknownParams(f"unknown ntru preset {name!r}")
        params = ntru.PRESETS[name]
        return SecuritySummary(
            scheme="ntru",
            name=name,
            params=params,
            key_size_bits=None,
            key_size_bits_systematic=None,
            work_factor_log2=None,
            notes=_NTRU_NOTES.get(name, ()),
        )
    raise UnknownParams(f"unknown scheme {scheme!r}")
