"""NTRU ring encryption: keygen invariants, the reference chain, wrap
analysis, and byte-stream blocks."""

import random

import pytest

from pqlab import kat
from pqlab.convring import (
    center_mod,
    conv_mul,
    ring_one,
    sample_ternary,
    ternary_shape,
)
from pqlab.errors import (
    DimensionError,
    MessageRangeError,
    SamplingExhausted,
    UnknownParams,
)
from pqlab.ntru import (
    PRESETS,
    NtruKeyPair,
    NtruParams,
    NtruPublicKey,
    block_bytes,
    decrypt,
    decrypt_bytes,
    decrypt_with_intermediate,
    decryption_identity_check,
    encrypt,
    encrypt_bytes,
    keygen,
    keypair_from_values,
    preset,
)

TOY = PRESETS["toy11"]


def reference_keypair():
    return keypair_from_values(TOY, kat.NTRU_F, kat.NTRU_G_POLY)


# -- parameters --


def test_params_validation():
    with pytest.raises(ValueError):
        NtruParams(11, 3, 9, 2)  # gcd(3, 9) != 1
    with pytest.raises(ValueError):
        NtruParams(11, 41, 3, 2)  # p >= q
    with pytest.raises(ValueError):
        NtruParams(11, 3, 40, 2)  # q neither prime nor a power of two
    with pytest.raises(ValueError):
        NtruParams(11, 3, 41, 6)  # 2*6+1 > 11
    with pytest.raises(ValueError):
        NtruParams(2, 3, 41, 0)
    assert NtruParams(11, 3, 64, 2).q == 64  # power of two accepted


def test_params_shape():
    assert TOY.shape == (3, 2)
    assert PRESETS["rec443"].shape == (148, 147)


def test_preset_lookup():
    assert preset("toy11") == TOY
    with pytest.raises(UnknownParams):
        preset("nope")


# -- keygen --


def test_keygen_invariants(rng):
    kp = keygen(TOY, rng)
    assert ternary_shape(list(kp.f)) == TOY.shape
    # f * f_p_inv = 1 (mod p)
    prod = [c % TOY.p for c in conv_mul(list(kp.f), list(kp.f_p_inv), TOY.p)]
    assert prod == ring_one(TOY.n)
    # f * h = g (mod q) for some ternary g of the right shape
    g = conv_mul(list(kp.f), list(kp.public.h), TOY.q)
    assert ternary_shape(g) == TOY.shape
    # h stored centered
    assert center_mod(list(kp.public.h), TOY.q) == list(kp.public.h)


def test_keygen_deterministic():
    a = keygen(TOY, random.Random(4))
    b = keygen(TOY, random.Random(4))
    assert a.f == b.f and a.public.h == b.public.h


def test_keygen_recommended_size_seeds():
    # verification products at the recommended [N,p,q] = [443,3,2048]
    params = PRESETS["rec443"]
    for seed in range(50):
        kp = keygen(params, random.Random(seed))
        prod = [c % 3 for c in conv_mul(list(kp.f), list(kp.f_p_inv), 3)]
        assert prod == ring_one(params.n)
        g = conv_mul(list(kp.f), list(kp.public.h), params.q)
        assert ternary_shape(g) == params.shape


# -- reference example --


def test_reference_keypair_values():
    kp = reference_keypair()
    assert list(kp.f_p_inv) == kat.NTRU_F_P_INV
    assert center_mod(list(kp.public.h), 41) == center_mod(kat.NTRU_H, 41)


def test_reference_encrypt():
    kp = reference_keypair()
    c = encrypt(kp.public, kat.NTRU_M, r=kat.NTRU_R)
    assert c == center_mod(kat.NTRU_C, 41)


def test_reference_decrypt_chain():
    kp = reference_keypair()
    a, m = decrypt_with_intermediate(kp, center_mod(kat.NTRU_C, 41))
    assert a == center_mod(kat.NTRU_A, 41)
    assert m == kat.NTRU_M
    assert decrypt(kp, center_mod(kat.NTRU_C, 41)) == kat.NTRU_M


def test_reference_identity_check_true():
    assert decryption_identity_check(
        kat.NTRU_F, kat.NTRU_G_POLY, kat.NTRU_R, kat.NTRU_M, TOY
    )


def test_identity_equality_before_reduction():
    # when no wrap occurs, the uncentered f*c mod-q centering equals
    # p*(r*g) + f*m over the integers, term by term
    kp = reference_keypair()
    c = encrypt(kp.public, kat.NTRU_M, r=kat.NTRU_R)
    a, _ = decrypt_with_intermediate(kp, c)
    rg = conv_mul(kat.NTRU_R, kat.NTRU_G_POLY)
    fm = conv_mul(kat.NTRU_F, kat.NTRU_M)
    exact = [TOY.p * x + y for x, y in zip(rg, fm)]
    assert a == exact


# -- encrypt / decrypt --


def test_zero_message_zero_blinding():
    kp = reference_keypair()
    zero = [0] * TOY.n
    assert encrypt(kp.public, zero, r=zero) == zero
    assert decrypt(kp, zero) == zero


def test_message_range_validation():
    kp = reference_keypair()
    bad = [0] * TOY.n
    bad[3] = 2  # 2 is not centered mod 3
    with pytest.raises(MessageRangeError):
        encrypt(kp.public, bad, r=kat.NTRU_R)


def test_dimension_validation(rng):
    kp = reference_keypair()
    with pytest.raises(DimensionError):
        encrypt(kp.public, [0] * 10, rng=rng)
    with pytest.raises(DimensionError):
        encrypt(kp.public, [0] * 11, r=[0] * 10)
    with pytest.raises(DimensionError):
        decrypt(kp, [0] * 12)


def test_encrypt_needs_blinding_or_rng():
    kp = reference_keypair()
    with pytest.raises(ValueError):
        encrypt(kp.public, [0] * TOY.n)


def test_roundtrips_toy_parameters(rng):
    # at [11, 3, 41] with shape-(3,2) operands the integer bound is
    # p*5 + 5 = 20 and 2*20 <= 41, so no wrap is possible: every trial
    # must round-trip and every identity check must pass
    failures = 0
    for trial in range(300):
        kp = keygen(TOY, rng)
        m = sample_ternary(TOY.n, *TOY.shape, rng)
        r = sample_ternary(TOY.n, *TOY.shape, rng)
        g = conv_mul(list(kp.f), list(kp.public.h), TOY.q)
        assert decryption_identity_check(list(kp.f), g, r, m, TOY)
        c = encrypt(kp.public, m, r=r)
        if decrypt(kp, c) != m:
            failures += 1
    assert failures == 0


def test_wrap_threshold_sweep():
    # fixed operands, q swept downward: the identity check must flip from
    # true to false exactly where the integer bound -q < 2v <= q first breaks
    f, g, r, m = kat.NTRU_F, kat.NTRU_G_POLY, kat.NTRU_R, kat.NTRU_M
    rg = conv_mul(r, g)
    fm = conv_mul(f, m)
    v = [3 * a + b for a, b in zip(rg, fm)]
    vmax, vmin = max(v), min(v)
    q_ok = max(2 * vmax, -2 * vmin + 1)  # smallest q satisfying the bound

    sweep = [q for q in [41, 37, 31, 29, 23, 19, 17, 16, 13, 11, 8, 7, 5, 4]]
    flipped = None
    for q in sweep:
        params = NtruParams(11, 3, q, 2)
        ok = decryption_identity_check(f, g, r, m, params)
        assert ok == (q >= q_ok)
        if not ok and flipped is None:
            flipped = q
    assert flipped is not None  # the sweep reaches below the threshold
    assert flipped < q_ok <= 41


def test_wrap_failure_decrypts_wrong():
    # at a q below the threshold, decryption visibly disagrees with m
    # (the reference f stays invertible mod 17)
    f, g, r, m = kat.NTRU_F, kat.NTRU_G_POLY, kat.NTRU_R, kat.NTRU_M
    params = NtruParams(11, 3, 17, 2)
    assert not decryption_identity_check(f, g, r, m, params)
    kp = keypair_from_values(params, f, g)
    c = encrypt(kp.public, m, r=r)
    assert decrypt(kp, c) != m


def test_keypair_from_values_skips_shape_checks():
    # replay path accepts non-shaped f as long as it inverts
    params = NtruParams(7, 3, 41, 2)
    f = [1, 1, 0, -1, 0, 0, 0]  # shape (2,1), not (3,2)
    g = [0, 1, -1, 0, 1, 0, 0]
    kp = keypair_from_values(params, f, g)
    assert isinstance(kp, NtruKeyPair)
    assert kp.params == params


# -- byte-stream encryption --


def test_block_bytes():
    assert block_bytes(11) == 2  # 3^11 = 177147 >= 65536, < 16777216


def test_bytes_roundtrip(rng):
    kp = keygen(TOY, rng)
    for size in [0, 1, 2, 3, 7, 20]:
        data = bytes(rng.randrange(256) for _ in range(size))
        blocks = encrypt_bytes(kp.public, data, rng)
        assert decrypt_bytes(kp, blocks) == data


def test_bytes_block_count(rng):
    kp = keygen(TOY, rng)
    # 2 bytes + marker = 17 bits -> 2 blocks of 16
    assert len(encrypt_bytes(kp.public, b"hi", rng)) == 2
    # empty -> marker only -> 1 block
    assert len(encrypt_bytes(kp.public, b"", rng)) == 1


def test_bytes_requires_p3(rng):
    params = NtruParams(11, 5, 41, 2)
    kp = keygen(params, rng)
    with pytest.raises(UnknownParams):
        encrypt_bytes(kp.public, b"x", rng)
    with pytest.raises(UnknownParams):
        decrypt_bytes(kp, [])


# -- sampling exhaustion --


def test_keygen_exhaustion_with_degenerate_rng():
    # an rng pinned to one specific draw: +1 at {0,1,3}, -1 at {2,5} gives
    # 1 + x - x^2 + x^3 - x^5, which shares a factor with x^11 - 1 mod 3,
    # so every retry hits NotInvertible and the budget runs out
    class Pinned(random.Random):
        def sample(self, population, k):
            return [0, 1, 3, 2, 5][:k]

    with pytest.raises(SamplingExhausted):
        keygen(TOY, Pinned(), max_tries=5)
