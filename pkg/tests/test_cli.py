"""End-to-end command tests, run in-process through main(argv)."""

import os

import pytest

from pqlab.cli import main


@pytest.fixture(autouse=True)
def _no_ambient_seed(monkeypatch):
    # keep the environment from leaking into seed resolution
    monkeypatch.delenv("PQLAB_SEED", raising=False)


def _keygen(tmp_path, name, *extra):
    out = tmp_path / name
    rc = main(["keygen", "--out", str(out), *extra])
    assert rc == 0
    return out


# -- key generation + full file round-trips --


def test_mceliece_file_roundtrip(tmp_path, rng):
    keys = _keygen(
        tmp_path, "k", "--scheme", "mceliece", "--preset", "toy", "--seed", "5"
    )
    assert (keys / "key.mcpub").is_file()
    assert (keys / "key.mcpriv").is_file()
    plain = tmp_path / "msg.bin"
    plain.write_bytes(rng.randbytes(100))
    ct = tmp_path / "msg.ct"
    out = tmp_path / "msg.out"
    assert main([
        "encrypt", "--pub", str(keys / "key.mcpub"),
        "--in", str(plain), "--out", str(ct), "--seed", "6",
    ]) == 0
    assert main([
        "decrypt", "--priv", str(keys / "key.mcpriv"),
        "--in", str(ct), "--out", str(out),
    ]) == 0
    assert out.read_bytes() == plain.read_bytes()


def test_mceliece_1kib_roundtrip(tmp_path, rng):
    # 1 KiB of random bytes through the (m,t)=(5,3) preset
    keys = _keygen(
        tmp_path, "k", "--scheme", "mceliece", "--preset", "demo", "--seed", "1"
    )
    plain = tmp_path / "blob.bin"
    plain.write_bytes(rng.randbytes(1024))
    ct = tmp_path / "blob.ct"
    out = tmp_path / "blob.out"
    assert main([
        "encrypt", "--pub", str(keys / "key.mcpub"),
        "--in", str(plain), "--out", str(ct), "--seed", "2",
    ]) == 0
    assert main([
        "decrypt", "--priv", str(keys / "key.mcpriv"),
        "--in", str(ct), "--out", str(out),
    ]) == 0
    assert out.read_bytes() == plain.read_bytes()


def test_ntru_file_roundtrip(tmp_path, rng):
    keys = _keygen(
        tmp_path, "k", "--scheme", "ntru", "--preset", "toy11", "--seed", "5"
    )
    assert (keys / "key.ntpub").is_file()
    plain = tmp_path / "msg.bin"
    plain.write_bytes(rng.randbytes(64))
    ct = tmp_path / "msg.ct"
    out = tmp_path / "msg.out"
    assert main([
        "encrypt", "--pub", str(keys / "key.ntpub"),
        "--in", str(plain), "--out", str(ct), "--seed", "6",
    ]) == 0
    assert main([
        "decrypt", "--priv", str(keys / "key.ntpriv"),
        "--in", str(ct), "--out", str(out),
    ]) == 0
    assert out.read_bytes() == plain.read_bytes()


def test_custom_params(tmp_path, rng):
    keys = _keygen(
        tmp_path, "k", "--scheme", "ntru", "--params", "13,3,41,2", "--seed", "3"
    )
    plain = tmp_path / "m.bin"
    plain.write_bytes(b"custom ring degree")
    ct = tmp_path / "m.ct"
    out = tmp_path / "m.out"
    assert main([
        "encrypt", "--pub", str(keys / "key.ntpub"),
        "--in", str(plain), "--out", str(ct), "--seed", "4",
    ]) == 0
    assert main([
        "decrypt", "--priv", str(keys / "key.ntpriv"),
        "--in", str(ct), "--out", str(out),
    ]) == 0
    assert out.read_bytes() == plain.read_bytes()
    # mceliece takes m,t
    keys2 = _keygen(
        tmp_path, "k2", "--scheme", "mceliece", "--params", "4,2", "--seed", "3"
    )
    assert (keys2 / "key.mcpub").is_file()


def test_systematic_keygen(tmp_path):
    keys = _keygen(
        tmp_path, "k", "--scheme", "mceliece", "--preset", "toy",
        "--seed", "11", "--systematic",
    )
    text = (keys / "key.mcpub").read_text()
    assert "param systematic 1" in text
    assert "matrix a " in text


# -- usage and parameter errors (exit 1) --


def test_usage_errors(capsys):
    assert main([]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["keygen"]) == 1  # --scheme is required
    assert main(["demo"]) == 1
    capsys.readouterr()


def test_unknown_preset(tmp_path, capsys):
    rc = main([
        "keygen", "--scheme", "mceliece", "--preset", "huge",
        "--out", str(tmp_path), "--seed", "1",
    ])
    assert rc == 1
    assert "unknown mceliece preset" in capsys.readouterr().err


def test_bad_custom_params(tmp_path, capsys):
    rc = main([
        "keygen", "--scheme", "ntru", "--params", "11,3,41",
        "--out", str(tmp_path), "--seed", "1",
    ])
    assert rc == 1
    assert "needs 4 integers" in capsys.readouterr().err


# -- worked-example replays --


def test_demo_ntru_matches_stored_values(capsys):
    assert main(["demo", "paper-example", "--scheme", "ntru"]) == 0
    out = capsys.readouterr().out
    assert "MISMATCH" not in out
    assert out.count("[ok]") == 6
    assert "h = f_q^-1 * g mod q" in out
    assert "a = center(f*c mod q)" in out


def test_demo_mceliece_flags_stored_chat(capsys):
    # the stored permuted-ciphertext reference is inconsistent with the rest
    # of the example (it equals c.P instead of c.P^-1), so the replay exits
    # nonzero with exactly that one mismatch
    assert main(["demo", "paper-example", "--scheme", "mceliece"]) == 1
    captured = capsys.readouterr()
    out = captured.out
    assert out.count("MISMATCH") == 1
    bad_line = next(ln for ln in out.splitlines() if "MISMATCH" in ln)
    assert "c_hat" in bad_line
    assert "1100110101011001" in bad_line  # computed
    assert "1100100111110100" in bad_line  # stored reference
    # every other intermediate matches
    assert out.count("[ok]") == 4
    assert "replay finished with mismatches" in captured.err


# -- attack demo --


def test_demo_attack_report(capsys):
    rc = main([
        "demo", "attack", "--scheme", "ntru",
        "--n", "7", "--q", "41", "--seeds", "3",
    ])
    assert rc == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0] == "seed,candidates,success,recovered_f"
    assert len(lines) == 5  # header + 3 rows + summary
    for seed, row in enumerate(lines[1:4]):
        assert row.startswith(f"{seed},")
    assert lines[4].startswith("ntru-lll:")
    assert "(N=7, q=41, d_f=2)" in lines[4]


def test_demo_attack_deterministic(capsys):
    argv = ["demo", "attack", "--scheme", "ntru", "--n", "7", "--q", "41", "--seeds", "2"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


# -- info --


def test_info_legacy(capsys):
    assert main(["info", "--params", "legacy"]) == 0
    out = capsys.readouterr().out
    assert "262000" in out
    assert "2^60.55" in out
    assert "work factor log2" in out


def test_info_rec443(capsys):
    assert main(["info", "--params", "rec443"]) == 0
    out = capsys.readouterr().out
    assert "[443,3,2048]" in out
    assert "128-bit post-quantum" in out


def test_info_unknown(capsys):
    assert main(["info", "--params", "quantum9000"]) == 1
    assert "unknown preset" in capsys.readouterr().err


# -- decrypt-time guards --


def test_wrong_key_params_hash(tmp_path, rng, capsys):
    a = _keygen(tmp_path, "a", "--scheme", "ntru", "--preset", "toy11", "--seed", "1")
    b = _keygen(tmp_path, "b", "--scheme", "ntru", "--params", "13,3,41,2", "--seed", "2")
    plain = tmp_path / "m.bin"
    plain.write_bytes(b"hello")
    ct = tmp_path / "m.ct"
    assert main([
        "encrypt", "--pub", str(a / "key.ntpub"),
        "--in", str(plain), "--out", str(ct), "--seed", "3",
    ]) == 0
    capsys.readouterr()
    rc = main([
        "decrypt", "--priv", str(b / "key.ntpriv"),
        "--in", str(ct), "--out", str(tmp_path / "m.out"),
    ])
    assert rc == 2
    assert "params-hash mismatch" in capsys.readouterr().err


def test_scheme_mismatch(tmp_path, rng, capsys):
    mc = _keygen(tmp_path, "mc", "--scheme", "mceliece", "--preset", "toy", "--seed", "1")
    nt = _keygen(tmp_path, "nt", "--scheme", "ntru", "--preset", "toy11", "--seed", "1")
    plain = tmp_path / "m.bin"
    plain.write_bytes(b"x")
    ct = tmp_path / "m.ct"
    assert main([
        "encrypt", "--pub", str(mc / "key.mcpub"),
        "--in", str(plain), "--out", str(ct), "--seed", "2",
    ]) == 0
    capsys.readouterr()
    rc = main([
        "decrypt", "--priv", str(nt / "key.ntpriv"),
        "--in", str(ct), "--out", str(tmp_path / "m.out"),
    ])
    assert rc == 2
    assert "does not match key scheme" in capsys.readouterr().err


def test_key_kind_checks(tmp_path, capsys):
    keys = _keygen(tmp_path, "k", "--scheme", "ntru", "--preset", "toy11", "--seed", "1")
    plain = tmp_path / "m.bin"
    plain.write_bytes(b"x")
    # encrypting with a private key file is refused
    rc = main([
        "encrypt", "--pub", str(keys / "key.ntpriv"),
        "--in", str(plain), "--out", str(tmp_path / "m.ct"), "--seed", "2",
    ])
    assert rc == 2
    assert "not a public key" in capsys.readouterr().err
    # decrypting with a public key file is refused
    rc = main([
        "decrypt", "--priv", str(keys / "key.ntpub"),
        "--in", str(plain), "--out", str(tmp_path / "m.out"),
    ])
    assert rc == 2
    assert "not a private key" in capsys.readouterr().err


def test_corrupt_ciphertext(tmp_path, capsys):
    keys = _keygen(tmp_path, "k", "--scheme", "mceliece", "--preset", "toy", "--seed", "1")
    plain = tmp_path / "m.bin"
    plain.write_bytes(b"abc")
    ct = tmp_path / "m.ct"
    assert main([
        "encrypt", "--pub", str(keys / "key.mcpub"),
        "--in", str(plain), "--out", str(ct), "--seed", "2",
    ]) == 0
    lines = ct.read_text().splitlines()
    idx = next(i for i, ln in enumerate(lines) if ln.startswith("block "))
    lines[idx] = "block zz" + lines[idx].split()[1][2:]
    ct.write_text("\n".join(lines) + "\n")
    capsys.readouterr()
    rc = main([
        "decrypt", "--priv", str(keys / "key.mcpriv"),
        "--in", str(ct), "--out", str(tmp_path / "m.out"),
    ])
    assert rc == 2
    assert "format error" in capsys.readouterr().err


def test_undecodable_blocks(tmp_path, capsys):
    # a well-formed ciphertext whose only block strips to an empty message
    # (the padding marker is missing) must fail as a crypto error
    keys = _keygen(tmp_path, "k", "--scheme", "mceliece", "--preset", "toy", "--seed", "1")
    from pqlab.f2linalg import BinVector
    from pqlab.formats import load_file, serialize_ciphertext_mceliece

    _, _, pub = load_file(str(keys / "key.mcpub"))
    ct = tmp_path / "m.ct"
    ct.write_text(serialize_ciphertext_mceliece(pub, [BinVector(pub.n, 0)]))
    capsys.readouterr()
    rc = main([
        "decrypt", "--priv", str(keys / "key.mcpriv"),
        "--in", str(ct), "--out", str(tmp_path / "m.out"),
    ])
    assert rc == 3
    assert "crypto failure" in capsys.readouterr().err


def test_missing_input_file(tmp_path, capsys):
    keys = _keygen(tmp_path, "k", "--scheme", "ntru", "--preset", "toy11", "--seed", "1")
    rc = main([
        "encrypt", "--pub", str(keys / "key.ntpub"),
        "--in", str(tmp_path / "nope.bin"), "--out", str(tmp_path / "m.ct"),
        "--seed", "2",
    ])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err


# -- seeding --


def test_seed_determinism(tmp_path):
    a = _keygen(tmp_path, "a", "--scheme", "ntru", "--preset", "toy11", "--seed", "7")
    b = _keygen(tmp_path, "b", "--scheme", "ntru", "--preset", "toy11", "--seed", "7")
    assert (a / "key.ntpub").read_bytes() == (b / "key.ntpub").read_bytes()
    assert (a / "key.ntpriv").read_bytes() == (b / "key.ntpriv").read_bytes()
    c = _keygen(tmp_path, "c", "--scheme", "ntru", "--preset", "toy11", "--seed", "8")
    assert (a / "key.ntpriv").read_bytes() != (c / "key.ntpriv").read_bytes()


def test_env_seed_beats_flag(tmp_path, monkeypatch, capsys):
    baseline = _keygen(
        tmp_path, "base", "--scheme", "ntru", "--preset", "toy11", "--seed", "9"
    )
    monkeypatch.setenv("PQLAB_SEED", "9")
    override = _keygen(
        tmp_path, "env", "--scheme", "ntru", "--preset", "toy11", "--seed", "7"
    )
    assert "seed: 9" in capsys.readouterr().err
    assert (override / "key.ntpriv").read_bytes() == (baseline / "key.ntpriv").read_bytes()


def test_bad_env_seed(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PQLAB_SEED", "banana")
    rc = main([
        "keygen", "--scheme", "ntru", "--preset", "toy11",
        "--out", str(tmp_path / "x"),
    ])
    assert rc == 1
    assert "PQLAB_SEED" in capsys.readouterr().err


def test_seed_always_reported(tmp_path, capsys):
    _keygen(tmp_path, "k", "--scheme", "ntru", "--preset", "toy11", "--seed", "4")
    assert "seed: 4" in capsys.readouterr().err
