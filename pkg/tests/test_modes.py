import os
import random

import pytest
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes as cmodes
from hypothesis import given, settings, strategies as st

from aesimg.aes_core import EngineKind, encrypt_block
from aesimg.errors import LengthError, PaddingError
from aesimg.modes import (
    ModeKind,
    ctr_xcrypt,
    decrypt,
    ecb_decrypt,
    ecb_decrypt_raw,
    ecb_encrypt,
    ecb_encrypt_raw,
    encrypt,
    increment_counter,
    pad_pkcs7,
    unpad_pkcs7,
)

KEY = bytes.fromhex("2b7e151628aed2a6abf7158809cf4f3c")
CTR0 = bytes.fromhex("f0f1f2f3f4f5f6f7f8f9fafbfcfdfeff")

# SP 800-38A, F.1.1 and F.5.1
PLAIN = bytes.fromhex(
    "6bc1bee22e409f96e93d7e117393172a"
    "ae2d8a571e03ac9c9eb76fac45af8e51"
    "30c81c46a35ce411e5fbc1191a0a52ef"
    "f69f2445df4f9b17ad2b417be66c3710"
)
ECB_CT = bytes.fromhex(
    "3ad77bb40d7a3660a89ecaf32466ef97"
    "f5d3d58503b9699de785895a96fdbaaf"
    "43b1cd7f598ece23881b00e3ed030688"
    "7b0c785e27e8ad3f8223207104725dd4"
)
CTR_CT = bytes.fromhex(
    "874d6191b620e3261bef6864990db6ce"
    "9806f66b7970fdff8617187bb9fffdff"
    "5ae4df3edbd5d35e5b4f09020db03eab"
    "1e031dda2fbe03d1792170a0f3009cee"
)

engines = pytest.mark.parametrize("engine", list(EngineKind))


def openssl_ctr(key, iv, data):
    enc = Cipher(algorithms.AES(key), cmodes.CTR(iv)).encryptor()
    return enc.update(data) + enc.finalize()


# --- padding -------------------------------------------------------------------

def test_pad_examples():
    assert pad_pkcs7(bytes(15)) == bytes(15) + b"\x01"
    assert pad_pkcs7(bytes(16)) == bytes(16) + b"\x10" * 16
    assert pad_pkcs7(b"") == b"\x10" * 16


def test_pad_unpad_all_short_lengths():
    for n in range(65):
        data = os.urandom(n)
        padded = pad_pkcs7(data)
        assert len(padded) % 16 == 0 and len(data) < len(padded) <= len(data) + 16
        assert unpad_pkcs7(padded) == data


@pytest.mark.parametrize("tail", [b"\x00", b"\x01\x02", b"\x11", b"\x03\x03"])
def test_unpad_rejects_bad_padding(tail):
    with pytest.raises(PaddingError):
        unpad_pkcs7(bytes(16 - len(tail)) + tail)


def test_unpad_single_byte_pad_ignores_preceding_byte():
    # ...02 01 is a valid one-byte pad, not an inconsistent two-byte one
    assert unpad_pkcs7(bytes(14) + b"\x02\x01") == bytes(14) + b"\x02"


def test_unpad_rejects_bad_length():
    with pytest.raises(LengthError):
        unpad_pkcs7(bytes(17))
    with pytest.raises(LengthError):
        unpad_pkcs7(b"")


# --- counter ---------------------------------------------------------------------

def test_increment_counter():
    assert increment_counter(bytes(16)) == bytes(15) + b"\x01"
    assert increment_counter(b"\xff" * 16) == bytes(16)
    assert increment_counter(bytes(15) + b"\xff") == bytes(14) + b"\x01\x00"


def test_increment_counter_length_checked():
    with pytest.raises(LengthError):
        increment_counter(bytes(8))


# --- ECB -------------------------------------------------------------------------

@engines
def test_ecb_known_answers(kernels, engine):
    assert ecb_encrypt_raw(PLAIN, KEY, engine, kernels=kernels) == ECB_CT
    assert ecb_decrypt_raw(ECB_CT, KEY, engine, kernels=kernels) == PLAIN
    # padded form: the same four blocks plus one encrypted pad block
    full = ecb_encrypt(PLAIN, KEY, engine, kernels=kernels)
    assert full[:64] == ECB_CT
    assert full[64:] == encrypt_block(KEY, b"\x10" * 16)


@engines
def test_ecb_equal_blocks_equal_ciphertext(engine):
    ct = ecb_encrypt(b"A" * 32, KEY, engine)
    assert ct[:16] == ct[16:32]


@settings(max_examples=50)
@given(st.binary(max_size=300))
def test_ecb_round_trip(data):
    for engine in EngineKind:
        assert ecb_decrypt(ecb_encrypt(data, KEY, engine), KEY, engine) == data


def test_ecb_decrypt_length_errors():
    with pytest.raises(LengthError):
        ecb_decrypt(bytes(17), KEY)
    with pytest.raises(LengthError):
        ecb_decrypt(b"", KEY)
    with pytest.raises(LengthError):
        ecb_encrypt_raw(bytes(5), KEY)


def test_ecb_wrong_key_rejected_by_padding_check():
    rng = random.Random(5)
    accepted = 0
    for _ in range(1000):
        key, other = rng.randbytes(16), rng.randbytes(16)
        ct = ecb_encrypt(rng.randbytes(40), key)
        try:
            ecb_decrypt(ct, other)
        except PaddingError:
            continue
        accepted += 1
    assert accepted / 1000 < 0.02


# --- CTR -------------------------------------------------------------------------

@engines
def test_ctr_known_answers(kernels, engine):
    assert ctr_xcrypt(PLAIN[:16], KEY, CTR0, engine, kernels=kernels).hex() == "874d6191b620e3261bef6864990db6ce"
    assert ctr_xcrypt(PLAIN, KEY, CTR0, engine, kernels=kernels) == CTR_CT
    assert ctr_xcrypt(CTR_CT, KEY, CTR0, engine, kernels=kernels) == PLAIN


def test_ctr_empty(kernels):
    assert ctr_xcrypt(b"", KEY, CTR0, kernels=kernels) == b""


@settings(max_examples=100)
@given(st.binary(max_size=200), st.binary(min_size=16, max_size=16), st.binary(min_size=16, max_size=16))
def test_ctr_matches_openssl(data, key, iv):
    for engine in EngineKind:
        out = ctr_xcrypt(data, key, iv, engine)
        assert out == openssl_ctr(key, iv, data)
        assert ctr_xcrypt(out, key, iv, engine) == data


def test_ctr_counter_wraps(kernels):
    iv = b"\xff" * 16
    data = bytes(48)
    ks = ctr_xcrypt(data, KEY, iv, kernels=kernels)
    assert ks[:16] == encrypt_block(KEY, iv)
    assert ks[16:32] == encrypt_block(KEY, bytes(16))
    assert ks[32:] == encrypt_block(KEY, bytes(15) + b"\x01")


def test_ctr_carry_across_words(kernels):
    iv = bytes(12) + b"\xff\xff\xff\xff"
    ks = ctr_xcrypt(bytes(32), KEY, iv, kernels=kernels)
    assert ks[16:] == encrypt_block(KEY, bytes(11) + b"\x01" + bytes(4))


def test_ctr_length_preserved_0_to_10k():
    data = os.urandom(10_000)
    for n in range(10_001):
        assert len(ctr_xcrypt(data[:n], KEY, CTR0)) == n


def test_ctr_keystream_blocks_distinct():
    n = 100_000
    ks = ctr_xcrypt(bytes(16 * n), KEY, os.urandom(16))
    assert len({ks[i:i + 16] for i in range(0, len(ks), 16)}) == n


@pytest.mark.parametrize("workers", [2, 3, 7])
def test_parallel_ctr_identical(kernels, workers):
    data = os.urandom(16 * 1000 + 5)
    iv = b"\xff" * 15 + b"\xf0"  # forces a wrap inside one of the chunks
    assert ctr_xcrypt(data, KEY, iv, workers=workers, kernels=kernels) == ctr_xcrypt(data, KEY, iv, kernels=kernels)


def test_ctr_iv_length_checked():
    with pytest.raises(LengthError):
        ctr_xcrypt(b"abc", KEY, bytes(8))


def test_ctr_differs_where_ecb_repeats():
    data = b"\x80" * 16 * 64
    ecb = ecb_encrypt_raw(data, KEY)
    ctr = ctr_xcrypt(data, KEY, CTR0)
    assert len({ecb[i:i + 16] for i in range(0, len(ecb), 16)}) == 1
    assert len({ctr[i:i + 16] for i in range(0, len(ctr), 16)}) == 64


def test_engines_agree_at_mode_level():
    data = os.urandom(1000)
    assert ecb_encrypt(data, KEY, EngineKind.UNROLLED) == ecb_encrypt(data, KEY, EngineKind.FSM)
    assert ctr_xcrypt(data, KEY, CTR0, EngineKind.UNROLLED) == ctr_xcrypt(data, KEY, CTR0, EngineKind.FSM)


@pytest.mark.parametrize("mode", list(ModeKind))
def test_dispatch_round_trip(mode):
    data = os.urandom(333)
    ct = encrypt(data, KEY, mode, CTR0, workers=2)
    assert decrypt(ct, KEY, mode, CTR0, workers=2) == data
