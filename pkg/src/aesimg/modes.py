"""ECB and CTR modes of operation over the AES-128 block kernels."""

from concurrent.futures import ThreadPoolExecutor
from enum import Enum

from . import _backend
from .aes_core import BLOCK_SIZE, EngineKind, as_schedule
from .errors import LengthError, PaddingError

COUNTER_MODULUS = 1 << 128


class ModeKind(Enum):
    """Mode of operation; the value is the mode octet of the AESI container."""

    ECB = 0
    CTR = 1


def pad_pkcs7(data: bytes) -> bytes:
    n = BLOCK_SIZE - len(data) % BLOCK_SIZE
    return bytes(data) + bytes([n]) * n


def unpad_pkcs7(data: bytes) -> bytes:
    if not data or len(data) % BLOCK_SIZE:
        raise LengthError(f"padded data must be a positive multiple of {BLOCK_SIZE} bytes, got {len(data)}")
    n = data[-1]
    if not 1 <= n <= BLOCK_SIZE or data[-n:] != bytes([n]) * n:
        raise PaddingError("invalid PKCS#7 padding")
    return bytes(data[:-n])


def increment_counter(counter: bytes, step: int = 1) -> bytes:
    """Big-endian add of ``step`` to a 16-byte counter, modulo 2**128."""
    if len(counter) != BLOCK_SIZE:
        raise LengthError(f"counter must be {BLOCK_SIZE} bytes, got {len(counter)}")
    value = (int.from_bytes(counter, "big") + step) % COUNTER_MODULUS
    return value.to_bytes(BLOCK_SIZE, "big")


def _unrolled(engine):
    return EngineKind(engine) is EngineKind.UNROLLED


def ecb_encrypt_raw(data: bytes, key, engine=EngineKind.FSM, *, kernels=None) -> bytes:
    """ECB over block-aligned data with no padding."""
    if len(data) % BLOCK_SIZE:
        raise LengthError(f"ECB input must be a multiple of {BLOCK_SIZE} bytes, got {len(data)}")
    k = kernels or _backend.kernels
    return k.ecb_encrypt(as_schedule(key).enc_words, bytes(data), _unrolled(engine))


def ecb_decrypt_raw(data: bytes, key, engine=EngineKind.FSM, *, kernels=None) -> bytes:
    """Inverse of :func:`ecb_encrypt_raw`; padding is left in place."""
    if len(data) % BLOCK_SIZE:
        raise LengthError(f"ECB ciphertext must be a multiple of {BLOCK_SIZE} bytes, got {len(data)}")
    k = kernels or _backend.kernels
    return k.ecb_decrypt(as_schedule(key).dec_words, bytes(data), _unrolled(engine))


def ecb_encrypt(data: bytes, key, engine=EngineKind.FSM, *, kernels=None) -> bytes:
    """PKCS#7-pad ``data`` and encrypt each block independently.

    Equal plaintext blocks give equal ciphertext blocks; that is the point of
    keeping this mode around.
    """
    return ecb_encrypt_raw(pad_pkcs7(data), key, engine, kernels=kernels)


def ecb_decrypt(data: bytes, key, engine=EngineKind.FSM, *, kernels=None) -> bytes:
    """Decrypt and strip padding.

    Raises :class:`LengthError` for a non-block-aligned (or empty) input and
    :class:`PaddingError` when the padding does not check out, which is what
    a wrong key produces about 255 times in 256.
    """
    if not data or len(data) % BLOCK_SIZE:
        raise LengthError(f"ECB ciphertext must be a positive multiple of {BLOCK_SIZE} bytes, got {len(data)}")
    return unpad_pkcs7(ecb_decrypt_raw(data, key, engine, kernels=kernels))


def ctr_xcrypt(data: bytes, key, iv: bytes, engine=EngineKind.FSM, *, workers=1, kernels=None) -> bytes:
    """CTR encryption/decryption (the same operation).

    Keystream block j is E(key, iv + j) with ``iv`` a 128-bit big-endian
    counter. With ``workers > 1`` disjoint block ranges are processed on a
    thread pool; the output is identical to the sequential result.
    """
    if len(iv) != BLOCK_SIZE:
        raise LengthError(f"iv must be {BLOCK_SIZE} bytes, got {len(iv)}")
    k = kernels or _backend.kernels
    rk = as_schedule(key).enc_words
    unrolled = _unrolled(engine)
    data = bytes(data)
    nblocks = -(-len(data) // BLOCK_SIZE)
    if workers <= 1 or nblocks < 2:
        return k.ctr_xor(rk, data, bytes(iv), unrolled)

    per = -(-nblocks // workers)
    starts = range(0, nblocks, per)

    def run(first_block):
        chunk = data[first_block * BLOCK_SIZE:(first_block + per) * BLOCK_SIZE]
        return k.ctr_xor(rk, chunk, increment_counter(iv, first_block), unrolled)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return b"".join(pool.map(run, starts))


def encrypt(data: bytes, key, mode: ModeKind, iv: bytes = bytes(16), engine=EngineKind.FSM,
            *, workers=1, kernels=None) -> bytes:
    """Dispatch on ``mode``; ``iv`` and ``workers`` only matter for CTR."""
    if ModeKind(mode) is ModeKind.ECB:
        return ecb_encrypt(data, key, engine, kernels=kernels)
    return ctr_xcrypt(data, key, iv, engine, workers=workers, kernels=kernels)


def decrypt(data: bytes, key, mode: ModeKind, iv: bytes = bytes(16), engine=EngineKind.FSM,
            *, workers=1, kernels=None) -> bytes:
    if ModeKind(mode) is ModeKind.ECB:
        return ecb_decrypt(data, key, engine, kernels=kernels)
    return ctr_xcrypt(data, key, iv, engine, workers=workers, kernels=kernels)
