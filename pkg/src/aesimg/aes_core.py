"""AES-128 block primitive.

Two layers live here:

* byte-level round transformations (:func:`sub_bytes`, :func:`shift_rows`,
  :func:`mix_columns`, ...) operating on a 16-byte column-major state, and a
  textbook cipher built from them (:func:`reference_encrypt_block`);
* the fast path, :func:`encrypt_block` / :func:`decrypt_block`, which hands
  the expanded key to a T-table kernel in one of two code shapes
  (:class:`EngineKind`). The kernel module comes from :mod:`aesimg._backend`.

The textbook cipher is kept deliberately independent of the T-table kernels
so each can be checked against the other.

The lookup tables are indexed by secret data; nothing here resists cache
timing attacks.
"""

from enum import Enum
from functools import lru_cache
from struct import Struct
from typing import NamedTuple

from . import _backend
from .errors import LengthError
from .tables import INV_SBOX, SBOX, gf_mul

BLOCK_SIZE = 16
KEY_SIZE = 16
ROUNDS = 10


class EngineKind(Enum):
    """Code shape of the block kernel; both compute the same function."""

    UNROLLED = "unrolled"
    FSM = "fsm"


def _check_len(data, size, what):
    if len(data) != size:
        raise LengthError(f"{what} must be {size} bytes, got {len(data)}")
    return bytes(data)


# --- byte-level round transformations -------------------------------------

def sub_bytes(state: bytes) -> bytes:
    return bytes(SBOX[b] for b in state)


def inv_sub_bytes(state: bytes) -> bytes:
    return bytes(INV_SBOX[b] for b in state)


def shift_rows(state: bytes) -> bytes:
    """Rotate row r of the column-major state left by r positions."""
    return bytes(state[r + 4 * ((c + r) % 4)] for c in range(4) for r in range(4))


def inv_shift_rows(state: bytes) -> bytes:
    return bytes(state[r + 4 * ((c - r) % 4)] for c in range(4) for r in range(4))


def _mix(state, coeffs):
    out = bytearray(16)
    for c in range(4):
        col = state[4 * c:4 * c + 4]
        for r in range(4):
            acc = 0
            for i in range(4):
                acc ^= gf_mul(coeffs[(i - r) % 4], col[i])
            out[4 * c + r] = acc
    return bytes(out)


def mix_columns(state: bytes) -> bytes:
    """Multiply each column by the circulant matrix (02 03 01 01)."""
    return _mix(state, (2, 3, 1, 1))


def inv_mix_columns(state: bytes) -> bytes:
    return _mix(state, (14, 11, 13, 9))


def add_round_key(state: bytes, round_key: bytes) -> bytes:
    return bytes(a ^ b for a, b in zip(state, round_key))


# --- key schedule ----------------------------------------------------------

class KeySchedule(NamedTuple):
    """Expanded AES-128 key.

    ``round_keys`` holds the 11 round keys as 16-byte strings. ``enc_words``
    is the same schedule as 44 big-endian words; ``dec_words`` is the
    equivalent-inverse-cipher schedule used by the decryption kernels.
    """

    round_keys: tuple
    enc_words: tuple
    dec_words: tuple

    @property
    def key(self) -> bytes:
        return self.round_keys[0]

    def __repr__(self):
        # keep key material out of logs and tracebacks
        return "KeySchedule(<11 round keys>)"


_ROUND_KEYS = Struct(">44I")


@lru_cache(maxsize=256)
def _expand(key: bytes) -> KeySchedule:
    enc, dec = _backend.kernels.expand_key(key)
    raw = _ROUND_KEYS.pack(*enc)
    return KeySchedule(tuple(raw[i:i + 16] for i in range(0, 176, 16)), enc, dec)


def expand_key(key: bytes) -> KeySchedule:
    """Run the AES-128 key expansion; ``round_keys[0]`` is the key itself."""
    return _expand(_check_len(key, KEY_SIZE, "key"))


def as_schedule(key) -> KeySchedule:
    return key if isinstance(key, KeySchedule) else expand_key(key)


# --- block cipher ----------------------------------------------------------

def reference_encrypt_block(key: bytes, block: bytes) -> bytes:
    """Textbook cipher composed from the byte-level transformations."""
    ks = as_schedule(key)
    state = add_round_key(_check_len(block, BLOCK_SIZE, "block"), ks.round_keys[0])
    for r in range(1, ROUNDS):
        state = add_round_key(mix_columns(shift_rows(sub_bytes(state))), ks.round_keys[r])
    return add_round_key(shift_rows(sub_bytes(state)), ks.round_keys[ROUNDS])


def reference_decrypt_block(key: bytes, block: bytes) -> bytes:
    ks = as_schedule(key)
    state = add_round_key(_check_len(block, BLOCK_SIZE, "block"), ks.round_keys[ROUNDS])
    for r in range(ROUNDS - 1, 0, -1):
        state = inv_mix_columns(add_round_key(inv_sub_bytes(inv_shift_rows(state)), ks.round_keys[r]))
    return add_round_key(inv_sub_bytes(inv_shift_rows(state)), ks.round_keys[0])


def encrypt_block(key, block: bytes, engine: EngineKind = EngineKind.FSM, *, kernels=None) -> bytes:
    """Encrypt one 16-byte block. ``key`` is 16 bytes or a :class:`KeySchedule`."""
    ks = as_schedule(key)
    k = kernels or _backend.kernels
    return k.ecb_encrypt(ks.enc_words, _check_len(block, BLOCK_SIZE, "block"), engine is EngineKind.UNROLLED)


def decrypt_block(key, block: bytes, engine: EngineKind = EngineKind.FSM, *, kernels=None) -> bytes:
    ks = as_schedule(key)
    k = kernels or _backend.kernels
    return k.ecb_decrypt(ks.dec_words, _check_len(block, BLOCK_SIZE, "block"), engine is EngineKind.UNROLLED)


def backend_name() -> str:
    """Name of the kernel backend selected at import ("cython" or "python")."""
    return _backend.kernels.NAME
