"""GF(2^8) arithmetic and the lookup tables derived from it.

Everything here is generated from field arithmetic at import time. The
S-box is then checked against a fixed SHA-256 digest so a broken generator
can never silently produce a wrong (but self-consistent) cipher.
"""

import hashlib

AES_POLY = 0x11B  # x^8 + x^4 + x^3 + x + 1

SBOX_SHA256 = "c2d8e5eed6cbebd8625fc18f81486a7733c04f9b0129ffbe974c68b90308b4f2"


def xtime(a: int) -> int:
    """Multiply ``a`` by x in GF(2^8)."""
    a <<= 1
    if a & 0x100:
        a ^= AES_POLY
    return a


def gf_mul(a: int, b: int) -> int:
    """Multiply two field elements (Russian-peasant, reduced by AES_POLY)."""
    product = 0
    while b:
        if b & 1:
            product ^= a
        a = xtime(a)
        b >>= 1
    return product


def gf_inv(a: int) -> int:
    """Multiplicative inverse; by convention 0 maps to 0.

    Uses a^254 = a^-1 in the multiplicative group of order 255.
    """
    result = 1
    base = a
    exp = 254
    while exp:
        if exp & 1:
            result = gf_mul(result, base)
        base = gf_mul(base, base)
        exp >>= 1
    return result if a else 0


def _rotl8(x: int, n: int) -> int:
    return ((x << n) | (x >> (8 - n))) & 0xFF


def _affine(b: int) -> int:
    return b ^ _rotl8(b, 1) ^ _rotl8(b, 2) ^ _rotl8(b, 3) ^ _rotl8(b, 4) ^ 0x63


def generate_sbox() -> bytes:
    return bytes(_affine(gf_inv(x)) for x in range(256))


def _build():
    sbox = generate_sbox()
    digest = hashlib.sha256(sbox).hexdigest()
    if digest != SBOX_SHA256:
        raise RuntimeError(f"S-box generator produced unexpected table (sha256 {digest})")
    inv = bytearray(256)
    for x, s in enumerate(sbox):
        inv[s] = x
    return sbox, bytes(inv)


SBOX, INV_SBOX = _build()

RCON = (0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36)


def _ror32(w: int, n: int) -> int:
    return ((w >> n) | (w << (32 - n))) & 0xFFFFFFFF


def _word(b0: int, b1: int, b2: int, b3: int) -> int:
    return (b0 << 24) | (b1 << 16) | (b2 << 8) | b3


# Round tables: state columns are big-endian words, row 0 in the top byte.
# TE0[x] is the MixColumns image of the column (S[x], 0, 0, 0); TE1..TE3 are
# byte rotations of it. TD* are the same for InvSubBytes + InvMixColumns.
TE0 = tuple(_word(gf_mul(s, 2), s, s, gf_mul(s, 3)) for s in SBOX)
TE1 = tuple(_ror32(w, 8) for w in TE0)
TE2 = tuple(_ror32(w, 16) for w in TE0)
TE3 = tuple(_ror32(w, 24) for w in TE0)

TD0 = tuple(
    _word(gf_mul(s, 14), gf_mul(s, 9), gf_mul(s, 13), gf_mul(s, 11)) for s in INV_SBOX
)
TD1 = tuple(_ror32(w, 8) for w in TD0)
TD2 = tuple(_ror32(w, 16) for w in TD0)
TD3 = tuple(_ror32(w, 24) for w in TD0)
