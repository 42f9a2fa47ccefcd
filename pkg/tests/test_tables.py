import hashlib

from hypothesis import given, strategies as st

from aesimg import tables
from aesimg.tables import INV_SBOX, SBOX, gf_inv, gf_mul

octets = st.integers(0, 255)


def clmul_reduce(a, b):
    """Schoolbook polynomial product over GF(2), then long division by the AES modulus."""
    prod = 0
    for i in range(8):
        if (b >> i) & 1:
            prod ^= a << i
    for bit in range(14, 7, -1):
        if (prod >> bit) & 1:
            prod ^= 0x11B << (bit - 8)
    return prod


def brute_inverse(a):
    if a == 0:
        return 0
    return next(b for b in range(1, 256) if clmul_reduce(a, b) == 1)


def affine_by_matrix(b):
    # bit i of the result: b_i ^ b_{i+4} ^ b_{i+5} ^ b_{i+6} ^ b_{i+7} ^ c_i, indices mod 8
    out = 0
    for i in range(8):
        bit = 0
        for j in (0, 4, 5, 6, 7):
            bit ^= (b >> ((i + j) % 8)) & 1
        bit ^= (0x63 >> i) & 1
        out |= bit << i
    return out


def test_gf_mul_worked_example():
    assert gf_mul(0x57, 0x13) == 0xFE
    assert clmul_reduce(0x57, 0x13) == 0xFE


def test_gf_mul_matches_polynomial_oracle_exhaustively():
    for a in range(256):
        for b in range(256):
            assert gf_mul(a, b) == clmul_reduce(a, b)


@given(octets)
def test_gf_identity_and_annihilator(a):
    assert gf_mul(a, 1) == a
    assert gf_mul(a, 0) == 0


@given(octets, octets, octets)
def test_gf_commutes_and_distributes(a, b, c):
    assert gf_mul(a, b) == gf_mul(b, a)
    assert gf_mul(a, b ^ c) == gf_mul(a, b) ^ gf_mul(a, c)


def test_gf_inverse():
    for a in range(1, 256):
        assert gf_mul(a, gf_inv(a)) == 1
    assert gf_inv(0) == 0


def test_sbox_from_independent_construction():
    oracle = bytes(affine_by_matrix(brute_inverse(x)) for x in range(256))
    assert SBOX == oracle
    assert hashlib.sha256(oracle).hexdigest() == tables.SBOX_SHA256


def test_sbox_known_entries():
    assert SBOX[0x00] == 0x63
    assert SBOX[0x53] == 0xED


def test_sbox_is_a_permutation_with_matching_inverse():
    assert len(set(SBOX)) == 256
    assert all(INV_SBOX[SBOX[x]] == x for x in range(256))


def test_round_tables_fold_mixcolumns():
    s = SBOX[0x01]
    assert tables.TE0[0x01] == (gf_mul(s, 2) << 24) | (s << 16) | (s << 8) | gf_mul(s, 3)
    assert tables.TE0[0] == 0xC66363A5
    assert tables.TD0[0] == 0x51F4A750
