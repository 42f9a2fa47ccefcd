"""Pure-Python block kernels (fallback when the compiled extension is absent).

State columns are carried as four big-endian 32-bit words and each round is
four T-table lookups per column. Two code shapes compute the same cipher:

* ``unrolled``: the ten rounds written out as straight-line code with all 44
  round-key words bound to locals once per call;
* ``fsm``: one shared round datapath driven by a round counter.

All public functions take a flat sequence of 44 round-key words and a byte
string whose length is a multiple of 16 (except :func:`ctr_xor`).
"""

from struct import Struct

from .tables import INV_SBOX, RCON, SBOX, TD0, TD1, TD2, TD3, TE0, TE1, TE2, TE3

NAME = "python"
RELEASES_GIL = False

_FE = (
    tuple(s << 24 for s in SBOX),
    tuple(s << 16 for s in SBOX),
    tuple(s << 8 for s in SBOX),
    tuple(SBOX),
)
_FD = (
    tuple(s << 24 for s in INV_SBOX),
    tuple(s << 16 for s in INV_SBOX),
    tuple(s << 8 for s in INV_SBOX),
    tuple(INV_SBOX),
)
_MASK128 = (1 << 128) - 1
_CTR_WORDS = _KEY_WORDS = Struct(">4I")


def _words(data):
    return Struct(f">{len(data) // 4}I").unpack(data)


def _bytes(words):
    return Struct(f">{len(words)}I").pack(*words)


def _enc_unrolled(rk, words):
    (k0, k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12, k13, k14, k15, k16, k17, k18, k19, k20, k21, k22, k23, k24, k25, k26, k27, k28, k29, k30, k31, k32, k33, k34, k35, k36, k37, k38, k39, k40, k41, k42, k43) = rk
    te0, te1, te2, te3 = TE0, TE1, TE2, TE3
    fe0, fe1, fe2, fe3 = _FE
    out = []
    extend = out.extend
    for i in range(0, len(words), 4):
        s0 = words[i] ^ k0
        s1 = words[i + 1] ^ k1
        s2 = words[i + 2] ^ k2
        s3 = words[i + 3] ^ k3
        t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ k4
        t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ k5
        t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ k6
        t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ k7
        s0 = te0[t0 >> 24] ^ te1[(t1 >> 16) & 255] ^ te2[(t2 >> 8) & 255] ^ te3[t3 & 255] ^ k8
        s1 = te0[t1 >> 24] ^ te1[(t2 >> 16) & 255] ^ te2[(t3 >> 8) & 255] ^ te3[t0 & 255] ^ k9
        s2 = te0[t2 >> 24] ^ te1[(t3 >> 16) & 255] ^ te2[(t0 >> 8) & 255] ^ te3[t1 & 255] ^ k10
        s3 = te0[t3 >> 24] ^ te1[(t0 >> 16) & 255] ^ te2[(t1 >> 8) & 255] ^ te3[t2 & 255] ^ k11
        t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ k12
        t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ k13
        t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ k14
        t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ k15
        s0 = te0[t0 >> 24] ^ te1[(t1 >> 16) & 255] ^ te2[(t2 >> 8) & 255] ^ te3[t3 & 255] ^ k16
        s1 = te0[t1 >> 24] ^ te1[(t2 >> 16) & 255] ^ te2[(t3 >> 8) & 255] ^ te3[t0 & 255] ^ k17
        s2 = te0[t2 >> 24] ^ te1[(t3 >> 16) & 255] ^ te2[(t0 >> 8) & 255] ^ te3[t1 & 255] ^ k18
        s3 = te0[t3 >> 24] ^ te1[(t0 >> 16) & 255] ^ te2[(t1 >> 8) & 255] ^ te3[t2 & 255] ^ k19
        t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ k20
        t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ k21
        t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ k22
        t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ k23
        s0 = te0[t0 >> 24] ^ te1[(t1 >> 16) & 255] ^ te2[(t2 >> 8) & 255] ^ te3[t3 & 255] ^ k24
        s1 = te0[t1 >> 24] ^ te1[(t2 >> 16) & 255] ^ te2[(t3 >> 8) & 255] ^ te3[t0 & 255] ^ k25
        s2 = te0[t2 >> 24] ^ te1[(t3 >> 16) & 255] ^ te2[(t0 >> 8) & 255] ^ te3[t1 & 255] ^ k26
        s3 = te0[t3 >> 24] ^ te1[(t0 >> 16) & 255] ^ te2[(t1 >> 8) & 255] ^ te3[t2 & 255] ^ k27
        t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ k28
        t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ k29
        t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ k30
        t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ k31
        s0 = te0[t0 >> 24] ^ te1[(t1 >> 16) & 255] ^ te2[(t2 >> 8) & 255] ^ te3[t3 & 255] ^ k32
        s1 = te0[t1 >> 24] ^ te1[(t2 >> 16) & 255] ^ te2[(t3 >> 8) & 255] ^ te3[t0 & 255] ^ k33
        s2 = te0[t2 >> 24] ^ te1[(t3 >> 16) & 255] ^ te2[(t0 >> 8) & 255] ^ te3[t1 & 255] ^ k34
        s3 = te0[t3 >> 24] ^ te1[(t0 >> 16) & 255] ^ te2[(t1 >> 8) & 255] ^ te3[t2 & 255] ^ k35
        t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ k36
        t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ k37
        t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ k38
        t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ k39
        s0 = fe0[t0 >> 24] ^ fe1[(t1 >> 16) & 255] ^ fe2[(t2 >> 8) & 255] ^ fe3[t3 & 255] ^ k40
        s1 = fe0[t1 >> 24] ^ fe1[(t2 >> 16) & 255] ^ fe2[(t3 >> 8) & 255] ^ fe3[t0 & 255] ^ k41
        s2 = fe0[t2 >> 24] ^ fe1[(t3 >> 16) & 255] ^ fe2[(t0 >> 8) & 255] ^ fe3[t1 & 255] ^ k42
        s3 = fe0[t3 >> 24] ^ fe1[(t0 >> 16) & 255] ^ fe2[(t1 >> 8) & 255] ^ fe3[t2 & 255] ^ k43
        extend((s0, s1, s2, s3))
    return out


def _dec_unrolled(rk, words):
    (k0, k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12, k13, k14, k15, k16, k17, k18, k19, k20, k21, k22, k23, k24, k25, k26, k27, k28, k29, k30, k31, k32, k33, k34, k35, k36, k37, k38, k39, k40, k41, k42, k43) = rk
    td0, td1, td2, td3 = TD0, TD1, TD2, TD3
    fd0, fd1, fd2, fd3 = _FD
    out = []
    extend = out.extend
    for i in range(0, len(words), 4):
        s0 = words[i] ^ k0
        s1 = words[i + 1] ^ k1
        s2 = words[i + 2] ^ k2
        s3 = words[i + 3] ^ k3
        t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ k4
        t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ k5
        t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ k6
        t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ k7
        s0 = td0[t0 >> 24] ^ td1[(t3 >> 16) & 255] ^ td2[(t2 >> 8) & 255] ^ td3[t1 & 255] ^ k8
        s1 = td0[t1 >> 24] ^ td1[(t0 >> 16) & 255] ^ td2[(t3 >> 8) & 255] ^ td3[t2 & 255] ^ k9
        s2 = td0[t2 >> 24] ^ td1[(t1 >> 16) & 255] ^ td2[(t0 >> 8) & 255] ^ td3[t3 & 255] ^ k10
        s3 = td0[t3 >> 24] ^ td1[(t2 >> 16) & 255] ^ td2[(t1 >> 8) & 255] ^ td3[t0 & 255] ^ k11
        t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ k12
        t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ k13
        t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ k14
        t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ k15
        s0 = td0[t0 >> 24] ^ td1[(t3 >> 16) & 255] ^ td2[(t2 >> 8) & 255] ^ td3[t1 & 255] ^ k16
        s1 = td0[t1 >> 24] ^ td1[(t0 >> 16) & 255] ^ td2[(t3 >> 8) & 255] ^ td3[t2 & 255] ^ k17
        s2 = td0[t2 >> 24] ^ td1[(t1 >> 16) & 255] ^ td2[(t0 >> 8) & 255] ^ td3[t3 & 255] ^ k18
        s3 = td0[t3 >> 24] ^ td1[(t2 >> 16) & 255] ^ td2[(t1 >> 8) & 255] ^ td3[t0 & 255] ^ k19
        t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ k20
        t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ k21
        t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ k22
        t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ k23
        s0 = td0[t0 >> 24] ^ td1[(t3 >> 16) & 255] ^ td2[(t2 >> 8) & 255] ^ td3[t1 & 255] ^ k24
        s1 = td0[t1 >> 24] ^ td1[(t0 >> 16) & 255] ^ td2[(t3 >> 8) & 255] ^ td3[t2 & 255] ^ k25
        s2 = td0[t2 >> 24] ^ td1[(t1 >> 16) & 255] ^ td2[(t0 >> 8) & 255] ^ td3[t3 & 255] ^ k26
        s3 = td0[t3 >> 24] ^ td1[(t2 >> 16) & 255] ^ td2[(t1 >> 8) & 255] ^ td3[t0 & 255] ^ k27
        t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ k28
        t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ k29
        t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ k30
        t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ k31
        s0 = td0[t0 >> 24] ^ td1[(t3 >> 16) & 255] ^ td2[(t2 >> 8) & 255] ^ td3[t1 & 255] ^ k32
        s1 = td0[t1 >> 24] ^ td1[(t0 >> 16) & 255] ^ td2[(t3 >> 8) & 255] ^ td3[t2 & 255] ^ k33
        s2 = td0[t2 >> 24] ^ td1[(t1 >> 16) & 255] ^ td2[(t0 >> 8) & 255] ^ td3[t3 & 255] ^ k34
        s3 = td0[t3 >> 24] ^ td1[(t2 >> 16) & 255] ^ td2[(t1 >> 8) & 255] ^ td3[t0 & 255] ^ k35
        t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ k36
        t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ k37
        t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ k38
        t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ k39
        s0 = fd0[t0 >> 24] ^ fd1[(t3 >> 16) & 255] ^ fd2[(t2 >> 8) & 255] ^ fd3[t1 & 255] ^ k40
        s1 = fd0[t1 >> 24] ^ fd1[(t0 >> 16) & 255] ^ fd2[(t3 >> 8) & 255] ^ fd3[t2 & 255] ^ k41
        s2 = fd0[t2 >> 24] ^ fd1[(t1 >> 16) & 255] ^ fd2[(t0 >> 8) & 255] ^ fd3[t3 & 255] ^ k42
        s3 = fd0[t3 >> 24] ^ fd1[(t2 >> 16) & 255] ^ fd2[(t1 >> 8) & 255] ^ fd3[t0 & 255] ^ k43
        extend((s0, s1, s2, s3))
    return out


def _enc_fsm(rk, words):
    te0, te1, te2, te3 = TE0, TE1, TE2, TE3
    fe0, fe1, fe2, fe3 = _FE
    out = []
    extend = out.extend
    for i in range(0, len(words), 4):
        s0 = words[i] ^ rk[0]
        s1 = words[i + 1] ^ rk[1]
        s2 = words[i + 2] ^ rk[2]
        s3 = words[i + 3] ^ rk[3]
        r = 4
        while r < 40:
            t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ rk[r]
            t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ rk[r + 1]
            t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ rk[r + 2]
            t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ rk[r + 3]
            s0, s1, s2, s3 = t0, t1, t2, t3
            r += 4
        extend((
            fe0[s0 >> 24] ^ fe1[(s1 >> 16) & 255] ^ fe2[(s2 >> 8) & 255] ^ fe3[s3 & 255] ^ rk[40],
            fe0[s1 >> 24] ^ fe1[(s2 >> 16) & 255] ^ fe2[(s3 >> 8) & 255] ^ fe3[s0 & 255] ^ rk[41],
            fe0[s2 >> 24] ^ fe1[(s3 >> 16) & 255] ^ fe2[(s0 >> 8) & 255] ^ fe3[s1 & 255] ^ rk[42],
            fe0[s3 >> 24] ^ fe1[(s0 >> 16) & 255] ^ fe2[(s1 >> 8) & 255] ^ fe3[s2 & 255] ^ rk[43],
        ))
    return out


def _dec_fsm(rk, words):
    td0, td1, td2, td3 = TD0, TD1, TD2, TD3
    fd0, fd1, fd2, fd3 = _FD
    out = []
    extend = out.extend
    for i in range(0, len(words), 4):
        s0 = words[i] ^ rk[0]
        s1 = words[i + 1] ^ rk[1]
        s2 = words[i + 2] ^ rk[2]
        s3 = words[i + 3] ^ rk[3]
        r = 4
        while r < 40:
            t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ rk[r]
            t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ rk[r + 1]
            t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ rk[r + 2]
            t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ rk[r + 3]
            s0, s1, s2, s3 = t0, t1, t2, t3
            r += 4
        extend((
            fd0[s0 >> 24] ^ fd1[(s3 >> 16) & 255] ^ fd2[(s2 >> 8) & 255] ^ fd3[s1 & 255] ^ rk[40],
            fd0[s1 >> 24] ^ fd1[(s0 >> 16) & 255] ^ fd2[(s3 >> 8) & 255] ^ fd3[s2 & 255] ^ rk[41],
            fd0[s2 >> 24] ^ fd1[(s1 >> 16) & 255] ^ fd2[(s0 >> 8) & 255] ^ fd3[s3 & 255] ^ rk[42],
            fd0[s3 >> 24] ^ fd1[(s2 >> 16) & 255] ^ fd2[(s1 >> 8) & 255] ^ fd3[s0 & 255] ^ rk[43],
        ))
    return out


def expand_key(key):
    """Encryption and equivalent-inverse decryption schedules, 44 words each."""
    w = list(_KEY_WORDS.unpack(key))
    sb = SBOX
    for i in range(4, 44):
        t = w[i - 1]
        if not i & 3:
            t = ((sb[(t >> 16) & 255] << 24) | (sb[(t >> 8) & 255] << 16) | (sb[t & 255] << 8) | sb[t >> 24])                 ^ (RCON[(i >> 2) - 1] << 24)
        w.append(w[i - 4] ^ t)
    # InvMixColumns on inner round keys; TD folds in InvSubBytes, which SBOX undoes
    dec = w[40:44]
    for r in range(9, 0, -1):
        for x in w[4 * r:4 * r + 4]:
            dec.append(TD0[sb[x >> 24]] ^ TD1[sb[(x >> 16) & 255]] ^ TD2[sb[(x >> 8) & 255]] ^ TD3[sb[x & 255]])
    dec.extend(w[0:4])
    return tuple(w), tuple(dec)


def ecb_encrypt(rk, data, unrolled):
    """Encrypt every 16-byte block of ``data`` independently."""
    kernel = _enc_unrolled if unrolled else _enc_fsm
    return _bytes(kernel(tuple(rk), _words(data)))


def ecb_decrypt(rk, data, unrolled):
    """Inverse of :func:`ecb_encrypt`; ``rk`` is the decryption schedule."""
    kernel = _dec_unrolled if unrolled else _dec_fsm
    return _bytes(kernel(tuple(rk), _words(data)))


def ctr_xor(rk, data, counter, unrolled):
    """XOR ``data`` with the keystream E(counter), E(counter + 1), ...

    ``counter`` is 16 bytes read as a big-endian integer; it wraps mod 2**128.
    """
    n = len(data)
    if not n:
        return b""
    nblocks = (n + 15) // 16
    start = int.from_bytes(counter, "big")
    pack = _CTR_WORDS.pack
    blocks = b"".join(
        pack(c >> 96, (c >> 64) & 0xFFFFFFFF, (c >> 32) & 0xFFFFFFFF, c & 0xFFFFFFFF)
        for c in ((start + j) & _MASK128 for j in range(nblocks))
    )
    keystream = ecb_encrypt(rk, blocks, unrolled)[:n]
    mixed = int.from_bytes(data, "big") ^ int.from_bytes(keystream, "big")
    return mixed.to_bytes(n, "big")
