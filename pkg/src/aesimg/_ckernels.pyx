# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled block kernels; same API and results as :mod:`aesimg._pykernels`.

The block loops run without the GIL, so CTR keystream ranges can be
processed concurrently from a thread pool.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdint cimport uint32_t

from .tables import INV_SBOX, RCON, SBOX, TD0, TD1, TD2, TD3, TE0, TE1, TE2, TE3

NAME = "cython"
RELEASES_GIL = True

cdef uint32_t te0[256]
cdef uint32_t te1[256]
cdef uint32_t te2[256]
cdef uint32_t te3[256]
cdef uint32_t td0[256]
cdef uint32_t td1[256]
cdef uint32_t td2[256]
cdef uint32_t td3[256]
cdef uint32_t fe0[256]
cdef uint32_t fe1[256]
cdef uint32_t fe2[256]
cdef uint32_t fe3[256]
cdef uint32_t fd0[256]
cdef uint32_t fd1[256]
cdef uint32_t fd2[256]
cdef uint32_t fd3[256]
cdef uint32_t rcon[10]


cdef void _fill_tables():
    cdef int i
    for i in range(256):
        te0[i] = TE0[i]
        te1[i] = TE1[i]
        te2[i] = TE2[i]
        te3[i] = TE3[i]
        td0[i] = TD0[i]
        td1[i] = TD1[i]
        td2[i] = TD2[i]
        td3[i] = TD3[i]
        fe0[i] = <uint32_t>SBOX[i] << 24
        fe1[i] = <uint32_t>SBOX[i] << 16
        fe2[i] = <uint32_t>SBOX[i] << 8
        fe3[i] = <uint32_t>SBOX[i]
        fd0[i] = <uint32_t>INV_SBOX[i] << 24
        fd1[i] = <uint32_t>INV_SBOX[i] << 16
        fd2[i] = <uint32_t>INV_SBOX[i] << 8
        fd3[i] = <uint32_t>INV_SBOX[i]
    for i in range(10):
        rcon[i] = <uint32_t>RCON[i] << 24


_fill_tables()

ctypedef void (*block_fn)(const uint32_t* rk, const unsigned char* src, unsigned char* dst) noexcept nogil


cdef inline uint32_t _load(const unsigned char* p) noexcept nogil:
    return (<uint32_t>p[0] << 24) | (<uint32_t>p[1] << 16) | (<uint32_t>p[2] << 8) | <uint32_t>p[3]


cdef inline void _store(unsigned char* p, uint32_t w) noexcept nogil:
    p[0] = <unsigned char>(w >> 24)
    p[1] = <unsigned char>(w >> 16)
    p[2] = <unsigned char>(w >> 8)
    p[3] = <unsigned char>w


cdef void _enc_unrolled(const uint32_t* rk, const unsigned char* src, unsigned char* dst) noexcept nogil:
    cdef uint32_t s0, s1, s2, s3, t0, t1, t2, t3
    s0 = _load(src) ^ rk[0]
    s1 = _load(src + 4) ^ rk[1]
    s2 = _load(src + 8) ^ rk[2]
    s3 = _load(src + 12) ^ rk[3]
    t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ rk[4]
    t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ rk[5]
    t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ rk[6]
    t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ rk[7]
    s0 = te0[t0 >> 24] ^ te1[(t1 >> 16) & 255] ^ te2[(t2 >> 8) & 255] ^ te3[t3 & 255] ^ rk[8]
    s1 = te0[t1 >> 24] ^ te1[(t2 >> 16) & 255] ^ te2[(t3 >> 8) & 255] ^ te3[t0 & 255] ^ rk[9]
    s2 = te0[t2 >> 24] ^ te1[(t3 >> 16) & 255] ^ te2[(t0 >> 8) & 255] ^ te3[t1 & 255] ^ rk[10]
    s3 = te0[t3 >> 24] ^ te1[(t0 >> 16) & 255] ^ te2[(t1 >> 8) & 255] ^ te3[t2 & 255] ^ rk[11]
    t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ rk[12]
    t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ rk[13]
    t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ rk[14]
    t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ rk[15]
    s0 = te0[t0 >> 24] ^ te1[(t1 >> 16) & 255] ^ te2[(t2 >> 8) & 255] ^ te3[t3 & 255] ^ rk[16]
    s1 = te0[t1 >> 24] ^ te1[(t2 >> 16) & 255] ^ te2[(t3 >> 8) & 255] ^ te3[t0 & 255] ^ rk[17]
    s2 = te0[t2 >> 24] ^ te1[(t3 >> 16) & 255] ^ te2[(t0 >> 8) & 255] ^ te3[t1 & 255] ^ rk[18]
    s3 = te0[t3 >> 24] ^ te1[(t0 >> 16) & 255] ^ te2[(t1 >> 8) & 255] ^ te3[t2 & 255] ^ rk[19]
    t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ rk[20]
    t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ rk[21]
    t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ rk[22]
    t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ rk[23]
    s0 = te0[t0 >> 24] ^ te1[(t1 >> 16) & 255] ^ te2[(t2 >> 8) & 255] ^ te3[t3 & 255] ^ rk[24]
    s1 = te0[t1 >> 24] ^ te1[(t2 >> 16) & 255] ^ te2[(t3 >> 8) & 255] ^ te3[t0 & 255] ^ rk[25]
    s2 = te0[t2 >> 24] ^ te1[(t3 >> 16) & 255] ^ te2[(t0 >> 8) & 255] ^ te3[t1 & 255] ^ rk[26]
    s3 = te0[t3 >> 24] ^ te1[(t0 >> 16) & 255] ^ te2[(t1 >> 8) & 255] ^ te3[t2 & 255] ^ rk[27]
    t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ rk[28]
    t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ rk[29]
    t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ rk[30]
    t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ rk[31]
    s0 = te0[t0 >> 24] ^ te1[(t1 >> 16) & 255] ^ te2[(t2 >> 8) & 255] ^ te3[t3 & 255] ^ rk[32]
    s1 = te0[t1 >> 24] ^ te1[(t2 >> 16) & 255] ^ te2[(t3 >> 8) & 255] ^ te3[t0 & 255] ^ rk[33]
    s2 = te0[t2 >> 24] ^ te1[(t3 >> 16) & 255] ^ te2[(t0 >> 8) & 255] ^ te3[t1 & 255] ^ rk[34]
    s3 = te0[t3 >> 24] ^ te1[(t0 >> 16) & 255] ^ te2[(t1 >> 8) & 255] ^ te3[t2 & 255] ^ rk[35]
    t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ rk[36]
    t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ rk[37]
    t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ rk[38]
    t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ rk[39]
    s0 = fe0[t0 >> 24] ^ fe1[(t1 >> 16) & 255] ^ fe2[(t2 >> 8) & 255] ^ fe3[t3 & 255] ^ rk[40]
    s1 = fe0[t1 >> 24] ^ fe1[(t2 >> 16) & 255] ^ fe2[(t3 >> 8) & 255] ^ fe3[t0 & 255] ^ rk[41]
    s2 = fe0[t2 >> 24] ^ fe1[(t3 >> 16) & 255] ^ fe2[(t0 >> 8) & 255] ^ fe3[t1 & 255] ^ rk[42]
    s3 = fe0[t3 >> 24] ^ fe1[(t0 >> 16) & 255] ^ fe2[(t1 >> 8) & 255] ^ fe3[t2 & 255] ^ rk[43]
    _store(dst, s0)
    _store(dst + 4, s1)
    _store(dst + 8, s2)
    _store(dst + 12, s3)


cdef void _dec_unrolled(const uint32_t* rk, const unsigned char* src, unsigned char* dst) noexcept nogil:
    cdef uint32_t s0, s1, s2, s3, t0, t1, t2, t3
    s0 = _load(src) ^ rk[0]
    s1 = _load(src + 4) ^ rk[1]
    s2 = _load(src + 8) ^ rk[2]
    s3 = _load(src + 12) ^ rk[3]
    t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ rk[4]
    t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ rk[5]
    t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ rk[6]
    t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ rk[7]
    s0 = td0[t0 >> 24] ^ td1[(t3 >> 16) & 255] ^ td2[(t2 >> 8) & 255] ^ td3[t1 & 255] ^ rk[8]
    s1 = td0[t1 >> 24] ^ td1[(t0 >> 16) & 255] ^ td2[(t3 >> 8) & 255] ^ td3[t2 & 255] ^ rk[9]
    s2 = td0[t2 >> 24] ^ td1[(t1 >> 16) & 255] ^ td2[(t0 >> 8) & 255] ^ td3[t3 & 255] ^ rk[10]
    s3 = td0[t3 >> 24] ^ td1[(t2 >> 16) & 255] ^ td2[(t1 >> 8) & 255] ^ td3[t0 & 255] ^ rk[11]
    t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ rk[12]
    t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ rk[13]
    t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ rk[14]
    t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ rk[15]
    s0 = td0[t0 >> 24] ^ td1[(t3 >> 16) & 255] ^ td2[(t2 >> 8) & 255] ^ td3[t1 & 255] ^ rk[16]
    s1 = td0[t1 >> 24] ^ td1[(t0 >> 16) & 255] ^ td2[(t3 >> 8) & 255] ^ td3[t2 & 255] ^ rk[17]
    s2 = td0[t2 >> 24] ^ td1[(t1 >> 16) & 255] ^ td2[(t0 >> 8) & 255] ^ td3[t3 & 255] ^ rk[18]
    s3 = td0[t3 >> 24] ^ td1[(t2 >> 16) & 255] ^ td2[(t1 >> 8) & 255] ^ td3[t0 & 255] ^ rk[19]
    t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ rk[20]
    t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ rk[21]
    t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ rk[22]
    t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ rk[23]
    s0 = td0[t0 >> 24] ^ td1[(t3 >> 16) & 255] ^ td2[(t2 >> 8) & 255] ^ td3[t1 & 255] ^ rk[24]
    s1 = td0[t1 >> 24] ^ td1[(t0 >> 16) & 255] ^ td2[(t3 >> 8) & 255] ^ td3[t2 & 255] ^ rk[25]
    s2 = td0[t2 >> 24] ^ td1[(t1 >> 16) & 255] ^ td2[(t0 >> 8) & 255] ^ td3[t3 & 255] ^ rk[26]
    s3 = td0[t3 >> 24] ^ td1[(t2 >> 16) & 255] ^ td2[(t1 >> 8) & 255] ^ td3[t0 & 255] ^ rk[27]
    t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ rk[28]
    t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ rk[29]
    t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ rk[30]
    t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ rk[31]
    s0 = td0[t0 >> 24] ^ td1[(t3 >> 16) & 255] ^ td2[(t2 >> 8) & 255] ^ td3[t1 & 255] ^ rk[32]
    s1 = td0[t1 >> 24] ^ td1[(t0 >> 16) & 255] ^ td2[(t3 >> 8) & 255] ^ td3[t2 & 255] ^ rk[33]
    s2 = td0[t2 >> 24] ^ td1[(t1 >> 16) & 255] ^ td2[(t0 >> 8) & 255] ^ td3[t3 & 255] ^ rk[34]
    s3 = td0[t3 >> 24] ^ td1[(t2 >> 16) & 255] ^ td2[(t1 >> 8) & 255] ^ td3[t0 & 255] ^ rk[35]
    t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ rk[36]
    t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ rk[37]
    t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ rk[38]
    t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ rk[39]
    s0 = fd0[t0 >> 24] ^ fd1[(t3 >> 16) & 255] ^ fd2[(t2 >> 8) & 255] ^ fd3[t1 & 255] ^ rk[40]
    s1 = fd0[t1 >> 24] ^ fd1[(t0 >> 16) & 255] ^ fd2[(t3 >> 8) & 255] ^ fd3[t2 & 255] ^ rk[41]
    s2 = fd0[t2 >> 24] ^ fd1[(t1 >> 16) & 255] ^ fd2[(t0 >> 8) & 255] ^ fd3[t3 & 255] ^ rk[42]
    s3 = fd0[t3 >> 24] ^ fd1[(t2 >> 16) & 255] ^ fd2[(t1 >> 8) & 255] ^ fd3[t0 & 255] ^ rk[43]
    _store(dst, s0)
    _store(dst + 4, s1)
    _store(dst + 8, s2)
    _store(dst + 12, s3)


cdef void _enc_fsm(const uint32_t* rk, const unsigned char* src, unsigned char* dst) noexcept nogil:
    cdef uint32_t s0, s1, s2, s3, t0, t1, t2, t3
    cdef int r
    s0 = _load(src) ^ rk[0]
    s1 = _load(src + 4) ^ rk[1]
    s2 = _load(src + 8) ^ rk[2]
    s3 = _load(src + 12) ^ rk[3]
    r = 4
    while r < 40:
        t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 255] ^ te2[(s2 >> 8) & 255] ^ te3[s3 & 255] ^ rk[r]
        t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 255] ^ te2[(s3 >> 8) & 255] ^ te3[s0 & 255] ^ rk[r + 1]
        t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 255] ^ te2[(s0 >> 8) & 255] ^ te3[s1 & 255] ^ rk[r + 2]
        t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 255] ^ te2[(s1 >> 8) & 255] ^ te3[s2 & 255] ^ rk[r + 3]
        s0 = t0
        s1 = t1
        s2 = t2
        s3 = t3
        r += 4
    _store(dst, fe0[s0 >> 24] ^ fe1[(s1 >> 16) & 255] ^ fe2[(s2 >> 8) & 255] ^ fe3[s3 & 255] ^ rk[40])
    _store(dst + 4, fe0[s1 >> 24] ^ fe1[(s2 >> 16) & 255] ^ fe2[(s3 >> 8) & 255] ^ fe3[s0 & 255] ^ rk[41])
    _store(dst + 8, fe0[s2 >> 24] ^ fe1[(s3 >> 16) & 255] ^ fe2[(s0 >> 8) & 255] ^ fe3[s1 & 255] ^ rk[42])
    _store(dst + 12, fe0[s3 >> 24] ^ fe1[(s0 >> 16) & 255] ^ fe2[(s1 >> 8) & 255] ^ fe3[s2 & 255] ^ rk[43])


cdef void _dec_fsm(const uint32_t* rk, const unsigned char* src, unsigned char* dst) noexcept nogil:
    cdef uint32_t s0, s1, s2, s3, t0, t1, t2, t3
    cdef int r
    s0 = _load(src) ^ rk[0]
    s1 = _load(src + 4) ^ rk[1]
    s2 = _load(src + 8) ^ rk[2]
    s3 = _load(src + 12) ^ rk[3]
    r = 4
    while r < 40:
        t0 = td0[s0 >> 24] ^ td1[(s3 >> 16) & 255] ^ td2[(s2 >> 8) & 255] ^ td3[s1 & 255] ^ rk[r]
        t1 = td0[s1 >> 24] ^ td1[(s0 >> 16) & 255] ^ td2[(s3 >> 8) & 255] ^ td3[s2 & 255] ^ rk[r + 1]
        t2 = td0[s2 >> 24] ^ td1[(s1 >> 16) & 255] ^ td2[(s0 >> 8) & 255] ^ td3[s3 & 255] ^ rk[r + 2]
        t3 = td0[s3 >> 24] ^ td1[(s2 >> 16) & 255] ^ td2[(s1 >> 8) & 255] ^ td3[s0 & 255] ^ rk[r + 3]
        s0 = t0
        s1 = t1
        s2 = t2
        s3 = t3
        r += 4
    _store(dst, fd0[s0 >> 24] ^ fd1[(s3 >> 16) & 255] ^ fd2[(s2 >> 8) & 255] ^ fd3[s1 & 255] ^ rk[40])
    _store(dst + 4, fd0[s1 >> 24] ^ fd1[(s0 >> 16) & 255] ^ fd2[(s3 >> 8) & 255] ^ fd3[s2 & 255] ^ rk[41])
    _store(dst + 8, fd0[s2 >> 24] ^ fd1[(s1 >> 16) & 255] ^ fd2[(s0 >> 8) & 255] ^ fd3[s3 & 255] ^ rk[42])
    _store(dst + 12, fd0[s3 >> 24] ^ fd1[(s2 >> 16) & 255] ^ fd2[(s1 >> 8) & 255] ^ fd3[s0 & 255] ^ rk[43])


cdef void _load_schedule(object rk, uint32_t* out) except *:
    if len(rk) != 44:
        raise ValueError("round-key schedule must have 44 words")
    cdef int i
    for i in range(44):
        out[i] = rk[i]


cdef bytes _ecb(object rk, const unsigned char[::1] data, block_fn fn):
    cdef Py_ssize_t n = data.shape[0]
    cdef Py_ssize_t i
    cdef uint32_t sched[44]
    if n % 16:
        raise ValueError("data length must be a multiple of 16")
    _load_schedule(rk, sched)
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* dst = <unsigned char*>PyBytes_AS_STRING(out)
    if n:
        with nogil:
            i = 0
            while i < n:
                fn(sched, &data[i], dst + i)
                i += 16
    return out


def expand_key(const unsigned char[::1] key):
    """Encryption and equivalent-inverse decryption schedules, 44 words each."""
    cdef uint32_t w[44]
    cdef uint32_t d[44]
    cdef uint32_t t, x
    cdef int i, r, c
    if key.shape[0] != 16:
        raise ValueError("key must be 16 bytes")
    for i in range(4):
        w[i] = _load(&key[4 * i])
    for i in range(4, 44):
        t = w[i - 1]
        if not i & 3:
            t = (fe0[(t >> 16) & 255] | fe1[(t >> 8) & 255] | fe2[t & 255] | fe3[t >> 24]) ^ rcon[(i >> 2) - 1]
        w[i] = w[i - 4] ^ t
    for c in range(4):
        d[c] = w[40 + c]
        d[40 + c] = w[c]
    for r in range(1, 10):
        for c in range(4):
            x = w[40 - 4 * r + c]
            # InvMixColumns on inner round keys; td folds in InvSubBytes, which the S-box undoes
            d[4 * r + c] = td0[fe3[x >> 24]] ^ td1[fe3[(x >> 16) & 255]] ^ td2[fe3[(x >> 8) & 255]] ^ td3[fe3[x & 255]]
    return tuple([w[i] for i in range(44)]), tuple([d[i] for i in range(44)])


def ecb_encrypt(rk, const unsigned char[::1] data, bint unrolled):
    """Encrypt every 16-byte block of ``data`` independently."""
    return _ecb(rk, data, _enc_unrolled if unrolled else _enc_fsm)


def ecb_decrypt(rk, const unsigned char[::1] data, bint unrolled):
    """Inverse of :func:`ecb_encrypt`; ``rk`` is the decryption schedule."""
    return _ecb(rk, data, _dec_unrolled if unrolled else _dec_fsm)


def ctr_xor(rk, const unsigned char[::1] data, const unsigned char[::1] counter, bint unrolled):
    """XOR ``data`` with the keystream E(counter), E(counter + 1), ...

    ``counter`` is 16 bytes read as a big-endian integer; it wraps mod 2**128.
    """
    cdef Py_ssize_t n = data.shape[0]
    cdef Py_ssize_t i, j, take
    cdef uint32_t sched[44]
    cdef uint32_t c0, c1, c2, c3
    cdef unsigned char ctr[16]
    cdef unsigned char ks[16]
    cdef block_fn fn = _enc_unrolled if unrolled else _enc_fsm
    if counter.shape[0] != 16:
        raise ValueError("counter must be 16 bytes")
    _load_schedule(rk, sched)
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* dst = <unsigned char*>PyBytes_AS_STRING(out)
    if not n:
        return out
    c0 = _load(&counter[0])
    c1 = _load(&counter[4])
    c2 = _load(&counter[8])
    c3 = _load(&counter[12])
    with nogil:
        i = 0
        while i < n:
            _store(ctr, c0)
            _store(ctr + 4, c1)
            _store(ctr + 8, c2)
            _store(ctr + 12, c3)
            fn(sched, ctr, ks)
            take = n - i
            if take > 16:
                take = 16
            for j in range(take):
                dst[i + j] = data[i + j] ^ ks[j]
            i += 16
            c3 += 1
            if c3 == 0:
                c2 += 1
                if c2 == 0:
                    c1 += 1
                    if c1 == 0:
                        c0 += 1
    return out
