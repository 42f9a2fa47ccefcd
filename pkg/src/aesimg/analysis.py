"""Statistical and differential security metrics for cipher images.

Covers histograms and their chi-square flatness, Shannon entropy over the
256 gray levels, Pearson correlation of adjacent pixels, NPCR/UACI, the
one-bit key-sensitivity experiment and the brute-force keyspace size.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .aes_core import EngineKind, KEY_SIZE
from .errors import DegenerateError, DimensionMismatch, LengthError, PaddingError, RangeError
from .image_io import GrayImage, stream_to_image
from .modes import ModeKind, ctr_xcrypt, ecb_decrypt, ecb_decrypt_raw, ecb_encrypt

LEVELS = 256


class Direction(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    DIAGONAL = "diagonal"


@dataclass(frozen=True)
class CorrelationResult:
    direction: Direction
    r: float
    pair_count: int


def histogram(img: GrayImage) -> np.ndarray:
    """Count of pixels at each of the 256 gray levels."""
    return np.bincount(img.array.ravel(), minlength=LEVELS).astype(np.int64)


def chi_square_uniformity(hist) -> float:
    """Pearson chi-square of a 256-bin histogram against the flat distribution."""
    hist = np.asarray(hist, dtype=np.float64)
    total = hist.sum()
    if total <= 0:
        raise DegenerateError("chi-square needs a non-empty histogram")
    expected = total / LEVELS
    return float(((hist - expected) ** 2).sum() / expected)


def entropy(img: GrayImage) -> float:
    """Shannon entropy in bits per pixel; empty levels contribute nothing."""
    counts = histogram(img)
    p = counts[counts > 0] / img.size
    return float(-(p * np.log2(p)).sum())


def adjacent_pairs(img: GrayImage, direction: Direction):
    """All (pixel, neighbour) pairs as two flat arrays.

    The neighbour is to the right, below, or below-right.
    """
    a = img.array
    direction = Direction(direction)
    if direction is Direction.HORIZONTAL:
        return a[:, :-1].ravel(), a[:, 1:].ravel()
    if direction is Direction.VERTICAL:
        return a[:-1, :].ravel(), a[1:, :].ravel()
    return a[:-1, :-1].ravel(), a[1:, 1:].ravel()


def pearson(x, y) -> float:
    """Pearson r with population moments."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    dx = x - x.mean()
    dy = y - y.mean()
    vx = (dx * dx).mean()
    vy = (dy * dy).mean()
    if vx == 0 or vy == 0:
        raise DegenerateError("correlation is undefined when a marginal has zero variance")
    return float((dx * dy).mean() / np.sqrt(vx * vy))


def adjacent_correlation(img: GrayImage, direction: Direction) -> CorrelationResult:
    """Correlation over every adjacent pair in ``direction`` (no sampling)."""
    direction = Direction(direction)
    x, y = adjacent_pairs(img, direction)
    if x.size < 2:
        raise DegenerateError(f"{img.width}x{img.height} image has fewer than two {direction.value} pairs")
    return CorrelationResult(direction, pearson(x, y), int(x.size))


def sample_pairs(img: GrayImage, direction: Direction, count: int = 2000, seed: int = 0):
    """Seeded random subset of adjacent pairs, for scatter plots only."""
    x, y = adjacent_pairs(img, direction)
    rng = np.random.default_rng(seed)
    idx = rng.choice(x.size, size=min(count, x.size), replace=False)
    return x[idx], y[idx]


def _check_same_shape(a: GrayImage, b: GrayImage):
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatch(f"{a.width}x{a.height} vs {b.width}x{b.height}")


def npcr(a: GrayImage, b: GrayImage) -> float:
    """Percentage of pixel positions at which the two images differ."""
    _check_same_shape(a, b)
    return float(100.0 * np.count_nonzero(a.array != b.array) / a.size)


def uaci(a: GrayImage, b: GrayImage) -> float:
    """Mean absolute intensity difference as a percentage of 255."""
    _check_same_shape(a, b)
    diff = np.abs(a.array.astype(np.int16) - b.array.astype(np.int16))
    return float(100.0 * diff.sum(dtype=np.int64) / (255 * a.size))


def diff_image(a: GrayImage, b: GrayImage) -> GrayImage:
    _check_same_shape(a, b)
    diff = np.abs(a.array.astype(np.int16) - b.array.astype(np.int16)).astype(np.uint8)
    return GrayImage.from_array(diff)


@dataclass
class SecurityReport:
    """Metrics for one plain/cipher image pair."""

    input_histogram: np.ndarray = field(repr=False)
    cipher_histogram: np.ndarray = field(repr=False)
    input_correlation: dict
    cipher_correlation: dict
    input_entropy: float
    cipher_entropy: float
    npcr: float
    uaci: float
    chi_square: float
    input_chi_square: float

    def to_dict(self) -> dict:
        return {
            "entropy": {"input": self.input_entropy, "cipher": self.cipher_entropy},
            "correlation": {
                "input": {d.value: c.r for d, c in self.input_correlation.items()},
                "cipher": {d.value: c.r for d, c in self.cipher_correlation.items()},
            },
            "npcr": self.npcr,
            "uaci": self.uaci,
            "chi_square": self.chi_square,
            "chi_square_input": self.input_chi_square,
        }


def _correlations(img):
    out = {}
    for d in Direction:
        try:
            out[d] = adjacent_correlation(img, d)
        except DegenerateError:
            out[d] = CorrelationResult(d, float("nan"), 0)
    return out


def security_report(plain: GrayImage, cipher: GrayImage) -> SecurityReport:
    """Run the full battery; an undefined correlation is reported as NaN."""
    _check_same_shape(plain, cipher)
    h_in, h_ci = histogram(plain), histogram(cipher)
    return SecurityReport(
        input_histogram=h_in,
        cipher_histogram=h_ci,
        input_correlation=_correlations(plain),
        cipher_correlation=_correlations(cipher),
        input_entropy=entropy(plain),
        cipher_entropy=entropy(cipher),
        npcr=npcr(plain, cipher),
        uaci=uaci(plain, cipher),
        chi_square=chi_square_uniformity(h_ci),
        input_chi_square=chi_square_uniformity(h_in),
    )


def flip_key_bit(key: bytes, bit: int) -> bytes:
    """Flip one key bit; bit 0 is the most significant bit of byte 0."""
    if len(key) != KEY_SIZE:
        raise LengthError(f"key must be {KEY_SIZE} bytes, got {len(key)}")
    if not 0 <= bit < 8 * KEY_SIZE:
        raise RangeError(f"bit index must be in 0..{8 * KEY_SIZE - 1}, got {bit}")
    out = bytearray(key)
    out[bit // 8] ^= 0x80 >> (bit % 8)
    return bytes(out)


@dataclass
class KeySensitivityReport:
    """The six images of the one-bit key experiment plus the two scores.

    ``wrong_key_padding_error`` is only ever True in ECB mode, where the
    wrong-key decryption normally fails its padding check; the image shown
    is then the raw (unpadded) decryption.
    """

    original: GrayImage
    cipher_right: GrayImage
    cipher_flipped: GrayImage
    difference: GrayImage
    decrypt_wrong: GrayImage
    decrypt_right: GrayImage
    npcr: float
    uaci: float
    mode: ModeKind
    flip_bit: int
    wrong_key_padding_error: bool = False

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.name.lower(),
            "flip_bit": self.flip_bit,
            "npcr": self.npcr,
            "uaci": self.uaci,
            "wrong_key_entropy": entropy(self.decrypt_wrong),
            "wrong_key_padding_error": self.wrong_key_padding_error,
            "right_key_exact": self.decrypt_right == self.original,
        }


def key_sensitivity_suite(
    img: GrayImage,
    key: bytes,
    flip_bit: int,
    mode: ModeKind = ModeKind.CTR,
    engine: EngineKind = EngineKind.FSM,
    iv: bytes = bytes(16),
) -> KeySensitivityReport:
    """Encrypt under K and K with one bit flipped, then decrypt C1 under both.

    In CTR mode the same ``iv`` is used for both keys so only the key varies.
    """
    mode = ModeKind(mode)
    other = flip_key_bit(key, flip_bit)
    w, h = img.width, img.height
    padding_error = False
    if mode is ModeKind.CTR:
        c1 = ctr_xcrypt(img.pixels, key, iv, engine)
        c2 = ctr_xcrypt(img.pixels, other, iv, engine)
        wrong = ctr_xcrypt(c1, other, iv, engine)
        right = ctr_xcrypt(c1, key, iv, engine)
    else:
        c1 = ecb_encrypt(img.pixels, key, engine)
        c2 = ecb_encrypt(img.pixels, other, engine)
        try:
            wrong = ecb_decrypt(c1, other, engine)
        except PaddingError:
            padding_error = True
            wrong = ecb_decrypt_raw(c1, other, engine)
        right = ecb_decrypt(c1, key, engine)
    if len(wrong) < w * h:
        # a wrong-key unpad that happened to succeed can strip up to 16 bytes
        wrong = ecb_decrypt_raw(c1, other, engine)
    cipher_right = stream_to_image(c1, w, h)
    cipher_flipped = stream_to_image(c2, w, h)
    decrypt_right = stream_to_image(right, w, h)
    if decrypt_right != img:
        raise AssertionError("right-key decryption did not reproduce the original image")
    return KeySensitivityReport(
        original=img,
        cipher_right=cipher_right,
        cipher_flipped=cipher_flipped,
        difference=diff_image(cipher_right, cipher_flipped),
        decrypt_wrong=stream_to_image(wrong, w, h),
        decrypt_right=decrypt_right,
        npcr=npcr(cipher_right, cipher_flipped),
        uaci=uaci(cipher_right, cipher_flipped),
        mode=mode,
        flip_bit=flip_bit,
        wrong_key_padding_error=padding_error,
    )


@dataclass(frozen=True)
class KeyspaceReport:
    bits: int
    size: str

    def to_dict(self) -> dict:
        return {"bits": self.bits, "size": self.size}


def keyspace_report(bits: int = 128) -> KeyspaceReport:
    """Exact number of keys for a ``bits``-bit key. No search is run."""
    if not 1 <= bits <= 512:
        raise RangeError(f"key size must be in 1..512 bits, got {bits}")
    return KeyspaceReport(bits, str(1 << bits))
