"""Grayscale images, binary PGM I/O and the AESI cipher container.

AESI layout (all integers big-endian)::

    offset  size  field
    0       4     magic b"AESI"
    4       1     version (0x01)
    5       1     mode (0x00 ECB, 0x01 CTR)
    6       4     width
    10      4     height
    14      16    iv (all zero for ECB)
    30      8     ciphertext length
    38      n     ciphertext
"""

import re
import struct
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, SizeError
from .modes import ModeKind

CONTAINER_MAGIC = b"AESI"
CONTAINER_VERSION = 1
_HEADER = struct.Struct(">4sBBII16sQ")
HEADER_SIZE = _HEADER.size

# magic, width, height, maxval; comments are deliberately not accepted
_PGM_HEADER = re.compile(rb"P5\s+(\d+)\s+(\d+)\s+(\d+)\s")


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale raster, pixels stored row-major."""

    width: int
    height: int
    pixels: bytes

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise SizeError(f"image dimensions must be positive, got {self.width}x{self.height}")
        if len(self.pixels) != self.width * self.height:
            raise SizeError(
                f"{self.width}x{self.height} image needs {self.width * self.height} pixels, got {len(self.pixels)}"
            )
        object.__setattr__(self, "pixels", bytes(self.pixels))

    @classmethod
    def from_array(cls, arr) -> "GrayImage":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise SizeError(f"expected a 2-D array, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise SizeError("pixel values must lie in 0..255")
            arr = arr.astype(np.uint8)
        h, w = arr.shape
        return cls(w, h, np.ascontiguousarray(arr).tobytes())

    @property
    def array(self) -> np.ndarray:
        """Read-only ``(height, width)`` uint8 view of the pixels."""
        return np.frombuffer(self.pixels, dtype=np.uint8).reshape(self.height, self.width)

    @property
    def size(self) -> int:
        return self.width * self.height


def read_pgm(data: bytes) -> GrayImage:
    """Parse a binary (P5) PGM with maxval 255."""
    m = _PGM_HEADER.match(data)
    if m is None:
        if data[:2] != b"P5":
            raise FormatError("not a binary PGM: magic must be P5")
        raise FormatError("malformed PGM header (comments are not supported)")
    width, height, maxval = (int(g) for g in m.groups())
    if maxval != 255:
        raise FormatError(f"only maxval 255 is supported, got {maxval}")
    if width < 1 or height < 1:
        raise FormatError(f"PGM dimensions must be positive, got {width}x{height}")
    raster = data[m.end():]
    if len(raster) < width * height:
        raise FormatError(f"truncated PGM: expected {width * height} pixel bytes, got {len(raster)}")
    if len(raster) > width * height:
        raise FormatError(f"{len(raster) - width * height} unexpected bytes after PGM raster")
    return GrayImage(width, height, raster)


def write_pgm(img: GrayImage) -> bytes:
    return b"P5\n%d %d\n255\n" % (img.width, img.height) + img.pixels


def load_pgm(path) -> GrayImage:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(img: GrayImage, path) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(img))


def image_to_stream(img: GrayImage) -> bytes:
    """Row-major pixel bytes, ready to be cut into 16-byte cipher blocks."""
    return img.pixels


def stream_to_image(data: bytes, width: int, height: int) -> GrayImage:
    """Rebuild an image from a stream, dropping any bytes past width*height."""
    n = width * height
    if len(data) < n:
        raise SizeError(f"stream of {len(data)} bytes is shorter than {width}x{height} = {n} pixels")
    return GrayImage(width, height, bytes(data[:n]))


@dataclass(frozen=True)
class CipherContainer:
    mode: ModeKind
    iv: bytes
    width: int
    height: int
    ciphertext: bytes

    def __post_init__(self):
        object.__setattr__(self, "mode", ModeKind(self.mode))
        if len(self.iv) != 16:
            raise FormatError(f"iv must be 16 bytes, got {len(self.iv)}")
        if self.width < 1 or self.height < 1:
            raise FormatError(f"container dimensions must be positive, got {self.width}x{self.height}")
        n, pixels = len(self.ciphertext), self.width * self.height
        if self.mode is ModeKind.ECB:
            if any(self.iv):
                raise FormatError("ECB container must carry an all-zero iv")
            if n == 0 or n % 16 or n < pixels:
                raise FormatError(f"ECB ciphertext length {n} invalid for {pixels} pixels")
        elif n != pixels:
            raise FormatError(f"CTR ciphertext length {n} does not match {pixels} pixels")

    def cipher_image(self) -> GrayImage:
        """The ciphertext rendered at the original dimensions (ECB padding dropped)."""
        return stream_to_image(self.ciphertext, self.width, self.height)


def write_container(c: CipherContainer) -> bytes:
    header = _HEADER.pack(
        CONTAINER_MAGIC, CONTAINER_VERSION, c.mode.value, c.width, c.height, c.iv, len(c.ciphertext)
    )
    return header + c.ciphertext


def read_container(data: bytes) -> CipherContainer:
    if len(data) < HEADER_SIZE:
        raise FormatError(f"container shorter than its {HEADER_SIZE}-byte header")
    magic, version, mode, width, height, iv, length = _HEADER.unpack_from(data)
    if magic != CONTAINER_MAGIC:
        raise FormatError(f"bad container magic {magic!r}")
    if version != CONTAINER_VERSION:
        raise FormatError(f"unsupported container version {version}")
    try:
        mode = ModeKind(mode)
    except ValueError:
        raise FormatError(f"unknown mode octet 0x{mode:02x}") from None
    body = data[HEADER_SIZE:]
    if len(body) != length:
        raise FormatError(f"declared ciphertext length {length} but {len(body)} bytes follow")
    return CipherContainer(mode, iv, width, height, body)
