"""Exception hierarchy shared by the cipher, image and analysis layers."""


class AesImageError(Exception):
    """Base class for every error raised by :mod:`aesimg`."""


class LengthError(AesImageError, ValueError):
    """Ciphertext or key material has an invalid length."""


class PaddingError(AesImageError, ValueError):
    """PKCS#7 padding is malformed (wrong key or corrupted ciphertext)."""


class FormatError(AesImageError, ValueError):
    """A PGM or AESI byte stream is malformed."""


class SizeError(AesImageError, ValueError):
    """A pixel stream is too short for the requested dimensions."""


class DimensionMismatch(AesImageError, ValueError):
    """Two images that must share dimensions do not."""


class DegenerateError(AesImageError, ValueError):
    """A statistic is undefined for the given input (e.g. zero variance)."""


class RangeError(AesImageError, ValueError):
    """A numeric argument is outside its permitted range."""
