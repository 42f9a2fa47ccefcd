"""AES-128 (ECB/CTR) encryption of grayscale images, with two kernel shapes
(loop-unrolled and round-iterative), a statistical security-analysis battery
and a throughput benchmark.

The block kernels are compiled with Cython when available; otherwise a
pure-Python implementation with the same interface is used. See
:func:`aesimg.aes_core.backend_name`.
"""

from .aes_core import EngineKind, KeySchedule, backend_name, decrypt_block, encrypt_block, expand_key
from .image_io import CipherContainer, GrayImage
from .modes import ModeKind, ctr_xcrypt, ecb_decrypt, ecb_encrypt

__version__ = "0.1.0"

__all__ = [
    "CipherContainer",
    "EngineKind",
    "GrayImage",
    "KeySchedule",
    "ModeKind",
    "backend_name",
    "ctr_xcrypt",
    "decrypt_block",
    "ecb_decrypt",
    "ecb_encrypt",
    "encrypt_block",
    "expand_key",
]
