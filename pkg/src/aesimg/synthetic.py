"""Deterministic synthetic grayscale test images.

These stand in for the medical scans used in the original experiments,
which cannot be redistributed. Only their statistical properties matter:

``flat-regions``
    smooth noisy background with at least two uniform rectangles; each
    rectangle is 64x64 or larger whenever the image is at least 64 pixels
    on its short side and 128 on its long side.
``gradient``
    horizontal ramp with mild noise; adjacent pixels are strongly correlated.
``noise``
    independent uniform pixels.
"""

import numpy as np

from .errors import RangeError
from .image_io import GrayImage

PATTERNS = ("flat-regions", "gradient", "noise")
MIN_SIDE = 16
RECT_SIDE = 64


def _background(rng, w, h):
    yy, xx = np.mgrid[0:h, 0:w].astype(np.float64)
    base = 40 + 150 * (0.6 * xx / max(w - 1, 1) + 0.4 * yy / max(h - 1, 1))
    return base + rng.normal(0.0, 6.0, size=(h, w))


def _flat_regions(rng, w, h):
    img = _background(rng, w, h)
    # one rectangle per half, split along the long side so they never overlap
    halves = [(0, 0, w // 2, h), (w // 2, 0, w - w // 2, h)] if w >= h else \
        [(0, 0, w, h // 2), (0, h // 2, w, h - h // 2)]
    used = set()
    for x0, y0, hw, hh in halves:
        rw = int(rng.integers(min(RECT_SIDE, hw), max(min(RECT_SIDE, hw), 3 * hw // 4) + 1))
        rh = int(rng.integers(min(RECT_SIDE, hh), max(min(RECT_SIDE, hh), 3 * hh // 4) + 1))
        rx = x0 + int(rng.integers(0, hw - rw + 1))
        ry = y0 + int(rng.integers(0, hh - rh + 1))
        level = int(rng.integers(0, 256))
        while level in used:
            level = int(rng.integers(0, 256))
        used.add(level)
        img[ry:ry + rh, rx:rx + rw] = level
    return img


def _gradient(rng, w, h):
    xx = np.broadcast_to(np.arange(w, dtype=np.float64), (h, w))
    ramp = 255.0 * xx / max(w - 1, 1)
    return ramp + rng.normal(0.0, 2.0, size=(h, w))


def generate(width: int, height: int, seed: int = 0, pattern: str = "flat-regions") -> GrayImage:
    """Build a test image; the same arguments always give the same pixels."""
    if width < MIN_SIDE or height < MIN_SIDE:
        raise RangeError(f"test images must be at least {MIN_SIDE}x{MIN_SIDE}, got {width}x{height}")
    if pattern not in PATTERNS:
        raise RangeError(f"unknown pattern {pattern!r}; expected one of {', '.join(PATTERNS)}")
    rng = np.random.default_rng(seed)
    if pattern == "noise":
        pixels = rng.integers(0, 256, size=(height, width), dtype=np.uint8)
    else:
        build = _flat_regions if pattern == "flat-regions" else _gradient
        pixels = np.clip(np.rint(build(rng, width, height)), 0, 255).astype(np.uint8)
    return GrayImage.from_array(pixels)
