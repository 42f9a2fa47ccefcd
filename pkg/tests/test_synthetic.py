import numpy as np
import pytest

from aesimg.analysis import Direction, adjacent_correlation
from aesimg.cli import repeated_blocks
from aesimg.errors import RangeError
from aesimg.modes import ecb_encrypt
from aesimg.synthetic import PATTERNS, RECT_SIDE, generate

KEY = bytes(range(16))


def uniform_squares(img, side=RECT_SIDE):
    """Distinct grey levels that fill some side x side window completely."""
    a = img.array
    levels = set()
    for v in np.unique(a):
        mask = (a == v).astype(np.int64)
        # 2-D prefix sums give every window total in O(wh)
        s = np.pad(mask.cumsum(0).cumsum(1), ((1, 0), (1, 0)))
        win = s[side:, side:] - s[:-side, side:] - s[side:, :-side] + s[:-side, :-side]
        if (win == side * side).any():
            levels.add(int(v))
    return levels


@pytest.mark.parametrize("pattern", PATTERNS)
def test_deterministic(pattern):
    assert generate(64, 48, seed=9, pattern=pattern) == generate(64, 48, seed=9, pattern=pattern)
    assert generate(64, 48, seed=9, pattern=pattern) != generate(64, 48, seed=10, pattern=pattern)


@pytest.mark.parametrize("size", [(256, 256), (440, 123), (128, 64), (300, 200)])
@pytest.mark.parametrize("seed", range(4))
def test_flat_regions_hold_two_uniform_squares(size, seed):
    img = generate(*size, seed=seed)
    assert (img.width, img.height) == size
    assert len(uniform_squares(img)) >= 2


def test_flat_regions_leak_through_ecb():
    img = generate(256, 256, seed=0)
    assert repeated_blocks(ecb_encrypt(img.pixels, KEY)) >= 2


def test_gradient_is_strongly_correlated():
    img = generate(256, 256, seed=1, pattern="gradient")
    assert adjacent_correlation(img, Direction.HORIZONTAL).r > 0.95


def test_noise_is_uncorrelated():
    img = generate(256, 256, seed=1, pattern="noise")
    assert abs(adjacent_correlation(img, Direction.HORIZONTAL).r) < 0.02


def test_small_images_still_generate():
    img = generate(16, 16, seed=3)
    assert img.size == 256


@pytest.mark.parametrize("args", [(15, 64), (64, 0)])
def test_too_small(args):
    with pytest.raises(RangeError):
        generate(*args)


def test_unknown_pattern():
    with pytest.raises(RangeError):
        generate(64, 64, pattern="checkerboard")
