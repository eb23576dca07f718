"""Deterministic synthetic images for experiments and tests.

The attack-contrast experiments need an image with both smooth structure
and a large flat region: the ramp provides many distinct block patterns,
the flat patch is the part a permuted-index-only cipher visibly leaks.
Everything here is integer arithmetic so the pixel values never depend on
platform rounding.
"""

from __future__ import annotations

import math

import numpy as np

_isqrt = np.frompyfunc(math.isqrt, 1, 1)


def gradient_flat(width: int, height: int, flat_value: int = 96) -> np.ndarray:
    """Radial ramp from 0 to 255 with a flat rectangle burned into it.

    Pixel (x, y) maps its distance from the image center onto [0, 255]
    with integer round-half-up; the curvature keeps the number of distinct
    block patterns well above typical codebook sizes, so quantization is
    good but not exact. The flat rectangle spans the middle half of the
    width and the second quarter of the height.
    """
    if width < 4 or height < 4:
        raise ValueError("fixture needs width and height >= 4")
    if not 0 <= flat_value <= 255:
        raise ValueError(f"flat_value must be a byte, got {flat_value}")
    # doubled coordinates keep the center exact for even sizes
    dx = 2 * np.arange(width, dtype=np.int64) - (width - 1)
    dy = 2 * np.arange(height, dtype=np.int64) - (height - 1)
    r = _isqrt(dy[:, None] ** 2 + dx[None, :] ** 2).astype(np.int64)
    rmax = math.isqrt((width - 1) ** 2 + (height - 1) ** 2)
    img = ((255 * r * 2 + rmax) // (2 * rmax)).astype(np.uint8)
    img[height // 4 : height // 2, width // 4 : 3 * width // 4] = flat_value
    return img
