"""Portable graymap I/O, block decomposition, and image fidelity metrics.

Images are 2-D ``numpy.uint8`` arrays of shape ``(height, width)``. The
reader accepts both binary (P5) and ASCII (P2) graymaps with ``maxval``
up to 255 and skips ``#`` comments; the writer always emits P5 with the
layout ``P5\\n<w> <h>\\n255\\n`` followed by the raw pixel bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PgmParseError

_WS = frozenset(b" \t\n\r\x0b\x0c")
_HASH = ord("#")


@dataclass(frozen=True)
class BlockGrid:
    """Image blocks in encoding order plus the geometry to put them back.

    ``blocks`` has shape ``(grid_h * grid_w, block_h * block_w)``: blocks
    enumerated row-major over the block grid, pixels row-major within each
    block. ``orig_w``/``orig_h`` record the unpadded image size.
    """

    blocks: np.ndarray
    grid_w: int
    grid_h: int
    block_w: int
    block_h: int
    orig_w: int
    orig_h: int


def _skip_separators(data: bytes, i: int) -> int:
    n = len(data)
    while i < n:
        c = data[i]
        if c in _WS:
            i += 1
        elif c == _HASH:
            while i < n and data[i] not in (0x0A, 0x0D):
                i += 1
        else:
            break
    return i


def _int_token(data: bytes, i: int, what: str) -> tuple[int, int]:
    i = _skip_separators(data, i)
    if i >= len(data):
        raise PgmParseError(f"missing {what}")
    j = i
    n = len(data)
    while j < n and data[j] not in _WS and data[j] != _HASH:
        j += 1
    token = data[i:j]
    try:
        value = int(token)
    except ValueError:
        raise PgmParseError(f"invalid {what}: {token!r}") from None
    return value, j


def read_pgm(data: bytes) -> np.ndarray:
    """Parse P5 or P2 graymap bytes into a ``(height, width)`` uint8 array.

    Raises :class:`PgmParseError` naming the offending element on bad
    magic, missing or invalid header fields, ``maxval`` outside [1, 255],
    or a truncated pixel payload.
    """
    magic = bytes(data[:2])
    if magic not in (b"P2", b"P5"):
        raise PgmParseError(f"bad magic {magic!r}, expected P2 or P5")
    width, i = _int_token(data, 2, "width")
    height, i = _int_token(data, i, "height")
    maxval, i = _int_token(data, i, "maxval")
    if width < 1:
        raise PgmParseError(f"width must be positive, got {width}")
    if height < 1:
        raise PgmParseError(f"height must be positive, got {height}")
    if not 1 <= maxval <= 255:
        raise PgmParseError(f"maxval must be in [1, 255], got {maxval}")
    count = width * height

    if magic == b"P5":
        # exactly one separator byte between maxval and the raw payload
        if i >= len(data) or data[i] not in _WS:
            raise PgmParseError("expected whitespace after maxval")
        i += 1
        payload = data[i : i + count]
        if len(payload) < count:
            raise PgmParseError(
                f"truncated pixel payload: expected {count} bytes, got {len(payload)}"
            )
        img = np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()
        if maxval < 255 and int(img.max()) > maxval:
            raise PgmParseError(f"pixel value exceeds maxval {maxval}")
        return img

    values = np.empty(count, dtype=np.uint8)
    for k in range(count):
        v, i = _int_token(data, i, f"pixel {k}")
        if not 0 <= v <= maxval:
            raise PgmParseError(f"pixel {k} out of range [0, {maxval}]: {v}")
        values[k] = v
    return values.reshape(height, width)


def write_pgm(img: np.ndarray) -> bytes:
    """Serialize a ``(height, width)`` uint8 array as a binary P5 graymap."""
    a = _as_pixmap(img)
    h, w = a.shape
    return b"P5\n%d %d\n255\n" % (w, h) + a.tobytes()


def _as_pixmap(img) -> np.ndarray:
    a = np.asarray(img)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a 2-D pixel grid, got shape {a.shape}")
    if a.dtype != np.uint8:
        if not np.issubdtype(a.dtype, np.integer):
            raise ValueError(f"pixel values must be integers, got dtype {a.dtype}")
        if a.size and (int(a.min()) < 0 or int(a.max()) > 255):
            raise ValueError("pixel values must lie in [0, 255]")
        a = a.astype(np.uint8)
    return a


def decompose(img: np.ndarray, block_w: int, block_h: int) -> BlockGrid:
    """Split an image into non-overlapping ``block_w`` x ``block_h`` blocks.

    When the image dimensions are not multiples of the block size, the
    image is padded by edge replication before slicing, so every input
    size is accepted.
    """
    if block_w < 1 or block_h < 1:
        raise ValueError("block dimensions must be >= 1")
    a = _as_pixmap(img)
    h, w = a.shape
    grid_w = -(-w // block_w)
    grid_h = -(-h // block_h)
    padded = np.pad(a, ((0, grid_h * block_h - h), (0, grid_w * block_w - w)), mode="edge")
    blocks = (
        padded.reshape(grid_h, block_h, grid_w, block_w)
        .transpose(0, 2, 1, 3)
        .reshape(grid_h * grid_w, block_h * block_w)
    )
    return BlockGrid(
        blocks=blocks,
        grid_w=grid_w,
        grid_h=grid_h,
        block_w=block_w,
        block_h=block_h,
        orig_w=w,
        orig_h=h,
    )


def reassemble(grid: BlockGrid) -> np.ndarray:
    """Rebuild the image from a block grid, discarding any padding region."""
    gw, gh, bw, bh = grid.grid_w, grid.grid_h, grid.block_w, grid.block_h
    blocks = np.asarray(grid.blocks)
    if blocks.shape != (gw * gh, bw * bh):
        raise ValueError(
            f"block grid mismatch: {blocks.shape} does not fit "
            f"{gh}x{gw} blocks of {bw}x{bh}"
        )
    if gw != -(-grid.orig_w // bw) or gh != -(-grid.orig_h // bh):
        raise ValueError("grid dimensions do not match the original image size")
    full = (
        blocks.reshape(gh, gw, bh, bw)
        .transpose(0, 2, 1, 3)
        .reshape(gh * bh, gw * bw)
    )
    return full[: grid.orig_h, : grid.orig_w].astype(np.uint8, copy=True)


def mse(a: np.ndarray, b: np.ndarray) -> float:
    """Mean squared per-pixel difference."""
    x = np.asarray(a, dtype=np.int64)
    y = np.asarray(b, dtype=np.int64)
    if x.shape != y.shape:
        raise ValueError(f"image shapes differ: {x.shape} vs {y.shape}")
    d = x - y
    return float(np.mean(d * d))


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB; ``math.inf`` for identical images."""
    m = mse(a, b)
    if m == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / m)
