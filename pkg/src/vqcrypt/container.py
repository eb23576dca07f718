"""Binary container for the ciphered codebook and index matrix (.vqc files).

Layout, little-endian throughout::

    offset  size  field
    0       4     magic "VQC1"
    4       1     version (1)
    5       1     flags: bit0 full swap scheme, bit1 random-indexing only,
                  bit2 plain, bit3 codebook-only file (no image payload)
    6       4     orig_w (u32)
    10      4     orig_h (u32)
    14      1     block_w
    15      1     block_h
    16      2     m, number of codewords (u16)
    18      m*block_w*block_h         codebook, position order, rows row-major
    ...     2*grid_w*grid_h           indices (u16 each), row-major, 0-based

with grid_w = ceil(orig_w / block_w) and grid_h = ceil(orig_h / block_h).
A codebook-only file records orig_w = orig_h = 0, which makes the index
payload empty under the same length formula. Indices are 0-based on the
wire. The container provides no integrity protection: flipping payload
bytes yields a different image, not an error.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadFlagsError,
    BadMagicError,
    BadVersionError,
    ContainerError,
    IndexRangeError,
    LengthError,
)

MAGIC = b"VQC1"
VERSION = 1

SCHEME_FULL = 0x01
SCHEME_RANDOM_INDEX = 0x02
SCHEME_PLAIN = 0x04
FLAG_CODEBOOK_ONLY = 0x08

_SCHEMES = (SCHEME_FULL, SCHEME_RANDOM_INDEX, SCHEME_PLAIN)
_HEADER = struct.Struct("<4sBBIIBBH")
HEADER_SIZE = _HEADER.size  # 18


@dataclass
class CipherContainer:
    """Parsed or to-be-written container contents."""

    flags: int
    orig_w: int
    orig_h: int
    block_w: int
    block_h: int
    codebook: np.ndarray  # (m, block_w*block_h) uint8
    indices: np.ndarray  # (grid_h, grid_w) int64, empty for codebook-only

    @property
    def m(self) -> int:
        return int(self.codebook.shape[0])

    @property
    def grid_w(self) -> int:
        return -(-self.orig_w // self.block_w)

    @property
    def grid_h(self) -> int:
        return -(-self.orig_h // self.block_h)


def codebook_container(codebook, block_w: int, block_h: int) -> CipherContainer:
    """Wrap a bare codebook for standalone storage (flags bit 3)."""
    return CipherContainer(
        flags=FLAG_CODEBOOK_ONLY,
        orig_w=0,
        orig_h=0,
        block_w=block_w,
        block_h=block_h,
        codebook=np.asarray(codebook, dtype=np.uint8),
        indices=np.zeros((0, 0), dtype=np.int64),
    )


def _validate_for_write(c: CipherContainer) -> tuple[np.ndarray, np.ndarray]:
    if c.flags not in _SCHEMES and c.flags != FLAG_CODEBOOK_ONLY:
        raise ValueError(f"flags must set exactly one scheme bit, got {c.flags:#04x}")
    if not 1 <= c.block_w <= 255 or not 1 <= c.block_h <= 255:
        raise ValueError("block dimensions must lie in [1, 255]")
    cb = np.asarray(c.codebook)
    if cb.ndim != 2 or not 1 <= cb.shape[0] <= 0xFFFF:
        raise ValueError("codebook must be 2-D with 1..65535 codewords")
    if cb.shape[1] != c.block_w * c.block_h:
        raise ValueError(
            f"codeword length {cb.shape[1]} does not match block {c.block_w}x{c.block_h}"
        )
    if cb.dtype != np.uint8:
        raise ValueError("codebook must be uint8")
    ix = np.asarray(c.indices)
    if c.flags == FLAG_CODEBOOK_ONLY:
        if c.orig_w != 0 or c.orig_h != 0 or ix.size != 0:
            raise ValueError("codebook-only containers carry no image payload")
        ix = ix.reshape(0, 0)
    else:
        if not 1 <= c.orig_w <= 0xFFFFFFFF or not 1 <= c.orig_h <= 0xFFFFFFFF:
            raise ValueError("image dimensions must be positive 32-bit values")
        if ix.shape != (c.grid_h, c.grid_w):
            raise ValueError(
                f"index matrix shape {ix.shape} does not match grid "
                f"{c.grid_h}x{c.grid_w}"
            )
        if ix.size and (int(ix.min()) < 0 or int(ix.max()) >= cb.shape[0]):
            raise ValueError("index entries must lie in [0, m)")
    return cb, ix


def serialize(c: CipherContainer) -> bytes:
    """Encode a container to its exact wire form.

    Raises ``ValueError`` for contents that cannot be represented; wire
    corruption errors belong to :func:`deserialize`.
    """
    cb, ix = _validate_for_write(c)
    header = _HEADER.pack(
        MAGIC, VERSION, c.flags, c.orig_w, c.orig_h, c.block_w, c.block_h, cb.shape[0]
    )
    return header + cb.tobytes() + ix.astype("<u2").tobytes()


def deserialize(data: bytes) -> CipherContainer:
    """Decode container bytes, raising a distinct error per corruption kind.

    :class:`BadMagicError`, :class:`BadVersionError`, :class:`BadFlagsError`
    cover the fixed header; :class:`LengthError` covers truncation and
    trailing bytes; :class:`IndexRangeError` covers index entries >= m.
    """
    if len(data) < HEADER_SIZE:
        raise LengthError(f"truncated header: {len(data)} bytes, need {HEADER_SIZE}")
    magic, version, flags, orig_w, orig_h, block_w, block_h, m = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise BadVersionError(f"unsupported version {version}, expected {VERSION}")
    if flags not in _SCHEMES and flags != FLAG_CODEBOOK_ONLY:
        raise BadFlagsError(f"flags {flags:#04x} do not set exactly one scheme bit")
    if block_w < 1 or block_h < 1:
        raise ContainerError("block dimensions must be >= 1")
    if m < 1:
        raise ContainerError("codeword count must be >= 1")
    if flags == FLAG_CODEBOOK_ONLY:
        if orig_w != 0 or orig_h != 0:
            raise ContainerError("codebook-only container declares image dimensions")
    elif orig_w < 1 or orig_h < 1:
        raise ContainerError("image dimensions must be >= 1")

    grid_w = -(-orig_w // block_w)
    grid_h = -(-orig_h // block_h)
    cb_bytes = m * block_w * block_h
    expected = HEADER_SIZE + cb_bytes + 2 * grid_w * grid_h
    if len(data) != expected:
        raise LengthError(f"payload length {len(data)} bytes, expected {expected}")

    codebook = (
        np.frombuffer(data, dtype=np.uint8, count=cb_bytes, offset=HEADER_SIZE)
        .reshape(m, block_w * block_h)
        .copy()
    )
    indices = (
        np.frombuffer(data, dtype="<u2", count=grid_w * grid_h, offset=HEADER_SIZE + cb_bytes)
        .astype(np.int64)
        .reshape(grid_h, grid_w)
    )
    if indices.size and int(indices.max()) >= m:
        raise IndexRangeError(f"index entry >= codeword count {m}")
    return CipherContainer(
        flags=flags,
        orig_w=orig_w,
        orig_h=orig_h,
        block_w=block_w,
        block_h=block_h,
        codebook=codebook,
        indices=indices,
    )
