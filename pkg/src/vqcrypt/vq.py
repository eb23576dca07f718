"""Plain vector quantization: exhaustive nearest-codeword search plus the
unencrypted encode/decode pair used as the fidelity reference.

Distances are squared Euclidean and computed exactly: for 8-bit inputs every
intermediate value stays far below 2**53, so float64 accumulation introduces
no rounding and ties are decided on true integer distances.
"""

from __future__ import annotations

import numpy as np

from .errors import IndexRangeError
from .pixmap import BlockGrid, reassemble


def _as_codebook(codebook) -> np.ndarray:
    cb = np.asarray(codebook)
    if cb.ndim != 2 or cb.shape[0] < 1 or cb.shape[1] < 1:
        raise ValueError(f"codebook must be a non-empty 2-D array, got shape {cb.shape}")
    return cb


def sqdist_matrix(blocks, codebook) -> np.ndarray:
    """All-pairs squared Euclidean distances, shape (n_blocks, n_codewords).

    Exact for integer inputs; float codebooks (used while training) are
    evaluated per codeword so each row's arithmetic never depends on how
    the block set is chunked.
    """
    B = np.asarray(blocks, dtype=np.float64)
    C = np.asarray(codebook, dtype=np.float64)
    if B.shape[1] != C.shape[1]:
        raise ValueError(f"dimension mismatch: blocks {B.shape[1]} vs codebook {C.shape[1]}")
    if np.asarray(codebook).dtype.kind in "iu":
        d = (
            (B * B).sum(axis=1)[:, None]
            + (C * C).sum(axis=1)[None, :]
            - 2.0 * (B @ C.T)
        )
    else:
        d = np.empty((B.shape[0], C.shape[0]))
        for k in range(C.shape[0]):
            diff = B - C[k]
            d[:, k] = np.einsum("ij,ij->i", diff, diff)
    np.maximum(d, 0.0, out=d)
    return d


def _break_ties(distances: np.ndarray, positions: np.ndarray, codebook: np.ndarray) -> None:
    """Rewrite ``positions`` in place so ties favor the lexicographically
    smallest codeword content, then the smallest position."""
    dmin = distances[np.arange(distances.shape[0]), positions]
    tied = np.flatnonzero((distances == dmin[:, None]).sum(axis=1) > 1)
    for r in tied:
        cand = np.flatnonzero(distances[r] == dmin[r])
        positions[r] = min(cand, key=lambda p: (tuple(codebook[p]), p))


def nearest_many(codebook, blocks) -> np.ndarray:
    """Nearest codebook position for each block vector, as an int64 array."""
    cb = _as_codebook(codebook)
    B = np.atleast_2d(np.asarray(blocks))
    d = sqdist_matrix(B, cb)
    pos = d.argmin(axis=1).astype(np.int64)
    _break_ties(d, pos, cb)
    return pos


def nearest(codebook, v) -> int:
    """Position of the codeword minimizing squared Euclidean distance to ``v``.

    Ties are broken by lexicographically smallest codeword content; among
    positions holding identical content, the smallest position wins. This
    rule makes the selected content independent of codebook order, which
    the encrypting encoder relies on.
    """
    return int(nearest_many(codebook, np.asarray(v)[None, :])[0])


def encode_plain(grid: BlockGrid, codebook) -> np.ndarray:
    """Map every block to its nearest codeword position.

    Returns the index matrix as a ``(grid_h, grid_w)`` int64 array. The
    codebook is never modified.
    """
    cb = _as_codebook(codebook)
    pos = nearest_many(cb, grid.blocks)
    return pos.reshape(grid.grid_h, grid.grid_w)


def decode_plain(
    indices: np.ndarray,
    codebook,
    block_dims: tuple[int, int],
    orig_dims: tuple[int, int],
) -> np.ndarray:
    """Rebuild an image by positional codebook lookup.

    ``block_dims`` is ``(block_w, block_h)`` and ``orig_dims`` is
    ``(width, height)`` of the image before padding. Raises
    :class:`IndexRangeError` if any index falls outside the codebook.
    """
    cb = _as_codebook(codebook).astype(np.uint8)
    ix = np.asarray(indices)
    if ix.ndim != 2:
        raise ValueError(f"index matrix must be 2-D, got shape {ix.shape}")
    m = cb.shape[0]
    if ix.size and (int(ix.min()) < 0 or int(ix.max()) >= m):
        raise IndexRangeError(f"index out of range for codebook of {m} codewords")
    block_w, block_h = block_dims
    orig_w, orig_h = orig_dims
    grid = BlockGrid(
        blocks=cb[ix.ravel()],
        grid_w=ix.shape[1],
        grid_h=ix.shape[0],
        block_w=block_w,
        block_h=block_h,
        orig_w=orig_w,
        orig_h=orig_h,
    )
    return reassemble(grid)
