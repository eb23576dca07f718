"""Joint VQ encoding and encryption by keyed swapping of codeword contents.

The encoder looks up each block's nearest codeword in a working copy of the
codebook, records the keyed permutation's value for that position as the
transmitted index, and then swaps the contents at the true and disguised
positions before moving to the next block. The permutation itself is fixed
to positions and never moves; only contents travel. Because the swap chain
makes the codebook state depend on every prior block, identical blocks emit
different indices and flat image regions no longer leak.

The decoder walks the index matrix backwards, first performing the one swap
the encoder skipped on its final block, then alternately reading contents
and undoing swaps until the original codebook order is restored.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import IndexRangeError
from .keyperm import KeyedPermutation
from .pixmap import BlockGrid
from .vq import _as_codebook, nearest_many


class EncryptResult(NamedTuple):
    index_matrix: np.ndarray
    shuffled_codebook: np.ndarray


class DecryptResult(NamedTuple):
    blocks: np.ndarray
    restored_codebook: np.ndarray


def _checked_inputs(grid: BlockGrid, codebook, perm: KeyedPermutation):
    cb = _as_codebook(codebook).astype(np.uint8)
    if len(perm) != cb.shape[0]:
        raise ValueError(
            f"permutation covers {len(perm)} positions but codebook has {cb.shape[0]}"
        )
    blocks = np.asarray(grid.blocks)
    if blocks.shape[0] < 1:
        raise ValueError("nothing to encode: block grid is empty")
    if blocks.shape[1] != cb.shape[1]:
        raise ValueError(
            f"dimension mismatch: blocks {blocks.shape[1]} vs codebook {cb.shape[1]}"
        )
    return cb, blocks


def encrypt_encode(grid: BlockGrid, codebook, perm: KeyedPermutation) -> EncryptResult:
    """Encode ``grid`` while shuffling the codebook, one swap per block.

    For each block in order: find the nearest codeword position ``o`` in
    the working codebook, emit ``perm.forward[o]`` as the index, and swap
    the contents at ``o`` and ``perm.forward[o]``. The final block's swap
    is skipped, so the returned codebook is the state after the swap for
    block ``n - 1`` of ``n``. The input codebook is not modified.

    Inherently sequential over blocks: every lookup depends on all prior
    swaps.
    """
    cb, blocks = _checked_inputs(grid, codebook, perm)
    work = cb.astype(np.int64)
    b64 = blocks.astype(np.int64)
    fw = perm.forward.tolist()
    n = b64.shape[0]
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        d = ((work - b64[i]) ** 2).sum(axis=1)
        o = int(d.argmin())
        if (d == d[o]).sum() > 1:
            cand = np.flatnonzero(d == d[o])
            o = int(min(cand, key=lambda q: (tuple(work[q]), q)))
        p = fw[o]
        out[i] = p
        if i < n - 1 and o != p:
            work[[o, p]] = work[[p, o]]
    return EncryptResult(
        index_matrix=out.reshape(grid.grid_h, grid.grid_w),
        shuffled_codebook=work.astype(np.uint8),
    )


def decrypt_decode(
    indices: np.ndarray, shuffled_codebook, perm: KeyedPermutation
) -> DecryptResult:
    """Invert :func:`encrypt_encode`: recover block contents and codebook order.

    Starts by applying the swap the encoder skipped on its last block, then
    walks the indices from last to first, copying the content at each index
    and swapping it back toward its true position via ``perm.inverse``.
    Returns the blocks in forward order and the codebook restored to its
    original position order.
    """
    cb = _as_codebook(shuffled_codebook).astype(np.uint8)
    m = cb.shape[0]
    if len(perm) != m:
        raise ValueError(f"permutation covers {len(perm)} positions but codebook has {m}")
    ix = np.asarray(indices).ravel()
    if ix.shape[0] < 1:
        raise ValueError("nothing to decode: index matrix is empty")
    if int(ix.min()) < 0 or int(ix.max()) >= m:
        raise IndexRangeError(f"index out of range for codebook of {m} codewords")
    flat = [int(v) for v in ix]
    inv = perm.inverse.tolist()
    work = cb.copy()
    n = len(flat)
    last = flat[-1]
    o = inv[last]
    if o != last:
        work[[last, o]] = work[[o, last]]
    blocks = np.empty((n, cb.shape[1]), dtype=np.uint8)
    for i in range(n - 1, -1, -1):
        p = flat[i]
        blocks[i] = work[p]
        q = inv[p]
        if p != q:
            work[[p, q]] = work[[q, p]]
    return DecryptResult(blocks=blocks, restored_codebook=work)


def encode_random_index_only(
    grid: BlockGrid, codebook, perm: KeyedPermutation
) -> EncryptResult:
    """The weaker baseline: disguise indices through the permutation only.

    No swaps are performed, so the codebook ships unmodified and identical
    blocks still emit identical indices. Flat image regions therefore stay
    visibly flat for an attacker; kept for contrast experiments.
    """
    cb, blocks = _checked_inputs(grid, codebook, perm)
    pos = nearest_many(cb, blocks)
    out = perm.forward[pos]
    return EncryptResult(
        index_matrix=out.reshape(grid.grid_h, grid.grid_w),
        shuffled_codebook=cb.copy(),
    )


def decode_random_index_only(
    indices: np.ndarray, codebook, perm: KeyedPermutation
) -> DecryptResult:
    """Invert :func:`encode_random_index_only`: map indices back through the permutation."""
    cb = _as_codebook(codebook).astype(np.uint8)
    m = cb.shape[0]
    if len(perm) != m:
        raise ValueError(f"permutation covers {len(perm)} positions but codebook has {m}")
    ix = np.asarray(indices).ravel()
    if ix.shape[0] < 1:
        raise ValueError("nothing to decode: index matrix is empty")
    if int(ix.min()) < 0 or int(ix.max()) >= m:
        raise IndexRangeError(f"index out of range for codebook of {m} codewords")
    return DecryptResult(blocks=cb[perm.inverse[ix]], restored_codebook=cb.copy())
