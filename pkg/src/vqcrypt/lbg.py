"""Codebook design by the generalized Lloyd algorithm grown by splitting.

Training starts from the global centroid, doubles the codebook by splitting
every codeword ``c`` into ``c * (1 + delta)`` and ``c * (1 - delta)``, and
refines each size level with Lloyd iterations (assign to nearest, recenter)
until the relative distortion decrease drops below ``rel_tol``. Empty cells
are repaired deterministically, centroids are exact integer sums divided
once, and the finished codewords are rounded half-away-from-zero to 8 bits,
so identical inputs yield the identical codebook regardless of thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .vq import sqdist_matrix, _break_ties


@dataclass(frozen=True)
class TrainParams:
    """Free parameters of the trainer.

    ``target_size`` must be a power of two; the defaults for the split
    perturbation, convergence threshold, and iteration cap follow common
    practice for this family of trainers.
    """

    target_size: int
    split_delta: float = 0.01
    rel_tol: float = 1e-4
    max_iters: int = 100

    def __post_init__(self):
        m = self.target_size
        if m < 1 or (m & (m - 1)) != 0:
            raise ValueError(f"target_size must be a power of two >= 1, got {m}")
        if self.split_delta <= 0:
            raise ValueError("split_delta must be positive")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


def _as_training_blocks(blocks) -> np.ndarray:
    B = np.asarray(blocks)
    if B.dtype == object or B.ndim != 2:
        raise ValueError("training vectors must form a rectangular 2-D array")
    if B.shape[0] == 0:
        raise ValueError("training set is empty")
    if B.shape[1] == 0:
        raise ValueError("training vectors must have dimension >= 1")
    if not np.issubdtype(B.dtype, np.integer):
        raise ValueError(f"training vectors must be integers, got dtype {B.dtype}")
    if int(B.min()) < 0 or int(B.max()) > 255:
        raise ValueError("training vector components must lie in [0, 255]")
    return B.astype(np.int64)


def _assign(blocks_f: np.ndarray, codebook: np.ndarray, workers: int):
    """Nearest positions and distances for every block.

    Rows are independent, so splitting the block set across threads cannot
    change any result; the contract is bit-identical output for any
    ``workers`` value.
    """
    n = blocks_f.shape[0]
    if workers <= 1 or n < 2 * workers:
        d = sqdist_matrix(blocks_f, codebook)
    else:
        bounds = np.linspace(0, n, workers + 1, dtype=int)
        chunks = [blocks_f[a:b] for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: sqdist_matrix(c, codebook), chunks))
        d = np.vstack(parts)
    pos = d.argmin(axis=1).astype(np.int64)
    _break_ties(d, pos, codebook)
    return pos, d[np.arange(n), pos]


def _repair_empty_cells(codebook, counts, blocks_i, dists) -> None:
    """Give every empty cell the training vector farthest from its codeword.

    Cells are repaired in ascending position order and a vector is not
    handed to two cells in the same round unless every vector has already
    been used. Ties pick the smallest block index.
    """
    available = dists.copy()
    for cell in np.flatnonzero(counts == 0):
        j = int(available.argmax())
        if available[j] < 0.0:
            j = int(dists.argmax())
        else:
            available[j] = -1.0
        codebook[cell] = blocks_i[j]


def _refine(blocks_i, blocks_f, codebook, params: TrainParams, workers: int, history):
    """Lloyd iterations at a fixed codebook size."""
    m = codebook.shape[0]
    prev = None
    for _ in range(params.max_iters):
        pos, dmin = _assign(blocks_f, codebook, workers)
        distortion = float(dmin.mean())
        if history is not None:
            history.append(distortion)
        if prev is not None and prev - distortion < params.rel_tol * prev:
            break
        # recenter: exact integer sums, one division, so summation order is moot
        counts = np.bincount(pos, minlength=m)
        sums = np.zeros((m, blocks_i.shape[1]), dtype=np.int64)
        np.add.at(sums, pos, blocks_i)
        occupied = counts > 0
        codebook[occupied] = sums[occupied] / counts[occupied, None]
        _repair_empty_cells(codebook, counts, blocks_i, dmin)
        if distortion == 0.0:
            break
        prev = distortion
    return codebook


def train(blocks, params: TrainParams, workers: int = 1, history: list | None = None) -> np.ndarray:
    """Design a codebook of ``params.target_size`` codewords.

    ``blocks`` is a sequence of equal-length vectors with 8-bit components.
    Pass a list as ``history`` to collect the mean distortion of the
    real-valued internal state, one sub-list of per-iteration values for
    each doubling of the codebook. Returns a ``(m, dim)`` uint8 array;
    the position order of the result is what the encrypting encoder
    permutes, so it is part of the output contract.
    """
    B = _as_training_blocks(blocks)
    Bf = B.astype(np.float64)
    codebook = (B.sum(axis=0) / B.shape[0])[None, :]
    while codebook.shape[0] < params.target_size:
        codebook = np.vstack(
            [codebook * (1.0 + params.split_delta), codebook * (1.0 - params.split_delta)]
        )
        level = None
        if history is not None:
            level = []
            history.append(level)
        codebook = _refine(B, Bf, codebook, params, workers, level)
    return np.floor(codebook + 0.5).astype(np.uint8)


def distortion(blocks, codebook) -> float:
    """Mean squared Euclidean distance from each block to its nearest codeword."""
    B = _as_training_blocks(blocks)
    cb = np.asarray(codebook)
    if cb.ndim != 2 or cb.shape[0] < 1:
        raise ValueError(f"codebook must be a non-empty 2-D array, got shape {cb.shape}")
    if cb.shape[1] != B.shape[1]:
        raise ValueError(f"dimension mismatch: blocks {B.shape[1]} vs codebook {cb.shape[1]}")
    d = sqdist_matrix(B, cb)
    return float(d.min(axis=1).mean())
