"""Seed-keyed pseudorandom permutations of codebook positions.

The generator is SplitMix64 and the shuffle is a down-counting Fisher-Yates
with a modulo draw. Both are pinned bit-for-bit so that any implementation
of this format derives the identical permutation from the same 64-bit seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def prng_next(state: int) -> tuple[int, int]:
    """One SplitMix64 step: ``(output, next_state)``, all arithmetic mod 2**64."""
    s = (state + _GAMMA) & MASK64
    z = s
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31), s


def _check_seed(seed: int) -> int:
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def _derive_lists(seed: int, m: int) -> tuple[list[int], list[int]]:
    # identity array shuffled in place; kept as plain ints for the hot paths
    forward = list(range(m))
    state = seed
    for i in range(m - 1, 0, -1):
        out, state = prng_next(state)
        j = out % (i + 1)
        forward[i], forward[j] = forward[j], forward[i]
    inverse = [0] * m
    for i, v in enumerate(forward):
        inverse[v] = i
    return forward, inverse


@dataclass(frozen=True)
class KeyedPermutation:
    """A bijection on codebook positions together with its inverse.

    ``forward[position]`` is the disguised index recorded in the index
    matrix; ``inverse`` undoes it. Both arrays are read-only.
    """

    forward: np.ndarray
    inverse: np.ndarray

    def __len__(self) -> int:
        return len(self.forward)

    @classmethod
    def from_forward(cls, forward) -> "KeyedPermutation":
        """Build from a forward mapping, validating it is a bijection."""
        fw = np.asarray(forward, dtype=np.int64).copy()
        m = fw.shape[0]
        if fw.ndim != 1 or m < 1:
            raise ValueError("forward mapping must be a non-empty 1-D sequence")
        if not np.array_equal(np.sort(fw), np.arange(m)):
            raise ValueError("forward mapping is not a permutation of 0..m-1")
        inv = np.empty(m, dtype=np.int64)
        inv[fw] = np.arange(m)
        fw.setflags(write=False)
        inv.setflags(write=False)
        return cls(forward=fw, inverse=inv)


def derive_permutation(seed: int, m: int) -> KeyedPermutation:
    """Derive the keyed permutation of ``m`` positions from a 64-bit seed.

    Deterministic: equal ``(seed, m)`` always produces the identical
    permutation, on every platform.
    """
    _check_seed(seed)
    if m < 1:
        raise ValueError(f"permutation size must be >= 1, got {m}")
    fw_list, inv_list = _derive_lists(seed, m)
    fw = np.array(fw_list, dtype=np.int64)
    inv = np.array(inv_list, dtype=np.int64)
    fw.setflags(write=False)
    inv.setflags(write=False)
    return KeyedPermutation(forward=fw, inverse=inv)


def invert(p: KeyedPermutation) -> KeyedPermutation:
    """Swap the forward and inverse directions."""
    return KeyedPermutation(forward=p.inverse, inverse=p.forward)
