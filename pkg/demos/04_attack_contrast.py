"""What a key-less attacker sees under each scheme.

Decoding a container positionally (no key) is the naive attack. For a
plain container that IS the reconstruction. If only the indices are
permuted, the image stays structured: flat regions stay flat, just at the
wrong gray level. With the full swap chain the output drops to noise
level. Reconstructions are written next to this script for inspection.
"""

import os

import numpy as np

from vqcrypt import (
    SCHEME_FULL,
    SCHEME_PLAIN,
    SCHEME_RANDOM_INDEX,
    CipherContainer,
    TrainParams,
    decompose,
    derive_permutation,
    encode_plain,
    encode_random_index_only,
    encrypt_encode,
    naive_decode,
    psnr,
    train,
    write_pgm,
)
from vqcrypt.fixtures import gradient_flat

SEED = 2024
OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
os.makedirs(OUT, exist_ok=True)

img = gradient_flat(128, 128)
grid = decompose(img, 4, 4)
cb = train(grid.blocks, TrainParams(64))
perm = derive_permutation(SEED, 64)


def container(flags, codebook, indices):
    return CipherContainer(flags, 128, 128, 4, 4, codebook, indices)


plain_c = container(SCHEME_PLAIN, cb, encode_plain(grid, cb))
ri = encode_random_index_only(grid, cb, perm)
ri_c = container(SCHEME_RANDOM_INDEX, ri.shuffled_codebook, ri.index_matrix)
full = encrypt_encode(grid, cb, perm)
full_c = container(SCHEME_FULL, full.shuffled_codebook, full.index_matrix)

print(f"{'scheme':14s} {'naive-decode PSNR':>18s}   what the attacker sees")
for name, c, note in [
    ("plain", plain_c, "the true reconstruction"),
    ("random-index", ri_c, "structure intact, wrong gray levels"),
    ("full", full_c, "noise-like"),
]:
    out = naive_decode(c)
    with open(os.path.join(OUT, f"naive_{name}.pgm"), "wb") as fh:
        fh.write(write_pgm(out))
    print(f"{name:14s} {psnr(out, img):15.2f} dB   {note}")

print(f"\nimages written to {OUT}/naive_*.pgm")
