"""Joint compression + encryption, then exact decryption.

The encoder swaps codeword contents after every block, so the transmitted
codebook and index matrix are scrambled together. The decoder walks the
indices backwards, undoing each swap, and ends up with both the image and
the codebook exactly as the plain pipeline would have produced them.
"""

import numpy as np

from vqcrypt import (
    SCHEME_FULL,
    BlockGrid,
    CipherContainer,
    TrainParams,
    decode_plain,
    decompose,
    decrypt_decode,
    derive_permutation,
    encode_plain,
    encrypt_encode,
    reassemble,
    serialize,
    train,
)
from vqcrypt.fixtures import gradient_flat

SEED = 0x5EED_0F_2026

img = gradient_flat(128, 128)
grid = decompose(img, 4, 4)
cb = train(grid.blocks, TrainParams(64))
perm = derive_permutation(SEED, 64)

enc = encrypt_encode(grid, cb, perm)
moved = int((enc.shuffled_codebook != cb).any(axis=1).sum())
print(f"encrypted under seed {SEED:#x}")
print(f"codewords displaced by the swap chain: {moved}/64")
print(f"index matrix entries are pseudo-indices; first row: {enc.index_matrix[0][:8]}...")

blob = serialize(
    CipherContainer(SCHEME_FULL, 128, 128, 4, 4, enc.shuffled_codebook, enc.index_matrix)
)
print(f"container: {len(blob)} bytes on the wire")

dec = decrypt_decode(enc.index_matrix, enc.shuffled_codebook, perm)
rec = reassemble(BlockGrid(dec.blocks, grid.grid_w, grid.grid_h, 4, 4, 128, 128))
plain = decode_plain(encode_plain(grid, cb), cb, (4, 4), (128, 128))

print("decrypted == plain VQ reconstruction:", np.array_equal(rec, plain))
print("codebook restored to original order: ", np.array_equal(dec.restored_codebook, cb))
