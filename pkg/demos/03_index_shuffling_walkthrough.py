"""Step-by-step walkthrough of the swap chain on a tiny constant image.

A 20x20 image of one gray level quantizes to the same codeword 25 times;
a plain encoder would emit 25 identical indices and leak the flat region.
Watch what the keyed swaps do instead: the emitted index cycles through an
orbit and the codebook order churns block by block.
"""

import numpy as np

from vqcrypt import BlockGrid, KeyedPermutation, decompose, decrypt_decode, encrypt_encode

# four codewords; every block of the image matches the last one
codebook = np.array([[10] * 16, [60] * 16, [140] * 16, [200] * 16], dtype=np.uint8)
names = {10: "C1", 60: "C2", 140: "C3", 200: "C4"}
perm = KeyedPermutation.from_forward([3, 0, 2, 1])  # (4,1,3,2) in 1-based display

img = np.full((20, 20), 200, dtype=np.uint8)
grid = decompose(img, 4, 4)

print("position permutation (1-based):", [p + 1 for p in perm.forward.tolist()])
print("codebook order before encoding:", [names[c] for c in codebook[:, 0].tolist()])
print()

res = encrypt_encode(grid, codebook, perm)
print("emitted index matrix (1-based display):")
for row in res.index_matrix + 1:
    print("  ", " ".join(str(v) for v in row))
print()

print("codebook order as the first blocks are encoded:")
# an n-block run performs n-1 swaps (none after its last block), so its
# shipped state is exactly the state after block n-1 of the longer run
for n in range(2, 6):
    sub = BlockGrid(grid.blocks[:n], n, 1, 4, 4, 4 * n, 4)
    state = encrypt_encode(sub, codebook, perm).shuffled_codebook
    print(f"  after block {n - 1}:", [names[c] for c in state[:, 0].tolist()])
print("(the swap after the final block is skipped, so the last state ships)")
print()

dec = decrypt_decode(res.index_matrix, res.shuffled_codebook, perm)
print("decoder output blocks all equal C4:", bool((dec.blocks == 200).all()))
print(
    "decoder restored codebook order:    ",
    [names[c] for c in dec.restored_codebook[:, 0].tolist()],
)
