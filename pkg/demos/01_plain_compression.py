"""Plain VQ compression: train a codebook, encode to indices, decode back.

No encryption here; this is the reference pipeline the keyed scheme must
match bit for bit. Prints the rate/distortion numbers for a synthetic
radial-gradient image.
"""

import numpy as np

from vqcrypt import TrainParams, decode_plain, decompose, encode_plain, mse, psnr, train
from vqcrypt.fixtures import gradient_flat

img = gradient_flat(128, 128)
print(f"input: {img.shape[1]}x{img.shape[0]} grayscale, {img.size} bytes raw")

grid = decompose(img, 4, 4)
print(f"blocks: {grid.blocks.shape[0]} of 4x4 (vectors of dimension 16)")

for m in (16, 64, 256):
    cb = train(grid.blocks, TrainParams(m))
    ix = encode_plain(grid, cb)
    rec = decode_plain(ix, cb, (4, 4), (img.shape[1], img.shape[0]))
    coded = cb.size + 2 * ix.size  # codebook bytes + 16-bit indices
    print(
        f"m={m:3d}: PSNR {psnr(rec, img):6.2f} dB, MSE {mse(rec, img):7.2f}, "
        f"coded size {coded} bytes ({img.size / coded:.1f}x smaller)"
    )
