import os

import numpy as np
import pytest

from vqcrypt.container import CipherContainer, SCHEME_FULL
from vqcrypt.keyperm import derive_permutation
from vqcrypt.pixmap import decompose, read_pgm
from vqcrypt.shuffle import encrypt_encode

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def gradient_128():
    with open(os.path.join(DATA_DIR, "gradient_flat_128.pgm"), "rb") as fh:
        return read_pgm(fh.read())


def make_full_container(img, codebook, seed):
    """Encrypt img under codebook/seed into a full-scheme container."""
    grid = decompose(img, 4, 4)
    perm = derive_permutation(seed, codebook.shape[0])
    enc = encrypt_encode(grid, codebook, perm)
    return CipherContainer(
        flags=SCHEME_FULL,
        orig_w=img.shape[1],
        orig_h=img.shape[0],
        block_w=4,
        block_h=4,
        codebook=enc.shuffled_codebook,
        indices=enc.index_matrix,
    )
