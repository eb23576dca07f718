import numpy as np
import pytest

from vqcrypt.errors import IndexRangeError
from vqcrypt.pixmap import decompose
from vqcrypt.vq import decode_plain, encode_plain, nearest, nearest_many, sqdist_matrix


def brute_nearest(codebook, v):
    """Reference scan: min squared distance, ties by (content, position)."""
    d = [(int(((c.astype(np.int64) - v) ** 2).sum()), tuple(c), i) for i, c in enumerate(codebook)]
    return min(d)[2]


def test_nearest_basic():
    cb = np.array([[0, 0], [10, 10]], dtype=np.uint8)
    assert nearest(cb, [2, 2]) == 0


def test_nearest_tie_prefers_smaller_content():
    cb = np.array([[10, 10], [0, 0]], dtype=np.uint8)
    # [5,5] is equidistant; [0,0] < [10,10] lexicographically
    assert nearest(cb, [5, 5]) == 1


def test_nearest_duplicate_content_prefers_smaller_position():
    cb = np.array([[7, 7], [7, 7], [0, 0]], dtype=np.uint8)
    assert nearest(cb, [7, 7]) == 0


def test_nearest_matches_brute_force():
    rng = np.random.default_rng(42)
    cb = rng.integers(0, 256, (16, 4), dtype=np.uint8)
    vs = rng.integers(0, 256, (100, 4), dtype=np.uint8)
    got = nearest_many(cb, vs)
    for v, g in zip(vs, got):
        assert g == brute_nearest(cb, v)


def test_nearest_content_invariant_under_permutation():
    rng = np.random.default_rng(3)
    cb = rng.integers(0, 250, (8, 4), dtype=np.uint8)
    vs = rng.integers(0, 256, (50, 4), dtype=np.uint8)
    for trial in range(20):
        pi = rng.permutation(8)
        shuffled = cb[pi]
        for v in vs:
            a = cb[nearest(cb, v)]
            b = shuffled[nearest(shuffled, v)]
            assert np.array_equal(a, b)


def test_sqdist_matrix_values():
    cb = np.array([[3, 4]], dtype=np.uint8)
    d = sqdist_matrix(np.array([[0, 0]], dtype=np.uint8), cb)
    assert d[0, 0] == 25.0


def test_encode_plain_constant_image():
    cb = np.array([[0] * 16, [200] * 16], dtype=np.uint8)
    grid = decompose(np.full((20, 20), 200, dtype=np.uint8), 4, 4)
    ix = encode_plain(grid, cb)
    assert ix.shape == (5, 5)
    assert (ix == 1).all()


def test_encode_plain_blocks_equal_codeword():
    rng = np.random.default_rng(5)
    cb = rng.integers(0, 256, (8, 16), dtype=np.uint8)
    grid = decompose(np.tile(cb[3].reshape(4, 4), (2, 2)).astype(np.uint8), 4, 4)
    assert (encode_plain(grid, cb) == 3).all()


def test_encode_plain_matches_brute_force_and_keeps_codebook():
    rng = np.random.default_rng(9)
    cb = rng.integers(0, 256, (16, 16), dtype=np.uint8)
    before = cb.copy()
    img = rng.integers(0, 256, (24, 20), dtype=np.uint8)
    grid = decompose(img, 4, 4)
    ix = encode_plain(grid, cb).ravel()
    for b, g in zip(grid.blocks, ix):
        assert g == brute_nearest(cb, b)
    assert np.array_equal(cb, before)


def test_decode_plain_uniform_tiling():
    cb = np.array([[0] * 16, [9] * 16], dtype=np.uint8)
    img = decode_plain(np.ones((2, 2), dtype=np.int64), cb, (4, 4), (8, 8))
    assert np.array_equal(img, np.full((8, 8), 9))


def test_decode_plain_rejects_out_of_range_index():
    cb = np.array([[0] * 16], dtype=np.uint8)
    with pytest.raises(IndexRangeError):
        decode_plain(np.array([[1]]), cb, (4, 4), (4, 4))


def test_round_trip_error_is_per_block_minimum():
    rng = np.random.default_rng(11)
    cb = rng.integers(0, 256, (8, 16), dtype=np.uint8)
    img = rng.integers(0, 256, (16, 16), dtype=np.uint8)
    grid = decompose(img, 4, 4)
    rec = decode_plain(encode_plain(grid, cb), cb, (4, 4), (16, 16))
    rec_blocks = decompose(rec, 4, 4).blocks
    for orig, got in zip(grid.blocks, rec_blocks):
        err = int(((got.astype(np.int64) - orig) ** 2).sum())
        best = min(int(((c.astype(np.int64) - orig) ** 2).sum()) for c in cb)
        assert err == best
