"""Grayscale VQ codec with seed-keyed codebook-shuffle encryption.

Compression and encryption happen in a single pass: a keyed permutation
disguises each emitted index, and a per-block swap of codeword contents
makes every index depend on all blocks before it. The decoder inverts the
swap chain exactly, so the keyed pipeline reproduces the plain VQ
reconstruction bit for bit.
"""

from .analysis import (
    AttackReport,
    brute_force_seed,
    keyspace_years,
    log2_factorial,
    naive_decode,
    total_variation,
)
from .container import (
    FLAG_CODEBOOK_ONLY,
    SCHEME_FULL,
    SCHEME_PLAIN,
    SCHEME_RANDOM_INDEX,
    CipherContainer,
    codebook_container,
    deserialize,
    serialize,
)
from .errors import (
    BadFlagsError,
    BadMagicError,
    BadVersionError,
    ContainerError,
    IndexRangeError,
    LengthError,
    PgmParseError,
)
from .fixtures import gradient_flat
from .keyperm import KeyedPermutation, derive_permutation, invert, prng_next
from .lbg import TrainParams, distortion, train
from .pixmap import (
    BlockGrid,
    decompose,
    mse,
    psnr,
    read_pgm,
    reassemble,
    write_pgm,
)
from .shuffle import (
    DecryptResult,
    EncryptResult,
    decode_random_index_only,
    decrypt_decode,
    encode_random_index_only,
    encrypt_encode,
)
from .vq import decode_plain, encode_plain, nearest, nearest_many, sqdist_matrix

__version__ = "0.1.0"

__all__ = [
    "AttackReport",
    "BadFlagsError",
    "BadMagicError",
    "BadVersionError",
    "BlockGrid",
    "CipherContainer",
    "ContainerError",
    "DecryptResult",
    "EncryptResult",
    "FLAG_CODEBOOK_ONLY",
    "IndexRangeError",
    "KeyedPermutation",
    "LengthError",
    "PgmParseError",
    "SCHEME_FULL",
    "SCHEME_PLAIN",
    "SCHEME_RANDOM_INDEX",
    "TrainParams",
    "brute_force_seed",
    "codebook_container",
    "decode_plain",
    "decode_random_index_only",
    "decompose",
    "decrypt_decode",
    "derive_permutation",
    "deserialize",
    "distortion",
    "encode_plain",
    "encode_random_index_only",
    "encrypt_encode",
    "gradient_flat",
    "invert",
    "keyspace_years",
    "log2_factorial",
    "mse",
    "naive_decode",
    "nearest",
    "nearest_many",
    "prng_next",
    "psnr",
    "read_pgm",
    "reassemble",
    "serialize",
    "sqdist_matrix",
    "total_variation",
    "train",
    "write_pgm",
]
