"""Command-line front end: train, encrypt, decrypt, attack, metrics, keyspace.

Exit codes: 0 success, 1 usage error, 2 corrupt or unparseable input file,
3 brute-force attack finished without recovering the seed.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .analysis import brute_force_seed, keyspace_years, log2_factorial, naive_decode
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
from .errors import ContainerError, PgmParseError
from .keyperm import MASK64, derive_permutation
from .lbg import TrainParams, train
from .pixmap import BlockGrid, decompose, mse, psnr, read_pgm, reassemble, write_pgm
from .shuffle import decode_random_index_only, decrypt_decode, encode_random_index_only, encrypt_encode
from .vq import decode_plain, encode_plain

OK = 0
USAGE = 1
CORRUPT = 2
NOT_RECOVERED = 3

_SCHEME_BY_NAME = {
    "full": SCHEME_FULL,
    "random-index": SCHEME_RANDOM_INDEX,
    "plain": SCHEME_PLAIN,
}
_NAME_BY_SCHEME = {v: k for k, v in _SCHEME_BY_NAME.items()}


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; the contract here says 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def parse_seed(text: str) -> int:
    """Accept a seed as decimal or 0x-prefixed hex; must fit in 64 bits."""
    t = text.strip()
    try:
        value = int(t, 16) if t.lower().startswith("0x") else int(t, 10)
    except ValueError:
        raise ValueError(f"seed must be decimal or 0x-hex, got {text!r}") from None
    if not 0 <= value <= MASK64:
        raise ValueError(f"seed must fit in 64 bits, got {text!r}")
    return value


def parse_block(text: str) -> tuple[int, int]:
    """Parse a WxH block geometry such as 4x4."""
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"block must look like WxH, got {text!r}")
    try:
        w, h = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"block must look like WxH, got {text!r}") from None
    if not (1 <= w <= 255 and 1 <= h <= 255):
        raise ValueError(f"block dimensions must lie in [1, 255], got {text!r}")
    return w, h


def _read_image(path: str) -> np.ndarray:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def _read_container(path: str) -> CipherContainer:
    with open(path, "rb") as fh:
        return deserialize(fh.read())


def _write_file(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


def _grid_from(container: CipherContainer, blocks: np.ndarray) -> BlockGrid:
    return BlockGrid(
        blocks=blocks,
        grid_w=container.grid_w,
        grid_h=container.grid_h,
        block_w=container.block_w,
        block_h=container.block_h,
        orig_w=container.orig_w,
        orig_h=container.orig_h,
    )


def _require_payload(container: CipherContainer, verb: str) -> None:
    if container.flags & FLAG_CODEBOOK_ONLY:
        raise ValueError(f"cannot {verb} a codebook-only file: it has no image payload")


def _cmd_train(args) -> int:
    img = _read_image(args.input)
    bw, bh = args.block
    grid = decompose(img, bw, bh)
    codebook = train(grid.blocks, TrainParams(target_size=args.codebook_size))
    data = serialize(codebook_container(codebook, bw, bh))
    _write_file(args.out, data)
    print(f"trained {codebook.shape[0]} codewords of {bw}x{bh}; wrote {args.out}")
    return OK


def _resolve_codebook(args, img):
    """Codebook plus block geometry, either from a file or trained in place."""
    if args.codebook is not None:
        saved = _read_container(args.codebook)
        bw, bh = saved.block_w, saved.block_h
        if args.block is not None and args.block != (bw, bh):
            raise ValueError(
                f"--block {args.block[0]}x{args.block[1]} conflicts with "
                f"codebook file ({bw}x{bh})"
            )
        if args.codebook_size is not None and args.codebook_size != saved.m:
            raise ValueError(
                f"--codebook-size {args.codebook_size} conflicts with "
                f"codebook file ({saved.m} codewords)"
            )
        return saved.codebook, bw, bh
    if args.block is None or args.codebook_size is None:
        raise ValueError("--block and --codebook-size are required without --codebook")
    bw, bh = args.block
    grid = decompose(img, bw, bh)
    return train(grid.blocks, TrainParams(target_size=args.codebook_size)), bw, bh


def _cmd_encrypt(args) -> int:
    img = _read_image(args.input)
    codebook, bw, bh = _resolve_codebook(args, img)
    grid = decompose(img, bw, bh)
    flags = _SCHEME_BY_NAME[args.scheme]
    if flags == SCHEME_PLAIN:
        out_codebook, indices = codebook, encode_plain(grid, codebook)
    else:
        perm = derive_permutation(args.seed, codebook.shape[0])
        if flags == SCHEME_FULL:
            result = encrypt_encode(grid, codebook, perm)
        else:
            result = encode_random_index_only(grid, codebook, perm)
        out_codebook, indices = result.shuffled_codebook, result.index_matrix
        print(
            "note: a seed protects only one image; pick a fresh seed per encryption",
            file=sys.stderr,
        )
    container = CipherContainer(
        flags=flags,
        orig_w=img.shape[1],
        orig_h=img.shape[0],
        block_w=bw,
        block_h=bh,
        codebook=out_codebook,
        indices=indices,
    )
    data = serialize(container)
    _write_file(args.out, data)
    print(f"wrote {args.out} ({len(data)} bytes, scheme {args.scheme})")
    return OK


def _cmd_decrypt(args) -> int:
    container = _read_container(args.input)
    _require_payload(container, "decrypt")
    if container.flags == SCHEME_PLAIN:
        img = decode_plain(
            container.indices,
            container.codebook,
            (container.block_w, container.block_h),
            (container.orig_w, container.orig_h),
        )
    else:
        perm = derive_permutation(args.seed, container.m)
        if container.flags == SCHEME_FULL:
            blocks = decrypt_decode(container.indices, container.codebook, perm).blocks
        else:
            blocks = decode_random_index_only(
                container.indices, container.codebook, perm
            ).blocks
        img = reassemble(_grid_from(container, blocks))
    _write_file(args.out, write_pgm(img))
    print(f"wrote {args.out}")
    return OK


def _cmd_attack_naive(args) -> int:
    container = _read_container(args.input)
    _require_payload(container, "attack")
    _write_file(args.out, write_pgm(naive_decode(container)))
    print(f"wrote {args.out}")
    return OK


def _cmd_attack_brute(args) -> int:
    container = _read_container(args.input)
    _require_payload(container, "attack")
    reference = _read_image(args.reference) if args.reference is not None else None
    report = brute_force_seed(container, args.seed_bits, reference)
    print(f"scheme: {_NAME_BY_SCHEME.get(report.scheme_flag, report.scheme_flag)}")
    print(f"seeds tried: {report.seeds_tried}")
    print(f"blocks tried: {report.blocks_tried}")
    print(f"elapsed: {report.elapsed:.3f} s")
    if report.psnr_vs_reference is not None:
        print(f"psnr vs reference: {report.psnr_vs_reference:.3f} dB")
    if report.recovered_seed is None:
        print("recovered seed: none")
        return NOT_RECOVERED
    print(f"recovered seed: {report.recovered_seed:#x}")
    return OK


def _cmd_metrics(args) -> int:
    a = _read_image(args.a)
    b = _read_image(args.b)
    print(f"MSE: {mse(a, b)}")
    print(f"PSNR: {psnr(a, b)} dB")
    return OK


def _cmd_keyspace(args) -> int:
    if args.perms is not None:
        if args.bits is not None or args.guesses_per_sec is not None:
            raise ValueError("--perms cannot be combined with --bits/--guesses-per-sec")
        print(f"{log2_factorial(args.perms)} bits")
        return OK
    if args.bits is None or args.guesses_per_sec is None:
        raise ValueError("need either --perms or both --bits and --guesses-per-sec")
    print(f"{keyspace_years(args.bits, args.guesses_per_sec)} years")
    return OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="vqcrypt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a codebook and save it")
    p.add_argument("--input", required=True, help="training image (PGM)")
    p.add_argument("--codebook-size", type=int, required=True, metavar="M")
    p.add_argument("--block", type=parse_block, required=True, metavar="WxH")
    p.add_argument("--out", required=True, help="codebook file to write")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("encrypt", help="encode and encrypt an image")
    p.add_argument("--input", required=True, help="image to encrypt (PGM)")
    p.add_argument("--codebook", help="codebook file from train (otherwise trains on the input)")
    p.add_argument("--seed", type=parse_seed, required=True, help="64-bit key, decimal or 0x-hex")
    p.add_argument("--scheme", choices=sorted(_SCHEME_BY_NAME), default="full")
    p.add_argument("--block", type=parse_block, metavar="WxH")
    p.add_argument("--codebook-size", type=int, metavar="M")
    p.add_argument("--out", required=True, help="container file to write")
    p.set_defaults(func=_cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a container back to an image")
    p.add_argument("--input", required=True, help="container file")
    p.add_argument("--seed", type=parse_seed, required=True)
    p.add_argument("--out", required=True, help="image to write (PGM)")
    p.set_defaults(func=_cmd_decrypt)

    p = sub.add_parser("attack", help="key-less and brute-force attacks")
    mode = p.add_subparsers(dest="mode", required=True)

    q = mode.add_parser("naive", help="decode a container without any key")
    q.add_argument("--input", required=True, help="container file")
    q.add_argument("--out", required=True, help="image to write (PGM)")
    q.set_defaults(func=_cmd_attack_naive)

    q = mode.add_parser("brute", help="sweep a reduced seed space")
    q.add_argument("--input", required=True, help="container file")
    q.add_argument("--seed-bits", type=int, required=True, metavar="K")
    q.add_argument("--reference", help="known plain image (PGM) for exact scoring")
    q.set_defaults(func=_cmd_attack_brute)

    p = sub.add_parser("metrics", help="MSE and PSNR between two images")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("keyspace", help="brute-force cost estimates")
    p.add_argument("--bits", type=int)
    p.add_argument("--guesses-per-sec", type=float)
    p.add_argument("--perms", type=int, metavar="M", help="report log2(M!) instead")
    p.set_defaults(func=_cmd_keyspace)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (PgmParseError, ContainerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CORRUPT
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
