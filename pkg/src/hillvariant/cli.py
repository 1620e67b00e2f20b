"""Command-line interface: keygen, encrypt, decrypt, attack, cost.

Key files are plain text::

    p n
    <hash name>
    n lines of n space-separated residues

Envelopes (``.thc``) use the binary format in :mod:`hillvariant.protocol`.
``-`` as a file name means stdin/stdout.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Sequence

from . import costmodel
from .classic import HillKey
from .corecipher import BYTE_CODEC_MIN_P, CipherParams
from .cryptanalysis import AttackReport, kpa_demo_hill, kpa_demo_variant
from .hashchain import DEFAULT_HASH, HashAlg
from .modmath import Matrix, is_prime, is_valid_key, parse_matrix_rows
from .protocol import decode_envelope, encode_envelope, open_envelope, seal

PROG = "hillvariant"


class InvalidParams(ValueError):
    pass


# ---------------------------------------------------------------------------
# key files
# ---------------------------------------------------------------------------


def format_keyfile(params: CipherParams) -> str:
    lines = [f"{params.p} {params.n}", params.alg.label]
    lines += [" ".join(str(v) for v in row) for row in params.K.rows]
    return "\n".join(lines) + "\n"


def parse_keyfile(text: str) -> CipherParams:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise InvalidParams("key file needs a 'p n' line and a hash line")
    try:
        p, n = (int(v) for v in lines[0].split())
    except ValueError:
        raise InvalidParams("first key file line must be 'p n'") from None
    alg = HashAlg.from_label(lines[1])
    K = parse_matrix_rows(lines[2:], n, p)
    return CipherParams(p, n, K, alg)


def generate_key(n: int, p: int, rng: random.Random, alg: HashAlg = DEFAULT_HASH) -> CipherParams:
    """Sample uniform matrices until one is invertible mod p."""
    if n < 2:
        raise InvalidParams(f"n must be >= 2, got {n}")
    if not is_prime(p):
        raise InvalidParams(f"p={p} is not prime")
    if p < BYTE_CODEC_MIN_P:
        raise InvalidParams(f"p must be >= {BYTE_CODEC_MIN_P}, got {p}")
    while True:
        K = Matrix([[rng.randrange(p) for _ in range(n)] for _ in range(n)], p)
        if is_valid_key(K):
            return CipherParams(p, n, K, alg)


def _rng(seed: int | None) -> random.Random:
    return random.SystemRandom() if seed is None else random.Random(seed)


def _read(name: str) -> bytes:
    if name == "-":
        return sys.stdin.buffer.read()
    return Path(name).read_bytes()


def _write(name: str, data: bytes) -> None:
    if name == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(name).write_bytes(data)


def _load_key(name: str) -> CipherParams:
    return parse_keyfile(_read(name).decode("ascii"))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_keygen(args: argparse.Namespace) -> int:
    params = generate_key(args.n, args.p, _rng(args.seed), HashAlg.from_label(args.hash))
    _write(args.out, format_keyfile(params).encode("ascii"))
    return 0


def cmd_encrypt(args: argparse.Namespace) -> int:
    params = _load_key(args.key)
    if args.hash:
        params = CipherParams(params.p, params.n, params.K, HashAlg.from_label(args.hash))
    env = seal(params, _read(args.infile), _rng(args.seed))
    _write(args.out, encode_envelope(env))
    return 0


def cmd_decrypt(args: argparse.Namespace) -> int:
    params = _load_key(args.key)
    env = decode_envelope(_read(args.infile))
    _write(args.out, open_envelope(params, env))
    return 0


def run_attack(mode: str, trials: int, rng: random.Random, n: int = 4, p: int = 257,
               length: int = 64, params: CipherParams | None = None) -> tuple[AttackReport, int]:
    """Run ``trials`` attacks; returns the combined report and exact key matches."""
    reports = []
    matches = 0
    for _ in range(trials):
        trial_params = params or generate_key(n, p, rng)
        size = max(length, 2 * trial_params.n * trial_params.n)
        message = rng.randbytes(size)
        if mode == "hill":
            key = HillKey(trial_params.K)
            rep = kpa_demo_hill(key, message, rng)
            matches += rep.keys[0] == key.K
        else:
            rep = kpa_demo_variant(trial_params, message, rng)
        reports.append(rep)
    return AttackReport.combine(reports), matches


def cmd_attack(args: argparse.Namespace) -> int:
    params = _load_key(args.key) if args.key else None
    report, matches = run_attack(args.mode, args.trials, _rng(args.seed), args.n, args.p,
                                 args.length, params)
    if report.trials:
        print(f"known-plaintext attack against {args.mode} ciphertext")
        print(f"  candidate key solved in {report.recovered}/{report.trials} trials")
        if args.mode == "hill":
            print(f"  candidate equals the true key in {matches}/{report.trials} trials")
        perfect = sum(f == 1.0 for f in report.fractions)
        zero = sum(f == 0.0 for f in report.fractions)
        print(f"  held-out blocks all correct in {perfect} trials, none correct in {zero}")
    print(report.line())
    return 0


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo_i, hi_i = int(lo), int(hi)
        if lo_i > hi_i:
            raise InvalidParams(f"empty range {text!r}")
        return list(range(lo_i, hi_i + 1))
    return [int(text)]


def cmd_cost(args: argparse.Namespace) -> int:
    ns = _parse_range(args.n)
    ps = _parse_range(args.p)
    if len(ns) > 1 and len(ps) > 1:
        raise InvalidParams("sweep either -n or -p, not both")
    if min(ns) < 1 or min(ps) < 2 or args.L < 0:
        raise InvalidParams("need n >= 1, p >= 2, L >= 0")
    alg = HashAlg.from_label(args.hash)
    schemes = [costmodel.Scheme(s) for s in (args.scheme or ["proposed"])]
    dirs = [costmodel.Direction(d) for d in (args.dir or ["enc"])]
    rows = []
    for scheme in schemes:
        for d in dirs:
            if len(ps) > 1:
                rows += costmodel.sweep_modulus(scheme, args.L, ns[0], alg, d, ps, args.hash_ops)
            else:
                rows += costmodel.sweep_rank(scheme, args.L, ps[0], alg, d, ns, args.hash_ops)
    rows.sort(key=lambda r: r.x)
    _write(args.out, costmodel.to_csv(rows).encode("ascii"))
    if args.plot:
        from .plotting import plot_sweep

        if len(ps) > 1:
            plot_sweep(rows, args.plot, "modulus p", f"L={args.L}, n={ns[0]}")
        else:
            plot_sweep(rows, args.plot, "rank n", f"L={args.L}, p={ps[0]}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="Hill cipher workbench")
    sub = parser.add_subparsers(dest="command", required=True)
    hashes = [a.label for a in HashAlg]

    kg = sub.add_parser("keygen", help="generate a random invertible key")
    kg.add_argument("-n", type=int, default=4)
    kg.add_argument("-p", type=int, default=257)
    kg.add_argument("--seed", type=int)
    kg.add_argument("--hash", choices=hashes, default=DEFAULT_HASH.label)
    kg.add_argument("--out", default="-")
    kg.set_defaults(func=cmd_keygen)

    enc = sub.add_parser("encrypt", help="seal a file into a .thc envelope")
    enc.add_argument("--key", required=True)
    enc.add_argument("--in", dest="infile", default="-")
    enc.add_argument("--out", default="-")
    enc.add_argument("--seed", type=int)
    enc.add_argument("--hash", choices=hashes, help="override the key file's hash")
    enc.set_defaults(func=cmd_encrypt)

    dec = sub.add_parser("decrypt", help="open a .thc envelope")
    dec.add_argument("--key", required=True)
    dec.add_argument("--in", dest="infile", default="-")
    dec.add_argument("--out", default="-")
    dec.set_defaults(func=cmd_decrypt)

    at = sub.add_parser("attack", help="known-plaintext attack demonstration")
    at.add_argument("mode", choices=["hill", "variant"])
    at.add_argument("--key")
    at.add_argument("--trials", type=int, default=100)
    at.add_argument("--seed", type=int)
    at.add_argument("-n", type=int, default=4)
    at.add_argument("-p", type=int, default=257)
    at.add_argument("--length", type=int, default=64, help="message bytes per trial")
    at.set_defaults(func=cmd_attack)

    co = sub.add_parser("cost", help="operation-count model as CSV")
    co.add_argument("--scheme", action="append", choices=[s.value for s in costmodel.Scheme])
    co.add_argument("-L", type=int, default=1000)
    co.add_argument("-n", default="4", help="rank, or a range like 1..32")
    co.add_argument("-p", default="257", help="modulus, or a range like 2..1024")
    co.add_argument("--hash", choices=["sha1", "md5", "sha256"], default="sha1")
    co.add_argument("--hash-ops", type=int, help="override the per-hash operation count")
    co.add_argument("--dir", action="append", choices=[d.value for d in costmodel.Direction])
    co.add_argument("--out", default="-")
    co.add_argument("--plot", help="also render the sweep to this image file")
    co.set_defaults(func=cmd_cost)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError, UnicodeDecodeError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"{PROG}: error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
