"""One-pass key transport and the ``.thc`` envelope format.

Alice picks a chain seed a0 and a position b, and sends r = a0 * k_ij along
with the ciphertext.  Bob, who holds K, recovers a0 = r * k_ij^-1.

Envelope layout (all integers big-endian)::

    magic      4   b"THC1"
    version    1   0x01
    hash_alg   1   0x01 sha1 | 0x02 md5 | 0x03 sha256
    n          2
    p          4
    b          4
    r          w   w = ceil(bitlen(p) / 8)
    plain_len  8
    block_cnt  4   must equal ceil(plain_len / n)
    blocks     block_cnt * n * w
"""

from __future__ import annotations

import random
import struct
from dataclasses import dataclass

from .corecipher import CipherParams, MessageCiphertext, decrypt_message, encrypt_message
from .hashchain import HashAlg
from .modmath import NotInvertible, RowVector, mod_inv

MAGIC = b"THC1"
VERSION = 0x01
_HEADER = struct.Struct(">4sBBHII")


class BOutOfRange(ValueError):
    pass


class NoInvertibleAnchor(ValueError):
    pass


class MalformedEnvelope(ValueError):
    pass


class ParamMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Initiation:
    a0: int
    b: int
    r: int
    i: int
    j: int


@dataclass(frozen=True)
class Envelope:
    hash_alg: HashAlg
    n: int
    p: int
    b: int
    r: int
    plain_len: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)


def field_width(p: int) -> int:
    """Bytes per field element: ceil(bitlen(p) / 8)."""
    return (p.bit_length() + 7) // 8


def index_of_b(b: int, n: int) -> tuple[int, int]:
    """Map 1 < b < n^2 to the 1-based key position (ceil(b/n), b - n(i-1))."""
    if not 1 < b < n * n:
        raise BOutOfRange(f"b must satisfy 1 < b < {n * n}, got {b}")
    i = -(-b // n)
    return i, b - n * (i - 1)


def make_initiation(params: CipherParams, a0: int, b: int) -> Initiation:
    if not 0 < a0 < params.p - 1:
        raise ValueError(f"a0 must satisfy 0 < a0 < p-1, got {a0}")
    i, j = index_of_b(b, params.n)
    k = params.K.at(i, j)
    if k == 0:
        raise NotInvertible(f"k_{i}{j} is zero and cannot anchor the transport")
    return Initiation(a0, b, a0 * k % params.p, i, j)


def initiate(params: CipherParams, rng: random.Random) -> Initiation:
    """Pick a0 uniformly in (0, p-1) and b in (1, n^2) with k_ij != 0."""
    n = params.n
    usable = [b for b in range(2, n * n) if params.K.at(*index_of_b(b, n))]
    if not usable:
        raise NoInvertibleAnchor("every addressable key entry is zero")
    a0 = rng.randrange(1, params.p - 1)
    while True:
        b = rng.randrange(2, n * n)
        if params.K.at(*index_of_b(b, n)):
            return make_initiation(params, a0, b)


def respond(params: CipherParams, b: int, r: int) -> int:
    i, j = index_of_b(b, params.n)
    u = mod_inv(params.K.at(i, j), params.p)
    return r * u % params.p


def seal(params: CipherParams, message: bytes, rng: random.Random) -> Envelope:
    init = initiate(params, rng)
    ct = encrypt_message(message, params, init.a0)
    return Envelope(
        hash_alg=params.alg,
        n=params.n,
        p=params.p,
        b=init.b,
        r=init.r,
        plain_len=ct.plain_len,
        blocks=tuple(tuple(blk) for blk in ct.blocks),
    )


def open_envelope(params: CipherParams, env: Envelope) -> bytes:
    if (env.p, env.n) != (params.p, params.n):
        raise ParamMismatch(f"envelope is for (p={env.p}, n={env.n}), key is (p={params.p}, n={params.n})")
    if env.hash_alg is not params.alg:
        params = CipherParams(params.p, params.n, params.K, env.hash_alg)
    a0 = respond(params, env.b, env.r)
    if not 0 < a0 < params.p - 1:
        raise MalformedEnvelope(f"recovered chain seed {a0} is out of range")
    ct = MessageCiphertext(tuple(RowVector(b, params.p) for b in env.blocks), env.plain_len)
    return decrypt_message(ct, params, a0)


def encode_envelope(env: Envelope) -> bytes:
    w = field_width(env.p)
    if env.block_count != -(-env.plain_len // env.n):
        raise MalformedEnvelope("block count does not match plain_len")
    out = bytearray(_HEADER.pack(MAGIC, VERSION, env.hash_alg.value, env.n, env.p, env.b))
    out += env.r.to_bytes(w, "big")
    out += struct.pack(">QI", env.plain_len, env.block_count)
    for blk in env.blocks:
        if len(blk) != env.n:
            raise MalformedEnvelope("block length differs from n")
        for v in blk:
            out += v.to_bytes(w, "big")
    return bytes(out)


def decode_envelope(data: bytes) -> Envelope:
    if len(data) < _HEADER.size:
        raise MalformedEnvelope("truncated header")
    magic, version, alg_id, n, p, b = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise MalformedEnvelope(f"bad magic {magic!r}")
    if version != VERSION:
        raise MalformedEnvelope(f"unsupported version {version}")
    try:
        alg = HashAlg(alg_id)
    except ValueError:
        raise MalformedEnvelope(f"unknown hash id {alg_id:#04x}") from None
    if n < 1 or p < 2:
        raise MalformedEnvelope(f"invalid dimensions n={n}, p={p}")
    w = field_width(p)
    pos = _HEADER.size
    if len(data) < pos + w + 12:
        raise MalformedEnvelope("truncated header")
    r = int.from_bytes(data[pos : pos + w], "big")
    pos += w
    plain_len, count = struct.unpack_from(">QI", data, pos)
    pos += 12
    if count != -(-plain_len // n):
        raise MalformedEnvelope(f"block count {count} does not match plain_len {plain_len}")
    if len(data) != pos + count * n * w:
        raise MalformedEnvelope(f"body is {len(data) - pos} bytes, expected {count * n * w}")
    if r >= p:
        raise MalformedEnvelope("r is not reduced mod p")
    values = [int.from_bytes(data[k : k + w], "big") for k in range(pos, len(data), w)]
    if any(v >= p for v in values):
        raise MalformedEnvelope("field element out of range")
    blocks = tuple(tuple(values[k : k + n]) for k in range(0, len(values), n))
    return Envelope(alg, n, p, b, r, plain_len, blocks)
