"""The hash-chained Affine Hill ciphering core.

Each block t gets its own scalar v0 and translation vector V, both derived
from the chain value a_t and the key matrix:

    Y = v0 * X K + V          (mod p)
    X = v0^-1 * (Y - V) K^-1  (mod p)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .hashchain import DEFAULT_HASH, ChainState, HashAlg, chain_next, derive_v0
from .modmath import (
    DimensionMismatch,
    Matrix,
    NotInvertible,
    NotPrime,
    RowVector,
    is_prime,
    is_valid_key,
    mat_inv,
    mod_add,
    mod_inv,
    mod_mul,
    vec_add,
    vec_mat_mul,
    vec_scale,
    vec_sub,
)

BYTE_CODEC_MIN_P = 257


class ModulusTooSmall(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class DecodeError(ValueError):
    """A decrypted symbol does not fit in a byte (usually a wrong key)."""


@dataclass(frozen=True)
class CipherParams:
    p: int
    n: int
    K: Matrix
    alg: HashAlg = DEFAULT_HASH

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.K.modulus != self.p or self.K.shape != (self.n, self.n):
            raise DimensionMismatch(f"key must be a {self.n}x{self.n} matrix mod {self.p}")
        if not is_valid_key(self.K):
            raise NotInvertible("key matrix is not invertible")

    @cached_property
    def K_inv(self) -> Matrix:
        return mat_inv(self.K)


@dataclass(frozen=True)
class BlockContext:
    v0: int
    V: RowVector
    t: int = 0


@dataclass(frozen=True)
class MessageCiphertext:
    blocks: tuple[RowVector, ...]
    plain_len: int


def half_fold(v: int) -> int:
    """2^h + (v mod 2^h) with h = ceil(bitlen(v) / 2); bitlen(0) is taken as 1."""
    if v < 0:
        raise ValueError("half_fold expects a non-negative integer")
    gamma = v.bit_length() or 1
    h = (gamma + 1) // 2
    return (1 << h) + (v & ((1 << h) - 1))


def gen_noise_vector(params: CipherParams, a_t: int, v0: int) -> RowVector:
    """v_i = k_ij + fold(v_{i-1}) * a_t (mod p), j = (v_{i-1} mod n) + 1."""
    p, n, K = params.p, params.n, params.K
    prev = v0
    out = []
    for i in range(1, n + 1):
        j = prev % n + 1
        prev = mod_add(K.at(i, j), mod_mul(half_fold(prev), a_t, p), p)
        out.append(prev)
    return RowVector(out, p)


def block_context(params: CipherParams, state: ChainState) -> BlockContext:
    v0 = derive_v0(state.a, params.p)
    return BlockContext(v0, gen_noise_vector(params, state.a, v0), state.t)


def _check_len(v: RowVector, n: int) -> None:
    if len(v) != n:
        raise DimensionMismatch(f"block has length {len(v)}, expected {n}")


def encrypt_block(x: RowVector, params: CipherParams, ctx: BlockContext) -> RowVector:
    _check_len(x, params.n)
    return vec_add(vec_scale(ctx.v0, vec_mat_mul(x, params.K)), ctx.V)


def decrypt_block(y: RowVector, params: CipherParams, ctx: BlockContext) -> RowVector:
    _check_len(y, params.n)
    u = mod_inv(ctx.v0, params.p)
    return vec_mat_mul(vec_scale(u, vec_sub(y, ctx.V)), params.K_inv)


# ---------------------------------------------------------------------------
# byte codec
# ---------------------------------------------------------------------------


def encode_message(data: bytes, n: int, p: int) -> list[RowVector]:
    """One byte per symbol; the final block is zero padded."""
    if p < BYTE_CODEC_MIN_P:
        raise ModulusTooSmall(f"byte codec needs p >= {BYTE_CODEC_MIN_P}, got {p}")
    pad = -len(data) % n
    padded = bytes(data) + bytes(pad)
    return [RowVector(padded[k : k + n], p) for k in range(0, len(padded), n)]


def decode_message(vectors: Sequence[RowVector], plain_len: int) -> bytes:
    capacity = sum(len(v) for v in vectors)
    if plain_len < 0 or plain_len > capacity:
        raise LengthMismatch(f"plain_len {plain_len} exceeds capacity {capacity}")
    symbols = [s for v in vectors for s in v][:plain_len]
    try:
        return bytes(symbols)
    except ValueError:
        raise DecodeError("decrypted symbol outside the byte range") from None


# ---------------------------------------------------------------------------
# messages
# ---------------------------------------------------------------------------


def _check_a0(a0: int, p: int) -> None:
    if not 0 < a0 < p - 1:
        raise ValueError(f"a0 must satisfy 0 < a0 < p-1, got {a0}")


def encrypt_message(data: bytes, params: CipherParams, a0: int) -> MessageCiphertext:
    _check_a0(a0, params.p)
    state = ChainState(a0, 0, params.alg)
    blocks = []
    for x in encode_message(data, params.n, params.p):
        state = chain_next(state)
        blocks.append(encrypt_block(x, params, block_context(params, state)))
    return MessageCiphertext(tuple(blocks), len(data))


def decrypt_message(ct: MessageCiphertext, params: CipherParams, a0: int) -> bytes:
    _check_a0(a0, params.p)
    if params.p < BYTE_CODEC_MIN_P:
        raise ModulusTooSmall(f"byte codec needs p >= {BYTE_CODEC_MIN_P}, got {params.p}")
    expected = -(-ct.plain_len // params.n)
    if len(ct.blocks) != expected:
        raise LengthMismatch(f"{len(ct.blocks)} blocks for plain_len {ct.plain_len}")
    state = ChainState(a0, 0, params.alg)
    plain = []
    for y in ct.blocks:
        state = chain_next(state)
        plain.append(decrypt_block(y, params, block_context(params, state)))
    return decode_message(plain, ct.plain_len)
