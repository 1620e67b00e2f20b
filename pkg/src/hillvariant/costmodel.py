"""Operation-count cost model for the Hill family of ciphers.

Per-block counts are symbolic in n.  They are turned into a scalar by
charging a modular addition zeta, a multiplication zeta^2 and an inversion
zeta^3, where zeta is the bit-length of p, plus a fixed per-hash charge.
Absolute totals depend on these unit constants; the shapes of the sweeps
(ceiling waves in n, power-of-two steps in p) do not.
"""

from __future__ import annotations

import enum
import io
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .classic import AffineHillKey, HillKey, affine_hill_decrypt_block, affine_hill_encrypt_block
from .classic import hill_decrypt_block, hill_encrypt_block
from .corecipher import CipherParams, decrypt_message, encode_message, encrypt_message
from .hashchain import HashAlg
from .modmath import OpCount, RowVector, counting

CSV_HEADER = "x,scheme,direction,total_ops"


class Scheme(enum.Enum):
    HILL = "hill"
    AFFINE_HILL = "affine"
    LIN_ET_AL = "lin"
    PROPOSED = "proposed"


class Direction(enum.Enum):
    ENCRYPT = "enc"
    DECRYPT = "dec"


@dataclass(frozen=True)
class CostParams:
    zeta: int
    hash_ops: int

    def __post_init__(self) -> None:
        if self.zeta < 1 or self.hash_ops <= 0:
            raise ValueError("zeta must be >= 1 and hash_ops > 0")

    @classmethod
    def for_modulus(cls, p: int, hash_alg: HashAlg = HashAlg.SHA1, hash_ops: int | None = None) -> CostParams:
        return cls(bit_length(p), hash_ops if hash_ops is not None else hash_alg.op_cost)


def bit_length(p: int) -> int:
    """floor(log2 p) + 1."""
    if p < 1:
        raise ValueError("p must be positive")
    return p.bit_length()


def block_cost(scheme: Scheme, n: int, direction: Direction) -> OpCount:
    if n < 1:
        raise ValueError("n must be >= 1")
    dec = direction is Direction.DECRYPT
    if scheme is Scheme.HILL:
        return OpCount(mul=n * n, add=n * n - n)
    if scheme is Scheme.AFFINE_HILL:
        return OpCount(mul=n * n, add=n * n)
    if scheme is Scheme.LIN_ET_AL:
        return OpCount(mul=n * n + n + 3, add=n * n + 4, inv=int(dec), hash=n + 1)
    if scheme is Scheme.PROPOSED:
        return OpCount(mul=n * n + 2 * n, add=n * n + n + 1, inv=int(dec), hash=1)
    raise ValueError(f"unknown scheme {scheme!r}")


def weigh(c: OpCount, cp: CostParams) -> int:
    z = cp.zeta
    return c.mul * z * z + c.add * z + c.inv * z**3 + c.hash * cp.hash_ops


def total_cost(
    scheme: Scheme,
    L: int,
    n: int,
    p: int,
    hash_alg: HashAlg = HashAlg.SHA1,
    direction: Direction = Direction.ENCRYPT,
    hash_ops: int | None = None,
) -> int:
    """ceil(L/n) blocks times the weighted per-block cost."""
    if L < 0:
        raise ValueError("L must be non-negative")
    if p < 2:
        raise ValueError("p must be >= 2")
    blocks = -(-L // n)
    return blocks * weigh(block_cost(scheme, n, direction), CostParams.for_modulus(p, hash_alg, hash_ops))


@dataclass(frozen=True)
class SweepRow:
    x: int
    scheme: Scheme
    direction: Direction
    total_ops: int

    def csv(self) -> str:
        return f"{self.x},{self.scheme.value},{self.direction.value},{self.total_ops}"


def sweep_rank(scheme, L, p, hash_alg=HashAlg.SHA1, direction=Direction.ENCRYPT, n_range=range(1, 33),
               hash_ops=None) -> list[SweepRow]:
    return [SweepRow(n, scheme, direction, total_cost(scheme, L, n, p, hash_alg, direction, hash_ops))
            for n in sorted(n_range)]


def sweep_modulus(scheme, L, n, hash_alg=HashAlg.SHA1, direction=Direction.ENCRYPT, p_range=range(2, 1025),
                  hash_ops=None) -> list[SweepRow]:
    return [SweepRow(p, scheme, direction, total_cost(scheme, L, n, p, hash_alg, direction, hash_ops))
            for p in sorted(p_range)]


def to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for row in rows:
        buf.write(row.csv() + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# measured counts
# ---------------------------------------------------------------------------


def measured_counts(
    scheme: Scheme,
    params: CipherParams,
    message: bytes,
    direction: Direction = Direction.ENCRYPT,
    a0: int = 1,
    V: Sequence[int] | None = None,
) -> OpCount:
    """Run the real implementation over ``message`` and tally its operations.

    Key inversion and the setup encryption needed to measure decryption run
    outside the tally.  For the Affine Hill scheme ``V`` is the translation
    vector (zeros by default).
    """
    if scheme is Scheme.PROPOSED:
        params.K_inv  # inverted outside the tally
        if direction is Direction.ENCRYPT:
            with counting() as tally:
                encrypt_message(message, params, a0)
        else:
            ct = encrypt_message(message, params, a0)
            with counting() as tally:
                decrypt_message(ct, params, a0)
        return tally

    blocks = encode_message(message, params.n, params.p)
    if scheme is Scheme.HILL:
        key = HillKey(params.K)
        enc, dec = hill_encrypt_block, hill_decrypt_block
    elif scheme is Scheme.AFFINE_HILL:
        key = AffineHillKey(params.K, RowVector(V or [0] * params.n, params.p))
        enc, dec = affine_hill_encrypt_block, affine_hill_decrypt_block
    else:
        raise ValueError(f"{scheme.value} has no implementation to measure")
    key.K_inv  # inverted outside the tally
    if direction is Direction.DECRYPT:
        blocks = [enc(x, key) for x in blocks]
        op = dec
    else:
        op = enc
    with counting() as tally:
        for blk in blocks:
            op(blk, key)
    return tally


def measured_block_counts(scheme: Scheme, params: CipherParams, blocks: int = 3,
                          direction: Direction = Direction.ENCRYPT, seed: int = 0) -> OpCount:
    """Per-block counts averaged (exactly) over a random message of ``blocks`` blocks."""
    rng = random.Random(seed)
    message = rng.randbytes(blocks * params.n)
    a0 = rng.randrange(1, params.p - 1)
    return measured_counts(scheme, params, message, direction, a0).divided(blocks)
