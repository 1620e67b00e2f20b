"""Per-block chain values a_t = H(a_{t-1}) and the block scalar v0."""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass

from .modmath import tally

# Per-invocation operation counts used by the cost model.  SHA-256 has no
# published figure here and borrows the SHA-1 count; override via costmodel.
_OP_COSTS = {"sha1": 1110, "md5": 744, "sha256": 1110}


class HashAlg(enum.Enum):
    """Supported chain hashes; the value is the wire id."""

    SHA1 = 0x01
    MD5 = 0x02
    SHA256 = 0x03

    @property
    def label(self) -> str:
        return self.name.lower()

    @property
    def op_cost(self) -> int:
        return _OP_COSTS[self.label]

    @classmethod
    def from_label(cls, label: str) -> HashAlg:
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValueError(f"unknown hash algorithm {label!r}") from None

    def digest(self, data: bytes) -> bytes:
        return hashlib.new(self.label, data).digest()


DEFAULT_HASH = HashAlg.SHA256


def int_to_bytes(a: int) -> bytes:
    """Minimal big-endian encoding; zero encodes as a single 0x00 byte."""
    if a < 0:
        raise ValueError("chain values are non-negative")
    return a.to_bytes(max(1, (a.bit_length() + 7) // 8), "big")


@dataclass(frozen=True)
class ChainState:
    a: int
    t: int = 0
    alg: HashAlg = DEFAULT_HASH

    def __post_init__(self) -> None:
        if self.a < 0 or self.t < 0:
            raise ValueError("chain value and index must be non-negative")


def chain_next(state: ChainState) -> ChainState:
    """Hash the current value.  The full digest integer is carried forward."""
    tally(hash=1)
    digest = state.alg.digest(int_to_bytes(state.a))
    return ChainState(int.from_bytes(digest, "big"), state.t + 1, state.alg)


def chain(a0: int, alg: HashAlg = DEFAULT_HASH):
    """Yield successive states for t = 1, 2, ..."""
    state = ChainState(a0, 0, alg)
    while True:
        state = chain_next(state)
        yield state


def derive_v0(a_t: int, p: int) -> int:
    """a_t mod p, or 1 when that residue is zero (so v0 is always a unit).

    The reduction is tallied as one modular addition.
    """
    tally(add=1)
    v0 = a_t % p
    return v0 if v0 else 1
