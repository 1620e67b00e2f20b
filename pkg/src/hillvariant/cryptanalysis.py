"""Known-plaintext attack on the Hill cipher, and the same attack pointed at
the hash-chained variant to show that it no longer fits a single matrix."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .classic import HillKey, hill_encrypt_block
from .corecipher import CipherParams, encode_message, encrypt_message
from .modmath import Matrix, NotInvertible, RowVector, mat_inv, mat_mul, vec_mat_mul


class SingularSystem(ValueError):
    """The stacked plaintext matrix is not invertible; gather other pairs."""


@dataclass(frozen=True)
class PlainCipherPair:
    X: RowVector
    Y: RowVector

    def __post_init__(self) -> None:
        if len(self.X) != len(self.Y):
            raise ValueError("plaintext and ciphertext blocks differ in length")


@dataclass(frozen=True)
class AttackReport:
    """Outcome of one or more attack trials.

    ``recovered`` counts trials where n pairs with an invertible plaintext
    stack were found and a candidate matrix was solved for.  ``heldout_ok`` is
    the mean, over trials, of the fraction of held-out blocks the candidate
    decrypts correctly (trials without a candidate contribute 0).
    """

    trials: int
    recovered: int
    heldout_ok: float
    fractions: tuple[float, ...] = ()
    keys: tuple[Matrix | None, ...] = ()

    @classmethod
    def combine(cls, reports: Sequence[AttackReport]) -> AttackReport:
        fractions = tuple(f for r in reports for f in r.fractions)
        keys = tuple(k for r in reports for k in r.keys)
        trials = sum(r.trials for r in reports)
        mean = sum(fractions) / len(fractions) if fractions else math.nan
        return cls(trials, sum(r.recovered for r in reports), mean, fractions, keys)

    def line(self) -> str:
        return f"trials={self.trials}, recovered={self.recovered}, heldout_ok={self.heldout_ok:.4f}"


def kpa_recover_hill_key(pairs: Sequence[PlainCipherPair], m: int) -> Matrix:
    """Solve K = Xs^-1 Ys from exactly n pairs."""
    if not pairs:
        raise ValueError("need at least one pair")
    n = len(pairs[0].X)
    if len(pairs) != n:
        raise ValueError(f"need exactly {n} pairs, got {len(pairs)}")
    xs = Matrix([pr.X for pr in pairs], m)
    ys = Matrix([pr.Y for pr in pairs], m)
    try:
        xs_inv = mat_inv(xs)
    except NotInvertible:
        raise SingularSystem("stacked plaintext matrix is singular") from None
    return mat_mul(xs_inv, ys)


def _attack(plain: Sequence[RowVector], cipher: Sequence[RowVector], m: int, rng: random.Random,
            attempts: int = 64) -> AttackReport:
    """Fit a Hill key to n pairs and score it on the remaining blocks."""
    n = len(plain[0])
    idx = list(range(len(plain)))
    for attempt in range(attempts):
        chosen = idx[:n] if attempt == 0 else rng.sample(idx, n)
        pairs = [PlainCipherPair(plain[k], cipher[k]) for k in chosen]
        try:
            K = kpa_recover_hill_key(pairs, m)
        except SingularSystem:
            continue
        held = [k for k in idx if k not in chosen]
        try:
            K_inv = mat_inv(K)
        except NotInvertible:
            return AttackReport(1, 1, 0.0, (0.0,), (K,))
        ok = sum(vec_mat_mul(cipher[k], K_inv) == plain[k] for k in held)
        frac = ok / len(held) if held else 0.0
        return AttackReport(1, 1, frac, (frac,), (K,))
    return AttackReport(1, 0, 0.0, (0.0,), (None,))


def _check_length(blocks: int, n: int) -> None:
    if blocks < 2 * n:
        raise ValueError(f"message yields {blocks} blocks; need at least {2 * n}")


def kpa_demo_variant(params: CipherParams, message: bytes, rng: random.Random) -> AttackReport:
    """Treat variant ciphertext as plain Hill output and attack it."""
    plain = encode_message(message, params.n, params.p)
    _check_length(len(plain), params.n)
    a0 = rng.randrange(1, params.p - 1)
    cipher = encrypt_message(message, params, a0).blocks
    return _attack(plain, cipher, params.p, rng)


def kpa_demo_hill(key: HillKey, message: bytes, rng: random.Random) -> AttackReport:
    """Control experiment: the same attack against the classic Hill cipher."""
    plain = encode_message(message, key.n, key.m)
    _check_length(len(plain), key.n)
    cipher = [hill_encrypt_block(x, key) for x in plain]
    return _attack(plain, cipher, key.m, rng)
