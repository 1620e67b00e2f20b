"""Baseline Hill and Affine Hill block ciphers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .modmath import (
    DimensionMismatch,
    Matrix,
    NotInvertible,
    RowVector,
    is_valid_key,
    mat_inv,
    vec_add,
    vec_mat_mul,
    vec_sub,
)


@dataclass(frozen=True)
class HillKey:
    K: Matrix

    def __post_init__(self) -> None:
        if not is_valid_key(self.K):
            raise NotInvertible("Hill key matrix is not invertible")

    @property
    def m(self) -> int:
        return self.K.modulus

    @property
    def n(self) -> int:
        return self.K.n

    @cached_property
    def K_inv(self) -> Matrix:
        return mat_inv(self.K)


@dataclass(frozen=True)
class AffineHillKey:
    K: Matrix
    V: RowVector

    def __post_init__(self) -> None:
        if not is_valid_key(self.K):
            raise NotInvertible("Affine Hill key matrix is not invertible")
        if len(self.V) != self.K.n:
            raise DimensionMismatch("translation vector length must equal n")

    @property
    def p(self) -> int:
        return self.K.modulus

    @cached_property
    def K_inv(self) -> Matrix:
        return mat_inv(self.K)


def hill_encrypt_block(x: RowVector, key: HillKey) -> RowVector:
    return vec_mat_mul(x, key.K)


def hill_decrypt_block(y: RowVector, key: HillKey) -> RowVector:
    return vec_mat_mul(y, key.K_inv)


def affine_hill_encrypt_block(x: RowVector, key: AffineHillKey) -> RowVector:
    return vec_add(vec_mat_mul(x, key.K), key.V)


def affine_hill_decrypt_block(y: RowVector, key: AffineHillKey) -> RowVector:
    return vec_mat_mul(vec_sub(y, key.V), key.K_inv)
