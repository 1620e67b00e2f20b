"""Hill cipher workbench: classic Hill and Affine Hill ciphers, a hash-chained
Affine Hill variant with one-pass key transport, a known-plaintext attack
demonstrator and an operation-count cost model."""

from .classic import AffineHillKey, HillKey
from .corecipher import CipherParams, MessageCiphertext, decrypt_message, encrypt_message
from .hashchain import HashAlg
from .modmath import Matrix, OpCount, RowVector
from .protocol import Envelope, decode_envelope, encode_envelope, open_envelope, seal

__version__ = "0.1.0"

__all__ = [
    "AffineHillKey",
    "CipherParams",
    "Envelope",
    "HashAlg",
    "HillKey",
    "Matrix",
    "MessageCiphertext",
    "OpCount",
    "RowVector",
    "decode_envelope",
    "decrypt_message",
    "encode_envelope",
    "encrypt_message",
    "open_envelope",
    "seal",
]
