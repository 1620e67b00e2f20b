import random

import pytest

from hillvariant.corecipher import CipherParams
from hillvariant.hashchain import HashAlg
from hillvariant.modmath import Matrix, NotInvertible, is_valid_key
from hillvariant.protocol import (
    MAGIC,
    BOutOfRange,
    Envelope,
    MalformedEnvelope,
    NoInvertibleAnchor,
    ParamMismatch,
    decode_envelope,
    encode_envelope,
    field_width,
    index_of_b,
    initiate,
    make_initiation,
    open_envelope,
    respond,
    seal,
)


def random_params(rng, p, n, alg=HashAlg.SHA256):
    while True:
        K = Matrix([[rng.randrange(p) for _ in range(n)] for _ in range(n)], p)
        if is_valid_key(K):
            return CipherParams(p, n, K, alg)


def params_with_k22(value):
    rows = [[1, 0, 0, 0], [0, value, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return CipherParams(257, 4, Matrix(rows, 257))


@pytest.mark.parametrize("b, n, ij", [(6, 4, (2, 2)), (2, 2, (1, 2)), (3, 2, (2, 1)), (24, 5, (5, 4))])
def test_index_of_b(b, n, ij):
    assert index_of_b(b, n) == ij


@pytest.mark.parametrize("b", [1, 16, 0, 17])
def test_index_of_b_bounds(b):
    with pytest.raises(BOutOfRange):
        index_of_b(b, 4)


def test_every_b_maps_inside_the_matrix():
    for n in range(2, 9):
        seen = {index_of_b(b, n) for b in range(2, n * n)}
        assert len(seen) == n * n - 2
        assert (1, 1) not in seen and (n, n) not in seen


def test_initiation_example():
    P = params_with_k22(10)
    init = make_initiation(P, 100, 6)
    assert (init.i, init.j, init.r) == (2, 2, 229)
    assert respond(P, 6, 229) == 100


def test_unit_anchor():
    P = params_with_k22(1)
    assert make_initiation(P, 42, 6).r == 42
    assert respond(P, 6, 42) == 42


def test_zero_anchor_rejected():
    P = params_with_k22(10)
    with pytest.raises(NotInvertible):
        respond(P, 2, 5)  # k_12 = 0
    with pytest.raises(NotInvertible):
        make_initiation(P, 5, 2)


def test_no_invertible_anchor():
    # only the corners k_11 and k_nn are nonzero, and b can never reach them
    P = CipherParams(257, 2, Matrix([[3, 0], [0, 5]], 257))
    with pytest.raises(NoInvertibleAnchor):
        initiate(P, random.Random(0))


def test_initiate_resamples_b_to_nonzero_entries():
    P = params_with_k22(10)
    rng = random.Random(1)
    for _ in range(200):
        init = initiate(P, rng)
        assert P.K.at(init.i, init.j) != 0
        assert 0 < init.a0 < 256


def test_respond_recovers_a0():
    rng = random.Random(8)
    for _ in range(1000):
        P = random_params(rng, rng.choice([257, 1031, 65537]), rng.randrange(2, 9))
        init = initiate(P, rng)
        assert respond(P, init.b, init.r) == init.a0


def test_r_hides_a0():
    # for every r and every a0 some nonzero k_ij maps a0 to r
    p = 7
    for r in range(1, p):
        for a0 in range(1, p - 1):
            assert any(a0 * k % p == r for k in range(1, p))


def test_field_width():
    assert field_width(257) == 2
    assert field_width(251) == 1
    assert field_width(65537) == 3
    assert field_width(2**31 - 1) == 4


def test_seal_open_round_trip():
    rng = random.Random(12)
    for size in (0, 1, 7, 1000, 65536):
        P = random_params(rng, rng.choice([257, 65537]), rng.randrange(2, 9))
        msg = rng.randbytes(size)
        env = seal(P, msg, rng)
        assert env.block_count == -(-size // P.n)
        assert open_envelope(P, decode_envelope(encode_envelope(env))) == msg


def test_empty_envelope_is_header_only():
    P = random_params(random.Random(3), 257, 4)
    data = encode_envelope(seal(P, b"", random.Random(0)))
    assert len(data) == 4 + 1 + 1 + 2 + 4 + 4 + 2 + 8 + 4


def test_layout_is_bit_exact():
    env = Envelope(HashAlg.SHA1, 2, 257, 3, 256, 3, ((65, 66), (256, 0)))
    data = encode_envelope(env)
    assert data == (
        b"THC1\x01\x01" + b"\x00\x02" + b"\x00\x00\x01\x01" + b"\x00\x00\x00\x03" + b"\x01\x00"
        + b"\x00" * 7 + b"\x03" + b"\x00\x00\x00\x02"
        + b"\x00\x41\x00\x42\x01\x00\x00\x00"
    )
    assert decode_envelope(data) == env
    assert encode_envelope(decode_envelope(data)) == data


def _sample_bytes():
    P = random_params(random.Random(5), 257, 3)
    return P, encode_envelope(seal(P, b"hello world", random.Random(5)))


def test_malformed_inputs():
    P, data = _sample_bytes()
    with pytest.raises(MalformedEnvelope):
        decode_envelope(b"X" + data[1:])
    with pytest.raises(MalformedEnvelope):
        decode_envelope(data[:4] + b"\x02" + data[5:])
    with pytest.raises(MalformedEnvelope):
        decode_envelope(data[:5] + b"\x09" + data[6:])
    with pytest.raises(MalformedEnvelope):
        decode_envelope(data + b"\x00")
    with pytest.raises(MalformedEnvelope):
        decode_envelope(data[:-1])
    with pytest.raises(MalformedEnvelope):
        decode_envelope(data[:10])
    # last block element set to p = 257
    with pytest.raises(MalformedEnvelope):
        decode_envelope(data[:-2] + (257).to_bytes(2, "big"))


def test_block_count_must_match_plain_len():
    env = Envelope(HashAlg.SHA256, 2, 257, 3, 5, 5, ((1, 2), (3, 4)))
    with pytest.raises(MalformedEnvelope):
        encode_envelope(env)


def test_param_mismatch():
    P, data = _sample_bytes()
    other = random_params(random.Random(6), 257, 4)
    with pytest.raises(ParamMismatch):
        open_envelope(other, decode_envelope(data))


def test_envelope_hash_alg_is_honoured():
    rng = random.Random(4)
    P = random_params(rng, 257, 3, HashAlg.MD5)
    env = decode_envelope(encode_envelope(seal(P, b"md5 chain", rng)))
    assert env.hash_alg is HashAlg.MD5
    sha_params = CipherParams(P.p, P.n, P.K, HashAlg.SHA256)
    assert open_envelope(sha_params, env) == b"md5 chain"
