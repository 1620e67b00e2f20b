import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hillvariant.hashchain import ChainState, HashAlg, chain, chain_next, derive_v0, int_to_bytes

# Standard SHA-256 digests, cross-checked against two independent implementations.
SHA256_00 = 0x6E340B9CFFB37A989CA544E6BB780A2C78901D3FB33738768511A30617AFA01D
SHA256_01 = 0x4BF5122F344554C53BDE2EBB8CD2B7E3D1600AD631C385A5D7CCE23C7785459A


@pytest.mark.parametrize("a, encoded", [(0, b"\x00"), (1, b"\x01"), (258, b"\x01\x02"), (255, b"\xff"), (256, b"\x01\x00")])
def test_int_to_bytes(a, encoded):
    assert int_to_bytes(a) == encoded
    assert int.from_bytes(encoded, "big") == a


def test_int_to_bytes_round_trip():
    rng = random.Random(11)
    for _ in range(10_000):
        a = rng.getrandbits(rng.randrange(1, 513))
        enc = int_to_bytes(a)
        assert int.from_bytes(enc, "big") == a
        assert len(enc) == 1 or enc[0] != 0


def test_int_to_bytes_negative():
    with pytest.raises(ValueError):
        int_to_bytes(-1)


def test_chain_next_sha256_vectors():
    s = chain_next(ChainState(1, 0, HashAlg.SHA256))
    assert (s.a, s.t) == (SHA256_01, 1)
    s = chain_next(ChainState(0, 0, HashAlg.SHA256))
    assert (s.a, s.t) == (SHA256_00, 1)


def test_chain_steps_compose():
    s0 = ChainState(12345)
    twice = chain_next(chain_next(s0))
    gen = chain(12345)
    next(gen)
    assert next(gen) == twice
    assert twice.t == 2


@pytest.mark.parametrize("alg, size", [(HashAlg.SHA1, 20), (HashAlg.MD5, 16), (HashAlg.SHA256, 32)])
def test_other_algorithms(alg, size):
    s = chain_next(ChainState(77, 0, alg))
    assert s.a.bit_length() <= 8 * size
    assert s.alg is alg


def test_wire_ids_and_costs():
    assert [a.value for a in HashAlg] == [1, 2, 3]
    assert HashAlg.SHA1.op_cost == 1110
    assert HashAlg.MD5.op_cost == 744
    assert HashAlg.from_label("md5") is HashAlg.MD5
    with pytest.raises(ValueError):
        HashAlg.from_label("sha3")


@pytest.mark.parametrize("a_t, p, v0", [(514, 257, 1), (100, 257, 100), (1000, 257, 229), (0, 13, 1)])
def test_derive_v0(a_t, p, v0):
    assert derive_v0(a_t, p) == v0


@given(st.integers(0, 2**256), st.sampled_from([2, 13, 257, 65537, 2**31 - 1]))
def test_v0_is_a_unit(a_t, p):
    assert 1 <= derive_v0(a_t, p) <= p - 1


def test_no_collisions_at_step_one():
    rng = random.Random(5)
    seeds = {rng.randrange(1, 2**31 - 2) for _ in range(10_000)}
    firsts = {chain_next(ChainState(a)).a for a in seeds}
    assert len(firsts) == len(seeds)


def test_chain_is_deterministic():
    assert chain_next(ChainState(42)) == chain_next(ChainState(42))
