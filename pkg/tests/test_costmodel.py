import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hillvariant.corecipher import CipherParams
from hillvariant.costmodel import (
    CSV_HEADER,
    CostParams,
    Direction,
    Scheme,
    block_cost,
    bit_length,
    measured_block_counts,
    measured_counts,
    sweep_modulus,
    sweep_rank,
    to_csv,
    total_cost,
    weigh,
)
from hillvariant.hashchain import HashAlg
from hillvariant.modmath import Matrix, OpCount, is_valid_key

ENC, DEC = Direction.ENCRYPT, Direction.DECRYPT


def params(n, p=257, seed=0):
    rng = random.Random(seed)
    while True:
        K = Matrix([[rng.randrange(p) for _ in range(n)] for _ in range(n)], p)
        if is_valid_key(K):
            return CipherParams(p, n, K)


@pytest.mark.parametrize(
    "scheme, direction, expected",
    [
        (Scheme.PROPOSED, ENC, OpCount(24, 21, 0, 1)),
        (Scheme.PROPOSED, DEC, OpCount(24, 21, 1, 1)),
        (Scheme.HILL, ENC, OpCount(16, 12, 0, 0)),
        (Scheme.LIN_ET_AL, DEC, OpCount(23, 20, 1, 5)),
    ],
)
def test_block_cost_examples(scheme, direction, expected):
    assert block_cost(scheme, 4, direction) == expected


def test_weigh_examples():
    sha1 = CostParams(9, 1110)
    assert weigh(OpCount(24, 21, 0, 1), sha1) == 3243
    assert weigh(OpCount(), sha1) == 0
    assert weigh(OpCount(inv=1), sha1) == 729


counts = st.builds(OpCount, *(st.integers(0, 10**6) for _ in range(4)))


@given(counts, counts, st.integers(1, 40), st.integers(1, 5000))
def test_weigh_is_linear(c1, c2, zeta, hash_ops):
    cp = CostParams(zeta, hash_ops)
    assert weigh(c1 + c2, cp) == weigh(c1, cp) + weigh(c2, cp)


def test_total_cost_examples():
    assert total_cost(Scheme.PROPOSED, 1000, 4, 257, HashAlg.SHA1, ENC) == 810750
    assert total_cost(Scheme.PROPOSED, 1000, 4, 257, HashAlg.SHA1, DEC) == 993000
    for scheme in Scheme:
        assert total_cost(scheme, 0, 4, 257) == 0


def test_md5_and_override():
    md5 = total_cost(Scheme.PROPOSED, 1000, 4, 257, HashAlg.MD5, ENC)
    assert md5 == 250 * (2133 + 744)
    assert total_cost(Scheme.PROPOSED, 1000, 4, 257, HashAlg.SHA256, ENC, hash_ops=1) == 250 * 2134


@given(st.sampled_from(list(Scheme)), st.integers(0, 5000), st.integers(1, 16), st.integers(2, 10**6))
def test_total_monotone_in_L(scheme, L, n, p):
    assert total_cost(scheme, L, n, p) <= total_cost(scheme, L + 1, n, p)


def test_bit_length():
    assert [bit_length(p) for p in (255, 256, 257, 1, 2, 3)] == [8, 9, 9, 1, 2, 2]


def test_sweep_rank():
    rows = sweep_rank(Scheme.PROPOSED, 1000, 257, n_range=range(1, 33))
    assert len(rows) == 32
    assert rows[3].x == 4 and rows[3].total_ops == 810750
    totals = [r.total_ops for r in rows]
    smooth = [1000 / n * weigh(block_cost(Scheme.PROPOSED, n, ENC), CostParams(9, 1110)) for n in range(1, 33)]
    for n, t, s in zip(range(1, 33), totals, smooth):
        assert math.isclose(t, s) == (1000 % n == 0)


def test_sweep_modulus_steps():
    rows = sweep_modulus(Scheme.PROPOSED, 1000, 4, p_range=range(2, 1100))
    by_p = {r.x: r.total_ops for r in rows}
    assert by_p[256] == by_p[257] != by_p[255]
    assert by_p[257] == 810750
    for p in range(3, 1100):
        jump = by_p[p] != by_p[p - 1]
        assert jump == (p & (p - 1) == 0), p


def test_csv_output():
    rows = sweep_rank(Scheme.PROPOSED, 1000, 257, n_range=[4])
    assert to_csv(rows) == f"{CSV_HEADER}\n4,proposed,enc,810750\n"


@pytest.mark.parametrize("n", range(2, 9))
def test_measured_proposed_counts_match_model(n):
    P = params(n)
    assert measured_block_counts(Scheme.PROPOSED, P, direction=ENC) == block_cost(Scheme.PROPOSED, n, ENC)
    assert measured_block_counts(Scheme.PROPOSED, P, direction=DEC) == block_cost(Scheme.PROPOSED, n, DEC)


@pytest.mark.parametrize("scheme", [Scheme.HILL, Scheme.AFFINE_HILL])
@pytest.mark.parametrize("direction", [ENC, DEC])
def test_measured_classic_counts_match_table(scheme, direction):
    P = params(4)
    assert measured_block_counts(scheme, P, direction=direction) == block_cost(scheme, 4, direction)


def test_measured_empty_message():
    assert measured_counts(Scheme.PROPOSED, params(4), b"") == OpCount()


def test_lin_et_al_is_model_only():
    with pytest.raises(ValueError):
        measured_counts(Scheme.LIN_ET_AL, params(4), b"abcd")
