import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracle_values import ORACLE
from sumrank_stc.galois import build_field, frobenius
from sumrank_stc.lrs import (
    BadParams,
    SingularInfoSet,
    SumRankCode,
    encode,
    lrs_generator,
    parity_map,
    systematize,
)
from sumrank_stc.sumrank import Partition, all_codewords, hamming_partition, min_sum_rank_distance

F25 = build_field(5, 2)
P22 = Partition.equal(4, 2)
CODE = lrs_generator(F25, P22, 2)


def test_generator_matches_oracle():
    assert CODE.G.tolist() == ORACLE["lrs_5_2_4_2_2"]
    assert lrs_generator(F25, P22, 3).G.tolist() == ORACLE["lrs_5_2_4_2_3"]


def test_generator_structure():
    code = lrs_generator(F25, P22, 3)
    for Gl in code.sub_generators():
        assert Gl[0].tolist() == list(F25.basis[:2])
    G1 = code.sub_generators()[0]
    for i in range(3):
        assert G1[i].tolist() == [frobenius(F25, b, i) for b in F25.basis[:2]]


def test_preconditions():
    with pytest.raises(BadParams, match="q > L"):
        lrs_generator(build_field(2, 2), P22, 1)
    with pytest.raises(BadParams, match="m >= N/L"):
        lrs_generator(F25, Partition.equal(6, 2), 2)
    with pytest.raises(BadParams):
        lrs_generator(F25, P22, 0)
    with pytest.raises(BadParams):
        lrs_generator(F25, P22, 5)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_msrd_and_mds(k):
    code = lrs_generator(F25, P22, k)
    assert min_sum_rank_distance(code) == 4 - k + 1
    assert min_sum_rank_distance(code, hamming_partition(4)) == 4 - k + 1


def test_gabidulin_special_case():
    code = lrs_generator(F25, Partition((2,)), 1)
    assert min_sum_rank_distance(code) == 2


def test_three_block_code():
    f = build_field(5, 1)
    code = lrs_generator(f, Partition.equal(3, 3), 2)
    assert min_sum_rank_distance(code) == 2


def test_systematic_forms_match_oracle():
    assert systematize(CODE, (0, 1)).G.tolist() == ORACLE["lrs_systematic_01"]
    assert systematize(CODE, (2, 3)).G.tolist() == ORACLE["lrs_systematic_23"]


@pytest.mark.parametrize("info", list(itertools.permutations(range(4), 2)))
def test_every_information_set(info):
    sys = systematize(CODE, info)
    assert sys.G[:, list(info)].tolist() == [[1, 0], [0, 1]]
    a = {tuple(r) for r in all_codewords(CODE).tolist()}
    b = {tuple(r) for r in all_codewords(sys).tolist()}
    assert a == b


def test_systematize_idempotent_and_cached():
    s1 = systematize(CODE, (0, 1))
    assert systematize(CODE, (0, 1)) is s1
    assert np.array_equal(systematize(s1, (0, 1)).G, s1.G)


def test_singular_information_set():
    G = np.array([[1, 1, 0, 0], [2, 2, 0, 1]])
    bad = SumRankCode(F25, P22, G)
    with pytest.raises(SingularInfoSet):
        systematize(bad, (0, 1))
    with pytest.raises(BadParams):
        systematize(CODE, (0, 0))


def test_encode_injective_and_zero():
    words = all_codewords(CODE)
    assert len({tuple(w) for w in words.tolist()}) == 625
    assert encode(CODE, [0, 0]).tolist() == [0, 0, 0, 0]


@given(st.lists(st.integers(0, 24), min_size=2, max_size=2),
       st.permutations(range(4)))
def test_systematic_encoding(u, perm):
    info = tuple(perm[:2])
    sys = systematize(CODE, info)
    c = encode(sys, u)
    assert c[list(info)].tolist() == u
    rest = [j for j in range(4) if j not in info]
    ucoords = np.array([F25.coeffs(x) for x in u]).reshape(-1)
    pc = (ucoords @ parity_map(sys)) % 5
    assert pc.tolist() == [x for j in rest for x in F25.coeffs(int(c[j]))]


@given(st.lists(st.integers(0, 24), min_size=2, max_size=2))
def test_encode_is_linear_combination(u):
    want = [F25.add(F25.mul(u[0], int(CODE.G[0, j])), F25.mul(u[1], int(CODE.G[1, j])))
            for j in range(4)]
    assert encode(CODE, u).tolist() == want


def test_parity_map_needs_systematic_code():
    with pytest.raises(BadParams):
        parity_map(CODE)
