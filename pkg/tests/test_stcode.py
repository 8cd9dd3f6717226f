import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumrank_stc.lattice import EISENSTEIN, GAUSSIAN, PSK, build_constellation
from sumrank_stc.lrs import BadParams
from sumrank_stc.stcode import (
    SRA,
    SRB,
    Codebook,
    StParams,
    all_symbol_codewords,
    build_encoder,
    codebook_of,
    constellation_size_bound,
    diversity_gain,
    encode_st,
    expected_energy,
    horizontal_slice,
    rate_descriptors,
    repetition_code,
    tradeoff_bound,
    vertical_slice,
)

G5 = build_constellation(GAUSSIAN, p=5)
G17 = build_constellation(GAUSSIAN, p=17)
DESK = build_encoder(StParams(2, 2, 2, 3, G5, SRB))


def enc(n_t, T, L, d, const=G5, kind=SRB):
    return build_encoder(StParams(n_t, T, L, d, const, kind))


def test_srb_dimensions():
    e = enc(2, 2, 2, 3, G17)
    assert (e.N, e.k, e.m) == (4, 2, 2)
    assert e.code.ctx.p == 17


def test_sra_dimensions():
    e = enc(2, 3, 2, 3, kind=SRA)
    assert (e.N, e.k, e.m) == (4, 2, 3)
    assert e.shape == (2, 6)


def test_sra_with_square_blocks_becomes_srb():
    assert enc(2, 2, 2, 3, kind=SRA).kind == SRB


@pytest.mark.parametrize("args", [
    (3, 2, 2, 2, G5, SRA),  # SRA with T < n_t
    (2, 3, 2, 2, G5, SRB),  # SRB with T > n_t
    (2, 2, 2, 5, G5, SRB),  # d > L*T
    (2, 2, 5, 2, G5, SRB),  # q <= L
])
def test_bad_parameters(args):
    with pytest.raises(BadParams):
        build_encoder(StParams(*args))


def test_uncoded_signalling():
    e = enc(2, 2, 2, 1)
    assert e.k == e.N
    words = all_symbol_codewords(e)
    assert len(np.unique(words.reshape(len(words), -1), axis=0)) == 5**8


def test_zero_message_gives_zero_matrix():
    X = encode_st(DESK, [0, 0])
    assert X.shape == (2, 4) and not X.any()


def test_desk_code_injective():
    words = all_symbol_codewords(DESK)
    assert len(np.unique(words.reshape(625, -1), axis=0)) == 625


def test_desk_code_diversity_brute_force():
    assert diversity_gain(codebook_of(DESK)) == 3


def test_sra_diversity_brute_force():
    e = enc(1, 2, 2, 2, kind=SRA)
    assert diversity_gain(codebook_of(e)) == 2


def test_eisenstein_and_psk_diversity():
    e7 = build_constellation(EISENSTEIN, p=7)
    assert diversity_gain(codebook_of(enc(2, 2, 1, 2, e7))) == 2
    psk = build_constellation(PSK, p=5)
    assert diversity_gain(codebook_of(enc(2, 2, 1, 2, psk))) == 2


def test_bpcu_rates():
    r17 = rate_descriptors(enc(2, 2, 2, 3, G17))
    assert r17.R_b == pytest.approx(math.log2(17))
    assert f"{r17.R_b:.2f}" == "4.09"
    r7 = rate_descriptors(enc(2, 2, 2, 2, build_constellation(PSK, p=7)))
    assert r7.R_b == pytest.approx(6 * math.log2(7) / 4)
    assert f"{r7.R_b:.2f}" == "4.21"
    r271 = rate_descriptors(enc(2, 2, 2, 3, build_constellation(EISENSTEIN, p=271)))
    assert f"{r271.R_b:.2f}" == "8.08"
    assert r271.codebook_size == 271**4


def test_tradeoff_bound_examples():
    assert tradeoff_bound(2, 2, 2, 1) == 2
    assert tradeoff_bound(2, 2, 2, 3) == 1
    assert tradeoff_bound(4, 2, 3, 6) == Fraction(1, 3) * 2
    with pytest.raises(BadParams):
        tradeoff_bound(2, 2, 2, 5)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 3), st.data())
def test_encoders_are_rate_diversity_optimal(n_t, T, L, data):
    kind = SRB if T <= n_t else SRA
    d = data.draw(st.integers(1, L * min(n_t, T)))
    e = enc(n_t, T, L, d, kind=kind)
    assert rate_descriptors(e).R == tradeoff_bound(n_t, T, L, d)


def test_constellation_size_bound():
    assert constellation_size_bound(2, 2, 2, 0.0, 2.0) == pytest.approx(256.0)
    assert constellation_size_bound(2, 2, 2, 0.5, 2.0) == pytest.approx(2 ** (2 / 0.75))
    with pytest.raises(ValueError):
        constellation_size_bound(2, 2, 2, 1.0, 2.0)


def test_expected_energy():
    assert expected_energy(DESK) == pytest.approx(8 * 4 / 5)
    psk = enc(2, 2, 2, 2, build_constellation(PSK, p=7))
    assert expected_energy(psk) == pytest.approx(8.0)


def test_empirical_energy():
    rng = np.random.default_rng(1)
    e = enc(2, 2, 2, 3, G17)
    u = rng.integers(0, 17, size=(10**5, e.k * e.m))
    X = e.to_complex(e.encode_symbols(u))
    mean = float(np.mean(np.sum(np.abs(X) ** 2, axis=(1, 2))))
    assert abs(mean / expected_energy(e) - 1) < 0.01


def test_entries_are_uniform():
    # chi-square at 1% significance, 16 degrees of freedom: critical value 32.000
    rng = np.random.default_rng(2)
    e = enc(2, 2, 2, 3, G17)
    u = rng.integers(0, 17, size=(125000, e.k * e.m))
    sym = e.encode_symbols(u).reshape(-1)
    assert sym.size == 10**6
    counts = np.bincount(sym, minlength=17)
    expect = sym.size / 17
    assert float(np.sum((counts - expect) ** 2 / expect)) < 32.000


def test_repetition_of_full_diversity_code_is_optimal():
    single = codebook_of(enc(2, 2, 1, 2))
    rep = repetition_code(single, 2)
    assert rep.rate() == single.rate() / 2
    assert diversity_gain(rep) == 2 * diversity_gain(single) == 4
    assert rep.rate() == tradeoff_bound(2, 2, 2, 4)


def test_repetition_of_weak_code_is_suboptimal():
    single = codebook_of(enc(2, 2, 1, 1))
    rep = repetition_code(single, 2)
    assert diversity_gain(rep) == 2
    assert rep.rate() < tradeoff_bound(2, 2, 2, 2)


def test_horizontal_slice_keeps_diversity():
    tall = codebook_of(enc(2, 2, 1, 2))
    sliced = horizontal_slice(tall, 2)
    assert sliced.n_t == 1 and sliced.L == 2 and sliced.T == 2
    assert diversity_gain(sliced) == diversity_gain(tall) == 2


def test_vertical_slice():
    wide = codebook_of(enc(2, 4, 1, 2, kind=SRA))
    sliced = vertical_slice(wide, 2)
    assert sliced.T == 2 and sliced.L == 2
    assert sliced.rate() == wide.rate()  # same symbols over the same channel uses
    assert 2 <= diversity_gain(sliced, max_pairs=10**6) <= 4


def test_slicing_preconditions():
    cb = codebook_of(DESK)
    with pytest.raises(BadParams):
        repetition_code(cb, 2)
    with pytest.raises(BadParams):
        horizontal_slice(Codebook(cb.words[:, :1], 1, G5), 2)
