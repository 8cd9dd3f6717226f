import math

import numpy as np
import pytest

from sumrank_stc.channel import (
    ChannelRealization,
    DimensionMismatch,
    ZeroEnergy,
    compute_rho,
    draw_trial,
    sample,
    split_blocks,
    transmit,
    trial_rng,
)
from sumrank_stc.decoder import DecoderConfig, StackDecoder
from sumrank_stc.lattice import GAUSSIAN, PSK, build_constellation
from sumrank_stc.stcode import SRB, StParams, build_encoder

DESK = build_encoder(StParams(2, 2, 2, 3, build_constellation(GAUSSIAN, p=5), SRB))
G17 = build_encoder(StParams(2, 2, 2, 3, build_constellation(GAUSSIAN, p=17), SRB))


def test_sampling_is_deterministic():
    a = sample(7, 3, 2, 2, 2)
    b = sample(7, 3, 2, 2, 2)
    assert np.array_equal(a.H, b.H) and np.array_equal(a.W, b.W)
    c = sample(8, 3, 2, 2, 2)
    assert not np.array_equal(a.H, c.H)
    assert a.H.shape == (2, 3, 2) and a.W.shape == (2, 3, 2)


def test_trial_streams_are_distinct():
    draws = {trial_rng(0, s, t).standard_normal() for s in range(3) for t in range(3)}
    assert len(draws) == 9


def test_complex_gaussian_moments():
    real = sample(3, 4, 4, 4, 2000)
    z = np.concatenate([real.H.reshape(-1), real.W.reshape(-1)])
    assert abs(np.mean(np.abs(z) ** 2) - 1) < 0.02
    assert abs(np.var(z.real) - 0.5) < 0.01
    assert abs(np.var(z.imag) - 0.5) < 0.01
    # circular symmetry: E[z^2] vanishes
    assert abs(np.mean(z * z)) < 0.02


def test_bad_dimensions():
    with pytest.raises(DimensionMismatch):
        sample(0, 0, 2, 2, 2)
    real = sample(0, 2, 2, 2, 2)
    with pytest.raises(DimensionMismatch):
        transmit(real, np.zeros((2, 3)))


def test_rho_examples():
    assert compute_rho(DESK, 10.0) == pytest.approx(2.5)
    psk = build_encoder(StParams(2, 2, 2, 2, build_constellation(PSK, p=7), SRB))
    # unit-energy points: rho^2 = snr / n_t
    assert compute_rho(psk, 0.0) == pytest.approx(math.sqrt(0.5))
    assert compute_rho(psk, 20.0) == pytest.approx(math.sqrt(50.0))


def test_zero_energy():
    zero = type("Z", (), {"energy": lambda self: 0.0})()
    fake = type("E", (), {"params": DESK.params, "constellation": zero})()
    with pytest.raises(ZeroEnergy):
        compute_rho(fake, 10.0)


def test_transmit_identities():
    real = sample(5, 3, 2, 2, 2)
    X = np.arange(8, dtype=complex).reshape(2, 4) - 3j
    Y = transmit(real.with_rho(1.5, 1.0), X)
    Xb = split_blocks(X, 2)
    for l in range(2):
        assert np.allclose(Y[l], 1.5 * real.H[l] @ Xb[l] + real.W[l])
    silent = ChannelRealization(real.H, np.zeros_like(real.W), 2.0)
    assert not transmit(silent, np.zeros((2, 4))).any()


def test_split_blocks_round_trip():
    X = np.arange(12).reshape(2, 6)
    B = split_blocks(X, 3)
    assert B.shape == (3, 2, 2)
    assert np.array_equal(np.concatenate(list(B), axis=1), X)


def test_draw_trial_reproducible():
    a = draw_trial(G17, 2, seed=4, snr_index=1, trial=9, snr_db=12.0)
    b = draw_trial(G17, 2, seed=4, snr_index=1, trial=9, snr_db=12.0)
    assert np.array_equal(a.symbols, b.symbols) and np.array_equal(a.Y, b.Y)
    assert a.real.rho == pytest.approx(compute_rho(G17, 12.0))
    assert a.real.snr == pytest.approx(10 ** 1.2)
    assert np.allclose(a.Y, transmit(a.real, a.X))


def test_high_snr_decodes_every_trial():
    dec = StackDecoder(G17, DecoderConfig.parse("all"))
    wrong = 0
    for t in range(1000):
        tr = draw_trial(G17, 2, seed=0, snr_index=0, trial=t, snr_db=60.0)
        wrong += not np.array_equal(dec.decode(tr.real, tr.Y).symbols, tr.symbols)
    assert wrong == 0


def test_rho_scales_with_snr():
    r0 = compute_rho(G17, 0.0)
    assert compute_rho(G17, 10.0) == pytest.approx(r0 * math.sqrt(10))
