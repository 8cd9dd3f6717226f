"""Rayleigh block-fading MIMO channel.

Every trial draws from its own counter-based stream,
``Generator(Philox(SeedSequence([seed, snr_index, trial])))``, so results do
not depend on how trials are scheduled. Normal deviates come from numpy's
``Generator.standard_normal`` (ziggurat method); real and imaginary parts are
scaled to variance 1/2 each. Draw order within a trial is: message
coordinates, then H (L x n_r x n_t), then W (L x n_r x T).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .stcode import SpaceTimeEncoder, expected_energy


class ZeroEnergy(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    H: np.ndarray  # (L, n_r, n_t)
    W: np.ndarray  # (L, n_r, T)
    rho: float = 1.0
    snr: float = 1.0

    @property
    def L(self) -> int:
        return self.H.shape[0]

    @property
    def n_r(self) -> int:
        return self.H.shape[1]

    @property
    def n_t(self) -> int:
        return self.H.shape[2]

    @property
    def T(self) -> int:
        return self.W.shape[2]

    def with_rho(self, rho: float, snr: float) -> ChannelRealization:
        return ChannelRealization(self.H, self.W, rho, snr)


def trial_rng(seed: int, snr_index: int = 0, trial: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, snr_index, trial])))


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    s = math.sqrt(0.5)
    z = rng.standard_normal((*shape, 2))
    return s * z[..., 0] + 1j * (s * z[..., 1])


def sample(rng_or_seed, n_r: int, n_t: int, T: int, L: int) -> ChannelRealization:
    """Draw H and W with iid CN(0, 1) entries."""
    if min(n_r, n_t, T, L) < 1:
        raise DimensionMismatch("dimensions must be positive")
    rng = rng_or_seed if isinstance(rng_or_seed, np.random.Generator) else trial_rng(int(rng_or_seed))
    H = complex_normal(rng, (L, n_r, n_t))
    W = complex_normal(rng, (L, n_r, T))
    return ChannelRealization(H, W)


def compute_rho(enc: SpaceTimeEncoder, snr_db: float) -> float:
    energy = expected_energy(enc)
    if energy <= 0:
        raise ZeroEnergy("constellation has zero mean energy")
    p = enc.params
    return math.sqrt(p.L * p.T * 10 ** (snr_db / 10) / energy)


def transmit(real: ChannelRealization, X: np.ndarray) -> np.ndarray:
    """Y_l = rho H_l X_l + W_l; X is n_t x (L*T), Y is returned as (L, n_r, T)."""
    X = np.asarray(X)
    L, T = real.L, real.T
    if X.shape != (real.n_t, L * T):
        raise DimensionMismatch(f"codeword shape {X.shape} != {(real.n_t, L * T)}")
    Xb = X.reshape(real.n_t, L, T).transpose(1, 0, 2)
    return real.rho * (real.H @ Xb) + real.W


def split_blocks(X: np.ndarray, L: int) -> np.ndarray:
    """n_t x (L*T) -> (L, n_t, T)."""
    n_t, LT = X.shape[-2:]
    return np.moveaxis(X.reshape(*X.shape[:-2], n_t, L, LT // L), -2, -3)


@dataclass(frozen=True, eq=False)
class Trial:
    symbols: np.ndarray  # transmitted F_q symbol matrix, n_t x (L*T)
    X: np.ndarray
    real: ChannelRealization
    Y: np.ndarray  # (L, n_r, T)


def draw_trial(enc: SpaceTimeEncoder, n_r: int, seed: int, snr_index: int, trial: int,
               snr_db: float) -> Trial:
    """One seeded Monte Carlo trial: uniform message, channel, noise, observation."""
    p = enc.params
    rng = trial_rng(seed, snr_index, trial)
    u = rng.integers(0, p.q, size=enc.k * enc.m)
    symbols = enc.encode_symbols(u)
    X = enc.to_complex(symbols)
    real = sample(rng, n_r, p.n_t, p.T, p.L).with_rho(compute_rho(enc, snr_db), 10 ** (snr_db / 10))
    return Trial(symbols, X, real, transmit(real, X))
