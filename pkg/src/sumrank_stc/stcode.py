"""Multiblock space-time codes built from LRS codes and constellation maps.

Two layouts are supported. SRB (``T <= n_t``) uses ``m = n_t`` and
``N = L*T``; column ``j`` of the codeword carries codeword symbol ``c_j``.
SRA (``T >= n_t``) uses ``m = T`` and ``N = L*n_t``; row ``i`` of each
sub-codeword carries one codeword symbol. SRA with ``T == n_t`` is the
transpose of SRB and is built as SRB.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .galois import build_field, coords_of
from .lattice import Constellation, batch_ring_rank_2x2, complex_rank, ring_rank
from .lrs import BadParams, SumRankCode, lrs_generator, systematize
from .sumrank import Partition

SRA = "SRA"
SRB = "SRB"


@dataclass(frozen=True)
class StParams:
    n_t: int
    T: int
    L: int
    d: int
    constellation: Constellation
    kind: str = SRB

    @property
    def q(self) -> int:
        return self.constellation.p

    def validate(self) -> None:
        n_t, T, L, d, q = self.n_t, self.T, self.L, self.d, self.q
        if min(n_t, T, L, d) < 1:
            raise BadParams("n_t, T, L and d must be positive")
        if not q > L:
            raise BadParams(f"requires q > L (q={q}, L={L})")
        if self.kind == SRA:
            if T < n_t:
                raise BadParams(f"SRA requires T >= n_t (T={T}, n_t={n_t})")
            if d > L * n_t:
                raise BadParams(f"SRA requires d <= L*n_t = {L * n_t}")
        elif self.kind == SRB:
            if T > n_t:
                raise BadParams(f"SRB requires T <= n_t (T={T}, n_t={n_t})")
            if d > L * T:
                raise BadParams(f"SRB requires d <= L*T = {L * T}")
        else:
            raise BadParams(f"unknown construction {self.kind!r}")


@dataclass(frozen=True, eq=False)
class SpaceTimeEncoder:
    params: StParams
    code: SumRankCode  # systematic on the first k positions

    @property
    def kind(self) -> str:
        return self.params.kind

    @property
    def m(self) -> int:
        return self.code.ctx.m

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def N(self) -> int:
        return self.code.N

    @property
    def constellation(self) -> Constellation:
        return self.params.constellation

    @property
    def shape(self) -> tuple[int, int]:
        return (self.params.n_t, self.params.L * self.params.T)

    @cached_property
    def generator_fp(self) -> np.ndarray:
        """(k*m) x (N*m) matrix over F_q acting on symbol-major coordinates."""
        return self.code.expanded

    def codeword_coords(self, ucoords: np.ndarray) -> np.ndarray:
        """Message coordinates (..., k*m) -> codeword coordinates (..., N, m)."""
        ucoords = np.asarray(ucoords, dtype=np.int64)
        c = (ucoords @ self.generator_fp) % self.code.ctx.p
        return c.reshape(*ucoords.shape[:-1], self.N, self.m)

    def layout(self, ccoords: np.ndarray) -> np.ndarray:
        """Codeword coordinates (..., N, m) -> F_q symbol matrices (..., n_t, L*T)."""
        if self.kind == SRB:
            return np.swapaxes(ccoords, -1, -2)
        p = self.params
        # SRA: block l holds symbols l*n_t..(l+1)*n_t-1 as rows
        blocks = ccoords.reshape(*ccoords.shape[:-2], p.L, p.n_t, p.T)
        return np.concatenate([blocks[..., l, :, :] for l in range(p.L)], axis=-1)

    def encode_symbols(self, ucoords) -> np.ndarray:
        return self.layout(self.codeword_coords(ucoords))

    def to_complex(self, symbols) -> np.ndarray:
        return self.constellation.points[np.asarray(symbols)]


def build_encoder(params: StParams) -> SpaceTimeEncoder:
    params.validate()
    n_t, T, L, d = params.n_t, params.T, params.L, params.d
    if params.kind == SRA and T == n_t:
        params = StParams(n_t, T, L, d, params.constellation, SRB)
    if params.kind == SRB:
        m, N = n_t, L * T
    else:
        m, N = T, L * n_t
    ctx = build_field(params.q, m)
    k = N - d + 1
    code = lrs_generator(ctx, Partition.equal(N, L), k)
    return SpaceTimeEncoder(params, systematize(code, range(k)))


def message_coords(enc: SpaceTimeEncoder, u) -> np.ndarray:
    """F_{q^m} message (length k) -> symbol-major F_q coordinates (length k*m)."""
    u = np.asarray(u, dtype=np.int64)
    if u.shape[-1] != enc.k:
        raise BadParams(f"message length {u.shape[-1]} != k={enc.k}")
    return coords_of(enc.code.ctx, u).reshape(*u.shape[:-1], enc.k * enc.m)


def encode_st(enc: SpaceTimeEncoder, u) -> np.ndarray:
    """Complex n_t x (L*T) codeword for the F_{q^m} message ``u``."""
    return enc.to_complex(enc.encode_symbols(message_coords(enc, u)))


def all_symbol_codewords(enc: SpaceTimeEncoder, limit: int = 10**6) -> np.ndarray:
    """All codewords as F_q symbol matrices, in message enumeration order."""
    km = enc.k * enc.m
    q = enc.params.q
    total = q**km
    if total > limit:
        raise BadParams(f"{total} codewords exceed the enumeration limit {limit}")
    idx = np.arange(total, dtype=np.int64)
    ucoords = (idx[:, None] // (q ** np.arange(km))) % q
    return enc.encode_symbols(ucoords)


# --- descriptors ---

@dataclass(frozen=True)
class Rates:
    R: Fraction
    R_b: float
    R_b_per_tx: float
    codebook_size: int


def rate_descriptors(enc: SpaceTimeEncoder) -> Rates:
    p = enc.params
    mk = enc.m * enc.k
    R = Fraction(mk, p.L * p.T)
    R_b = mk * math.log2(p.q) / (p.L * p.T)
    return Rates(R, R_b, R_b / p.n_t, p.q**mk)


def tradeoff_bound(n_t: int, T: int, L: int, d: int) -> Fraction:
    """Largest rate allowed at transmit diversity d."""
    if not 1 <= d <= L * min(n_t, T):
        raise BadParams(f"d must lie in 1..{L * min(n_t, T)}")
    return n_t - Fraction(d - 1, L) * max(Fraction(n_t, T), Fraction(1))


def constellation_size_bound(n_t: int, T: int, L: int, eps: float, R_b_per_tx: float) -> float:
    if not 0 <= eps < 1:
        raise ValueError("eps must satisfy 0 <= eps < 1")
    return math.exp(R_b_per_tx * math.log(2) / (eps + 1 / (L * min(n_t, T))))


def expected_energy(enc: SpaceTimeEncoder) -> float:
    """Mean ||X||_F^2 under uniform messages (entries are uniform on A)."""
    p = enc.params
    return p.n_t * p.L * p.T * enc.constellation.energy() / p.q


# --- explicit codebooks for the repetition and slicing utilities ---

@dataclass(frozen=True, eq=False)
class Codebook:
    """Explicit space-time code: F_q symbol matrices of shape (size, n_t, L*T)."""

    words: np.ndarray
    L: int
    constellation: Constellation

    @property
    def n_t(self) -> int:
        return self.words.shape[1]

    @property
    def T(self) -> int:
        return self.words.shape[2] // self.L

    @property
    def size(self) -> int:
        return self.words.shape[0]

    def rate(self) -> Fraction:
        """(1/LT) log_|A| |X|, exact when |X| is a power of |A|."""
        q = self.constellation.p
        e, n = 0, self.size
        while n % q == 0 and n > 1:
            n //= q
            e += 1
        if n != 1:
            raise ValueError("codebook size is not a power of the alphabet size")
        return Fraction(e, self.L * self.T)

    def blocks(self, words=None) -> list[np.ndarray]:
        w = self.words if words is None else words
        T = self.T
        return [w[..., :, l * T:(l + 1) * T] for l in range(self.L)]


def codebook_of(enc: SpaceTimeEncoder) -> Codebook:
    return Codebook(all_symbol_codewords(enc), enc.params.L, enc.constellation)


def repetition_code(single: Codebook, L: int) -> Codebook:
    """Horizontally concatenate L copies of each single-block codeword."""
    if single.L != 1 or L < 2:
        raise BadParams("repetition needs a 1-block code and L > 1")
    return Codebook(np.concatenate([single.words] * L, axis=2), L, single.constellation)


def horizontal_slice(tall: Codebook, L: int) -> Codebook:
    """Cut each (L*n_t) x T codeword into L stacked n_t x T sub-codewords."""
    if tall.L != 1 or L < 2 or tall.n_t % L:
        raise BadParams("horizontal slicing needs a 1-block code with L | rows")
    n_t = tall.n_t // L
    parts = [tall.words[:, l * n_t:(l + 1) * n_t, :] for l in range(L)]
    return Codebook(np.concatenate(parts, axis=2), L, tall.constellation)


def vertical_slice(wide: Codebook, L: int) -> Codebook:
    """Cut each n_t x (L*T) codeword into L side-by-side n_t x T sub-codewords."""
    if wide.L != 1 or L < 2 or wide.words.shape[2] % L:
        raise BadParams("vertical slicing needs a 1-block code with L | columns")
    return Codebook(wide.words, L, wide.constellation)


def _block_rank_sums(cb: Codebook, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Sum over blocks of complex rank(X_l - X'_l) for word index arrays a, b."""
    const = cb.constellation
    total = np.zeros(len(a), dtype=np.int64)
    for blk in cb.blocks():
        if const.is_lattice:
            diff = const.coords[blk[a]] - const.coords[blk[b]]  # (n, r, c, 2)
            if diff.shape[1:3] == (2, 2):
                total += batch_ring_rank_2x2(const.kind, diff)
            else:
                total += np.array([ring_rank(const.kind, x) for x in diff], dtype=np.int64)
        else:
            diff = const.points[blk[a]] - const.points[blk[b]]
            total += np.array([complex_rank(x) for x in diff], dtype=np.int64)
    return total


def diversity_gain(cb: Codebook, max_pairs: int = 2 * 10**6) -> int:
    """Minimum over distinct codeword pairs of the summed sub-codeword ranks."""
    n = cb.size
    if n * (n - 1) // 2 > max_pairs:
        raise BadParams(f"{n} codewords exceed the pair budget")
    best = None
    for i in range(n - 1):
        b = np.arange(i + 1, n)
        a = np.full(len(b), i)
        s = int(_block_rank_sums(cb, a, b).min())
        best = s if best is None else min(best, s)
    return best
