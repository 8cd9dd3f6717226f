"""Sum-rank weights and distances, brute-force minimum distance, and bounds."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .galois import FieldCtx, batch_rank_mod_p, coords_of, matrix_rep, rank_mod_p

MAX_ENUMERATION = 10**6


class LengthMismatch(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Sum-rank length partition N = r_1 + ... + r_L."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(int(r) for r in self.blocks)
        if not blocks or any(r < 1 for r in blocks):
            raise ValueError("partition blocks must be positive")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def equal(cls, N: int, L: int) -> Partition:
        if N % L:
            raise ValueError(f"N={N} is not divisible by L={L}")
        return cls((N // L,) * L)

    @property
    def N(self) -> int:
        return sum(self.blocks)

    @property
    def L(self) -> int:
        return len(self.blocks)

    def slices(self):
        start = 0
        for r in self.blocks:
            yield slice(start, start + r)
            start += r

    def is_refinement_of(self, coarse: Partition) -> bool:
        edges = set(np.cumsum(self.blocks).tolist())
        return self.N == coarse.N and set(np.cumsum(coarse.blocks).tolist()) <= edges


def hamming_partition(N: int) -> Partition:
    return Partition((1,) * N)


def rank_partition(N: int) -> Partition:
    return Partition((N,))


def sum_rank_weight(ctx: FieldCtx, c, part: Partition, basis=None) -> int:
    """Sum over blocks of rank(M_B(c^(l))) over F_p."""
    c = list(c)
    if len(c) != part.N:
        raise LengthMismatch(f"vector length {len(c)} != partition length {part.N}")
    return sum(rank_mod_p(matrix_rep(ctx, c[s], basis), ctx.p) for s in part.slices())


def sum_rank_distance(ctx: FieldCtx, c, d, part: Partition) -> int:
    return sum_rank_weight(ctx, [ctx.sub(int(a), int(b)) for a, b in zip(c, d)], part)


def batch_sum_rank_weight(ctx: FieldCtx, words: np.ndarray, part: Partition) -> np.ndarray:
    """Sum-rank weights of many words at once; ``words`` has shape (n, N)."""
    words = np.asarray(words, dtype=np.int64)
    if words.shape[-1] != part.N:
        raise LengthMismatch(f"word length {words.shape[-1]} != partition length {part.N}")
    coords = coords_of(ctx, words)  # (n, N, m)
    total = np.zeros(words.shape[0], dtype=np.int64)
    for s in part.slices():
        # M_B(c^(l)) is m x r_l; rank is transpose-invariant
        total += batch_rank_mod_p(coords[:, s, :], ctx.p)
    return total


def all_codewords(code) -> np.ndarray:
    """Every codeword of a linear code (rows), in message enumeration order.

    Message index ``n`` has base-``p`` digits giving the symbol-major
    coordinate vector of ``u`` (digit ``i*m + a`` is coordinate ``a`` of
    ``u_i``).
    """
    ctx = code.ctx
    total = ctx.order**code.k
    if total > MAX_ENUMERATION:
        raise TooLarge(f"{total} codewords exceed the enumeration bound {MAX_ENUMERATION}")
    km = code.k * ctx.m
    idx = np.arange(total, dtype=np.int64)
    ucoords = (idx[:, None] // (ctx.p ** np.arange(km))) % ctx.p
    ccoords = (ucoords @ code.expanded) % ctx.p
    return (ccoords.reshape(total, code.N, ctx.m) * (ctx.p ** np.arange(ctx.m))).sum(axis=-1)


def min_sum_rank_distance(code, part: Partition | None = None) -> int:
    """Brute-force minimum sum-rank distance (minimum nonzero weight)."""
    part = code.part if part is None else part
    words = all_codewords(code)
    nonzero = words[np.any(words != 0, axis=1)]
    if len(nonzero) == 0:
        raise ValueError("code has no nonzero codewords")
    best = None
    for chunk in np.array_split(nonzero, max(1, len(nonzero) // 50000)):
        w = int(batch_sum_rank_weight(code.ctx, chunk, part).min())
        best = w if best is None else min(best, w)
    return best


def singleton_bound(ctx: FieldCtx, part: Partition, d: int) -> int:
    """Largest codebook size allowed for minimum sum-rank distance d."""
    if not 1 <= d <= part.N:
        raise ValueError("distance must satisfy 1 <= d <= N")
    return ctx.p ** (ctx.m * (part.N - d + 1))


def is_msrd(code, d: int) -> bool:
    return code.k == code.N - d + 1


def check_extension_degree(part: Partition, m: int) -> bool:
    """Necessary condition m >= N/L for an MSRD code with d > 1."""
    if len(set(part.blocks)) != 1:
        raise ValueError("extension-degree bound is stated for equal blocks")
    return m * part.L >= part.N
