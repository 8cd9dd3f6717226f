"""Linearized Reed-Solomon codes: generator matrices, systematization, encoding."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from .galois import FieldCtx, coords_of, expand_matrix, from_coords, op_d
from .sumrank import Partition


class BadParams(ValueError):
    pass


class SingularInfoSet(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SumRankCode:
    ctx: FieldCtx
    part: Partition
    G: np.ndarray  # k x N over F_{p^m}, int codes
    info_set: tuple | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def k(self) -> int:
        return self.G.shape[0]

    @property
    def N(self) -> int:
        return self.G.shape[1]

    @cached_property
    def expanded(self) -> np.ndarray:
        return expand_matrix(self.ctx, self.G)

    def sub_generators(self) -> list[np.ndarray]:
        return [self.G[:, s] for s in self.part.slices()]


def lrs_generator(ctx: FieldCtx, part: Partition, k: int) -> SumRankCode:
    """Generator of the [N, k] LRS code with blocks G_l[i][j] = D^i_{alpha^(l-1)}(beta_j)."""
    L, N = part.L, part.N
    if len(set(part.blocks)) != 1:
        raise BadParams("LRS construction needs equal blocks")
    r = part.blocks[0]
    if not ctx.p > L:
        raise BadParams(f"requires q > L (q={ctx.p}, L={L})")
    if not ctx.m * L >= N:
        raise BadParams(f"requires m >= N/L (m={ctx.m}, N/L={r})")
    if not 1 <= k <= N:
        raise BadParams(f"dimension k={k} outside 1..{N}")
    betas = ctx.basis[:r]
    G = np.zeros((k, N), dtype=np.int64)
    for l in range(L):
        a = ctx.pow(ctx.alpha, l)
        for i in range(k):
            for j, b in enumerate(betas):
                G[i, l * r + j] = op_d(ctx, a, i, b)
    return SumRankCode(ctx, part, G)


def _row_reduce(ctx: FieldCtx, G: np.ndarray, cols) -> np.ndarray:
    G = G.copy()
    k = G.shape[0]
    for r, c in enumerate(cols):
        piv = next((i for i in range(r, k) if G[i, c]), None)
        if piv is None:
            raise SingularInfoSet(f"columns {tuple(cols)} are not an information set")
        G[[r, piv]] = G[[piv, r]]
        inv = ctx.inv(int(G[r, c]))
        G[r] = [ctx.mul(int(x), inv) for x in G[r]]
        for i in range(k):
            if i != r and G[i, c]:
                f = int(G[i, c])
                G[i] = [ctx.sub(int(x), ctx.mul(f, int(y))) for x, y in zip(G[i], G[r])]
    return G


def systematize(code: SumRankCode, info_set) -> SumRankCode:
    """Row-reduce G so that its restriction to ``info_set`` (in order) is I_k."""
    info_set = tuple(int(i) for i in info_set)
    if len(info_set) != code.k or len(set(info_set)) != code.k:
        raise BadParams("information set needs k distinct indices")
    if any(not 0 <= i < code.N for i in info_set):
        raise BadParams("information set index out of range")
    key = ("sys", info_set)
    if key not in code._cache:
        G = _row_reduce(code.ctx, code.G, info_set)
        code._cache[key] = replace(code, G=G, info_set=info_set, _cache={})
    return code._cache[key]


def encode(code: SumRankCode, u) -> np.ndarray:
    """Codeword u G over F_{p^m}."""
    u = np.asarray(u, dtype=np.int64)
    if u.shape[-1] != code.k:
        raise BadParams(f"message length {u.shape[-1]} != k={code.k}")
    ucoords = coords_of(code.ctx, u).reshape(*u.shape[:-1], -1)
    c = (ucoords @ code.expanded) % code.ctx.p
    return from_coords(code.ctx, c.reshape(*u.shape[:-1], code.N, code.ctx.m))


def parity_map(code: SumRankCode) -> np.ndarray:
    """F_p matrix taking information coordinates to parity coordinates.

    ``code`` must be systematic on ``info_set``; the parity positions are the
    remaining indices in increasing order.
    """
    if code.info_set is None:
        raise BadParams("code is not systematized")
    rest = [j for j in range(code.N) if j not in code.info_set]
    return expand_matrix(code.ctx, code.G[:, rest])
